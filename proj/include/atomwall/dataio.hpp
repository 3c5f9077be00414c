#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "atomwall/dielectric.hpp"
#include "atomwall/lifshitz.hpp"
#include "atomwall/polarizability.hpp"

namespace atomwall {

// ---------------------------------------------------------------------------
// Plain-text data files. Lines starting with '#' are comments, blank lines are
// skipped, columns are separated by whitespace and/or commas. Every failure is a
// ValidationError located at "path:line".

/// Rows of an `energy_eV n k` file, converted to rad/s. Only the format and the
/// per-row rules (positive, strictly increasing energy; n, k >= 0) are checked.
std::vector<OpticalRow> read_optical_rows(const std::filesystem::path& path);

/// Fully validated optical table (>= 8 rows) with its completions attached.
OpticalTable parse_optical_table(const std::filesystem::path& path, std::optional<DrudeExtrapolation> low_ext,
                                 double tail_exponent = 3.0);

/// Rows `omega_eV f0n`. Duplicate frequencies are kept as separate terms.
OscillatorSet parse_oscillator_file(const std::filesystem::path& path);

/// Rows `xi_eV alpha_au`; the first row must be xi = 0.
AlphaTable parse_alpha_table(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Run configuration (JSON). See docs/config.md for the annotated format.

struct OscillatorTermSpec {
  double omega_eV = 0.0;
  double strength = 0.0;
  bool operator==(const OscillatorTermSpec&) const = default;
};

struct AtomSpec {
  std::string model; // static | oscillators | tabulated
  std::optional<double> alpha0_au;
  std::optional<std::string> file; // absolute after parsing
  std::vector<OscillatorTermSpec> terms;
  bool single_oscillator_fit = false;
  bool operator==(const AtomSpec&) const = default;
};

struct NinhamParsegianTermSpec {
  double strength = 0.0;
  double omega_eV = 0.0;
  bool operator==(const NinhamParsegianTermSpec&) const = default;
};

struct DrudeSpec {
  double omega_p_eV = 0.0;
  double nu_eV = 0.0;
  bool operator==(const DrudeSpec&) const = default;
};

struct WallSpec {
  std::string model; // ideal_metal | plasma | static | ninham_parsegian | tabulated
  std::optional<double> omega_p_eV;
  std::optional<double> eps0;
  std::vector<NinhamParsegianTermSpec> terms;
  std::optional<std::string> file;
  std::optional<MaterialKind> kind;
  std::optional<DrudeSpec> drude;
  double tail_exponent = 3.0;
  double kk_rel_tol = 1e-6;
  bool operator==(const WallSpec&) const = default;
};

struct SeparationRange {
  double from_nm = 0.0;
  double to_nm = 0.0;
  std::size_t count = 0;
  bool operator==(const SeparationRange&) const = default;
};

/// Either an explicit list or a log-spaced range, in nm.
struct SeparationSpec {
  std::vector<double> list_nm;
  std::optional<SeparationRange> range;
  bool operator==(const SeparationSpec&) const = default;
};

/// Log-spaced imaginary-frequency grid for the epsilon/alpha dumps.
struct GridSpec {
  double xi_min = 1e12; // rad/s
  double xi_max = 1e18; // rad/s
  std::size_t count = 61;
  bool operator==(const GridSpec&) const = default;
};

struct VariantSpec {
  std::string label;
  std::optional<AtomSpec> atom; // inherits the reference atom when absent
  std::optional<WallSpec> wall; // inherits the reference wall when absent
  std::optional<SeparationSpec> separations;
  bool operator==(const VariantSpec&) const = default;
};

struct TableSpec {
  std::string reference_label = "a";
  std::vector<VariantSpec> variants;
  bool operator==(const TableSpec&) const = default;
};

enum class OutputFormat { Csv, Json };

struct OutputSpec {
  OutputFormat format = OutputFormat::Csv;
  std::string path = "-"; // "-" is stdout
  bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
  std::string source; // file the config was read from (informational, not compared)
  AtomSpec atom;
  WallSpec wall;
  SeparationSpec separations;
  double temperature_K = 300.0;
  NumericalTolerances tolerances;
  OutputSpec output;
  GridSpec grid;
  std::optional<TableSpec> table;

  bool operator==(const RunConfig& o) const {
    return atom == o.atom && wall == o.wall && separations == o.separations && temperature_K == o.temperature_K &&
           tolerances == o.tolerances && output == o.output && grid == o.grid && table == o.table;
  }
};

/// Reads, validates and resolves a config file: relative data paths become
/// absolute (relative to the config's directory) and every referenced file is
/// loaded once to validate it.
RunConfig parse_run_config(const std::filesystem::path& path);

/// Same, from JSON text; `base_dir` resolves relative paths, `origin` labels errors.
RunConfig parse_run_config_text(const std::string& json_text, const std::filesystem::path& base_dir,
                                const std::string& origin = "<config>");

/// Canonical JSON for a config; parses back to an equal RunConfig.
std::string serialize_run_config(const RunConfig& config);

PolarizabilityModel build_atom(const AtomSpec& spec);
DielectricModel build_wall(const WallSpec& spec);
KKSettings kk_settings(const WallSpec& spec);

/// Separations in metres, in order.
std::vector<double> separations_m(const SeparationSpec& spec);
std::vector<double> separations_nm(const SeparationSpec& spec);

/// Request for the config's atom and wall at separation a (m).
ComputationRequest make_request(const RunConfig& config, const AtomSpec& atom, const WallSpec& wall, double a);

std::string to_string(OutputFormat format);
OutputFormat parse_output_format(const std::string& text);

} // namespace atomwall
