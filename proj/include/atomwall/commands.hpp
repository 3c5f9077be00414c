#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atomwall/dataio.hpp"

namespace atomwall {

// Implementations of the CLI subcommands. Each renders its complete output as
// text so that identical configs give byte-identical output.

/// Stable 64-bit FNV-1a digest of the canonical config serialization, as hex.
std::string config_digest(const RunConfig& config);

struct SweepRow {
  double a_nm = 0.0;
  double free_energy = 0.0; // J
  double normalized = 0.0;
  std::size_t n_terms = 0;
};

/// Free energies at every separation of the config, evaluated concurrently and
/// returned in separation order.
std::vector<SweepRow> compute_sweep(const RunConfig& config);

std::string cmd_energy(const RunConfig& config, OutputFormat format);
std::string cmd_sweep(const RunConfig& config, OutputFormat format);
std::string cmd_table(const RunConfig& config, OutputFormat format);
std::string cmd_epsilon(const RunConfig& config, OutputFormat format);
std::string cmd_alpha(const RunConfig& config, OutputFormat format);

/// Dispatch by subcommand name (energy, sweep, table, epsilon, alpha). The
/// config's output format applies unless `format` is given.
std::string run_command(std::string_view name, const RunConfig& config, std::optional<OutputFormat> format = {});

/// Runs fn(0..count-1) on a small thread pool; results in index order. The
/// exception of the lowest failing index is rethrown.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn fn);

} // namespace atomwall

#include "atomwall/detail/parallel.hpp"
