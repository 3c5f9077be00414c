#include "atomwall/commands.hpp"

#include "atomwall/error.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>

namespace atomwall {

using nlohmann::json;

namespace {

std::string sci(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string fixed6(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string nm(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Models {
  PolarizabilityModel atom;
  DielectricModel wall;
  KKSettings kk;
};

Models load_models(const AtomSpec& atom, const WallSpec& wall) { return {build_atom(atom), build_wall(wall), kk_settings(wall)}; }

ComputationRequest request_for(const RunConfig& config, const Models& m, double a) {
  ComputationRequest req;
  req.atom = m.atom;
  req.wall = m.wall;
  req.separation = a;
  req.temperature = config.temperature_K;
  req.tol = config.tolerances;
  req.kk = m.kk;
  return req;
}

std::vector<double> xi_grid(const GridSpec& g) {
  if (g.count <= 1 || g.xi_min == g.xi_max) return {g.xi_min};
  std::vector<double> xi(g.count);
  for (std::size_t i = 0; i < g.count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(g.count - 1);
    xi[i] = i == 0 ? g.xi_min : (i + 1 == g.count ? g.xi_max : g.xi_min * std::pow(g.xi_max / g.xi_min, t));
  }
  return xi;
}

std::string header(const char* command, const RunConfig& config) {
  return std::string("# atomwall ") + command + "\n# config-digest: " + config_digest(config) + "\n";
}

std::string describe(const AtomSpec& atom, const WallSpec& wall) {
  return "atom=" + atom.model + (atom.single_oscillator_fit ? "(single-oscillator fit)" : "") + " wall=" + wall.model;
}

std::string two_column_dump(const char* command, const RunConfig& config, OutputFormat format,
                            const std::vector<double>& xi, const std::vector<double>& values) {
  if (format == OutputFormat::Json) {
    json j;
    j["command"] = command;
    j["config_digest"] = config_digest(config);
    j["rows"] = json::array();
    for (std::size_t i = 0; i < xi.size(); ++i) j["rows"].push_back({{"xi_rad_s", xi[i]}, {"value", values[i]}});
    return j.dump(2) + "\n";
  }
  std::string out = header(command, config);
  out += "xi_rad_s,value\n";
  for (std::size_t i = 0; i < xi.size(); ++i) out += sci(xi[i]) + "," + sci(values[i]) + "\n";
  return out;
}

} // namespace

std::string config_digest(const RunConfig& config) {
  const std::string text = serialize_run_config(config);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::vector<SweepRow> compute_sweep(const RunConfig& config) {
  const Models models = load_models(config.atom, config.wall);
  const auto a_nm = separations_nm(config.separations);
  return parallel_map<SweepRow>(a_nm.size(), [&](std::size_t i) {
    const auto res = free_energy(request_for(config, models, a_nm[i] / 1e9));
    return SweepRow{a_nm[i], res.free_energy, res.normalized, res.n_terms_used};
  });
}

std::string cmd_energy(const RunConfig& config, OutputFormat format) {
  const auto a_nm = separations_nm(config.separations);
  if (a_nm.empty()) throw UsageError("energy needs at least one separation");
  const Models models = load_models(config.atom, config.wall);
  auto res = free_energy(request_for(config, models, a_nm.front() / 1e9));
  if (a_nm.size() > 1)
    res.warnings.push_back("config lists " + std::to_string(a_nm.size()) +
                           " separations; energy evaluates the first, use sweep for all");

  if (format == OutputFormat::Json) {
    json j;
    j["command"] = "energy";
    j["config_digest"] = config_digest(config);
    j["a_nm"] = a_nm.front();
    j["free_energy_J"] = res.free_energy;
    j["abs_free_energy_J"] = std::abs(res.free_energy);
    j["normalized"] = number_or_null(res.normalized);
    j["n_terms"] = res.n_terms_used;
    j["classical_term_J"] = res.classical_term;
    j["max_quad_nodes"] = res.max_quad_nodes;
    j["warnings"] = res.warnings;
    return j.dump(2) + "\n";
  }
  std::string out = header("energy", config);
  for (const auto& w : res.warnings) out += "# warning: " + w + "\n";
  out += "a_nm,free_energy_J,abs_free_energy_J,normalized,n_terms,classical_term_J,max_quad_nodes\n";
  out += nm(a_nm.front()) + "," + sci(res.free_energy) + "," + sci(std::abs(res.free_energy)) + "," +
         sci(res.normalized) + "," + std::to_string(res.n_terms_used) + "," + sci(res.classical_term) + "," +
         std::to_string(res.max_quad_nodes) + "\n";
  return out;
}

std::string cmd_sweep(const RunConfig& config, OutputFormat format) {
  const auto rows = compute_sweep(config);
  if (format == OutputFormat::Json) {
    json j;
    j["command"] = "sweep";
    j["config_digest"] = config_digest(config);
    j["rows"] = json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"a_nm", r.a_nm},
                           {"free_energy_J", r.free_energy},
                           {"normalized", number_or_null(r.normalized)},
                           {"n_terms", r.n_terms}});
    return j.dump(2) + "\n";
  }
  std::string out = header("sweep", config);
  out += "a_nm,free_energy_J,normalized,n_terms\n";
  for (const auto& r : rows)
    out += nm(r.a_nm) + "," + sci(r.free_energy) + "," + sci(r.normalized) + "," + std::to_string(r.n_terms) + "\n";
  return out;
}

std::string cmd_table(const RunConfig& config, OutputFormat format) {
  if (!config.table) throw UsageError("table needs a 'table' section with variants");
  const auto& table = *config.table;
  const auto a_nm = separations_nm(config.separations);
  for (const auto& v : table.variants)
    if (v.separations && separations_nm(*v.separations) != a_nm)
      throw UsageError("variant '" + v.label + "' declares separations that differ from the reference");

  std::vector<Models> combos;
  combos.push_back(load_models(config.atom, config.wall));
  for (const auto& v : table.variants)
    combos.push_back(load_models(v.atom.value_or(config.atom), v.wall.value_or(config.wall)));

  // One cell per (separation, combo); combo 0 is the reference.
  const std::size_t width = combos.size();
  const auto energies = parallel_map<double>(a_nm.size() * width, [&](std::size_t cell) {
    const auto& m = combos[cell % width];
    return free_energy(request_for(config, m, a_nm[cell / width] / 1e9)).free_energy;
  });

  std::vector<std::vector<double>> factors(a_nm.size(), std::vector<double>(table.variants.size()));
  for (std::size_t i = 0; i < a_nm.size(); ++i) {
    const double ref = energies[i * width];
    if (ref == 0.0) throw DomainError("reference free energy is zero at a = " + nm(a_nm[i]) + " nm");
    for (std::size_t v = 0; v < table.variants.size(); ++v) factors[i][v] = energies[i * width + v + 1] / ref;
  }

  if (format == OutputFormat::Json) {
    json j;
    j["command"] = "table";
    j["config_digest"] = config_digest(config);
    j["reference"] = {{"label", table.reference_label}, {"models", describe(config.atom, config.wall)}};
    j["variants"] = json::array();
    for (const auto& v : table.variants)
      j["variants"].push_back(
          {{"label", v.label}, {"models", describe(v.atom.value_or(config.atom), v.wall.value_or(config.wall))}});
    j["rows"] = json::array();
    for (std::size_t i = 0; i < a_nm.size(); ++i) {
      json row{{"a_nm", a_nm[i]}, {"abs_free_energy_J", std::abs(energies[i * width])}};
      json f;
      for (std::size_t v = 0; v < table.variants.size(); ++v) f[table.variants[v].label] = factors[i][v];
      row["factors"] = f;
      j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
  }

  std::string out = header("table", config);
  out += "# " + table.reference_label + " (reference): " + describe(config.atom, config.wall) + "\n";
  for (const auto& v : table.variants)
    out += "# " + v.label + ": " + describe(v.atom.value_or(config.atom), v.wall.value_or(config.wall)) + "\n";
  out += "a_nm,abs_free_energy_J";
  for (const auto& v : table.variants) out += "," + v.label;
  out += "\n";
  for (std::size_t i = 0; i < a_nm.size(); ++i) {
    out += nm(a_nm[i]) + "," + sci(std::abs(energies[i * width]));
    for (double f : factors[i]) out += "," + fixed6(f);
    out += "\n";
  }
  return out;
}

std::string cmd_epsilon(const RunConfig& config, OutputFormat format) {
  const auto wall = build_wall(config.wall);
  if (std::holds_alternative<IdealMetal>(wall))
    throw UsageError("an ideal metal has no finite permittivity to dump");
  const auto kk = kk_settings(config.wall);
  const auto xi = xi_grid(config.grid);
  const auto values = parallel_map<double>(xi.size(), [&](std::size_t i) { return eps_iw(wall, xi[i], kk); });
  return two_column_dump("epsilon", config, format, xi, values);
}

std::string cmd_alpha(const RunConfig& config, OutputFormat format) {
  const auto atom = build_atom(config.atom);
  const auto xi = xi_grid(config.grid);
  std::vector<double> values(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) values[i] = alpha_iw(atom, xi[i]);
  return two_column_dump("alpha", config, format, xi, values);
}

std::string run_command(std::string_view name, const RunConfig& config, std::optional<OutputFormat> format) {
  const OutputFormat f = format.value_or(config.output.format);
  if (name == "energy") return cmd_energy(config, f);
  if (name == "sweep") return cmd_sweep(config, f);
  if (name == "table") return cmd_table(config, f);
  if (name == "epsilon") return cmd_epsilon(config, f);
  if (name == "alpha") return cmd_alpha(config, f);
  throw UsageError("unknown command '" + std::string(name) + "'");
}

} // namespace atomwall
