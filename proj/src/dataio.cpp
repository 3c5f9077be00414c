#include "atomwall/dataio.hpp"

#include "atomwall/constants.hpp"
#include "atomwall/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace atomwall {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Text tables

struct DataLine {
  std::size_t line = 0;
  std::vector<double> values;
};

std::string location(const fs::path& path, std::size_t line) { return path.string() + ":" + std::to_string(line); }

std::vector<DataLine> read_columns(const fs::path& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<DataLine> out;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    for (char& ch : text)
      if (ch == ',') ch = ' ';
    std::istringstream fields(text);
    std::string token;
    DataLine row{line_no, {}};
    while (fields >> token) {
      double v = 0.0;
      const auto* first = token.data();
      const auto* last = token.data() + token.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last)
        throw ValidationError(location(path, line_no), "cannot parse '" + token + "' as a number");
      if (!std::isfinite(v)) throw ValidationError(location(path, line_no), "non-finite value '" + token + "'");
      row.values.push_back(v);
    }
    if (row.values.empty()) continue;
    if (row.values.size() != columns)
      throw ValidationError(location(path, line_no), "expected " + std::to_string(columns) + " columns, found " +
                                                         std::to_string(row.values.size()));
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON helpers. Field locations are "origin:/json/pointer".

struct Ctx {
  std::string origin;
  fs::path base_dir;
  bool load_files = true;

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ValidationError(origin + ":" + field, what);
  }
  [[noreturn]] void config_fail(const std::string& field, const std::string& what) const {
    throw ConfigurationError(origin + ":" + field + ": " + what);
  }
};

void check_keys(const Ctx& ctx, const json& obj, const std::string& field, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) ctx.fail(field, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items())
    if (!ok.count(item.key())) ctx.fail(field + "/" + item.key(), "unknown key");
}

double get_number(const Ctx& ctx, const json& obj, const std::string& field, const char* key) {
  if (!obj.contains(key)) ctx.fail(field + "/" + key, "missing required number");
  const auto& v = obj.at(key);
  if (!v.is_number()) ctx.fail(field + "/" + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) ctx.fail(field + "/" + key, "expected a finite number");
  return d;
}

std::optional<double> opt_number(const Ctx& ctx, const json& obj, const std::string& field, const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  return get_number(ctx, obj, field, key);
}

std::size_t get_count(const Ctx& ctx, const json& obj, const std::string& field, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) ctx.fail(field + "/" + key, "expected a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

std::string get_string(const Ctx& ctx, const json& obj, const std::string& field, const char* key) {
  if (!obj.contains(key)) ctx.fail(field + "/" + key, "missing required string");
  if (!obj.at(key).is_string()) ctx.fail(field + "/" + key, "expected a string");
  return obj.at(key).get<std::string>();
}

std::string resolve_path(const Ctx& ctx, const std::string& file) {
  fs::path p(file);
  if (p.is_relative()) p = ctx.base_dir / p;
  return p.lexically_normal().string();
}

void require_file(const Ctx& ctx, const std::string& field, const std::string& file) {
  if (!fs::exists(file)) ctx.config_fail(field, "referenced file does not exist: " + file);
}

AtomSpec parse_atom(const Ctx& ctx, const json& j, const std::string& field) {
  check_keys(ctx, j, field, {"model", "alpha0_au", "file", "terms", "single_oscillator_fit"});
  AtomSpec spec;
  spec.model = get_string(ctx, j, field, "model");
  if (j.contains("single_oscillator_fit")) {
    if (!j.at("single_oscillator_fit").is_boolean()) ctx.fail(field + "/single_oscillator_fit", "expected a boolean");
    spec.single_oscillator_fit = j.at("single_oscillator_fit").get<bool>();
  }
  if (spec.model == "static") {
    spec.alpha0_au = get_number(ctx, j, field, "alpha0_au");
    if (*spec.alpha0_au < 0.0) ctx.fail(field + "/alpha0_au", "must be >= 0");
    if (spec.single_oscillator_fit) ctx.config_fail(field, "a static polarizability cannot be fitted by an oscillator");
  } else if (spec.model == "oscillators") {
    if (j.contains("file") == j.contains("terms")) ctx.fail(field, "oscillators need exactly one of 'file' or 'terms'");
    if (j.contains("file")) {
      spec.file = resolve_path(ctx, get_string(ctx, j, field, "file"));
      require_file(ctx, field + "/file", *spec.file);
    } else {
      const auto& terms = j.at("terms");
      if (!terms.is_array() || terms.empty()) ctx.fail(field + "/terms", "expected a non-empty array");
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string f = field + "/terms/" + std::to_string(i);
        check_keys(ctx, terms[i], f, {"omega_eV", "f"});
        OscillatorTermSpec t{get_number(ctx, terms[i], f, "omega_eV"), get_number(ctx, terms[i], f, "f")};
        if (!(t.omega_eV > 0.0) || !(t.strength > 0.0)) ctx.fail(f, "oscillator frequency and strength must be positive");
        spec.terms.push_back(t);
      }
    }
  } else if (spec.model == "tabulated") {
    spec.file = resolve_path(ctx, get_string(ctx, j, field, "file"));
    require_file(ctx, field + "/file", *spec.file);
  } else {
    ctx.config_fail(field + "/model", "unknown polarizability model '" + spec.model +
                                          "' (expected static, oscillators or tabulated)");
  }
  return spec;
}

WallSpec parse_wall(const Ctx& ctx, const json& j, const std::string& field) {
  check_keys(ctx, j, field, {"model", "omega_p_eV", "eps0", "terms", "file", "kind", "drude", "tail_exponent", "kk_rel_tol"});
  WallSpec spec;
  spec.model = get_string(ctx, j, field, "model");
  if (auto v = opt_number(ctx, j, field, "kk_rel_tol")) spec.kk_rel_tol = *v;
  if (!(spec.kk_rel_tol > 0.0 && spec.kk_rel_tol <= 1e-2)) ctx.fail(field + "/kk_rel_tol", "must lie in (0, 1e-2]");

  if (spec.model == "ideal_metal") {
  } else if (spec.model == "plasma") {
    spec.omega_p_eV = get_number(ctx, j, field, "omega_p_eV");
    if (!(*spec.omega_p_eV > 0.0)) ctx.fail(field + "/omega_p_eV", "must be positive");
  } else if (spec.model == "static") {
    spec.eps0 = get_number(ctx, j, field, "eps0");
    if (!(*spec.eps0 >= 1.0)) ctx.fail(field + "/eps0", "must be >= 1");
  } else if (spec.model == "ninham_parsegian") {
    if (!j.contains("terms") || !j.at("terms").is_array() || j.at("terms").empty())
      ctx.fail(field + "/terms", "expected a non-empty array");
    const auto& terms = j.at("terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string f = field + "/terms/" + std::to_string(i);
      check_keys(ctx, terms[i], f, {"C", "omega_eV"});
      NinhamParsegianTermSpec t{get_number(ctx, terms[i], f, "C"), get_number(ctx, terms[i], f, "omega_eV")};
      if (!(t.strength > 0.0) || !(t.omega_eV > 0.0)) ctx.fail(f, "C and omega_eV must be positive");
      spec.terms.push_back(t);
    }
  } else if (spec.model == "tabulated") {
    spec.file = resolve_path(ctx, get_string(ctx, j, field, "file"));
    require_file(ctx, field + "/file", *spec.file);
    const std::string kind = get_string(ctx, j, field, "kind");
    if (kind == "metal")
      spec.kind = MaterialKind::Metal;
    else if (kind == "dielectric")
      spec.kind = MaterialKind::Dielectric;
    else
      ctx.fail(field + "/kind", "expected 'metal' or 'dielectric'");
    if (j.contains("drude")) {
      const std::string f = field + "/drude";
      check_keys(ctx, j.at("drude"), f, {"omega_p_eV", "nu_eV"});
      DrudeSpec d{get_number(ctx, j.at("drude"), f, "omega_p_eV"), get_number(ctx, j.at("drude"), f, "nu_eV")};
      if (!(d.omega_p_eV > 0.0) || !(d.nu_eV > 0.0)) ctx.fail(f, "omega_p_eV and nu_eV must be positive");
      spec.drude = d;
    }
    if (spec.kind == MaterialKind::Metal && !spec.drude)
      ctx.config_fail(field + "/drude",
                      "a metal optical table needs Drude completion parameters {omega_p_eV, nu_eV}; none are assumed");
    if (auto v = opt_number(ctx, j, field, "tail_exponent")) spec.tail_exponent = *v;
    if (!(spec.tail_exponent >= 1.0 && spec.tail_exponent <= 10.0))
      ctx.fail(field + "/tail_exponent", "must lie in [1, 10]");
  } else {
    ctx.config_fail(field + "/model", "unknown wall model '" + spec.model +
                                          "' (expected ideal_metal, plasma, static, ninham_parsegian or tabulated)");
  }
  return spec;
}

SeparationSpec parse_separations(const Ctx& ctx, const json& j, const std::string& field) {
  SeparationSpec spec;
  if (j.is_array()) {
    if (j.empty()) ctx.fail(field, "needs at least one separation");
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number()) ctx.fail(field + "/" + std::to_string(i), "expected a number");
      spec.list_nm.push_back(j[i].get<double>());
    }
  } else if (j.is_object()) {
    check_keys(ctx, j, field, {"from", "to", "count"});
    SeparationRange r;
    r.from_nm = get_number(ctx, j, field, "from");
    r.to_nm = get_number(ctx, j, field, "to");
    if (!j.contains("count")) ctx.fail(field + "/count", "missing required integer");
    r.count = get_count(ctx, j, field, "count");
    if (r.count == 1 && r.from_nm != r.to_nm) ctx.fail(field, "a single-point range needs from == to");
    spec.range = r;
  } else {
    ctx.fail(field, "expected a list of nm values or {from, to, count}");
  }
  const auto nm = separations_nm(spec);
  for (std::size_t i = 0; i < nm.size(); ++i) {
    if (!(nm[i] > 0.0) || !std::isfinite(nm[i])) ctx.fail(field, "separations must be positive");
    if (i > 0 && !(nm[i] > nm[i - 1])) ctx.fail(field, "separations must be strictly increasing");
    const double a = nm[i] / 1e9;
    if (a < min_separation || a > max_separation) ctx.fail(field, "separations must lie within [1, 1e5] nm");
  }
  return spec;
}

json atom_to_json(const AtomSpec& s) {
  json j;
  j["model"] = s.model;
  if (s.alpha0_au) j["alpha0_au"] = *s.alpha0_au;
  if (s.file) j["file"] = *s.file;
  if (!s.terms.empty()) {
    j["terms"] = json::array();
    for (const auto& t : s.terms) j["terms"].push_back({{"omega_eV", t.omega_eV}, {"f", t.strength}});
  }
  if (s.single_oscillator_fit) j["single_oscillator_fit"] = true;
  return j;
}

json wall_to_json(const WallSpec& s) {
  json j;
  j["model"] = s.model;
  if (s.omega_p_eV) j["omega_p_eV"] = *s.omega_p_eV;
  if (s.eps0) j["eps0"] = *s.eps0;
  if (!s.terms.empty()) {
    j["terms"] = json::array();
    for (const auto& t : s.terms) j["terms"].push_back({{"C", t.strength}, {"omega_eV", t.omega_eV}});
  }
  if (s.file) j["file"] = *s.file;
  if (s.kind) j["kind"] = to_string(*s.kind);
  if (s.drude) j["drude"] = {{"omega_p_eV", s.drude->omega_p_eV}, {"nu_eV", s.drude->nu_eV}};
  if (s.model == "tabulated") j["tail_exponent"] = s.tail_exponent;
  j["kk_rel_tol"] = s.kk_rel_tol;
  return j;
}

json separations_to_json(const SeparationSpec& s) {
  if (s.range) return {{"from", s.range->from_nm}, {"to", s.range->to_nm}, {"count", s.range->count}};
  return s.list_nm;
}

RunConfig parse_json(const json& root, const Ctx& ctx) {
  check_keys(ctx, root, "", {"atom", "wall", "separations_nm", "temperature_K", "tolerances", "output", "grid", "table"});
  RunConfig cfg;
  cfg.source = ctx.origin;
  if (!root.contains("atom")) ctx.fail("/atom", "missing required section");
  if (!root.contains("wall")) ctx.fail("/wall", "missing required section");
  if (!root.contains("separations_nm")) ctx.fail("/separations_nm", "missing required section");
  cfg.atom = parse_atom(ctx, root.at("atom"), "/atom");
  cfg.wall = parse_wall(ctx, root.at("wall"), "/wall");
  cfg.separations = parse_separations(ctx, root.at("separations_nm"), "/separations_nm");
  cfg.temperature_K = get_number(ctx, root, "", "temperature_K");
  if (!(cfg.temperature_K > 0.0)) ctx.fail("/temperature_K", "must be positive");

  if (root.contains("tolerances")) {
    const auto& t = root.at("tolerances");
    check_keys(ctx, t, "/tolerances", {"series_rel_tol", "quad_rel_tol", "max_terms", "consecutive_small"});
    if (auto v = opt_number(ctx, t, "/tolerances", "series_rel_tol")) cfg.tolerances.series_rel_tol = *v;
    if (auto v = opt_number(ctx, t, "/tolerances", "quad_rel_tol")) cfg.tolerances.quad_rel_tol = *v;
    if (t.contains("max_terms")) cfg.tolerances.max_terms = get_count(ctx, t, "/tolerances", "max_terms");
    if (t.contains("consecutive_small"))
      cfg.tolerances.consecutive_small = get_count(ctx, t, "/tolerances", "consecutive_small");
    try {
      validate(cfg.tolerances);
    } catch (const ConfigurationError& e) {
      ctx.fail("/tolerances", e.what());
    }
  }

  if (root.contains("output")) {
    const auto& o = root.at("output");
    check_keys(ctx, o, "/output", {"format", "path"});
    if (o.contains("format")) {
      try {
        cfg.output.format = parse_output_format(get_string(ctx, o, "/output", "format"));
      } catch (const UsageError& e) {
        ctx.fail("/output/format", e.what());
      }
    }
    if (o.contains("path")) {
      cfg.output.path = get_string(ctx, o, "/output", "path");
      if (cfg.output.path != "-") cfg.output.path = resolve_path(ctx, cfg.output.path);
    }
  }

  if (root.contains("grid")) {
    const auto& g = root.at("grid");
    check_keys(ctx, g, "/grid", {"xi_min_rad_s", "xi_max_rad_s", "count"});
    cfg.grid.xi_min = get_number(ctx, g, "/grid", "xi_min_rad_s");
    cfg.grid.xi_max = get_number(ctx, g, "/grid", "xi_max_rad_s");
    if (g.contains("count")) cfg.grid.count = get_count(ctx, g, "/grid", "count");
    if (!(cfg.grid.xi_min > 0.0) || !(cfg.grid.xi_max >= cfg.grid.xi_min))
      ctx.fail("/grid", "need 0 < xi_min_rad_s <= xi_max_rad_s");
    if (cfg.grid.count < 2 && cfg.grid.xi_min != cfg.grid.xi_max) ctx.fail("/grid/count", "needs >= 2 points");
  }

  if (root.contains("table")) {
    const auto& t = root.at("table");
    check_keys(ctx, t, "/table", {"reference_label", "variants"});
    TableSpec table;
    if (t.contains("reference_label")) table.reference_label = get_string(ctx, t, "/table", "reference_label");
    if (!t.contains("variants") || !t.at("variants").is_array() || t.at("variants").empty())
      ctx.fail("/table/variants", "expected a non-empty array of variants");
    const auto& vs = t.at("variants");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const std::string f = "/table/variants/" + std::to_string(i);
      check_keys(ctx, vs[i], f, {"label", "atom", "wall", "separations_nm"});
      VariantSpec v;
      v.label = get_string(ctx, vs[i], f, "label");
      if (v.label.empty() || v.label.find_first_of(",\"\n") != std::string::npos)
        ctx.fail(f + "/label", "labels must be non-empty without commas, quotes or newlines");
      if (vs[i].contains("atom")) v.atom = parse_atom(ctx, vs[i].at("atom"), f + "/atom");
      if (vs[i].contains("wall")) v.wall = parse_wall(ctx, vs[i].at("wall"), f + "/wall");
      if (vs[i].contains("separations_nm"))
        v.separations = parse_separations(ctx, vs[i].at("separations_nm"), f + "/separations_nm");
      table.variants.push_back(std::move(v));
    }
    cfg.table = std::move(table);
  }

  if (ctx.load_files) {
    // Load every referenced file once so that bad data fails at parse time.
    auto check_models = [&](const AtomSpec& atom, const WallSpec& wall, const std::string& field) {
      try {
        build_atom(atom);
        build_wall(wall);
      } catch (const ValidationError&) {
        throw;
      } catch (const IoError&) {
        throw;
      } catch (const Error& e) {
        ctx.config_fail(field, e.what());
      }
    };
    check_models(cfg.atom, cfg.wall, "/");
    if (cfg.table)
      for (std::size_t i = 0; i < cfg.table->variants.size(); ++i) {
        const auto& v = cfg.table->variants[i];
        check_models(v.atom.value_or(cfg.atom), v.wall.value_or(cfg.wall), "/table/variants/" + std::to_string(i));
      }
  }
  return cfg;
}

} // namespace

// ---------------------------------------------------------------------------
// Data files

std::vector<OpticalRow> read_optical_rows(const fs::path& path) {
  std::vector<OpticalRow> rows;
  for (const auto& line : read_columns(path, 3)) {
    const double energy = line.values[0], n = line.values[1], k = line.values[2];
    const auto where = location(path, line.line);
    if (!(energy > 0.0)) throw ValidationError(where, "photon energy must be positive");
    if (n < 0.0) throw ValidationError(where, "n must be non-negative");
    if (k < 0.0) throw ValidationError(where, "k must be non-negative");
    const double omega = ev_to_angular(energy);
    if (!rows.empty() && !(omega > rows.back().omega))
      throw ValidationError(where, "energies must be strictly increasing");
    rows.push_back({omega, n, k});
  }
  return rows;
}

OpticalTable parse_optical_table(const fs::path& path, std::optional<DrudeExtrapolation> low_ext, double tail_exponent) {
  auto rows = read_optical_rows(path);
  if (rows.size() < OpticalTable::min_rows)
    throw ValidationError(path.string(), "optical table needs at least " + std::to_string(OpticalTable::min_rows) +
                                             " data rows, found " + std::to_string(rows.size()));
  try {
    return OpticalTable(std::move(rows), low_ext, tail_exponent);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string(), e.what());
  }
}

OscillatorSet parse_oscillator_file(const fs::path& path) {
  std::vector<Oscillator> entries;
  for (const auto& line : read_columns(path, 2)) {
    const auto where = location(path, line.line);
    if (!(line.values[0] > 0.0)) throw ValidationError(where, "oscillator frequency must be positive");
    if (!(line.values[1] > 0.0)) throw ValidationError(where, "oscillator strength must be positive");
    entries.push_back({line.values[1], ev_to_angular(line.values[0])});
  }
  if (entries.empty()) throw ValidationError(path.string(), "no oscillator rows found");
  return OscillatorSet(std::move(entries));
}

AlphaTable parse_alpha_table(const fs::path& path) {
  std::vector<AlphaRow> rows;
  for (const auto& line : read_columns(path, 2)) {
    const auto where = location(path, line.line);
    const double xi_eV = line.values[0], alpha_au = line.values[1];
    if (xi_eV < 0.0) throw ValidationError(where, "frequency must be non-negative");
    if (!(alpha_au > 0.0)) throw ValidationError(where, "polarizability must be positive");
    if (rows.empty() && xi_eV != 0.0) throw ValidationError(where, "first row must be the static value at xi = 0");
    const AlphaRow row{ev_to_angular(xi_eV), au_volume_to_si(alpha_au)};
    if (!rows.empty()) {
      if (!(row.xi > rows.back().xi)) throw ValidationError(where, "frequencies must be strictly increasing");
      if (row.alpha > rows.back().alpha) throw ValidationError(where, "polarizability must be non-increasing");
    }
    rows.push_back(row);
  }
  if (rows.size() < 2) throw ValidationError(path.string(), "polarizability table needs at least two rows");
  return AlphaTable(std::move(rows));
}

// ---------------------------------------------------------------------------
// Config

RunConfig parse_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_run_config_text(buffer.str(), fs::absolute(base), path.string());
}

RunConfig parse_run_config_text(const std::string& json_text, const fs::path& base_dir, const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(origin, std::string("invalid JSON: ") + e.what());
  }
  Ctx ctx{origin, base_dir, true};
  return parse_json(root, ctx);
}

std::string serialize_run_config(const RunConfig& c) {
  json j;
  j["atom"] = atom_to_json(c.atom);
  j["wall"] = wall_to_json(c.wall);
  j["separations_nm"] = separations_to_json(c.separations);
  j["temperature_K"] = c.temperature_K;
  j["tolerances"] = {{"series_rel_tol", c.tolerances.series_rel_tol},
                     {"quad_rel_tol", c.tolerances.quad_rel_tol},
                     {"max_terms", c.tolerances.max_terms},
                     {"consecutive_small", c.tolerances.consecutive_small}};
  j["output"] = {{"format", to_string(c.output.format)}, {"path", c.output.path}};
  j["grid"] = {{"xi_min_rad_s", c.grid.xi_min}, {"xi_max_rad_s", c.grid.xi_max}, {"count", c.grid.count}};
  if (c.table) {
    json t;
    t["reference_label"] = c.table->reference_label;
    t["variants"] = json::array();
    for (const auto& v : c.table->variants) {
      json vj;
      vj["label"] = v.label;
      if (v.atom) vj["atom"] = atom_to_json(*v.atom);
      if (v.wall) vj["wall"] = wall_to_json(*v.wall);
      if (v.separations) vj["separations_nm"] = separations_to_json(*v.separations);
      t["variants"].push_back(vj);
    }
    j["table"] = t;
  }
  return j.dump(2);
}

PolarizabilityModel build_atom(const AtomSpec& spec) {
  PolarizabilityModel model;
  if (spec.model == "static") {
    model = make_static_alpha(au_volume_to_si(spec.alpha0_au.value_or(0.0)));
  } else if (spec.model == "oscillators") {
    if (spec.file) {
      model = Oscillators{parse_oscillator_file(*spec.file)};
    } else {
      std::vector<Oscillator> entries;
      for (const auto& t : spec.terms) entries.push_back({t.strength, ev_to_angular(t.omega_eV)});
      model = Oscillators{OscillatorSet(std::move(entries))};
    }
  } else if (spec.model == "tabulated") {
    if (!spec.file) throw ConfigurationError("tabulated polarizability needs a file");
    model = TabulatedAlpha{std::make_shared<const AlphaTable>(parse_alpha_table(*spec.file))};
  } else {
    throw ConfigurationError("unknown polarizability model '" + spec.model + "'");
  }
  if (spec.single_oscillator_fit) model = Oscillators{fit_single_oscillator(model)};
  return model;
}

DielectricModel build_wall(const WallSpec& spec) {
  if (spec.model == "ideal_metal") return IdealMetal{};
  if (spec.model == "plasma") return make_plasma(ev_to_angular(spec.omega_p_eV.value_or(0.0)));
  if (spec.model == "static") return make_static_permittivity(spec.eps0.value_or(0.0));
  if (spec.model == "ninham_parsegian") {
    std::vector<NinhamParsegianTerm> terms;
    for (const auto& t : spec.terms) terms.push_back({t.strength, ev_to_angular(t.omega_eV)});
    return make_ninham_parsegian(std::move(terms));
  }
  if (spec.model == "tabulated") {
    if (!spec.file || !spec.kind) throw ConfigurationError("tabulated wall needs a file and a material kind");
    std::optional<DrudeExtrapolation> drude;
    if (spec.drude) drude = DrudeExtrapolation{ev_to_angular(spec.drude->omega_p_eV), ev_to_angular(spec.drude->nu_eV)};
    if (*spec.kind == MaterialKind::Metal && !drude)
      throw ConfigurationError("metal optical table needs Drude completion parameters");
    auto table = std::make_shared<const OpticalTable>(parse_optical_table(*spec.file, drude, spec.tail_exponent));
    return make_tabulated(std::move(table), *spec.kind);
  }
  throw ConfigurationError("unknown wall model '" + spec.model + "'");
}

KKSettings kk_settings(const WallSpec& spec) {
  KKSettings s;
  s.rel_tol = spec.kk_rel_tol;
  return s;
}

std::vector<double> separations_nm(const SeparationSpec& spec) {
  if (!spec.range) return spec.list_nm;
  const auto& r = *spec.range;
  if (r.count == 1) return {r.from_nm};
  std::vector<double> out(r.count);
  for (std::size_t i = 0; i < r.count; ++i) {
    if (i == 0) {
      out[i] = r.from_nm;
    } else if (i + 1 == r.count) {
      out[i] = r.to_nm;
    } else {
      const double t = static_cast<double>(i) / static_cast<double>(r.count - 1);
      out[i] = r.from_nm * std::pow(r.to_nm / r.from_nm, t);
    }
  }
  return out;
}

std::vector<double> separations_m(const SeparationSpec& spec) {
  auto nm = separations_nm(spec);
  for (double& v : nm) v /= 1e9;
  return nm;
}

ComputationRequest make_request(const RunConfig& config, const AtomSpec& atom, const WallSpec& wall, double a) {
  ComputationRequest req;
  req.atom = build_atom(atom);
  req.wall = build_wall(wall);
  req.separation = a;
  req.temperature = config.temperature_K;
  req.tol = config.tolerances;
  req.kk = kk_settings(wall);
  return req;
}

std::string to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw UsageError("unknown output format '" + text + "' (expected csv or json)");
}

} // namespace atomwall
