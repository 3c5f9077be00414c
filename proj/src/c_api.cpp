#include "atomwall/atomwall.h"

#include "atomwall/commands.hpp"
#include "atomwall/constants.hpp"
#include "atomwall/dataio.hpp"
#include "atomwall/error.hpp"
#include "atomwall/lifshitz.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct aw_dielectric {
  atomwall::DielectricModel model;
  atomwall::KKSettings kk;
};

struct aw_polarizability {
  atomwall::PolarizabilityModel model;
};

struct aw_result {
  atomwall::FreeEnergyResult result;
};

struct aw_config {
  atomwall::RunConfig config;
};

namespace {

thread_local std::string last_error;

aw_status status_of(atomwall::ErrorKind kind) {
  using atomwall::ErrorKind;
  switch (kind) {
  case ErrorKind::Domain: return AW_ERR_DOMAIN;
  case ErrorKind::Configuration: return AW_ERR_CONFIG;
  case ErrorKind::Validation: return AW_ERR_VALIDATION;
  case ErrorKind::Numerical: return AW_ERR_NUMERICAL;
  case ErrorKind::Usage: return AW_ERR_USAGE;
  case ErrorKind::Io: return AW_ERR_IO;
  }
  return AW_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
aw_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return AW_OK;
  } catch (const atomwall::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return AW_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return AW_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return AW_ERR_INTERNAL;
  }
}

aw_status null_argument(const char* name) {
  last_error = std::string("null argument: ") + name;
  return AW_ERR_NULL_ARGUMENT;
}

#define AW_REQUIRE(ptr)                                                                                           \
  do {                                                                                                             \
    if (!(ptr)) return null_argument(#ptr);                                                                        \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

atomwall::NumericalTolerances tolerances(const aw_tolerances* tol) {
  atomwall::NumericalTolerances t;
  if (tol) {
    t.series_rel_tol = tol->series_rel_tol;
    t.quad_rel_tol = tol->quad_rel_tol;
    t.max_terms = tol->max_terms;
    t.consecutive_small = tol->consecutive_small;
  }
  return t;
}

atomwall::ComputationRequest request(const aw_polarizability* atom, const aw_dielectric* wall, double a, double T,
                                     const aw_tolerances* tol) {
  atomwall::ComputationRequest req;
  req.atom = atom->model;
  req.wall = wall->model;
  req.separation = a;
  req.temperature = T;
  req.tol = tolerances(tol);
  req.kk = wall->kk;
  return req;
}

} // namespace

extern "C" {

const char* aw_last_error(void) { return last_error.c_str(); }

const char* aw_status_name(aw_status status) {
  switch (status) {
  case AW_OK: return "ok";
  case AW_ERR_DOMAIN: return "domain error";
  case AW_ERR_CONFIG: return "configuration error";
  case AW_ERR_VALIDATION: return "validation error";
  case AW_ERR_NUMERICAL: return "numerical error";
  case AW_ERR_USAGE: return "usage error";
  case AW_ERR_IO: return "i/o error";
  case AW_ERR_NULL_ARGUMENT: return "null argument";
  case AW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* aw_version(void) { return "0.1.0"; }

aw_status aw_ev_to_angular(double x_eV, double* out) {
  AW_REQUIRE(out);
  return guarded([&] { *out = atomwall::ev_to_angular(x_eV); });
}

aw_status aw_au_volume_to_si(double x_au, double* out) {
  AW_REQUIRE(out);
  return guarded([&] { *out = atomwall::au_volume_to_si(x_au); });
}

// --- dielectric -----------------------------------------------------------

aw_status aw_dielectric_ideal_metal(aw_dielectric** out) {
  AW_REQUIRE(out);
  return guarded([&] { *out = new aw_dielectric{atomwall::IdealMetal{}, {}}; });
}

aw_status aw_dielectric_plasma(double omega_p, aw_dielectric** out) {
  AW_REQUIRE(out);
  return guarded([&] { *out = new aw_dielectric{atomwall::make_plasma(omega_p), {}}; });
}

aw_status aw_dielectric_static(double eps_static, aw_dielectric** out) {
  AW_REQUIRE(out);
  return guarded([&] { *out = new aw_dielectric{atomwall::make_static_permittivity(eps_static), {}}; });
}

aw_status aw_dielectric_ninham_parsegian(const double* strengths, const double* omegas, size_t n,
                                         aw_dielectric** out) {
  AW_REQUIRE(out);
  AW_REQUIRE(strengths);
  AW_REQUIRE(omegas);
  return guarded([&] {
    std::vector<atomwall::NinhamParsegianTerm> terms;
    for (size_t i = 0; i < n; ++i) terms.push_back({strengths[i], omegas[i]});
    *out = new aw_dielectric{atomwall::make_ninham_parsegian(std::move(terms)), {}};
  });
}

aw_status aw_dielectric_tabulated_file(const char* path, aw_material_kind kind, double drude_omega_p, double drude_nu,
                                       double tail_exponent, double kk_rel_tol, aw_dielectric** out) {
  AW_REQUIRE(out);
  AW_REQUIRE(path);
  return guarded([&] {
    std::optional<atomwall::DrudeExtrapolation> drude;
    if (drude_omega_p != 0.0 || drude_nu != 0.0) drude = atomwall::DrudeExtrapolation{drude_omega_p, drude_nu};
    const auto mk = kind == AW_METAL ? atomwall::MaterialKind::Metal : atomwall::MaterialKind::Dielectric;
    auto table = std::make_shared<const atomwall::OpticalTable>(atomwall::parse_optical_table(path, drude, tail_exponent));
    atomwall::KKSettings kk;
    kk.rel_tol = kk_rel_tol;
    if (!(kk_rel_tol > 0.0 && kk_rel_tol <= 1e-2)) throw atomwall::ConfigurationError("kk_rel_tol must lie in (0, 1e-2]");
    *out = new aw_dielectric{atomwall::make_tabulated(std::move(table), mk), kk};
  });
}

void aw_dielectric_free(aw_dielectric* d) { delete d; }

aw_status aw_dielectric_eps_iw(const aw_dielectric* d, double xi, double* out) {
  AW_REQUIRE(d);
  AW_REQUIRE(out);
  return guarded([&] { *out = atomwall::eps_iw(d->model, xi, d->kk); });
}

aw_status aw_dielectric_f0(const aw_dielectric* d, double* out) {
  AW_REQUIRE(d);
  AW_REQUIRE(out);
  return guarded([&] { *out = atomwall::f0(d->model, d->kk); });
}

aw_status aw_dielectric_kind(const aw_dielectric* d, aw_material_kind* out) {
  AW_REQUIRE(d);
  AW_REQUIRE(out);
  return guarded([&] {
    *out = atomwall::material_kind(d->model) == atomwall::MaterialKind::Metal ? AW_METAL : AW_DIELECTRIC;
  });
}

// --- polarizability --------------------------------------------------------

aw_status aw_polarizability_static(double alpha0, aw_polarizability** out) {
  AW_REQUIRE(out);
  return guarded([&] { *out = new aw_polarizability{atomwall::make_static_alpha(alpha0)}; });
}

aw_status aw_polarizability_oscillators(const double* strengths, const double* omegas, size_t n,
                                        aw_polarizability** out) {
  AW_REQUIRE(out);
  AW_REQUIRE(strengths);
  AW_REQUIRE(omegas);
  return guarded([&] {
    std::vector<atomwall::Oscillator> entries;
    for (size_t i = 0; i < n; ++i) entries.push_back({strengths[i], omegas[i]});
    *out = new aw_polarizability{atomwall::Oscillators{atomwall::OscillatorSet(std::move(entries))}};
  });
}

aw_status aw_polarizability_oscillator_file(const char* path, aw_polarizability** out) {
  AW_REQUIRE(out);
  AW_REQUIRE(path);
  return guarded([&] { *out = new aw_polarizability{atomwall::Oscillators{atomwall::parse_oscillator_file(path)}}; });
}

aw_status aw_polarizability_tabulated_file(const char* path, aw_polarizability** out) {
  AW_REQUIRE(out);
  AW_REQUIRE(path);
  return guarded([&] {
    auto table = std::make_shared<const atomwall::AlphaTable>(atomwall::parse_alpha_table(path));
    *out = new aw_polarizability{atomwall::TabulatedAlpha{std::move(table)}};
  });
}

aw_status aw_polarizability_fit_single_oscillator(const aw_polarizability* p, aw_polarizability** out) {
  AW_REQUIRE(p);
  AW_REQUIRE(out);
  return guarded([&] { *out = new aw_polarizability{atomwall::Oscillators{atomwall::fit_single_oscillator(p->model)}}; });
}

void aw_polarizability_free(aw_polarizability* p) { delete p; }

aw_status aw_polarizability_alpha_iw(const aw_polarizability* p, double xi, double* out) {
  AW_REQUIRE(p);
  AW_REQUIRE(out);
  return guarded([&] { *out = atomwall::alpha_iw(p->model, xi); });
}

aw_status aw_polarizability_static_alpha(const aw_polarizability* p, double* out) {
  AW_REQUIRE(p);
  AW_REQUIRE(out);
  return guarded([&] { *out = atomwall::static_alpha(p->model); });
}

// --- lifshitz --------------------------------------------------------------

aw_tolerances aw_default_tolerances(void) {
  const atomwall::NumericalTolerances t;
  return {t.series_rel_tol, t.quad_rel_tol, t.max_terms, t.consecutive_small};
}

aw_status aw_matsubara_zeta(size_t l, double a, double T, double* out) {
  AW_REQUIRE(out);
  return guarded([&] { *out = atomwall::matsubara_zeta(l, a, T); });
}

aw_status aw_reflection_par(double eps, double zeta, double y, double* out) {
  AW_REQUIRE(out);
  return guarded([&] { *out = atomwall::reflection_par(eps, zeta, y); });
}

aw_status aw_reflection_perp(double eps, double zeta, double y, double* out) {
  AW_REQUIRE(out);
  return guarded([&] { *out = atomwall::reflection_perp(eps, zeta, y); });
}

aw_status aw_matsubara_integral(double eps, double zeta, double quad_rel_tol, double* out) {
  AW_REQUIRE(out);
  return guarded([&] { *out = atomwall::matsubara_integral(eps, zeta, quad_rel_tol).value; });
}

aw_status aw_ideal_metal_integral(double zeta, double* out) {
  AW_REQUIRE(out);
  return guarded([&] { *out = atomwall::ideal_metal_integral(zeta); });
}

aw_status aw_casimir_polder_energy(double alpha0, double a, double* out) {
  AW_REQUIRE(out);
  return guarded([&] { *out = atomwall::casimir_polder_energy(alpha0, a); });
}

aw_status aw_free_energy(const aw_polarizability* atom, const aw_dielectric* wall, double a, double T,
                         const aw_tolerances* tol, aw_result** out) {
  AW_REQUIRE(atom);
  AW_REQUIRE(wall);
  AW_REQUIRE(out);
  return guarded([&] { *out = new aw_result{atomwall::free_energy(request(atom, wall, a, T, tol))}; });
}

aw_status aw_correction_factor(const aw_polarizability* ref_atom, const aw_dielectric* ref_wall,
                               const aw_polarizability* var_atom, const aw_dielectric* var_wall, double a, double T,
                               const aw_tolerances* tol, double* out) {
  AW_REQUIRE(ref_atom);
  AW_REQUIRE(ref_wall);
  AW_REQUIRE(var_atom);
  AW_REQUIRE(var_wall);
  AW_REQUIRE(out);
  return guarded([&] {
    *out = atomwall::correction_factor(request(ref_atom, ref_wall, a, T, tol), request(var_atom, var_wall, a, T, tol));
  });
}

void aw_result_free(aw_result* r) { delete r; }
double aw_result_free_energy(const aw_result* r) { return r ? r->result.free_energy : 0.0; }
double aw_result_classical_term(const aw_result* r) { return r ? r->result.classical_term : 0.0; }
double aw_result_normalized(const aw_result* r) { return r ? r->result.normalized : 0.0; }
size_t aw_result_n_terms(const aw_result* r) { return r ? r->result.n_terms_used : 0; }
size_t aw_result_max_quad_nodes(const aw_result* r) { return r ? r->result.max_quad_nodes : 0; }
size_t aw_result_warning_count(const aw_result* r) { return r ? r->result.warnings.size() : 0; }

const char* aw_result_warning(const aw_result* r, size_t index) {
  if (!r || index >= r->result.warnings.size()) return nullptr;
  return r->result.warnings[index].c_str();
}

// --- configs ---------------------------------------------------------------

aw_status aw_config_load(const char* path, aw_config** out) {
  AW_REQUIRE(path);
  AW_REQUIRE(out);
  return guarded([&] { *out = new aw_config{atomwall::parse_run_config(path)}; });
}

void aw_config_free(aw_config* c) { delete c; }

aw_status aw_config_serialize(const aw_config* c, char** out_text) {
  AW_REQUIRE(c);
  AW_REQUIRE(out_text);
  return guarded([&] { *out_text = dup_string(atomwall::serialize_run_config(c->config)); });
}

aw_status aw_config_output_path(const aw_config* c, char** out_path) {
  AW_REQUIRE(c);
  AW_REQUIRE(out_path);
  return guarded([&] { *out_path = dup_string(c->config.output.path); });
}

aw_status aw_run_command(const aw_config* c, const char* command, const char* format, char** out_text) {
  AW_REQUIRE(c);
  AW_REQUIRE(command);
  AW_REQUIRE(out_text);
  return guarded([&] {
    std::optional<atomwall::OutputFormat> f;
    if (format) f = atomwall::parse_output_format(format);
    *out_text = dup_string(atomwall::run_command(command, c->config, f));
  });
}

void aw_string_free(char* s) { std::free(s); }

} // extern "C"
