/*
 * atomwall C API.
 *
 * Opaque handles own the C++ models; every function returns an aw_status and
 * writes results through out-pointers. On failure aw_last_error() describes the
 * most recent error on the calling thread. Handles are immutable after
 * creation and may be shared between threads.
 */
#ifndef ATOMWALL_H
#define ATOMWALL_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(ATOMWALL_BUILDING_DLL)
#    define AW_API __declspec(dllexport)
#  else
#    define AW_API __declspec(dllimport)
#  endif
#else
#  define AW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aw_status {
  AW_OK = 0,
  AW_ERR_DOMAIN = 1,
  AW_ERR_CONFIG = 2,
  AW_ERR_VALIDATION = 3,
  AW_ERR_NUMERICAL = 4,
  AW_ERR_USAGE = 5,
  AW_ERR_IO = 6,
  AW_ERR_NULL_ARGUMENT = 7,
  AW_ERR_INTERNAL = 8
} aw_status;

typedef enum aw_material_kind { AW_METAL = 0, AW_DIELECTRIC = 1 } aw_material_kind;

typedef struct aw_dielectric aw_dielectric;
typedef struct aw_polarizability aw_polarizability;
typedef struct aw_result aw_result;
typedef struct aw_config aw_config;

typedef struct aw_tolerances {
  double series_rel_tol;
  double quad_rel_tol;
  size_t max_terms;
  size_t consecutive_small;
} aw_tolerances;

/* Error reporting */
AW_API const char* aw_last_error(void);
AW_API const char* aw_status_name(aw_status status);
AW_API const char* aw_version(void);

/* Unit conversions */
AW_API aw_status aw_ev_to_angular(double x_eV, double* out_rad_s);
AW_API aw_status aw_au_volume_to_si(double x_au, double* out_m3);

/* Wall models. omega values in rad/s. */
AW_API aw_status aw_dielectric_ideal_metal(aw_dielectric** out);
AW_API aw_status aw_dielectric_plasma(double omega_p, aw_dielectric** out);
AW_API aw_status aw_dielectric_static(double eps_static, aw_dielectric** out);
AW_API aw_status aw_dielectric_ninham_parsegian(const double* strengths, const double* omegas, size_t n,
                                                aw_dielectric** out);
/* Optical table file (energy_eV n k). A metal needs drude_omega_p > 0 and drude_nu > 0 (rad/s);
 * pass zeros for no Drude completion. */
AW_API aw_status aw_dielectric_tabulated_file(const char* path, aw_material_kind kind, double drude_omega_p,
                                              double drude_nu, double tail_exponent, double kk_rel_tol,
                                              aw_dielectric** out);
AW_API void aw_dielectric_free(aw_dielectric* d);
AW_API aw_status aw_dielectric_eps_iw(const aw_dielectric* d, double xi, double* out);
AW_API aw_status aw_dielectric_f0(const aw_dielectric* d, double* out);
AW_API aw_status aw_dielectric_kind(const aw_dielectric* d, aw_material_kind* out);

/* Atom models. alpha in m^3, omega in rad/s. */
AW_API aw_status aw_polarizability_static(double alpha0, aw_polarizability** out);
AW_API aw_status aw_polarizability_oscillators(const double* strengths, const double* omegas, size_t n,
                                               aw_polarizability** out);
AW_API aw_status aw_polarizability_oscillator_file(const char* path, aw_polarizability** out);
AW_API aw_status aw_polarizability_tabulated_file(const char* path, aw_polarizability** out);
AW_API aw_status aw_polarizability_fit_single_oscillator(const aw_polarizability* p, aw_polarizability** out);
AW_API void aw_polarizability_free(aw_polarizability* p);
AW_API aw_status aw_polarizability_alpha_iw(const aw_polarizability* p, double xi, double* out);
AW_API aw_status aw_polarizability_static_alpha(const aw_polarizability* p, double* out);

/* Lifshitz evaluator */
AW_API aw_tolerances aw_default_tolerances(void);
AW_API aw_status aw_matsubara_zeta(size_t l, double a, double T, double* out);
AW_API aw_status aw_reflection_par(double eps, double zeta, double y, double* out);
AW_API aw_status aw_reflection_perp(double eps, double zeta, double y, double* out);
AW_API aw_status aw_matsubara_integral(double eps, double zeta, double quad_rel_tol, double* out);
AW_API aw_status aw_ideal_metal_integral(double zeta, double* out);
AW_API aw_status aw_casimir_polder_energy(double alpha0, double a, double* out);

/* tol may be NULL for the defaults. */
AW_API aw_status aw_free_energy(const aw_polarizability* atom, const aw_dielectric* wall, double a, double T,
                                const aw_tolerances* tol, aw_result** out);
AW_API aw_status aw_correction_factor(const aw_polarizability* ref_atom, const aw_dielectric* ref_wall,
                                      const aw_polarizability* var_atom, const aw_dielectric* var_wall, double a,
                                      double T, const aw_tolerances* tol, double* out);
AW_API void aw_result_free(aw_result* r);
AW_API double aw_result_free_energy(const aw_result* r);
AW_API double aw_result_classical_term(const aw_result* r);
AW_API double aw_result_normalized(const aw_result* r);
AW_API size_t aw_result_n_terms(const aw_result* r);
AW_API size_t aw_result_max_quad_nodes(const aw_result* r);
AW_API size_t aw_result_warning_count(const aw_result* r);
/* NULL when index is out of range; valid until the result is freed. */
AW_API const char* aw_result_warning(const aw_result* r, size_t index);

/* Run configs and CLI subcommands */
AW_API aw_status aw_config_load(const char* path, aw_config** out);
AW_API void aw_config_free(aw_config* c);
AW_API aw_status aw_config_serialize(const aw_config* c, char** out_text);
AW_API aw_status aw_config_output_path(const aw_config* c, char** out_path);
/* command: energy | sweep | table | epsilon | alpha. format: "csv", "json", or NULL for the config's own. */
AW_API aw_status aw_run_command(const aw_config* c, const char* command, const char* format, char** out_text);
AW_API void aw_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ATOMWALL_H */
