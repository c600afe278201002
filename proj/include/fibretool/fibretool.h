/*
 * fibretool C API: maximal-area representations of hyperbolic reflection and
 * product groups, their hyperelliptic pushforwards, fibre deformations and
 * reconstruction, and the complex-hyperbolic area invariant.
 *
 * Conventions:
 *   - Every function returns ft_status; FT_OK is zero. On failure,
 *     ft_last_error() returns a thread-local human-readable message that
 *     stays valid until the next call on the same thread.
 *   - Objects are opaque; free them with the matching *_free function.
 *   - Strings returned through char** are heap-allocated; release them with
 *     ft_string_free.
 */
#ifndef FIBRETOOL_H
#define FIBRETOOL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ft_status {
  FT_OK = 0,
  FT_ERR_INVALID_ARGUMENT = 1,
  FT_ERR_DOMAIN = 2,
  FT_ERR_PARSE = 3,
  FT_ERR_IO = 4,
  FT_ERR_INTERNAL = 5
} ft_status;

/* A representation by 2x2 real projective matrices. */
typedef struct ft_rep ft_rep;
/* A representation by 3x3 complex matrices. */
typedef struct ft_rep3 ft_rep3;

/* Library version string, e.g. "1.0.0". Never NULL. */
const char* ft_version(void);

/* Message for the most recent failure on this thread ("" if none). */
const char* ft_last_error(void);

/* Release a string obtained from this API. NULL is allowed. */
void ft_string_free(char* s);

/* ---- Representation objects -------------------------------------- */

/* Load/save the JSON rep file format (metadata is carried through). */
ft_status ft_rep_load(const char* path, ft_rep** out);
ft_status ft_rep_save(const ft_rep* rep, const char* path);
void ft_rep_free(ft_rep* rep);

/* Kind ('H' or 'G') and n of a representation. Either out may be NULL. */
ft_status ft_rep_info(const ft_rep* rep, char* kind_out, int* n_out);

/* Symmetric maximal representation of the odd family; n even, >= 6. */
ft_status ft_gen_hyperelliptic(int n, ft_rep** out);

/* Induced even-family representation g_i = r_n * r_i of an odd-family one. */
ft_status ft_g_from_r(const ft_rep* rep_h, ft_rep** out);

/* Deterministic fibre deformation of the symmetric seed (see README for the
 * generator algorithm). n even >= 6, magnitude >= 0. */
ft_status ft_gen_deformed(int n, uint64_t seed, double magnitude, ft_rep** out);

/* Largest deviation of a defining-relator image from the identity. */
ft_status ft_rep_residual(const ft_rep* rep, double* out);

/* Area invariant at the default interior basepoint, or at (x, y), y > 0. */
ft_status ft_rep_area(const ft_rep* rep, double* out);
ft_status ft_rep_area_at(const ft_rep* rep, double x, double y, double* out);

/* Hyperelliptic pushforward (which = 1 or 2) of an even-family rep. */
ft_status ft_pushforward(const ft_rep* rep_g, int which, ft_rep** out);

/* Reconstruction of the even-family representation with the given pair of
 * hyperelliptic pushforward images. */
ft_status ft_reconstruct(const ft_rep* rep1, const ft_rep* rep2, ft_rep** out);

/* Largest generator deviation between rep and the reconstruction from its
 * own pushforward pair. */
ft_status ft_roundtrip_deviation(const ft_rep* rep_g, double* out);

/* Fibre deformation of an even-family rep at chart coordinates lambda
 * (count = n - 6 values). */
ft_status ft_deform(const ft_rep* rep_g, const double* lambda, int count, ft_rep** out);

/* Fibre coordinates phi_1..phi_{n-2} of an even-family rep. cap is the
 * capacity of out; *count_out receives n - 2. */
ft_status ft_rep_fibre_coords(const ft_rep* rep_g, double* out, int cap, int* count_out);

/* ---- Complex-hyperbolic side -------------------------------------- */

/* Embed along the standard complex geodesic. */
ft_status ft_embed(const ft_rep* rep, ft_rep3** out);

ft_status ft_rep3_load(const char* path, ft_rep3** out);
ft_status ft_rep3_save(const ft_rep3* rep, const char* path);
void ft_rep3_free(ft_rep3* rep);

/* Area (Toledo) invariant at the default basepoint. */
ft_status ft_toledo(const ft_rep3* rep, double* out);

/* ---- Reports and figures ------------------------------------------ */

/* Named-check verification report; *pass_out is 1 iff all checks passed. */
ft_status ft_verify_report(const ft_rep* rep, double tolerance, char** report_out,
                           int* pass_out);

/* Property sweep over seeds 0..count-1 (even-family input required). */
ft_status ft_verify_sweep(const ft_rep* rep, int count, double tolerance, char** report_out,
                          int* pass_out);

/* Disc-model SVG figure. */
ft_status ft_plot_svg(const ft_rep* rep, char** svg_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FIBRETOOL_H */
