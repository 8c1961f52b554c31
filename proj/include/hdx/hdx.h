#ifndef HDX_HDX_H
#define HDX_HDX_H

/* C interface to the coset-complex toolkit. Every function returns an
 * hdx_status; on failure hdx_last_error() describes the problem (per
 * thread). Strings returned through char** are owned by the caller and
 * released with hdx_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(HDX_BUILDING_LIBRARY)
#define HDX_API __attribute__((visibility("default")))
#else
#define HDX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hdx_status {
  HDX_OK = 0,
  HDX_ERR_INTERNAL = 1,
  HDX_NOT_CERTIFIED = 2, /* a certificate was produced and some clause failed */
  HDX_ERR_RESOURCE = 3,  /* enumeration or eigensolver budget exceeded */
  HDX_ERR_SPEC = 4,      /* invalid instance or argument */
  HDX_ERR_INTEGRITY = 5, /* malformed or inconsistent input file */
  HDX_ERR_IO = 6
} hdx_status;

typedef struct hdx_instance hdx_instance;

HDX_API const char* hdx_version(void);
HDX_API const char* hdx_last_error(void);
HDX_API void hdx_string_free(char* s);

/* spec_json: {"preset": "A~2", "gcm": [[...]], "p": 2, "m": 1, "f": "auto:2",
 * "mode": "explicit"|"certificate", "budget": N, "tol": x, "workers": N}.
 * Missing fields take defaults. */
HDX_API hdx_status hdx_instance_create(const char* spec_json, hdx_instance** out);
HDX_API void hdx_instance_free(hdx_instance* inst);
/* Normalized spec plus derived quantities (|G|, gamma, degree bound). */
HDX_API hdx_status hdx_instance_describe(const hdx_instance* inst, char** json);

/* Explicit mode writes a complex file, certificate mode a subgroup bundle.
 * out_path may be NULL to skip writing. */
HDX_API hdx_status hdx_build(const hdx_instance* inst, const char* out_path, char** summary_json);

/* Certificate JSON is returned for both HDX_OK and HDX_NOT_CERTIFIED. */
HDX_API hdx_status hdx_verify(const hdx_instance* inst, char** certificate_json);
HDX_API hdx_status hdx_verify_file(const char* path, int workers, char** certificate_json);

HDX_API hdx_status hdx_family(const char* spec_json, const int* degrees, size_t count, char** table_json);

/* Monic irreducibles of the given degree over F_{p^m}, in enumeration order;
 * limit 0 lists all. */
HDX_API hdx_status hdx_irreducibles(uint64_t p, unsigned m, int degree, size_t limit, char** json);

/* lambda_2 of the random walk on a weighted graph with n vertices and
 * `count` edges (edges[2i], edges[2i+1]) of weight weights[i] (NULL for 1). */
HDX_API hdx_status hdx_lambda2(size_t n, const uint32_t* edges, const double* weights, size_t count,
                               int allow_disconnected, double* out);

#ifdef __cplusplus
}
#endif

#endif
