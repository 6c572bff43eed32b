/*
 * labtile — labyrinthine-tiling image stylization.
 *
 * C API of the shared library. All objects are opaque handles created and
 * released through these functions; every fallible call returns a
 * labtile_status and leaves a human-readable message in
 * labtile_last_error() (thread-local) on failure. Out-parameters are only
 * written on LABTILE_OK.
 */
#ifndef LABTILE_H
#define LABTILE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LABTILE_API __declspec(dllexport)
#else
#define LABTILE_API __attribute__((visibility("default")))
#endif

typedef enum labtile_status {
    LABTILE_OK = 0,
    LABTILE_ERR_USAGE = 1,       /* invalid arguments or parameter values */
    LABTILE_ERR_FORMAT = 2,      /* malformed input bytes */
    LABTILE_ERR_UNSUPPORTED = 3, /* valid input this library does not handle */
    LABTILE_ERR_IO = 4           /* filesystem failure */
} labtile_status;

typedef enum labtile_outcome {
    LABTILE_KEPT_R1 = 0,
    LABTILE_PROTECTED_R2 = 1,
    LABTILE_REPLACED = 2,
    LABTILE_EXHAUSTED = 3
} labtile_outcome;

typedef struct labtile_image labtile_image; /* 8-bit grayscale raster */
typedef struct labtile_table labtile_table; /* tone interval table */
typedef struct labtile_trace labtile_trace; /* per-pixel decision trace */
typedef struct labtile_mask labtile_mask;   /* change-mask bit grid */

typedef struct labtile_params {
    double t;            /* mean-deviation threshold (default 0.12) */
    double v_threshold;  /* dispersion gate threshold (default 0.50) */
    int32_t max_attempts; /* candidate draws per pixel (default 100) */
    int32_t passes;      /* full scans (default 1) */
    uint64_t seed;       /* random stream seed (default 0) */
} labtile_params;

typedef struct labtile_decision {
    uint32_t x;
    uint32_t y;
    int32_t outcome; /* labtile_outcome */
    double r1;
    double r2;
    int32_t attempts;
    uint8_t old_tone;
    uint8_t new_tone;
} labtile_decision;

/* Message describing the most recent failure on this thread. */
LABTILE_API const char* labtile_last_error(void);

LABTILE_API void labtile_params_init(labtile_params* params);

/* ---- images ------------------------------------------------------------ */

LABTILE_API labtile_status labtile_image_new(uint32_t width, uint32_t height, uint8_t fill,
                                             labtile_image** out);
LABTILE_API labtile_status labtile_image_from_gray(uint32_t width, uint32_t height,
                                                   const uint8_t* pixels, labtile_image** out);
/* Packed 8-bit RGB triplets, converted with BT.601 luma. */
LABTILE_API labtile_status labtile_image_from_rgb(uint32_t width, uint32_t height,
                                                  const uint8_t* rgb, labtile_image** out);
LABTILE_API labtile_status labtile_image_clone(const labtile_image* image, labtile_image** out);
/* Codec picked by file extension: .pgm (binary P5) or .png. */
LABTILE_API labtile_status labtile_image_read_file(const char* path, labtile_image** out);
LABTILE_API labtile_status labtile_image_write_file(const labtile_image* image, const char* path);
LABTILE_API labtile_status labtile_image_decode_pgm(const uint8_t* bytes, size_t size,
                                                    labtile_image** out);
/* Canonical P5 bytes; release with labtile_buffer_free. */
LABTILE_API labtile_status labtile_image_encode_pgm(const labtile_image* image, uint8_t** bytes,
                                                    size_t* size);
LABTILE_API uint32_t labtile_image_width(const labtile_image* image);
LABTILE_API uint32_t labtile_image_height(const labtile_image* image);
/* Row-major pixels, valid until the image is freed or rendered into. */
LABTILE_API const uint8_t* labtile_image_pixels(const labtile_image* image);
LABTILE_API void labtile_image_free(labtile_image* image);
LABTILE_API void labtile_buffer_free(void* bytes);

/* ---- tone interval tables ---------------------------------------------- */

LABTILE_API labtile_status labtile_table_default(labtile_table** out);
/* JSON: array of {l_inf,l_sup,t_inf,t_sup} or {"intervals": [...]}. */
LABTILE_API labtile_status labtile_table_from_json(const char* json_text, labtile_table** out);
LABTILE_API labtile_status labtile_table_read_file(const char* path, labtile_table** out);
LABTILE_API size_t labtile_table_size(const labtile_table* table);
LABTILE_API labtile_status labtile_table_interval(const labtile_table* table, size_t index,
                                                  int32_t* l_inf, int32_t* l_sup, int32_t* t_inf,
                                                  int32_t* t_sup);
LABTILE_API size_t labtile_table_classify(const labtile_table* table, uint8_t tone);
LABTILE_API void labtile_table_free(labtile_table* table);

/* ---- rendering ---------------------------------------------------------- */

/*
 * Runs params->passes raster scans in place over one seeded random stream.
 * A null table means the default table. When out_trace is non-null it
 * receives the full decision trace (one entry per pixel per pass, row-major
 * scan order); pass NULL when the trace is not needed.
 */
LABTILE_API labtile_status labtile_render(labtile_image* image, const labtile_params* params,
                                          const labtile_table* table, labtile_trace** out_trace);

/* ---- traces -------------------------------------------------------------- */

LABTILE_API uint32_t labtile_trace_passes(const labtile_trace* trace);
LABTILE_API size_t labtile_trace_size(const labtile_trace* trace, uint32_t pass);
LABTILE_API labtile_status labtile_trace_decision(const labtile_trace* trace, uint32_t pass,
                                                  size_t index, labtile_decision* out);
/* counts indexed by labtile_outcome */
LABTILE_API labtile_status labtile_trace_outcome_counts(const labtile_trace* trace, uint32_t pass,
                                                        uint64_t counts[4]);
/* Delimited text: pass,x,y,outcome,r1,r2,attempts,old,new (see README). */
LABTILE_API labtile_status labtile_trace_write_file(const labtile_trace* trace, const char* path);
/*
 * Fraction of pixels with outcome protected_r2 among pixels within Chebyshev
 * distance `radius` of the edge set, and among all remaining pixels.
 * edge_xy holds edge_count (x, y) pairs.
 */
LABTILE_API labtile_status labtile_trace_edge_concentration(const labtile_trace* trace,
                                                            uint32_t pass, const uint32_t* edge_xy,
                                                            size_t edge_count, uint32_t radius,
                                                            double* near_fraction,
                                                            double* far_fraction);
LABTILE_API void labtile_trace_free(labtile_trace* trace);

/* ---- change masks -------------------------------------------------------- */

LABTILE_API labtile_status labtile_mask_diff(const labtile_image* before,
                                             const labtile_image* after, labtile_mask** out);
LABTILE_API uint64_t labtile_mask_popcount(const labtile_mask* mask);
LABTILE_API labtile_status labtile_mask_distance(const labtile_mask* a, const labtile_mask* b,
                                                 uint64_t* out);
LABTILE_API void labtile_mask_free(labtile_mask* mask);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LABTILE_H */
