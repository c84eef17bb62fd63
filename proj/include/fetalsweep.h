/* C API for the fetalsweep library: fetal presentation and lie
 * classification from blind-sweep exam bundles, synthetic exam
 * generation, and SVG visualization.
 *
 * All functions return fs_status; FS_OK is 0. Strings returned through
 * out-parameters are heap-allocated and must be released with
 * fs_string_free. Error details are written to the caller's buffer when
 * errbuf is non-NULL.
 */
#ifndef FETALSWEEP_H
#define FETALSWEEP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fs_status {
    FS_OK = 0,
    FS_ERR_VALIDATION = 2, /* malformed bundle or invariant violation */
    FS_ERR_IO = 3,         /* filesystem failure */
    FS_ERR_USAGE = 64,     /* invalid argument or configuration */
    FS_ERR_INTERNAL = 70
} fs_status;

/* Opaque handle for a loaded, validated exam. */
typedef struct fs_exam fs_exam;

typedef struct fs_options {
    double tau;                   /* head-detection threshold, default 0.5 */
    int min_pixels;               /* default 55 */
    double min_solidity;          /* default 0.82 */
    double min_midpoint_dist;     /* default 1.09 */
    int require_single_component; /* default 1 */
    double min_lateral_ratio;     /* default 0.05 */
    int flip_lateral;             /* default 0 */
    int jobs;                     /* parallelism hint, default 1 */
} fs_options;

typedef struct fs_synth_options {
    const char* presentation; /* "cephalic" | "breech" */
    const char* lie;          /* "left" | "right" */
    int n_sweeps;             /* default 5 */
    int n_frames;             /* default 100 */
    int image_height;         /* default 256 */
    int image_width;          /* default 256 */
    double trace_noise_sigma; /* default 0 */
    double mask_jitter_px;    /* default 0 */
    uint64_t seed;
} fs_synth_options;

const char* fs_version(void);

void fs_options_init(fs_options* opts);
void fs_synth_options_init(fs_synth_options* opts);

fs_status fs_exam_load(const char* bundle_dir, fs_exam** out, char* errbuf, size_t errbuf_len);
void fs_exam_free(fs_exam* exam);

/* JSON exam report (schema documented in the README). */
fs_status fs_exam_classify(const fs_exam* exam, const fs_options* opts, char** json_out,
                           char* errbuf, size_t errbuf_len);

/* Writes a synthetic bundle plus ground_truth.json into out_dir. */
fs_status fs_synth_bundle(const fs_synth_options* opts, const char* out_dir, const char* exam_id,
                          char* errbuf, size_t errbuf_len);

/* Fig.3-style trace/template plot for one sweep. */
fs_status fs_plot_presentation(const fs_exam* exam, const char* sweep_id, char** svg_out,
                               char* errbuf, size_t errbuf_len);

/* Fig.4-style mask/landmark/arrow overlay for one segmented frame. */
fs_status fs_plot_lie(const fs_exam* exam, const char* sweep_id, int frame, const fs_options* opts,
                      char** svg_out, char* errbuf, size_t errbuf_len);

void fs_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* FETALSWEEP_H */
