#include "fetalsweep.h"

#include "core/exam_io.hpp"
#include "core/mask.hpp"
#include "core/report.hpp"
#include "core/svg.hpp"
#include "core/synth.hpp"

#include <cstring>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

struct fs_exam {
    fetal::Exam exam;
};

namespace {

void set_err(char* errbuf, size_t errbuf_len, const char* msg) {
    if (!errbuf || errbuf_len == 0) return;
    std::strncpy(errbuf, msg, errbuf_len - 1);
    errbuf[errbuf_len - 1] = '\0';
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

fetal::report::Options to_options(const fs_options* opts) {
    fetal::report::Options o;
    if (!opts) return o;
    o.tau = opts->tau;
    o.criteria.min_pixels = opts->min_pixels;
    o.criteria.min_solidity = opts->min_solidity;
    o.criteria.min_midpoint_distance = opts->min_midpoint_dist;
    o.criteria.require_single_component = opts->require_single_component != 0;
    o.criteria.min_lateral_ratio = opts->min_lateral_ratio;
    o.flip_lateral = opts->flip_lateral != 0;
    o.jobs = opts->jobs;
    return o;
}

template <typename Fn>
fs_status guarded(char* errbuf, size_t errbuf_len, Fn&& fn) {
    try {
        return fn();
    } catch (const fetal::io::ValidationError& e) {
        set_err(errbuf, errbuf_len, e.what());
        return FS_ERR_VALIDATION;
    } catch (const fetal::io::IoError& e) {
        set_err(errbuf, errbuf_len, e.what());
        return FS_ERR_IO;
    } catch (const std::invalid_argument& e) {
        set_err(errbuf, errbuf_len, e.what());
        return FS_ERR_USAGE;
    } catch (const std::exception& e) {
        set_err(errbuf, errbuf_len, e.what());
        return FS_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* fs_version(void) { return fetal::report::kToolVersion; }

void fs_options_init(fs_options* opts) {
    if (!opts) return;
    const fetal::lie::QualityCriteria d;
    opts->tau = d.detection_threshold;
    opts->min_pixels = d.min_pixels;
    opts->min_solidity = d.min_solidity;
    opts->min_midpoint_dist = d.min_midpoint_distance;
    opts->require_single_component = d.require_single_component ? 1 : 0;
    opts->min_lateral_ratio = d.min_lateral_ratio;
    opts->flip_lateral = 0;
    opts->jobs = 1;
}

void fs_synth_options_init(fs_synth_options* opts) {
    if (!opts) return;
    const fetal::synth::SynthConfig d;
    opts->presentation = "cephalic";
    opts->lie = "left";
    opts->n_sweeps = d.n_sweeps;
    opts->n_frames = d.n_frames;
    opts->image_height = d.image_height;
    opts->image_width = d.image_width;
    opts->trace_noise_sigma = d.trace_noise_sigma;
    opts->mask_jitter_px = d.mask_jitter_px;
    opts->seed = d.rng_seed;
}

fs_status fs_exam_load(const char* bundle_dir, fs_exam** out, char* errbuf, size_t errbuf_len) {
    if (!bundle_dir || !out) {
        set_err(errbuf, errbuf_len, "fs_exam_load: NULL argument");
        return FS_ERR_USAGE;
    }
    *out = nullptr;
    return guarded(errbuf, errbuf_len, [&] {
        auto handle = std::make_unique<fs_exam>();
        handle->exam = fetal::io::load_exam(bundle_dir);
        *out = handle.release();
        return FS_OK;
    });
}

void fs_exam_free(fs_exam* exam) { delete exam; }

fs_status fs_exam_classify(const fs_exam* exam, const fs_options* opts, char** json_out,
                           char* errbuf, size_t errbuf_len) {
    if (!exam || !json_out) {
        set_err(errbuf, errbuf_len, "fs_exam_classify: NULL argument");
        return FS_ERR_USAGE;
    }
    *json_out = nullptr;
    return guarded(errbuf, errbuf_len, [&] {
        const auto report = fetal::report::classify_exam(exam->exam, to_options(opts));
        *json_out = dup_string(fetal::report::to_json(report));
        return FS_OK;
    });
}

fs_status fs_synth_bundle(const fs_synth_options* opts, const char* out_dir, const char* exam_id,
                          char* errbuf, size_t errbuf_len) {
    if (!opts || !out_dir || !exam_id || !opts->presentation || !opts->lie) {
        set_err(errbuf, errbuf_len, "fs_synth_bundle: NULL argument");
        return FS_ERR_USAGE;
    }
    return guarded(errbuf, errbuf_len, [&] {
        fetal::synth::SynthConfig cfg;
        const std::string pres = opts->presentation;
        const std::string lie = opts->lie;
        if (pres == "cephalic") {
            cfg.presentation = fetal::synth::Presentation::Cephalic;
        } else if (pres == "breech") {
            cfg.presentation = fetal::synth::Presentation::Breech;
        } else {
            throw std::invalid_argument("presentation must be 'cephalic' or 'breech'");
        }
        if (lie == "left") {
            cfg.lie = fetal::synth::Lie::Left;
        } else if (lie == "right") {
            cfg.lie = fetal::synth::Lie::Right;
        } else {
            throw std::invalid_argument("lie must be 'left' or 'right'");
        }
        cfg.n_sweeps = opts->n_sweeps;
        cfg.n_frames = opts->n_frames;
        cfg.image_height = opts->image_height;
        cfg.image_width = opts->image_width;
        cfg.trace_noise_sigma = opts->trace_noise_sigma;
        cfg.mask_jitter_px = opts->mask_jitter_px;
        cfg.rng_seed = opts->seed;
        if (cfg.n_sweeps < 4) {
            // Default head placement assumes the middle sweeps exist.
            cfg.head_sweep_indices.clear();
            for (int i = 0; i < cfg.n_sweeps; ++i) cfg.head_sweep_indices.push_back(i);
        }
        fetal::synth::make_exam_bundle(cfg, out_dir, exam_id);
        return FS_OK;
    });
}

fs_status fs_plot_presentation(const fs_exam* exam, const char* sweep_id, char** svg_out,
                               char* errbuf, size_t errbuf_len) {
    if (!exam || !sweep_id || !svg_out) {
        set_err(errbuf, errbuf_len, "fs_plot_presentation: NULL argument");
        return FS_ERR_USAGE;
    }
    *svg_out = nullptr;
    return guarded(errbuf, errbuf_len, [&] {
        *svg_out = dup_string(fetal::svg::plot_presentation(exam->exam, sweep_id));
        return FS_OK;
    });
}

fs_status fs_plot_lie(const fs_exam* exam, const char* sweep_id, int frame, const fs_options* opts,
                      char** svg_out, char* errbuf, size_t errbuf_len) {
    if (!exam || !sweep_id || !svg_out) {
        set_err(errbuf, errbuf_len, "fs_plot_lie: NULL argument");
        return FS_ERR_USAGE;
    }
    *svg_out = nullptr;
    return guarded(errbuf, errbuf_len, [&] {
        const auto options = to_options(opts);
        *svg_out = dup_string(fetal::svg::plot_lie(exam->exam, sweep_id, frame, options.criteria));
        return FS_OK;
    });
}

void fs_string_free(char* s) { delete[] s; }

}  // extern "C"
