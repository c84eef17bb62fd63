// Batch CLI over the fetalsweep C API.
//
// Subcommands:
//   classify           bundle dir -> JSON exam report (stdout or --out)
//   synth              write a synthetic exam bundle with ground truth
//   plot-presentation  trace/template SVG for one sweep
//   plot-lie           mask/landmark/arrow overlay SVG for one frame
//
// Exit codes: 0 success, 2 validation, 3 I/O, 64 usage.

#include <fetalsweep.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitUsage = 64;

struct ExamDeleter {
    void operator()(fs_exam* e) const { fs_exam_free(e); }
};
using ExamPtr = std::unique_ptr<fs_exam, ExamDeleter>;

struct StringDeleter {
    void operator()(char* s) const { fs_string_free(s); }
};
using CStrPtr = std::unique_ptr<char, StringDeleter>;

int status_to_exit(fs_status st) {
    switch (st) {
        case FS_OK: return 0;
        case FS_ERR_VALIDATION: return kExitValidation;
        case FS_ERR_IO: return kExitIo;
        case FS_ERR_USAGE: return kExitUsage;
        default: return 1;
    }
}

int fail(fs_status st, const char* errbuf) {
    std::cerr << "error: " << errbuf << "\n";
    return status_to_exit(st);
}

ExamPtr load_or_exit(const std::string& dir, int& exit_code) {
    char errbuf[1024] = {};
    fs_exam* raw = nullptr;
    const fs_status st = fs_exam_load(dir.c_str(), &raw, errbuf, sizeof(errbuf));
    if (st != FS_OK) {
        exit_code = fail(st, errbuf);
        return nullptr;
    }
    exit_code = 0;
    return ExamPtr(raw);
}

int write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitIo;
    }
    out << content;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fetal presentation and lie classification from blind-sweep exam bundles"};
    app.require_subcommand(1);
    app.set_version_flag("--version", fs_version());

    fs_options opts;
    fs_options_init(&opts);

    // classify
    auto* classify = app.add_subcommand("classify", "Classify one exam bundle, emit a JSON report");
    std::string classify_dir, classify_out;
    classify->add_option("bundle", classify_dir, "exam bundle directory")->required();
    classify->add_option("--out", classify_out, "write the report here instead of stdout");
    classify->add_option("--tau", opts.tau, "head-detection probability threshold")
        ->check(CLI::Range(0.0, 1.0));
    classify->add_option("--min-pixels", opts.min_pixels, "fallback: minimum thalamus pixel count");
    classify->add_option("--min-solidity", opts.min_solidity, "fallback: minimum thalamus solidity");
    classify->add_option("--min-midpoint-dist", opts.min_midpoint_dist,
                         "fallback: minimum chord-midpoint to geodesic-center distance (px)");
    classify->add_flag("--flip-lateral", opts.flip_lateral,
                       "invert the image-to-anatomical left/right mapping");
    classify->add_option("--jobs", opts.jobs, "parallelism hint")->check(CLI::PositiveNumber);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic exam bundle with ground truth");
    fs_synth_options scfg;
    fs_synth_options_init(&scfg);
    std::string s_pres = "cephalic", s_lie = "left", s_out, s_exam_id = "synthetic";
    synth->add_option("--presentation", s_pres, "cephalic|breech")
        ->check(CLI::IsMember({"cephalic", "breech"}));
    synth->add_option("--lie", s_lie, "left|right")->check(CLI::IsMember({"left", "right"}));
    synth->add_option("--out", s_out, "output bundle directory")->required();
    synth->add_option("--exam-id", s_exam_id, "exam id recorded in the manifest");
    synth->add_option("--seed", scfg.seed, "RNG seed");
    synth->add_option("--n-sweeps", scfg.n_sweeps)->check(CLI::PositiveNumber);
    synth->add_option("--n-frames", scfg.n_frames)->check(CLI::PositiveNumber);
    synth->add_option("--trace-noise", scfg.trace_noise_sigma, "stddev of trace noise");
    synth->add_option("--mask-jitter", scfg.mask_jitter_px, "mask boundary jitter (px)");

    // plot-presentation
    auto* plot_pres = app.add_subcommand("plot-presentation", "SVG of trace and both templates");
    std::string pp_dir, pp_sweep, pp_out;
    plot_pres->add_option("bundle", pp_dir)->required();
    plot_pres->add_option("sweep", pp_sweep, "sweep id")->required();
    plot_pres->add_option("--out", pp_out, "output SVG path");

    // plot-lie
    auto* plot_lie = app.add_subcommand("plot-lie", "SVG overlay of masks, landmarks and facing arrow");
    std::string pl_dir, pl_sweep, pl_out;
    int pl_frame = 0;
    plot_lie->add_option("bundle", pl_dir)->required();
    plot_lie->add_option("sweep", pl_sweep, "sweep id")->required();
    plot_lie->add_option("frame", pl_frame, "frame index")->required();
    plot_lie->add_option("--out", pl_out, "output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    char errbuf[1024] = {};

    if (*classify) {
        int ec = 0;
        ExamPtr exam = load_or_exit(classify_dir, ec);
        if (!exam) return ec;
        char* json = nullptr;
        const fs_status st = fs_exam_classify(exam.get(), &opts, &json, errbuf, sizeof(errbuf));
        if (st != FS_OK) return fail(st, errbuf);
        CStrPtr guard(json);
        return write_output(json, classify_out);
    }

    if (*synth) {
        scfg.presentation = s_pres.c_str();
        scfg.lie = s_lie.c_str();
        const fs_status st = fs_synth_bundle(&scfg, s_out.c_str(), s_exam_id.c_str(), errbuf, sizeof(errbuf));
        if (st != FS_OK) return fail(st, errbuf);
        return 0;
    }

    if (*plot_pres) {
        int ec = 0;
        ExamPtr exam = load_or_exit(pp_dir, ec);
        if (!exam) return ec;
        char* svg = nullptr;
        const fs_status st = fs_plot_presentation(exam.get(), pp_sweep.c_str(), &svg, errbuf, sizeof(errbuf));
        if (st != FS_OK) return fail(st, errbuf);
        CStrPtr guard(svg);
        return write_output(svg, pp_out);
    }

    if (*plot_lie) {
        int ec = 0;
        ExamPtr exam = load_or_exit(pl_dir, ec);
        if (!exam) return ec;
        char* svg = nullptr;
        const fs_status st =
            fs_plot_lie(exam.get(), pl_sweep.c_str(), pl_frame, &opts, &svg, errbuf, sizeof(errbuf));
        if (st != FS_OK) return fail(st, errbuf);
        CStrPtr guard(svg);
        return write_output(svg, pl_out);
    }

    return kExitUsage;
}
