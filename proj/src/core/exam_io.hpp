#pragma once

#include "core/mask.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace fetal::io {

// Bundle fails the documented schema or a type invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem-level failure (missing directory, unreadable file, ...).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads an exam bundle directory:
//   manifest.json       { exam_id, sweeps: [{sweep_id, n_frames, trace_file, masks_dir}] }
//   trace CSV           header "frame,probability", frames ascending from 0
//   masks_dir/frame_%04d.png  gray8 label images, 0=bg 1=thalamus 2=csp;
//                             an absent file means no segmentation for that frame
// The returned Exam always passes validate_exam.
Exam load_exam(const std::filesystem::path& dir);

// Writes an exam in the same layout. Trace probabilities use shortest
// round-trip decimal text, so write-then-load is bit-exact.
void write_exam(const Exam& exam, const std::filesystem::path& dir);

std::string format_double(double v);

}  // namespace fetal::io
