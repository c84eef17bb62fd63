#pragma once

#include "core/lie.hpp"
#include "core/mask.hpp"
#include "core/presentation.hpp"

#include <string>

namespace fetal::report {

inline constexpr const char* kToolVersion = "0.1.0";

struct Options {
    double tau = 0.5;  // head-detection threshold
    lie::QualityCriteria criteria;
    bool flip_lateral = false;
    int jobs = 1;  // parallelism hint; output is independent of it
};

struct ExamReport {
    std::string exam_id;
    presentation::PresentationResult presentation;
    lie::LieResult lie;
    Options options;
    std::string tool_version = kToolVersion;
};

ExamReport classify_exam(const Exam& exam, const Options& options);

// Canonical JSON text (2-space indent, trailing newline). Serialization is
// deterministic; serialize -> parse -> serialize is byte-identical.
std::string to_json(const ExamReport& report);

ExamReport from_json(const std::string& text);

}  // namespace fetal::report
