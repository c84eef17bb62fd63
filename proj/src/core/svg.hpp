#pragma once

#include "core/lie.hpp"
#include "core/mask.hpp"

#include <string>

namespace fetal::svg {

// Trace plus the two exponential templates for one sweep, as a single SVG
// with exactly three polylines. Throws std::invalid_argument on an unknown
// sweep or an empty trace.
std::string plot_presentation(const Exam& exam, const std::string& sweep_id);

// Overlay of one frame's masks, skeleton, landmarks and facing arrow.
// Throws std::invalid_argument when the frame is absent or abstained (the
// message names the failed criteria).
std::string plot_lie(const Exam& exam, const std::string& sweep_id, int frame,
                     const lie::QualityCriteria& criteria);

}  // namespace fetal::svg
