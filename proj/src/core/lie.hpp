#pragma once

#include "core/mask.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fetal::lie {

// Thalamus-only fallback gate. Defaults mirror the published criteria:
// 55 px minimum size, 0.82 minimum solidity, 1.09 px minimum distance
// between the endpoint-chord midpoint and the geodesic center, and a
// single connected component. All comparisons are inclusive.
struct QualityCriteria {
    int min_pixels = 55;
    double min_solidity = 0.82;
    double min_midpoint_distance = 1.09;
    bool require_single_component = true;
    double detection_threshold = 0.5;
    double min_lateral_ratio = 0.05;
};

enum class Bin { Left, Right, Indeterminate };
enum class Method { DualLandmark, ThalamusOnly };
enum class ExamLabel { Left, Right, Abstain };

struct Vec2 {
    double d_row = 0.0;
    double d_col = 0.0;
};

struct FrameLie {
    std::string sweep_id;
    int frame_index = 0;
    Vec2 vector;
    Method method = Method::DualLandmark;
    Bin bin = Bin::Indeterminate;
};

// One line per frame that produced no FrameLie, naming the reason.
struct FrameAbstention {
    std::string sweep_id;
    int frame_index = 0;
    std::string reason;
};

struct LieResult {
    std::vector<FrameLie> frames;
    std::vector<FrameAbstention> abstentions;
    ExamLabel exam_label = ExamLabel::Abstain;
    int votes_left = 0;
    int votes_right = 0;
};

struct CriteriaCheck {
    bool pass = false;
    std::vector<std::string> failed;  // rule names, in evaluation order
};

// Rules, in order: single_component, min_pixels, min_solidity, endpoints
// (skeleton must have exactly two), min_midpoint_distance. Geometric rules
// are evaluated on the largest connected component.
CriteriaCheck check_fallback_criteria(const BinaryMask& thalamus, const QualityCriteria& criteria);

// Unit vector from the thalamus skeleton's geodesic center to the CSP
// centroid (largest fragments of each mask). Throws when either mask is
// empty or the two landmarks coincide.
Vec2 facing_vector_dual(const BinaryMask& thalamus, const BinaryMask& csp);

// Unit vector orthogonal to the skeleton endpoint chord, signed to point
// from the geodesic center toward the chord midpoint (arc -> concavity).
// Throws when the criteria-backed preconditions do not hold.
Vec2 facing_vector_fallback(const BinaryMask& thalamus);

Bin bin_direction(const Vec2& v, const QualityCriteria& criteria);

std::optional<FrameLie> classify_frame(const FrameSegmentation& seg, const QualityCriteria& criteria);

// Majority vote over Left/Right frame bins; Indeterminate and abstained
// frames are excluded; a tie or zero votes yields Abstain. flip_lateral
// inverts the image-to-anatomical left/right mapping.
LieResult aggregate_lie(const Exam& exam, const QualityCriteria& criteria, bool flip_lateral = false);

}  // namespace fetal::lie
