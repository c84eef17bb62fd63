#include "core/lie.hpp"

#include "core/morphology.hpp"

#include <cmath>
#include <stdexcept>

namespace fetal::lie {

namespace {

BinaryMask largest_component_mask(const BinaryMask& mask) {
    auto comps = morph::connected_components(mask);
    BinaryMask out;
    out.width = mask.width;
    out.height = mask.height;
    if (!comps.empty()) out.pixels = std::move(comps.front().pixels);
    return out;
}

Vec2 normalized(double dr, double dc) {
    const double n = std::hypot(dr, dc);
    if (n == 0.0) throw std::invalid_argument("facing vector: coincident landmarks");
    return {dr / n, dc / n};
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ",";
        out += p;
    }
    return out;
}

}  // namespace

CriteriaCheck check_fallback_criteria(const BinaryMask& thalamus, const QualityCriteria& criteria) {
    CriteriaCheck check;
    auto comps = morph::connected_components(thalamus);
    if (criteria.require_single_component && comps.size() != 1) {
        check.failed.push_back("single_component");
    }
    if (comps.empty()) {
        check.failed.push_back("min_pixels");
        return check;
    }
    const morph::Component& main = comps.front();
    if (main.pixel_count() < criteria.min_pixels) {
        check.failed.push_back("min_pixels");
    }
    if (morph::solidity(main) < criteria.min_solidity) {
        check.failed.push_back("min_solidity");
    }
    BinaryMask main_mask;
    main_mask.width = thalamus.width;
    main_mask.height = thalamus.height;
    main_mask.pixels = main.pixels;
    const morph::Skeleton skel = morph::skeletonize(main_mask);
    const auto endpoints = morph::skeleton_endpoints(skel);
    if (endpoints.size() != 2) {
        check.failed.push_back("endpoints");
    } else {
        const Pixel g = morph::geodesic_center(skel);
        const double mr = 0.5 * (endpoints[0].first + endpoints[1].first);
        const double mc = 0.5 * (endpoints[0].second + endpoints[1].second);
        const double dist = std::hypot(mr - g.first, mc - g.second);
        if (dist < criteria.min_midpoint_distance) {
            check.failed.push_back("min_midpoint_distance");
        }
    }
    check.pass = check.failed.empty();
    return check;
}

Vec2 facing_vector_dual(const BinaryMask& thalamus, const BinaryMask& csp) {
    const BinaryMask thal = largest_component_mask(thalamus);
    const BinaryMask blob = largest_component_mask(csp);
    if (thal.empty() || blob.empty()) {
        throw std::invalid_argument("facing_vector_dual: empty mask");
    }
    const Pixel g = morph::geodesic_center(morph::skeletonize(thal));
    morph::Component csp_comp;
    csp_comp.pixels = blob.pixels;
    const auto [cr, cc] = morph::centroid(csp_comp);
    return normalized(cr - g.first, cc - g.second);
}

Vec2 facing_vector_fallback(const BinaryMask& thalamus) {
    const BinaryMask thal = largest_component_mask(thalamus);
    if (thal.empty()) throw std::invalid_argument("facing_vector_fallback: empty mask");
    const morph::Skeleton skel = morph::skeletonize(thal);
    const auto endpoints = morph::skeleton_endpoints(skel);
    if (endpoints.size() != 2) {
        throw std::invalid_argument("facing_vector_fallback: skeleton endpoint count != 2");
    }
    const Pixel g = morph::geodesic_center(skel);
    const double chord_r = endpoints[1].first - endpoints[0].first;
    const double chord_c = endpoints[1].second - endpoints[0].second;
    const double mr = 0.5 * (endpoints[0].first + endpoints[1].first);
    const double mc = 0.5 * (endpoints[0].second + endpoints[1].second);
    // Orthogonal to the chord, pointing from the arc toward the concavity.
    double or_ = -chord_c, oc = chord_r;
    const double toward = or_ * (mr - g.first) + oc * (mc - g.second);
    if (toward == 0.0) {
        throw std::invalid_argument("facing_vector_fallback: midpoint coincides with geodesic center");
    }
    if (toward < 0.0) {
        or_ = -or_;
        oc = -oc;
    }
    return normalized(or_, oc);
}

Bin bin_direction(const Vec2& v, const QualityCriteria& criteria) {
    if (v.d_col >= criteria.min_lateral_ratio) return Bin::Right;
    if (v.d_col <= -criteria.min_lateral_ratio) return Bin::Left;
    return Bin::Indeterminate;
}

namespace {

std::optional<FrameLie> classify_frame_impl(const FrameSegmentation& seg,
                                            const QualityCriteria& criteria,
                                            std::string* reason) {
    const bool have_thalamus = seg.thalamus && !seg.thalamus->empty();
    const bool have_csp = seg.csp && !seg.csp->empty();
    if (!have_thalamus) {
        if (reason) *reason = "no_thalamus";
        return std::nullopt;
    }
    FrameLie out;
    if (have_csp) {
        try {
            out.vector = facing_vector_dual(*seg.thalamus, *seg.csp);
            out.method = Method::DualLandmark;
            out.bin = bin_direction(out.vector, criteria);
            return out;
        } catch (const std::invalid_argument&) {
            // Degenerate landmark geometry; fall through to thalamus-only.
        }
    }
    const CriteriaCheck check = check_fallback_criteria(*seg.thalamus, criteria);
    if (!check.pass) {
        if (reason) *reason = "criteria_failed:" + join(check.failed);
        return std::nullopt;
    }
    out.vector = facing_vector_fallback(*seg.thalamus);
    out.method = Method::ThalamusOnly;
    out.bin = bin_direction(out.vector, criteria);
    return out;
}

}  // namespace

std::optional<FrameLie> classify_frame(const FrameSegmentation& seg, const QualityCriteria& criteria) {
    return classify_frame_impl(seg, criteria, nullptr);
}

LieResult aggregate_lie(const Exam& exam, const QualityCriteria& criteria, bool flip_lateral) {
    LieResult res;
    for (const Sweep& sweep : exam.sweeps) {
        for (const auto& [t, seg] : sweep.segmentations) {
            std::string reason;
            auto frame = classify_frame_impl(seg, criteria, &reason);
            if (!frame) {
                res.abstentions.push_back({sweep.sweep_id, t, reason});
                continue;
            }
            frame->sweep_id = sweep.sweep_id;
            frame->frame_index = t;
            if (flip_lateral && frame->bin != Bin::Indeterminate) {
                frame->bin = frame->bin == Bin::Left ? Bin::Right : Bin::Left;
            }
            if (frame->bin == Bin::Left) ++res.votes_left;
            if (frame->bin == Bin::Right) ++res.votes_right;
            res.frames.push_back(std::move(*frame));
        }
    }
    if (res.votes_left > res.votes_right) {
        res.exam_label = ExamLabel::Left;
    } else if (res.votes_right > res.votes_left) {
        res.exam_label = ExamLabel::Right;
    } else {
        res.exam_label = ExamLabel::Abstain;
    }
    return res;
}

}  // namespace fetal::lie
