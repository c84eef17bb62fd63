#include "core/svg.hpp"

#include "core/exam_io.hpp"
#include "core/morphology.hpp"
#include "core/presentation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fetal::svg {

namespace {

const Sweep& find_sweep(const Exam& exam, const std::string& sweep_id) {
    for (const Sweep& s : exam.sweeps) {
        if (s.sweep_id == sweep_id) return s;
    }
    throw std::invalid_argument("unknown sweep: " + sweep_id);
}

std::string fmt(double v) { return io::format_double(v); }

void polyline(std::ostringstream& out, const std::vector<double>& values, double x0, double y0,
              double plot_w, double plot_h, const char* color, const char* label) {
    const int n = static_cast<int>(values.size());
    out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" data-series=\""
        << label << "\" points=\"";
    for (int t = 0; t < n; ++t) {
        const double x = x0 + plot_w * (n > 1 ? static_cast<double>(t) / (n - 1) : 0.5);
        const double y = y0 + plot_h * (1.0 - std::clamp(values[t], 0.0, 1.0));
        if (t) out << ' ';
        out << fmt(x) << ',' << fmt(y);
    }
    out << "\"/>\n";
}

void mask_group(std::ostringstream& out, const char* id, const char* color, const BinaryMask& mask) {
    out << "  <g id=\"" << id << "\" fill=\"" << color << "\">\n";
    for (const auto& [r, c] : mask.pixels) {
        out << "    <rect x=\"" << c << "\" y=\"" << r << "\" width=\"1\" height=\"1\"/>\n";
    }
    out << "  </g>\n";
}

}  // namespace

std::string plot_presentation(const Exam& exam, const std::string& sweep_id) {
    const Sweep& sweep = find_sweep(exam, sweep_id);
    if (sweep.trace.empty()) throw std::invalid_argument("sweep has an empty trace: " + sweep_id);

    const double width = 640, height = 400;
    const double x0 = 60, y0 = 30, plot_w = width - 100, plot_h = height - 90;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    // axes
    out << "  <line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y0 + plot_h
        << "\" stroke=\"black\"/>\n"
        << "  <line x1=\"" << x0 << "\" y1=\"" << y0 + plot_h << "\" x2=\"" << x0 + plot_w
        << "\" y2=\"" << y0 + plot_h << "\" stroke=\"black\"/>\n"
        << "  <text x=\"" << x0 + plot_w / 2 << "\" y=\"" << height - 20
        << "\" text-anchor=\"middle\">frame</text>\n"
        << "  <text x=\"18\" y=\"" << y0 + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << y0 + plot_h / 2 << ")\">probability</text>\n";

    polyline(out, sweep.trace, x0, y0, plot_w, plot_h, "#1f77b4", "trace");
    polyline(out, presentation::template_cephalic(sweep.n_frames), x0, y0, plot_w, plot_h, "#2ca02c",
             "f_c");
    polyline(out, presentation::template_breech(sweep.n_frames), x0, y0, plot_w, plot_h, "#d62728",
             "f_b");

    const double lx = x0 + plot_w - 90;
    out << "  <text x=\"" << lx << "\" y=\"" << y0 + 14 << "\" fill=\"#1f77b4\">trace</text>\n"
        << "  <text x=\"" << lx << "\" y=\"" << y0 + 30 << "\" fill=\"#2ca02c\">f_c</text>\n"
        << "  <text x=\"" << lx << "\" y=\"" << y0 + 46 << "\" fill=\"#d62728\">f_b</text>\n"
        << "</svg>\n";
    return out.str();
}

std::string plot_lie(const Exam& exam, const std::string& sweep_id, int frame,
                     const lie::QualityCriteria& criteria) {
    const Sweep& sweep = find_sweep(exam, sweep_id);
    auto it = sweep.segmentations.find(frame);
    if (it == sweep.segmentations.end()) {
        throw std::invalid_argument("frame " + std::to_string(frame) + " has no segmentation");
    }
    const FrameSegmentation& seg = it->second;
    auto frame_lie = lie::classify_frame(seg, criteria);
    if (!frame_lie) {
        std::string why = "frame abstained";
        if (seg.thalamus && !seg.thalamus->empty()) {
            const auto check = lie::check_fallback_criteria(*seg.thalamus, criteria);
            if (!check.failed.empty()) {
                why += "; failed criteria:";
                for (const auto& name : check.failed) why += " " + name;
            }
        } else {
            why += "; no thalamus mask";
        }
        throw std::invalid_argument(why);
    }

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << seg.width << "\" height=\""
        << seg.height << "\" viewBox=\"0 0 " << seg.width << ' ' << seg.height << "\">\n"
        << "  <defs>\n"
        << "    <marker id=\"arrowhead\" markerWidth=\"8\" markerHeight=\"6\" refX=\"7\" refY=\"3\" "
           "orient=\"auto\">\n"
        << "      <path d=\"M0,0 L8,3 L0,6 z\" fill=\"#ff7f0e\"/>\n"
        << "    </marker>\n"
        << "  </defs>\n"
        << "  <rect width=\"" << seg.width << "\" height=\"" << seg.height << "\" fill=\"black\"/>\n";

    BinaryMask thal_largest;
    if (seg.thalamus) {
        mask_group(out, "thalamus", "#4d7ea8", *seg.thalamus);
        auto comps = morph::connected_components(*seg.thalamus);
        thal_largest.width = seg.thalamus->width;
        thal_largest.height = seg.thalamus->height;
        if (!comps.empty()) thal_largest.pixels = comps.front().pixels;
    }
    if (seg.csp) {
        mask_group(out, "csp", "#9467bd", *seg.csp);
    } else {
        out << "  <g id=\"csp\"/>\n";
    }

    const morph::Skeleton skel = morph::skeletonize(thal_largest);
    BinaryMask skel_mask;
    skel_mask.width = seg.width;
    skel_mask.height = seg.height;
    skel_mask.pixels = skel.pixels;
    mask_group(out, "skeleton", "#e8e8e8", skel_mask);

    const Pixel g = morph::geodesic_center(skel);
    out << "  <circle class=\"geodesic-center\" cx=\"" << g.second + 0.5 << "\" cy=\"" << g.first + 0.5
        << "\" r=\"2\" fill=\"#2ca02c\"/>\n";

    if (frame_lie->method == lie::Method::ThalamusOnly) {
        const auto endpoints = morph::skeleton_endpoints(skel);
        double mr = 0.0, mc = 0.0;
        for (const auto& [r, c] : endpoints) {
            out << "  <circle class=\"endpoint\" cx=\"" << c + 0.5 << "\" cy=\"" << r + 0.5
                << "\" r=\"2\" fill=\"#d62728\"/>\n";
            mr += r + 0.5;
            mc += c + 0.5;
        }
        mr /= endpoints.size();
        mc /= endpoints.size();
        out << "  <circle class=\"midpoint\" cx=\"" << fmt(mc) << "\" cy=\"" << fmt(mr)
            << "\" r=\"2\" fill=\"#ffdd44\"/>\n";
    }

    const double arrow_len = 0.15 * std::min(seg.width, seg.height);
    const double ax = g.second + 0.5, ay = g.first + 0.5;
    out << "  <line class=\"facing-arrow\" x1=\"" << fmt(ax) << "\" y1=\"" << fmt(ay) << "\" x2=\""
        << fmt(ax + arrow_len * frame_lie->vector.d_col) << "\" y2=\""
        << fmt(ay + arrow_len * frame_lie->vector.d_row)
        << "\" stroke=\"#ff7f0e\" stroke-width=\"1.5\" marker-end=\"url(#arrowhead)\"/>\n"
        << "</svg>\n";
    return out.str();
}

}  // namespace fetal::svg
