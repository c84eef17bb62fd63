#include "core/presentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fetal::presentation {

std::vector<double> template_cephalic(int n_frames) {
    if (n_frames < 1) throw std::invalid_argument("template_cephalic: n_frames < 1");
    std::vector<double> f(n_frames);
    for (int t = 0; t < n_frames; ++t) f[t] = std::exp(static_cast<double>(-t));
    return f;
}

std::vector<double> template_breech(int n_frames) {
    if (n_frames < 1) throw std::invalid_argument("template_breech: n_frames < 1");
    std::vector<double> f(n_frames);
    for (int t = 0; t < n_frames; ++t) f[t] = std::exp(static_cast<double>(t - n_frames));
    return f;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("cosine_similarity: length mismatch");
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) {
        throw std::invalid_argument("cosine_similarity: zero vector");
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

bool detect_head(const Sweep& sweep, double threshold) {
    if (sweep.trace.empty()) return false;
    return *std::max_element(sweep.trace.begin(), sweep.trace.end()) >= threshold;
}

SweepPresentation classify_sweep(const Sweep& sweep, double threshold) {
    SweepPresentation out;
    out.sweep_id = sweep.sweep_id;
    if (!detect_head(sweep, threshold)) {
        out.label = SweepLabel::NoHead;
        return out;
    }
    const auto fc = template_cephalic(sweep.n_frames);
    const auto fb = template_breech(sweep.n_frames);
    out.sim_cephalic = cosine_similarity(sweep.trace, fc);
    out.sim_breech = cosine_similarity(sweep.trace, fb);
    // Tie goes to cephalic.
    out.label = out.sim_cephalic >= out.sim_breech ? SweepLabel::Cephalic : SweepLabel::Breech;
    return out;
}

PresentationResult aggregate(std::vector<SweepPresentation> per_sweep) {
    PresentationResult res;
    res.per_sweep = std::move(per_sweep);
    double margin_cephalic = 0.0, margin_breech = 0.0;
    for (const SweepPresentation& s : res.per_sweep) {
        if (s.label == SweepLabel::Cephalic) {
            ++res.votes_cephalic;
            margin_cephalic += s.sim_cephalic - s.sim_breech;
        } else if (s.label == SweepLabel::Breech) {
            ++res.votes_breech;
            margin_breech += s.sim_breech - s.sim_cephalic;
        }
    }
    if (res.votes_cephalic > res.votes_breech) {
        res.exam_label = ExamLabel::Cephalic;
    } else if (res.votes_breech > res.votes_cephalic) {
        res.exam_label = ExamLabel::Breech;
    } else if (res.votes_cephalic > 0 && margin_cephalic != margin_breech) {
        res.exam_label = margin_cephalic > margin_breech ? ExamLabel::Cephalic : ExamLabel::Breech;
    } else {
        res.exam_label = ExamLabel::Abstain;
    }
    return res;
}

PresentationResult classify_exam(const Exam& exam, double threshold) {
    std::vector<SweepPresentation> per_sweep;
    per_sweep.reserve(exam.sweeps.size());
    for (const Sweep& s : exam.sweeps) per_sweep.push_back(classify_sweep(s, threshold));
    return aggregate(std::move(per_sweep));
}

}  // namespace fetal::presentation
