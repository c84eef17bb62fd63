#pragma once

#include "core/mask.hpp"

#include <string>
#include <vector>

namespace fetal::presentation {

enum class SweepLabel { Cephalic, Breech, NoHead };
enum class ExamLabel { Cephalic, Breech, Abstain };

struct SweepPresentation {
    std::string sweep_id;
    double sim_cephalic = 0.0;
    double sim_breech = 0.0;
    SweepLabel label = SweepLabel::NoHead;
};

struct PresentationResult {
    std::vector<SweepPresentation> per_sweep;
    ExamLabel exam_label = ExamLabel::Abstain;
    int votes_cephalic = 0;
    int votes_breech = 0;
};

// Exponential templates over t = 0..n_frames-1, computed in shifted form so
// large frame counts never overflow:
//   cephalic: exp(n_frames - t) / exp(n_frames) = exp(-t)
//   breech:   exp(t) / exp(n_frames)            = exp(t - n_frames)
std::vector<double> template_cephalic(int n_frames);
std::vector<double> template_breech(int n_frames);

// dot(a,b) / (|a||b|). Throws on length mismatch or a zero vector.
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

// True iff max trace probability >= threshold (inclusive).
bool detect_head(const Sweep& sweep, double threshold);

SweepPresentation classify_sweep(const Sweep& sweep, double threshold);

// NoHead sweeps are excluded from voting; strict majority wins; an exact
// vote tie is broken by the larger summed similarity margin; a margin tie
// (or no votes at all) yields Abstain.
PresentationResult aggregate(std::vector<SweepPresentation> per_sweep);

PresentationResult classify_exam(const Exam& exam, double threshold);

}  // namespace fetal::presentation
