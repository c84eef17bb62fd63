#include "core/mask.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace fetal {

void BinaryMask::normalize() {
    std::sort(pixels.begin(), pixels.end());
    pixels.erase(std::unique(pixels.begin(), pixels.end()), pixels.end());
}

bool BinaryMask::contains(int r, int c) const {
    return std::binary_search(pixels.begin(), pixels.end(), Pixel{r, c});
}

namespace {

void check_mask(const BinaryMask& m, const std::string& where,
                int exp_w, int exp_h, std::vector<std::string>& out) {
    if (m.width != exp_w || m.height != exp_h) {
        std::ostringstream os;
        os << where << ": mask dimensions " << m.width << "x" << m.height
           << " differ from frame dimensions " << exp_w << "x" << exp_h;
        out.push_back(os.str());
    }
    for (const auto& [r, c] : m.pixels) {
        if (r < 0 || r >= m.height || c < 0 || c >= m.width) {
            std::ostringstream os;
            os << where << ": pixel (" << r << "," << c << ") out of bounds";
            out.push_back(os.str());
            break;
        }
    }
}

}  // namespace

std::vector<std::string> validate_exam(const Exam& exam) {
    std::vector<std::string> v;
    if (exam.sweeps.empty()) {
        v.push_back("exam '" + exam.exam_id + "': sweeps list is empty");
    }
    std::set<std::string> seen_ids;
    for (const Sweep& s : exam.sweeps) {
        const std::string tag = "sweep '" + s.sweep_id + "'";
        if (!seen_ids.insert(s.sweep_id).second) {
            v.push_back(tag + ": duplicate sweep id");
        }
        if (s.n_frames <= 0) {
            v.push_back(tag + ": n_frames must be positive");
        }
        if (static_cast<int>(s.trace.size()) != s.n_frames) {
            std::ostringstream os;
            os << tag << ": trace length " << s.trace.size()
               << " does not equal n_frames " << s.n_frames;
            v.push_back(os.str());
        }
        for (std::size_t t = 0; t < s.trace.size(); ++t) {
            const double p = s.trace[t];
            if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
                std::ostringstream os;
                os << tag << " frame " << t << ": probability out of range";
                v.push_back(os.str());
            }
        }
        for (const auto& [t, seg] : s.segmentations) {
            std::ostringstream where;
            where << tag << " frame " << t;
            if (t < 0 || t >= s.n_frames) {
                v.push_back(where.str() + ": segmentation frame index out of range");
            }
            if (!seg.thalamus && !seg.csp) {
                v.push_back(where.str() + ": segmentation has neither thalamus nor csp");
            }
            if (seg.thalamus) {
                check_mask(*seg.thalamus, where.str() + " thalamus", seg.width, seg.height, v);
            }
            if (seg.csp) {
                check_mask(*seg.csp, where.str() + " csp", seg.width, seg.height, v);
            }
        }
    }
    return v;
}

}  // namespace fetal
