#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fetal {

using Pixel = std::pair<int, int>;  // (row, col)

// 2-D boolean grid for one anatomical structure in one frame.
// Stored as a sorted set of foreground coordinates; masks are sparse
// relative to the frame and most operations iterate foreground only.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<Pixel> pixels;  // sorted (row, col), unique

    bool empty() const { return pixels.empty(); }
    bool in_bounds(int r, int c) const {
        return r >= 0 && r < height && c >= 0 && c < width;
    }
    void normalize();  // sort + dedupe
    bool contains(int r, int c) const;
};

struct FrameSegmentation {
    int width = 0;
    int height = 0;
    std::optional<BinaryMask> thalamus;
    std::optional<BinaryMask> csp;
};

struct Sweep {
    std::string sweep_id;
    int n_frames = 0;
    std::vector<double> trace;                 // head probability per frame, [0,1]
    std::map<int, FrameSegmentation> segmentations;  // frame index -> masks
};

struct Exam {
    std::string exam_id;
    std::vector<Sweep> sweeps;
};

// Reports every type-invariant violation; empty list means valid.
// Never throws.
std::vector<std::string> validate_exam(const Exam& exam);

}  // namespace fetal
