#pragma once

#include "core/mask.hpp"

#include <vector>

namespace fetal::morph {

struct Component {
    std::vector<Pixel> pixels;  // sorted
    int pixel_count() const { return static_cast<int>(pixels.size()); }
};

struct Skeleton {
    std::vector<Pixel> pixels;  // sorted, subset of source mask
    int source_height = 0;
    int source_width = 0;
};

// Maximal 8-connected components, largest first; ties broken by the
// lexicographically smallest pixel.
std::vector<Component> connected_components(const BinaryMask& mask);

// Arithmetic mean of pixel coordinates. Throws on an empty component.
std::pair<double, double> centroid(const Component& comp);

// pixel_count / (grid pixels inside-or-on the convex hull of the pixel
// centers). Degenerate (collinear) hulls count lattice points on the segment.
double solidity(const Component& comp);

// Sequential connectivity-preserving thinning to a 1-px-wide skeleton.
// Deterministic; preserves the 8-component count of the source mask.
Skeleton skeletonize(const BinaryMask& mask);

// Skeleton pixels with exactly one 8-neighbor in the skeleton, found by a
// 3x3 kernel (center 10, neighbors 1) responding exactly 11.
std::vector<Pixel> skeleton_endpoints(const Skeleton& skel);

// Pixel minimizing the sum of unweighted shortest-path hop counts to all
// other skeleton pixels in the 8-adjacency graph. Ties break to the
// lexicographically smallest (row, col). Throws if the skeleton is empty
// or not a single 8-connected component.
Pixel geodesic_center(const Skeleton& skel);

}  // namespace fetal::morph
