#include "core/morphology.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace fetal::morph {

namespace {

constexpr std::array<std::pair<int, int>, 8> kNeighbors8 = {{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};

struct PixelHash {
    std::size_t operator()(const Pixel& p) const {
        return std::hash<std::int64_t>()((static_cast<std::int64_t>(p.first) << 32) ^
                                         static_cast<std::uint32_t>(p.second));
    }
};

using PixelSet = std::unordered_map<Pixel, int, PixelHash>;

}  // namespace

std::vector<Component> connected_components(const BinaryMask& mask) {
    PixelSet index;
    index.reserve(mask.pixels.size());
    for (const Pixel& p : mask.pixels) index.emplace(p, -1);

    std::vector<Component> comps;
    for (const Pixel& seed : mask.pixels) {
        auto it = index.find(seed);
        if (it->second >= 0) continue;
        const int label = static_cast<int>(comps.size());
        Component comp;
        std::queue<Pixel> q;
        it->second = label;
        q.push(seed);
        while (!q.empty()) {
            Pixel p = q.front();
            q.pop();
            comp.pixels.push_back(p);
            for (auto [dr, dc] : kNeighbors8) {
                auto n = index.find({p.first + dr, p.second + dc});
                if (n != index.end() && n->second < 0) {
                    n->second = label;
                    q.push(n->first);
                }
            }
        }
        std::sort(comp.pixels.begin(), comp.pixels.end());
        comps.push_back(std::move(comp));
    }
    std::stable_sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        if (a.pixel_count() != b.pixel_count()) return a.pixel_count() > b.pixel_count();
        return a.pixels.front() < b.pixels.front();
    });
    return comps;
}

std::pair<double, double> centroid(const Component& comp) {
    if (comp.pixels.empty()) throw std::invalid_argument("centroid: empty component");
    double sr = 0.0, sc = 0.0;
    for (const auto& [r, c] : comp.pixels) {
        sr += r;
        sc += c;
    }
    const double n = static_cast<double>(comp.pixels.size());
    return {sr / n, sc / n};
}

namespace {

std::int64_t cross(const Pixel& o, const Pixel& a, const Pixel& b) {
    // (row, col) treated as (y, x); positive = counter-clockwise turn in
    // the (x right, y down) frame is irrelevant, only consistency matters.
    const std::int64_t ax = a.second - o.second, ay = a.first - o.first;
    const std::int64_t bx = b.second - o.second, by = b.first - o.first;
    return ax * by - ay * bx;
}

// Andrew monotone chain over integer pixel centers; strictly convex output.
std::vector<Pixel> convex_hull(std::vector<Pixel> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const Pixel& a, const Pixel& b) {
                  return std::pair{a.second, a.first} < std::pair{b.second, b.first};
              });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Pixel> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

std::int64_t segment_lattice_count(const Pixel& a, const Pixel& b) {
    const std::int64_t dr = std::abs(a.first - b.first);
    const std::int64_t dc = std::abs(a.second - b.second);
    return std::gcd(dr, dc) + 1;
}

}  // namespace

double solidity(const Component& comp) {
    if (comp.pixels.empty()) throw std::invalid_argument("solidity: empty component");
    std::vector<Pixel> hull = convex_hull(comp.pixels);
    std::int64_t hull_pixels = 0;
    if (hull.size() <= 2) {
        hull_pixels = hull.size() == 1 ? 1 : segment_lattice_count(hull[0], hull[1]);
    } else {
        int rmin = hull[0].first, rmax = hull[0].first;
        int cmin = hull[0].second, cmax = hull[0].second;
        for (const auto& [r, c] : hull) {
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, c);
        }
        for (int r = rmin; r <= rmax; ++r) {
            for (int c = cmin; c <= cmax; ++c) {
                bool inside = true;
                for (std::size_t i = 0; i < hull.size() && inside; ++i) {
                    const Pixel& a = hull[i];
                    const Pixel& b = hull[(i + 1) % hull.size()];
                    inside = cross(a, b, {r, c}) >= 0;
                }
                if (inside) ++hull_pixels;
            }
        }
    }
    return static_cast<double>(comp.pixels.size()) / static_cast<double>(hull_pixels);
}

namespace {

// Rosenfeld simple-point test for 8-connected foreground / 4-connected
// background, precomputed over all 256 neighborhood configurations.
// Ring bit order matches kNeighbors8.
class SimpleTable {
public:
    SimpleTable() {
        for (int cfg = 0; cfg < 256; ++cfg) table_[cfg] = compute(cfg);
    }
    bool operator()(unsigned cfg) const { return table_[cfg]; }

private:
    static bool compute(int cfg) {
        std::array<bool, 8> fg{};
        for (int k = 0; k < 8; ++k) fg[k] = (cfg >> k) & 1;

        auto adjacent = [&](int i, int j, bool four) {
            const int dr = kNeighbors8[i].first - kNeighbors8[j].first;
            const int dc = kNeighbors8[i].second - kNeighbors8[j].second;
            const int ar = std::abs(dr), ac = std::abs(dc);
            if (ar > 1 || ac > 1 || (ar == 0 && ac == 0)) return false;
            return four ? (ar + ac == 1) : true;
        };
        auto count_components = [&](bool want_fg, bool four) {
            std::array<int, 8> label;
            label.fill(-1);
            int n = 0;
            for (int i = 0; i < 8; ++i) {
                if (fg[i] != want_fg || label[i] >= 0) continue;
                std::queue<int> q;
                label[i] = n;
                q.push(i);
                while (!q.empty()) {
                    int u = q.front();
                    q.pop();
                    for (int v = 0; v < 8; ++v) {
                        if (fg[v] == want_fg && label[v] < 0 && adjacent(u, v, four)) {
                            label[v] = n;
                            q.push(v);
                        }
                    }
                }
                ++n;
            }
            // Background components count only if they touch a 4-neighbor of
            // the center (indices of (0,-1),(0,1),(-1,0),(1,0) in the ring).
            if (!want_fg) {
                std::array<bool, 8> counted{};
                int m = 0;
                for (int i : {1, 3, 4, 6}) {
                    if (fg[i] == want_fg && !counted[label[i]]) {
                        counted[label[i]] = true;
                        ++m;
                    }
                }
                return m;
            }
            return n;
        };
        return count_components(true, false) == 1 && count_components(false, true) == 1;
    }

    std::array<bool, 256> table_;
};

const SimpleTable& simple_table() {
    static const SimpleTable t;
    return t;
}

}  // namespace

Skeleton skeletonize(const BinaryMask& mask) {
    Skeleton skel;
    skel.source_height = mask.height;
    skel.source_width = mask.width;
    if (mask.pixels.empty()) return skel;

    int rmin = mask.pixels[0].first, rmax = rmin;
    int cmin = mask.pixels[0].second, cmax = cmin;
    for (const auto& [r, c] : mask.pixels) {
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
    }
    // 1-pixel border of background around the bounding box.
    const int h = rmax - rmin + 3, w = cmax - cmin + 3;
    std::vector<std::uint8_t> grid(static_cast<std::size_t>(h) * w, 0);
    auto at = [&](int r, int c) -> std::uint8_t& {
        return grid[static_cast<std::size_t>(r) * w + c];
    };
    for (const auto& [r, c] : mask.pixels) at(r - rmin + 1, c - cmin + 1) = 1;

    auto config = [&](int r, int c) {
        unsigned cfg = 0;
        for (int k = 0; k < 8; ++k) {
            if (at(r + kNeighbors8[k].first, c + kNeighbors8[k].second)) cfg |= 1u << k;
        }
        return cfg;
    };
    const SimpleTable& simple = simple_table();
    constexpr std::array<std::pair<int, int>, 4> kDirections = {{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};

    // Candidates are frozen at the start of each directional pass so a pass
    // peels exactly one boundary layer; deletions are applied sequentially
    // with simplicity rechecked against the current grid.
    std::vector<std::pair<int, int>> border;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [dr, dc] : kDirections) {
            border.clear();
            for (int r = 1; r < h - 1; ++r) {
                for (int c = 1; c < w - 1; ++c) {
                    if (at(r, c) && !at(r + dr, c + dc)) border.emplace_back(r, c);
                }
            }
            for (auto [r, c] : border) {
                const unsigned cfg = config(r, c);
                if (std::popcount(cfg) < 2) continue;  // keep endpoints
                if (simple(cfg)) {
                    at(r, c) = 0;
                    changed = true;
                }
            }
        }
    }
    for (int r = 1; r < h - 1; ++r) {
        for (int c = 1; c < w - 1; ++c) {
            if (at(r, c)) skel.pixels.emplace_back(r + rmin - 1, c + cmin - 1);
        }
    }
    return skel;
}

std::vector<Pixel> skeleton_endpoints(const Skeleton& skel) {
    PixelSet index;
    for (const Pixel& p : skel.pixels) index.emplace(p, 0);
    std::vector<Pixel> out;
    for (const Pixel& p : skel.pixels) {
        int response = 10;
        for (auto [dr, dc] : kNeighbors8) {
            if (index.count({p.first + dr, p.second + dc})) response += 1;
        }
        if (response == 11) out.push_back(p);
    }
    return out;
}

Pixel geodesic_center(const Skeleton& skel) {
    const std::size_t n = skel.pixels.size();
    if (n == 0) throw std::invalid_argument("geodesic_center: empty skeleton");

    PixelSet index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(skel.pixels[i], static_cast<int>(i));
    std::vector<std::vector<int>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto [dr, dc] : kNeighbors8) {
            auto it = index.find({skel.pixels[i].first + dr, skel.pixels[i].second + dc});
            if (it != index.end()) adj[i].push_back(it->second);
        }
    }
    std::vector<int> dist(n);
    std::int64_t best_sum = -1;
    std::size_t best = 0;
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<int> q;
        dist[s] = 0;
        q.push(static_cast<int>(s));
        std::int64_t sum = 0;
        std::size_t reached = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            sum += dist[u];
            for (int v : adj[u]) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    ++reached;
                    q.push(v);
                }
            }
        }
        if (reached != n) throw std::invalid_argument("geodesic_center: skeleton is disconnected");
        if (best_sum < 0 || sum < best_sum) {
            best_sum = sum;
            best = s;  // pixels are sorted, so first minimum is lexicographic
        }
    }
    return skel.pixels[best];
}

}  // namespace fetal::morph
