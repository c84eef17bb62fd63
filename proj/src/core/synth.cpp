#include "core/synth.hpp"

#include "core/exam_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <stdexcept>

namespace fetal::synth {

void SynthConfig::validate() const {
    if (n_sweeps < 1) throw std::invalid_argument("n_sweeps must be positive");
    if (n_frames < 1) throw std::invalid_argument("n_frames must be positive");
    if (image_height < 1 || image_width < 1) throw std::invalid_argument("image size must be positive");
    if (crescent_inner_radius <= 0 || crescent_outer_radius <= crescent_inner_radius) {
        throw std::invalid_argument("crescent radii must satisfy 0 < inner < outer");
    }
    if (csp_semi_axis_major <= 0 || csp_semi_axis_minor <= 0) {
        throw std::invalid_argument("csp semi-axes must be positive");
    }
    const double reach = std::max(crescent_outer_radius, csp_offset_px + csp_semi_axis_major) +
                         mask_jitter_px + 2.0;
    if (2.0 * reach >= std::min(image_height, image_width)) {
        throw std::invalid_argument("geometry does not fit inside image_size");
    }
    for (int i : head_sweep_indices) {
        if (i < 0 || i >= n_sweeps) throw std::invalid_argument("head_sweep_indices out of range");
    }
}

ExamGenerator::ExamGenerator(const SynthConfig& cfg) : cfg_(cfg), state_(cfg.rng_seed) {
    cfg_.validate();
}

// splitmix64; self-contained so generated data is stable across platforms.
double ExamGenerator::next_uniform() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double ExamGenerator::next_normal() {
    // Box-Muller; u1 nudged away from zero.
    const double u1 = std::max(next_uniform(), 1e-300);
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> ExamGenerator::make_trace(int sweep_index) {
    std::vector<double> trace(cfg_.n_frames, 0.0);
    const bool has_head = std::find(cfg_.head_sweep_indices.begin(), cfg_.head_sweep_indices.end(),
                                    sweep_index) != cfg_.head_sweep_indices.end();
    const double center = cfg_.effective_bump_center() * cfg_.n_frames;
    const double sigma = std::max(cfg_.bump_sigma_fraction * cfg_.n_frames, 1e-9);
    for (int t = 0; t < cfg_.n_frames; ++t) {
        double p = 0.0;
        if (has_head) {
            const double z = (t - center) / sigma;
            p = 0.95 * std::exp(-0.5 * z * z);
        }
        if (cfg_.trace_noise_sigma > 0.0) {
            p += cfg_.trace_noise_sigma * next_normal();
        }
        trace[t] = std::clamp(p, 0.0, 1.0);
    }
    return trace;
}

namespace {

double angular_distance(double a, double b) {
    double d = std::fmod(a - b, 2.0 * std::numbers::pi);
    if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    if (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
    return std::abs(d);
}

}  // namespace

FrameSegmentation ExamGenerator::make_frame_masks(double facing_angle_rad) {
    FrameSegmentation seg;
    seg.height = cfg_.image_height;
    seg.width = cfg_.image_width;
    const double cr = cfg_.image_height / 2.0;
    const double cc = cfg_.image_width / 2.0;
    const double u_row = std::sin(facing_angle_rad);
    const double u_col = std::cos(facing_angle_rad);
    const double half_span = 0.5 * cfg_.crescent_span_degrees * std::numbers::pi / 180.0;
    const double opposite = facing_angle_rad + std::numbers::pi;

    BinaryMask thal, csp;
    thal.height = csp.height = seg.height;
    thal.width = csp.width = seg.width;

    const double er = cr + cfg_.csp_offset_px * u_row;
    const double ec = cc + cfg_.csp_offset_px * u_col;
    const double a = cfg_.csp_semi_axis_major;
    const double b = cfg_.csp_semi_axis_minor;

    // Only the neighborhood of the two structures can hold foreground.
    const double reach = std::max(cfg_.crescent_outer_radius,
                                  cfg_.csp_offset_px + cfg_.csp_semi_axis_major) + 2.0;
    const int r_lo = std::max(0, static_cast<int>(cr - reach));
    const int r_hi = std::min(seg.height - 1, static_cast<int>(cr + reach) + 1);
    const int c_lo = std::max(0, static_cast<int>(cc - reach));
    const int c_hi = std::min(seg.width - 1, static_cast<int>(cc + reach) + 1);
    for (int r = r_lo; r <= r_hi; ++r) {
        for (int c = c_lo; c <= c_hi; ++c) {
            const double dr = r - cr, dc = c - cc;
            const double dist = std::hypot(dr, dc);
            if (dist >= cfg_.crescent_inner_radius && dist <= cfg_.crescent_outer_radius &&
                angular_distance(std::atan2(dr, dc), opposite) <= half_span) {
                thal.pixels.emplace_back(r, c);
            }
            const double gr = r - er, gc = c - ec;
            const double along = gr * u_row + gc * u_col;
            const double across = -gr * u_col + gc * u_row;
            if ((along * along) / (a * a) + (across * across) / (b * b) <= 1.0) {
                csp.pixels.emplace_back(r, c);
            }
        }
    }

    if (cfg_.mask_jitter_px > 0.0) {
        const double p = std::min(0.5, 0.25 * cfg_.mask_jitter_px);
        for (BinaryMask* m : {&thal, &csp}) {
            std::set<Pixel> fg(m->pixels.begin(), m->pixels.end());
            std::set<Pixel> grown(fg);
            std::vector<Pixel> to_remove, to_add;
            for (const Pixel& px : fg) {
                bool boundary = false;
                for (int dr = -1; dr <= 1; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        if (dr == 0 && dc == 0) continue;
                        const Pixel n{px.first + dr, px.second + dc};
                        if (!fg.count(n)) {
                            boundary = true;
                            if (m->in_bounds(n.first, n.second) && grown.insert(n).second &&
                                next_uniform() < p) {
                                to_add.push_back(n);
                            }
                        }
                    }
                }
                if (boundary && next_uniform() < p) to_remove.push_back(px);
            }
            for (const Pixel& px : to_remove) fg.erase(px);
            for (const Pixel& px : to_add) fg.insert(px);
            m->pixels.assign(fg.begin(), fg.end());
        }
    }

    if (!thal.pixels.empty()) seg.thalamus = std::move(thal);
    if (!csp.pixels.empty()) seg.csp = std::move(csp);
    return seg;
}

Exam ExamGenerator::make_exam(const std::string& exam_id, double detection_threshold) {
    Exam exam;
    exam.exam_id = exam_id;
    const double base_angle = cfg_.lie == Lie::Right ? 0.0 : std::numbers::pi;
    for (int i = 0; i < cfg_.n_sweeps; ++i) {
        Sweep sweep;
        sweep.sweep_id = "sweep_" + std::to_string(i);
        sweep.n_frames = cfg_.n_frames;
        sweep.trace = make_trace(i);
        const bool has_head = std::find(cfg_.head_sweep_indices.begin(), cfg_.head_sweep_indices.end(),
                                        i) != cfg_.head_sweep_indices.end();
        if (has_head) {
            for (int t = 0; t < cfg_.n_frames; ++t) {
                if (sweep.trace[t] < detection_threshold) continue;
                double angle = base_angle;
                if (cfg_.mask_jitter_px > 0.0) angle += 0.1 * next_normal();
                sweep.segmentations.emplace(t, make_frame_masks(angle));
            }
        }
        exam.sweeps.push_back(std::move(sweep));
    }
    return exam;
}

GroundTruth make_exam_bundle(const SynthConfig& cfg, const std::filesystem::path& dir,
                             const std::string& exam_id) {
    ExamGenerator gen(cfg);
    const Exam exam = gen.make_exam(exam_id);
    io::write_exam(exam, dir);
    nlohmann::ordered_json gt = {
        {"presentation", cfg.presentation == Presentation::Cephalic ? "cephalic" : "breech"},
        {"lie", cfg.lie == Lie::Left ? "left" : "right"},
    };
    std::ofstream out(dir / "ground_truth.json", std::ios::binary);
    if (!out) throw io::IoError("cannot write ground_truth.json");
    out << gt.dump(2) << '\n';
    return {cfg.presentation, cfg.lie};
}

Pixel oracle_geodesic_center(const std::vector<Pixel>& pixels) {
    // Floyd-Warshall over the 8-adjacency graph; deliberately different
    // machinery from the production BFS path.
    std::vector<Pixel> pts(pixels);
    std::sort(pts.begin(), pts.end());
    const std::size_t n = pts.size();
    if (n == 0) throw std::invalid_argument("oracle_geodesic_center: empty set");
    const int inf = 1 << 28;
    std::vector<int> d(n * n, inf);
    for (std::size_t i = 0; i < n; ++i) {
        d[i * n + i] = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (std::abs(pts[i].first - pts[j].first) <= 1 &&
                std::abs(pts[i].second - pts[j].second) <= 1) {
                d[i * n + j] = 1;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const int dik = d[i * n + k];
            if (dik >= inf) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (dik + d[k * n + j] < d[i * n + j]) d[i * n + j] = dik + d[k * n + j];
            }
        }
    }
    std::int64_t best_sum = -1;
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i * n + j] >= inf) throw std::invalid_argument("oracle_geodesic_center: disconnected");
            sum += d[i * n + j];
        }
        if (best_sum < 0 || sum < best_sum) {
            best_sum = sum;
            best = i;
        }
    }
    return pts[best];
}

namespace {

std::int64_t oracle_cross(const Pixel& o, const Pixel& a, const Pixel& b) {
    return static_cast<std::int64_t>(a.second - o.second) * (b.first - o.first) -
           static_cast<std::int64_t>(a.first - o.first) * (b.second - o.second);
}

std::int64_t sq_dist(const Pixel& a, const Pixel& b) {
    const std::int64_t dr = a.first - b.first, dc = a.second - b.second;
    return dr * dr + dc * dc;
}

}  // namespace

std::int64_t oracle_hull_pixel_count(const std::vector<Pixel>& pixels) {
    std::vector<Pixel> pts(pixels);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) throw std::invalid_argument("oracle_hull_pixel_count: empty set");
    if (pts.size() == 1) return 1;

    int rmin = pts[0].first, rmax = pts[0].first, cmin = pts[0].second, cmax = pts[0].second;
    for (const auto& [r, c] : pts) {
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
    }

    bool collinear = true;
    for (std::size_t i = 2; i < pts.size() && collinear; ++i) {
        collinear = oracle_cross(pts[0], pts[1], pts[i]) == 0;
    }
    if (collinear) {
        // Farthest pair spans the segment; count lattice points on it.
        std::size_t ai = 0, bi = 1;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (sq_dist(pts[i], pts[j]) > sq_dist(pts[ai], pts[bi])) {
                    ai = i;
                    bi = j;
                }
            }
        }
        std::int64_t count = 0;
        for (int r = rmin; r <= rmax; ++r) {
            for (int c = cmin; c <= cmax; ++c) {
                const Pixel p{r, c};
                if (oracle_cross(pts[ai], pts[bi], p) == 0 &&
                    static_cast<std::int64_t>(p.first - pts[ai].first) * (pts[bi].first - p.first) +
                            static_cast<std::int64_t>(p.second - pts[ai].second) *
                                (pts[bi].second - p.second) >=
                        0) {
                    ++count;
                }
            }
        }
        return count;
    }

    // Jarvis march (gift wrapping).
    std::vector<Pixel> hull;
    const Pixel start = *std::min_element(pts.begin(), pts.end());
    Pixel cur = start;
    do {
        hull.push_back(cur);
        Pixel cand = pts[0] == cur ? pts[1] : pts[0];
        for (const Pixel& p : pts) {
            if (p == cur) continue;
            const std::int64_t cr = oracle_cross(cur, cand, p);
            if (cr > 0 || (cr == 0 && sq_dist(cur, p) > sq_dist(cur, cand))) cand = p;
        }
        cur = cand;
    } while (cur != start && hull.size() <= pts.size());

    std::int64_t count = 0;
    for (int r = rmin; r <= rmax; ++r) {
        for (int c = cmin; c <= cmax; ++c) {
            const Pixel p{r, c};
            bool inside = true;
            for (std::size_t i = 0; i < hull.size() && inside; ++i) {
                // Wrapping kept every point on the non-positive side of each edge.
                inside = oracle_cross(hull[i], hull[(i + 1) % hull.size()], p) <= 0;
            }
            if (inside) ++count;
        }
    }
    return count;
}

}  // namespace fetal::synth
