#pragma once

#include "core/mask.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fetal::synth {

enum class Presentation { Cephalic, Breech };
enum class Lie { Left, Right };

struct SynthConfig {
    Presentation presentation = Presentation::Cephalic;
    Lie lie = Lie::Left;
    int n_sweeps = 5;
    int n_frames = 100;
    int image_height = 256;
    int image_width = 256;
    std::vector<int> head_sweep_indices = {1, 2, 3};
    // Defaults to 0.2 (cephalic) / 0.8 (breech) when negative.
    double bump_center_fraction = -1.0;
    double bump_sigma_fraction = 0.05;
    double trace_noise_sigma = 0.0;
    double mask_jitter_px = 0.0;
    // Inner radius keeps discrete solidity near 0.89 so default crescents
    // clear the 0.82 fallback criterion with margin.
    double crescent_outer_radius = 24.0;
    double crescent_inner_radius = 8.0;
    double crescent_span_degrees = 180.0;
    double csp_semi_axis_major = 6.0;
    double csp_semi_axis_minor = 4.0;
    double csp_offset_px = 30.0;
    std::uint64_t rng_seed = 0;

    double effective_bump_center() const {
        if (bump_center_fraction >= 0.0) return bump_center_fraction;
        return presentation == Presentation::Cephalic ? 0.2 : 0.8;
    }
    // Throws std::invalid_argument when geometry or counts are unusable.
    void validate() const;
};

struct GroundTruth {
    Presentation presentation;
    Lie lie;
};

class ExamGenerator {
public:
    explicit ExamGenerator(const SynthConfig& cfg);

    // Gaussian head-probability bump (peak 0.95) for head-carrying sweeps,
    // all zeros otherwise; optional additive noise, clamped to [0,1].
    std::vector<double> make_trace(int sweep_index);

    // Crescent thalamus opening along the facing direction plus an ellipse
    // CSP offset into the opening; facing_angle_rad rotates the whole pose
    // (0 = facing +col / Right).
    FrameSegmentation make_frame_masks(double facing_angle_rad);

    // In-memory exam; segmentations are attached to frames whose trace
    // value reaches detection_threshold.
    Exam make_exam(const std::string& exam_id, double detection_threshold = 0.5);

private:
    SynthConfig cfg_;
    std::uint64_t state_;

    double next_uniform();  // [0,1)
    double next_normal();
};

// Generates and writes a bundle (plus ground_truth.json) in one call.
GroundTruth make_exam_bundle(const SynthConfig& cfg, const std::filesystem::path& dir,
                             const std::string& exam_id);

// Brute-force oracles, written independently of fetal::morph, for
// oracle-equivalence testing.
Pixel oracle_geodesic_center(const std::vector<Pixel>& pixels);
std::int64_t oracle_hull_pixel_count(const std::vector<Pixel>& pixels);

}  // namespace fetal::synth
