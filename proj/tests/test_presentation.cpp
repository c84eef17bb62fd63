#include "core/presentation.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace fetal;
using namespace fetal::presentation;

namespace {

Sweep sweep_with_trace(std::vector<double> trace) {
    Sweep s;
    s.sweep_id = "s";
    s.n_frames = static_cast<int>(trace.size());
    s.trace = std::move(trace);
    return s;
}

SweepPresentation labeled(SweepLabel label, double sim_c, double sim_b) {
    SweepPresentation s;
    s.sweep_id = "s";
    s.label = label;
    s.sim_cephalic = sim_c;
    s.sim_breech = sim_b;
    return s;
}

}  // namespace

TEST_CASE("templates: analytic values at n_frames=3") {
    const auto fc = template_cephalic(3);
    const auto fb = template_breech(3);
    REQUIRE(fc.size() == 3);
    CHECK(fc[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fc[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(fc[2] == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(fb[0] == doctest::Approx(std::exp(-3.0)).epsilon(1e-15));
    CHECK(fb[1] == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(fb[2] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("templates: endpoints and error") {
    for (int n : {1, 5, 50}) {
        CHECK(template_cephalic(n)[0] == 1.0);
        CHECK(template_breech(n)[n - 1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(template_cephalic(0), std::invalid_argument);
    CHECK_THROWS_AS(template_breech(-1), std::invalid_argument);
}

TEST_CASE("templates: shifted form matches literal form, never overflows") {
    for (int n : {2, 10, 100, 500}) {
        const auto fc = template_cephalic(n);
        const auto fb = template_breech(n);
        for (int t = 0; t < n; ++t) {
            const double fc_direct = std::exp(static_cast<double>(n - t)) / std::exp(static_cast<double>(n));
            const double fb_direct = std::exp(static_cast<double>(t)) / std::exp(static_cast<double>(n));
            CHECK(std::abs(fc[t] - fc_direct) / fc_direct <= 1e-12);
            CHECK(std::abs(fb[t] - fb_direct) / fb_direct <= 1e-12);
        }
    }
    // shifted form stays finite where the literal form would overflow
    const auto big = template_cephalic(1000000);
    CHECK(std::isfinite(big.front()));
    CHECK(std::isfinite(big.back()));
    CHECK(big.front() == 1.0);
}

TEST_CASE("cosine_similarity") {
    CHECK(cosine_similarity({3, 4}, {3, 4}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cosine_similarity({1, 0}, {0, 1}) == doctest::Approx(0.0));
    CHECK(cosine_similarity({1, 1}, {1, 0}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS((cosine_similarity({1, 2}, {1, 2, 3})), std::invalid_argument);
    CHECK_THROWS_AS((cosine_similarity({0, 0}, {1, 2})), std::invalid_argument);
}

TEST_CASE("detect_head") {
    CHECK_FALSE(detect_head(sweep_with_trace({0, 0, 0, 0}), 0.5));
    CHECK(detect_head(sweep_with_trace({0, 0.9, 0}), 0.5));
    CHECK(detect_head(sweep_with_trace({0.5}), 0.5));  // inclusive boundary
}

TEST_CASE("classify_sweep") {
    SUBCASE("trace equal to the cephalic template") {
        auto s = sweep_with_trace(template_cephalic(20));
        auto out = classify_sweep(s, 0.5);
        CHECK(out.label == SweepLabel::Cephalic);
        CHECK(out.sim_cephalic == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("one-hot spikes") {
        std::vector<double> early(10, 0.0), late(10, 0.0);
        early[0] = 1.0;
        late[9] = 1.0;
        CHECK(classify_sweep(sweep_with_trace(early), 0.5).label == SweepLabel::Cephalic);
        CHECK(classify_sweep(sweep_with_trace(late), 0.5).label == SweepLabel::Breech);
    }
    SUBCASE("gaussian bump centered at 0.8*n classifies breech") {
        std::vector<double> trace(100);
        for (int t = 0; t < 100; ++t) {
            const double z = (t - 80.0) / 5.0;
            trace[t] = 0.95 * std::exp(-0.5 * z * z);
        }
        auto out = classify_sweep(sweep_with_trace(trace), 0.5);
        CHECK(out.label == SweepLabel::Breech);
        CHECK(out.sim_breech > out.sim_cephalic);
    }
    SUBCASE("below-threshold trace is NoHead") {
        auto out = classify_sweep(sweep_with_trace({0.1, 0.2, 0.1}), 0.5);
        CHECK(out.label == SweepLabel::NoHead);
        CHECK(out.sim_cephalic == 0.0);
    }
}

TEST_CASE("aggregate") {
    SUBCASE("strict majority") {
        auto res = aggregate({labeled(SweepLabel::Cephalic, 0.9, 0.2),
                              labeled(SweepLabel::Cephalic, 0.8, 0.3),
                              labeled(SweepLabel::Breech, 0.2, 0.9)});
        CHECK(res.exam_label == ExamLabel::Cephalic);
        CHECK(res.votes_cephalic == 2);
        CHECK(res.votes_breech == 1);
    }
    SUBCASE("all NoHead abstains") {
        std::vector<SweepPresentation> sweeps(5, labeled(SweepLabel::NoHead, 0, 0));
        auto res = aggregate(sweeps);
        CHECK(res.exam_label == ExamLabel::Abstain);
        CHECK(res.votes_cephalic == 0);
    }
    SUBCASE("vote tie broken by similarity margin") {
        auto res = aggregate({labeled(SweepLabel::Cephalic, 0.70, 0.40),    // margin 0.30
                              labeled(SweepLabel::Breech, 0.50, 0.60)});    // margin 0.10
        CHECK(res.exam_label == ExamLabel::Cephalic);
    }
    SUBCASE("margin tie abstains") {
        auto res = aggregate({labeled(SweepLabel::Cephalic, 0.7, 0.5),
                              labeled(SweepLabel::Breech, 0.5, 0.7)});
        CHECK(res.exam_label == ExamLabel::Abstain);
    }
    SUBCASE("empty input abstains") {
        CHECK(aggregate({}).exam_label == ExamLabel::Abstain);
    }
}

TEST_CASE("property: positive scaling leaves similarities and label unchanged") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_real_distribution<double> scale_dist(0.05, 0.99);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> trace(30);
        for (auto& p : trace) p = uni(rng);
        auto base = classify_sweep(sweep_with_trace(trace), 0.0001);
        const double c = scale_dist(rng);
        for (auto& p : trace) p *= c;
        auto scaled = classify_sweep(sweep_with_trace(trace), 0.0001);
        CHECK(scaled.label == base.label);
        CHECK(scaled.sim_cephalic == doctest::Approx(base.sim_cephalic).epsilon(1e-12));
        CHECK(scaled.sim_breech == doctest::Approx(base.sim_breech).epsilon(1e-12));
    }
}

TEST_CASE("property: time reversal flips strict labels") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> trace(25);
        for (auto& p : trace) p = uni(rng);
        auto fwd = classify_sweep(sweep_with_trace(trace), 0.0001);
        if (fwd.sim_cephalic == fwd.sim_breech) continue;  // non-strict, rule is silent
        std::vector<double> rev(trace.rbegin(), trace.rend());
        auto bwd = classify_sweep(sweep_with_trace(rev), 0.0001);
        if (fwd.label == SweepLabel::Cephalic) {
            CHECK(bwd.label == SweepLabel::Breech);
        } else {
            CHECK(bwd.label == SweepLabel::Cephalic);
        }
    }
}
