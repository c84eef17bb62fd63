#include "core/report.hpp"

#include <json.hpp>

#include <atomic>
#include <stdexcept>
#include <thread>

namespace fetal::report {

using nlohmann::ordered_json;

namespace {

const char* exam_label(presentation::ExamLabel l) {
    switch (l) {
        case presentation::ExamLabel::Cephalic: return "cephalic";
        case presentation::ExamLabel::Breech: return "breech";
        default: return "abstain";
    }
}

const char* sweep_label(presentation::SweepLabel l) {
    switch (l) {
        case presentation::SweepLabel::Cephalic: return "cephalic";
        case presentation::SweepLabel::Breech: return "breech";
        default: return "no_head";
    }
}

const char* lie_label(lie::ExamLabel l) {
    switch (l) {
        case lie::ExamLabel::Left: return "left";
        case lie::ExamLabel::Right: return "right";
        default: return "abstain";
    }
}

const char* bin_label(lie::Bin b) {
    switch (b) {
        case lie::Bin::Left: return "left";
        case lie::Bin::Right: return "right";
        default: return "indeterminate";
    }
}

template <typename Enum>
Enum parse_enum(const std::string& s, std::initializer_list<std::pair<const char*, Enum>> table) {
    for (const auto& [name, value] : table) {
        if (s == name) return value;
    }
    throw std::invalid_argument("unknown label: " + s);
}

}  // namespace

ExamReport classify_exam(const Exam& exam, const Options& options) {
    ExamReport rep;
    rep.exam_id = exam.exam_id;
    rep.options = options;

    std::vector<presentation::SweepPresentation> per_sweep(exam.sweeps.size());
    const int jobs = std::max(1, options.jobs);
    if (jobs == 1 || exam.sweeps.size() < 2) {
        for (std::size_t i = 0; i < exam.sweeps.size(); ++i) {
            per_sweep[i] = presentation::classify_sweep(exam.sweeps[i], options.tau);
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < jobs; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < exam.sweeps.size(); i = next.fetch_add(1)) {
                    per_sweep[i] = presentation::classify_sweep(exam.sweeps[i], options.tau);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    rep.presentation = presentation::aggregate(std::move(per_sweep));
    rep.lie = lie::aggregate_lie(exam, options.criteria, options.flip_lateral);
    return rep;
}

std::string to_json(const ExamReport& report) {
    ordered_json j;
    j["exam_id"] = report.exam_id;

    ordered_json pres;
    pres["label"] = exam_label(report.presentation.exam_label);
    pres["votes"] = {{"cephalic", report.presentation.votes_cephalic},
                     {"breech", report.presentation.votes_breech}};
    pres["per_sweep"] = ordered_json::array();
    for (const auto& s : report.presentation.per_sweep) {
        pres["per_sweep"].push_back({{"sweep_id", s.sweep_id},
                                     {"sim_cephalic", s.sim_cephalic},
                                     {"sim_breech", s.sim_breech},
                                     {"label", sweep_label(s.label)}});
    }
    j["presentation"] = std::move(pres);

    ordered_json lj;
    lj["label"] = lie_label(report.lie.exam_label);
    lj["votes"] = {{"left", report.lie.votes_left}, {"right", report.lie.votes_right}};
    lj["frames"] = ordered_json::array();
    for (const auto& f : report.lie.frames) {
        lj["frames"].push_back({{"sweep_id", f.sweep_id},
                                {"frame", f.frame_index},
                                {"method", f.method == lie::Method::DualLandmark ? "dual" : "fallback"},
                                {"bin", bin_label(f.bin)},
                                {"vector", {f.vector.d_row, f.vector.d_col}}});
    }
    lj["abstentions"] = ordered_json::array();
    for (const auto& a : report.lie.abstentions) {
        lj["abstentions"].push_back(
            {{"sweep_id", a.sweep_id}, {"frame", a.frame_index}, {"reason", a.reason}});
    }
    j["lie"] = std::move(lj);

    const lie::QualityCriteria& c = report.options.criteria;
    j["criteria"] = {{"tau", report.options.tau},
                     {"min_pixels", c.min_pixels},
                     {"min_solidity", c.min_solidity},
                     {"min_midpoint_dist", c.min_midpoint_distance},
                     {"require_single_component", c.require_single_component},
                     {"min_lateral_ratio", c.min_lateral_ratio},
                     {"flip_lateral", report.options.flip_lateral}};
    j["version"] = report.tool_version;
    return j.dump(2) + "\n";
}

ExamReport from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    ExamReport rep;
    rep.exam_id = j.at("exam_id").get<std::string>();
    rep.tool_version = j.at("version").get<std::string>();

    const auto& pres = j.at("presentation");
    rep.presentation.exam_label = parse_enum<presentation::ExamLabel>(
        pres.at("label"), {{"cephalic", presentation::ExamLabel::Cephalic},
                           {"breech", presentation::ExamLabel::Breech},
                           {"abstain", presentation::ExamLabel::Abstain}});
    rep.presentation.votes_cephalic = pres.at("votes").at("cephalic").get<int>();
    rep.presentation.votes_breech = pres.at("votes").at("breech").get<int>();
    for (const auto& s : pres.at("per_sweep")) {
        presentation::SweepPresentation sp;
        sp.sweep_id = s.at("sweep_id").get<std::string>();
        sp.sim_cephalic = s.at("sim_cephalic").get<double>();
        sp.sim_breech = s.at("sim_breech").get<double>();
        sp.label = parse_enum<presentation::SweepLabel>(
            s.at("label"), {{"cephalic", presentation::SweepLabel::Cephalic},
                            {"breech", presentation::SweepLabel::Breech},
                            {"no_head", presentation::SweepLabel::NoHead}});
        rep.presentation.per_sweep.push_back(std::move(sp));
    }

    const auto& lj = j.at("lie");
    rep.lie.exam_label = parse_enum<lie::ExamLabel>(
        lj.at("label"),
        {{"left", lie::ExamLabel::Left}, {"right", lie::ExamLabel::Right}, {"abstain", lie::ExamLabel::Abstain}});
    rep.lie.votes_left = lj.at("votes").at("left").get<int>();
    rep.lie.votes_right = lj.at("votes").at("right").get<int>();
    for (const auto& f : lj.at("frames")) {
        lie::FrameLie fl;
        fl.sweep_id = f.at("sweep_id").get<std::string>();
        fl.frame_index = f.at("frame").get<int>();
        fl.method = f.at("method").get<std::string>() == "dual" ? lie::Method::DualLandmark
                                                                : lie::Method::ThalamusOnly;
        fl.bin = parse_enum<lie::Bin>(
            f.at("bin"),
            {{"left", lie::Bin::Left}, {"right", lie::Bin::Right}, {"indeterminate", lie::Bin::Indeterminate}});
        fl.vector = {f.at("vector").at(0).get<double>(), f.at("vector").at(1).get<double>()};
        rep.lie.frames.push_back(std::move(fl));
    }
    for (const auto& a : lj.at("abstentions")) {
        rep.lie.abstentions.push_back({a.at("sweep_id").get<std::string>(), a.at("frame").get<int>(),
                                       a.at("reason").get<std::string>()});
    }

    const auto& c = j.at("criteria");
    rep.options.tau = c.at("tau").get<double>();
    rep.options.criteria.min_pixels = c.at("min_pixels").get<int>();
    rep.options.criteria.min_solidity = c.at("min_solidity").get<double>();
    rep.options.criteria.min_midpoint_distance = c.at("min_midpoint_dist").get<double>();
    rep.options.criteria.require_single_component = c.at("require_single_component").get<bool>();
    rep.options.criteria.min_lateral_ratio = c.at("min_lateral_ratio").get<double>();
    rep.options.flip_lateral = c.at("flip_lateral").get<bool>();
    return rep;
}

}  // namespace fetal::report
