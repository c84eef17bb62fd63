#include "core/exam_io.hpp"

#include "core/png_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fetal::io {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw IoError("format_double failed");
    return std::string(buf, end);
}

namespace {

std::string mask_filename(int frame) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%04d.png", frame);
    return buf;
}

std::vector<double> read_trace(const fs::path& path, const std::string& sweep_id) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace file: " + path.string());
    std::string line;
    if (!std::getline(in, line) || (line != "frame,probability" && line != "frame,probability\r")) {
        throw ValidationError("sweep '" + sweep_id + "': trace file missing 'frame,probability' header");
    }
    std::vector<double> trace;
    int expected_frame = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ValidationError("sweep '" + sweep_id + "': malformed trace row: " + line);
        }
        int frame = -1;
        auto fr = std::from_chars(line.data(), line.data() + comma, frame);
        if (fr.ec != std::errc() || frame != expected_frame) {
            throw ValidationError("sweep '" + sweep_id + "': trace frames must ascend from 0");
        }
        double p = 0.0;
        const char* pbeg = line.data() + comma + 1;
        auto pr = std::from_chars(pbeg, line.data() + line.size(), p);
        if (pr.ec != std::errc() || pr.ptr != line.data() + line.size()) {
            throw ValidationError("sweep '" + sweep_id + "': malformed probability: " + line);
        }
        trace.push_back(p);
        ++expected_frame;
    }
    return trace;
}

FrameSegmentation decode_label_image(const png::Gray8& img, const std::string& where) {
    FrameSegmentation seg;
    seg.width = img.width;
    seg.height = img.height;
    BinaryMask thal, csp;
    thal.width = csp.width = img.width;
    thal.height = csp.height = img.height;
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            switch (img.data[static_cast<std::size_t>(r) * img.width + c]) {
                case 0:
                    break;
                case 1:
                    thal.pixels.emplace_back(r, c);
                    break;
                case 2:
                    csp.pixels.emplace_back(r, c);
                    break;
                default:
                    throw ValidationError(where + ": label image pixel value outside {0,1,2}");
            }
        }
    }
    if (!thal.pixels.empty()) seg.thalamus = std::move(thal);
    if (!csp.pixels.empty()) seg.csp = std::move(csp);
    return seg;
}

}  // namespace

Exam load_exam(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    const fs::path manifest_path = dir / "manifest.json";
    std::ifstream min(manifest_path);
    if (!min) throw IoError("manifest missing: " + manifest_path.string());

    ordered_json manifest;
    try {
        manifest = ordered_json::parse(min);
    } catch (const ordered_json::parse_error& e) {
        throw ValidationError(std::string("malformed manifest: ") + e.what());
    }

    Exam exam;
    try {
        exam.exam_id = manifest.at("exam_id").get<std::string>();
        for (const auto& js : manifest.at("sweeps")) {
            Sweep sweep;
            sweep.sweep_id = js.at("sweep_id").get<std::string>();
            sweep.n_frames = js.at("n_frames").get<int>();
            const fs::path trace_file = dir / js.at("trace_file").get<std::string>();
            const fs::path masks_dir = dir / js.at("masks_dir").get<std::string>();

            sweep.trace = read_trace(trace_file, sweep.sweep_id);
            for (int t = 0; t < sweep.n_frames; ++t) {
                const fs::path mask_path = masks_dir / mask_filename(t);
                if (!fs::exists(mask_path)) continue;
                std::ostringstream where;
                where << "sweep '" << sweep.sweep_id << "' frame " << t;
                FrameSegmentation seg = decode_label_image(png::read_gray8(mask_path.string()), where.str());
                if (!seg.thalamus && !seg.csp) continue;  // all-background image
                sweep.segmentations.emplace(t, std::move(seg));
            }
            exam.sweeps.push_back(std::move(sweep));
        }
    } catch (const ordered_json::exception& e) {
        throw ValidationError(std::string("malformed manifest: ") + e.what());
    }

    const auto violations = validate_exam(exam);
    if (!violations.empty()) {
        std::string msg = "invalid exam bundle:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw ValidationError(msg);
    }
    return exam;
}

void write_exam(const Exam& exam, const fs::path& dir) {
    fs::create_directories(dir);
    ordered_json manifest;
    manifest["exam_id"] = exam.exam_id;
    manifest["sweeps"] = ordered_json::array();

    for (const Sweep& sweep : exam.sweeps) {
        const std::string trace_rel = sweep.sweep_id + "_trace.csv";
        const std::string masks_rel = sweep.sweep_id + "_masks";
        manifest["sweeps"].push_back({{"sweep_id", sweep.sweep_id},
                                      {"n_frames", sweep.n_frames},
                                      {"trace_file", trace_rel},
                                      {"masks_dir", masks_rel}});

        std::ofstream out(dir / trace_rel, std::ios::binary);
        if (!out) throw IoError("cannot write trace file: " + (dir / trace_rel).string());
        out << "frame,probability\n";
        for (int t = 0; t < sweep.n_frames; ++t) {
            out << t << ',' << format_double(sweep.trace[t]) << '\n';
        }

        fs::create_directories(dir / masks_rel);
        for (const auto& [t, seg] : sweep.segmentations) {
            png::Gray8 img;
            img.width = seg.width;
            img.height = seg.height;
            img.data.assign(static_cast<std::size_t>(seg.width) * seg.height, 0);
            if (seg.thalamus) {
                for (const auto& [r, c] : seg.thalamus->pixels) {
                    img.data[static_cast<std::size_t>(r) * seg.width + c] = 1;
                }
            }
            if (seg.csp) {
                for (const auto& [r, c] : seg.csp->pixels) {
                    img.data[static_cast<std::size_t>(r) * seg.width + c] = 2;
                }
            }
            png::write_gray8((dir / masks_rel / mask_filename(t)).string(), img);
        }
    }

    std::ofstream mout(dir / "manifest.json", std::ios::binary);
    if (!mout) throw IoError("cannot write manifest: " + (dir / "manifest.json").string());
    mout << manifest.dump(2) << '\n';
}

}  // namespace fetal::io
