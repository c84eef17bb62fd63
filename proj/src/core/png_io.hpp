#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fetal::png {

struct Gray8 {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // row-major, height*width
};

// 8-bit single-channel PNG, throws std::runtime_error on failure.
Gray8 read_gray8(const std::string& path);
void write_gray8(const std::string& path, const Gray8& img);

}  // namespace fetal::png
