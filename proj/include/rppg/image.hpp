#pragma once

#include <cstdint>
#include <vector>

#include "rppg/error.hpp"

namespace rppg {

// Single-channel raster, row major.
template <typename T>
struct plane {
    int height = 0;
    int width = 0;
    std::vector<T> data;

    plane() = default;
    plane(int h, int w, T fill = T{}) : height(h), width(w), data(static_cast<size_t>(h) * w, fill) {}

    T& at(int r, int c) { return data[static_cast<size_t>(r) * width + c]; }
    const T& at(int r, int c) const { return data[static_cast<size_t>(r) * width + c]; }
    size_t size() const { return data.size(); }
};

using planef = plane<float>;
using planed = plane<double>;
using mask_plane = plane<uint8_t>;

// Interleaved RGB frame, channel values in [0, 1].
struct frame {
    int height = 0;
    int width = 0;
    std::vector<float> rgb; // size = height * width * 3

    frame() = default;
    frame(int h, int w) : height(h), width(w), rgb(static_cast<size_t>(h) * w * 3, 0.0f) {}

    float* pixel(int r, int c) { return rgb.data() + (static_cast<size_t>(r) * width + c) * 3; }
    const float* pixel(int r, int c) const { return rgb.data() + (static_cast<size_t>(r) * width + c) * 3; }
};

struct frame_sequence {
    double fps = 0.0;
    int height = 0;
    int width = 0;
    std::vector<frame> frames;

    size_t n_frames() const { return frames.size(); }
    double duration_s() const { return fps > 0 ? static_cast<double>(frames.size()) / fps : 0.0; }

    void validate() const {
        if (fps <= 0) throw error(errc::missing_fps, "frame rate must be positive");
        for (const auto& f : frames)
            if (f.height != height || f.width != width)
                throw error(errc::dimension_mismatch, "frame size differs from sequence dims");
    }
};

// Per-frame boolean masks matching a sequence.
struct mask_sequence {
    int height = 0;
    int width = 0;
    std::vector<mask_plane> masks;
};

} // namespace rppg
