#pragma once

#include <array>

#include "rppg/image.hpp"

namespace rppg {

// NTSC YIQ transform. Rows: luma, in-phase (orange-cyan axis, the skin axis),
// quadrature. I of any gray pixel is exactly 0; I range is [-0.5959, 0.5959].
inline constexpr std::array<std::array<double, 3>, 3> yiq_matrix = {{
    {0.299, 0.587, 0.114},
    {0.5959, -0.2746, -0.3213},
    {0.2115, -0.5227, 0.3112},
}};

namespace detail {

inline std::array<std::array<double, 3>, 3> invert3(const std::array<std::array<double, 3>, 3>& m) {
    const double a = m[0][0], b = m[0][1], c = m[0][2];
    const double d = m[1][0], e = m[1][1], f = m[1][2];
    const double g = m[2][0], h = m[2][1], i = m[2][2];
    const double det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    const double s = 1.0 / det;
    return {{
        {(e * i - f * h) * s, (c * h - b * i) * s, (b * f - c * e) * s},
        {(f * g - d * i) * s, (a * i - c * g) * s, (c * d - a * f) * s},
        {(d * h - e * g) * s, (b * g - a * h) * s, (a * e - b * d) * s},
    }};
}

} // namespace detail

inline const std::array<std::array<double, 3>, 3>& yiq_inverse_matrix() {
    static const auto inv = detail::invert3(yiq_matrix);
    return inv;
}

inline std::array<double, 3> rgb_to_yiq(double r, double g, double b) {
    std::array<double, 3> out{};
    for (int k = 0; k < 3; ++k)
        out[k] = yiq_matrix[k][0] * r + yiq_matrix[k][1] * g + yiq_matrix[k][2] * b;
    return out;
}

inline std::array<double, 3> yiq_to_rgb(double y, double i, double q) {
    const auto& m = yiq_inverse_matrix();
    std::array<double, 3> out{};
    for (int k = 0; k < 3; ++k)
        out[k] = m[k][0] * y + m[k][1] * i + m[k][2] * q;
    return out;
}

// Planar YIQ image.
struct yiq_frame {
    planed y, i, q;
};

inline yiq_frame rgb_to_yiq(const frame& f) {
    yiq_frame out{planed(f.height, f.width), planed(f.height, f.width), planed(f.height, f.width)};
    const size_t n = static_cast<size_t>(f.height) * f.width;
    for (size_t p = 0; p < n; ++p) {
        const float* px = f.rgb.data() + p * 3;
        const auto v = rgb_to_yiq(px[0], px[1], px[2]);
        out.y.data[p] = v[0];
        out.i.data[p] = v[1];
        out.q.data[p] = v[2];
    }
    return out;
}

// I channel only; the skin classifier needs nothing else per frame.
inline planed i_channel(const frame& f) {
    planed out(f.height, f.width);
    const size_t n = static_cast<size_t>(f.height) * f.width;
    for (size_t p = 0; p < n; ++p) {
        const float* px = f.rgb.data() + p * 3;
        out.data[p] = yiq_matrix[1][0] * px[0] + yiq_matrix[1][1] * px[1] + yiq_matrix[1][2] * px[2];
    }
    return out;
}

} // namespace rppg
