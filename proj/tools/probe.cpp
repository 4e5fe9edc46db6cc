// scratch diagnostics for one parameter set; not installed
#include <cmath>
#include <cstdio>

#include "rppg/ccnn.hpp"
#include "rppg/colorspace.hpp"
#include "rppg/rng.hpp"
#include "rppg/wavelet.hpp"

using namespace rppg;

namespace {
constexpr double skin_rgb[3] = {0.8000, 0.5176, 0.4510};
constexpr double bg_rgb[3] = {0.3529, 0.3529, 0.3529};

double quant(double v) {
    v = std::min(1.0, std::max(0.0, v));
    return std::round(v * 255.0) / 255.0;
}
double chroma_i(const double rgb[3]) {
    return yiq_matrix[1][0] * rgb[0] + yiq_matrix[1][1] * rgb[1] + yiq_matrix[1][2] * rgb[2];
}
} // namespace

int main() {
    const wavelet_spec wspec{};

    // effective weights on (y1, y2, y3)
    double wt[3] = {0, 0, 0};
    for (int t = 0; t < 3; ++t)
        for (int s = 0; s < 3; ++s)
            for (int b = 0; b < 3; ++b)
                wt[t] += wavelet_eval(wspec, wspec.scales[s], wspec.shifts[b], t).real();
    std::printf("weights on y: %.6f %.6f %.6f\n", wt[0], wt[1], wt[2]);

    ccnn_params p;
    p.unit_input = true;
    p.alpha_f = 0.5;
    p.alpha_l = 0.5;
    p.alpha_e = 0.5;
    p.v_f = 0.3;
    p.v_l = 50.0;
    p.beta = 50.0;

    const double skin_i = chroma_i(skin_rgb);
    const double s_skin = p.to_input(skin_i);
    const double y1s = sigmoid(s_skin);
    const double m = 6.0;
    const double f2 = p.decay_f() * s_skin + p.v_f * m * y1s + s_skin;
    const double l2 = p.v_l * m * y1s;
    const double u2 = f2 * (1.0 + p.beta * l2);
    const double kappa = 1.0;
    p.v_e = (u2 + kappa) / y1s;
    std::printf("s_skin=%.4f y1=%.4f U2=%.4f v_e=%.4f\n", s_skin, y1s, u2, p.v_e);

    auto decide = [&](const double* iv, const char* tag) {
        double c[3] = {iv[4], iv[13], iv[22]};
        auto y = encode_window(std::span<const double>(c, 3), p, std::span<const double>(iv, 27));
        auto r = cwt(std::span<const double>(y.data(), 3), wspec);
        std::printf("%-8s y=(%.6f %.6f %.6f) real_sum=% .6e fire=%d\n", tag, y[0], y[1], y[2],
                    r.real_sum, classify_pixel(r));
    };

    // static windows
    for (double lvl : {-0.5959, -0.2, 0.0, 0.18968, 0.4, 0.5959}) {
        double iv[27];
        for (auto& v : iv) v = lvl;
        char tag[32];
        std::snprintf(tag, sizeof tag, "st%+.2f", lvl);
        decide(iv, tag);
    }

    // noisy skin / bg windows
    rng r(42);
    const double noise = 1.0 / 255.0, amp = 2.0 / 255.0, dph = 2.0 * M_PI * 1.15 / 30.0;
    for (int k = 0; k < 8; ++k) {
        double iv[27];
        const double ph = 2.0 * M_PI * r.uniform();
        for (int f = 0; f < 3; ++f) {
            const double pul = amp * std::sin(ph + f * dph);
            for (int c = 0; c < 9; ++c) {
                double rgb[3] = {quant(skin_rgb[0] + 0.5 * pul + noise * r.normal()),
                                 quant(skin_rgb[1] + pul + noise * r.normal()),
                                 quant(skin_rgb[2] + noise * r.normal())};
                iv[f * 9 + c] = chroma_i(rgb);
            }
        }
        decide(iv, "skin");
    }
    for (int k = 0; k < 4; ++k) {
        double iv[27];
        for (int f = 0; f < 3; ++f)
            for (int c = 0; c < 9; ++c) {
                double rgb[3] = {quant(bg_rgb[0] + noise * r.normal()),
                                 quant(bg_rgb[1] + noise * r.normal()),
                                 quant(bg_rgb[2] + noise * r.normal())};
                iv[f * 9 + c] = chroma_i(rgb);
            }
        decide(iv, "bg");
    }
    return 0;
}
