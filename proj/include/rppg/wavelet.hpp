#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>

#include "rppg/error.hpp"

namespace rppg {

// Short-window wavelet transform of the lattice output. The default family
// is the first-derivative complex Gaussian: its real part is odd, so every
// constant series sums to exactly zero and only temporal structure can push
// the decision above threshold. The plain Gaussian (positive mean) is kept
// for comparison runs; with it any positive series sums positive, which makes
// the sign rule vacuous.
enum class wavelet_family { complex_gaussian_1, gaussian };

inline wavelet_family wavelet_family_from_string(const std::string& s) {
    if (s == "complex_gaussian_1") return wavelet_family::complex_gaussian_1;
    if (s == "gaussian") return wavelet_family::gaussian;
    throw error(errc::bad_params, "unknown wavelet family: " + s);
}

inline const char* to_string(wavelet_family f) {
    return f == wavelet_family::complex_gaussian_1 ? "complex_gaussian_1" : "gaussian";
}

struct wavelet_spec {
    wavelet_family family = wavelet_family::complex_gaussian_1;
    double sigma = 1.0;
    std::array<double, 3> scales = {1.0, 2.0, 4.0};
    std::array<double, 3> shifts = {0.0, 1.0, 2.0};

    void validate() const {
        for (double a : scales)
            if (!(a > 0)) throw error(errc::bad_scales, "scales must be positive");
        if (!(sigma > 0)) throw error(errc::bad_scales, "sigma must be positive");
    }
};

// psi_{a,b}(t). Gaussian: (1 / (sqrt(2 pi a) sigma)) exp(-(t-b)^2 / (2 a^2 sigma^2)).
// Complex Gaussian: psi((t-b)/a) / sqrt(a) with psi(x) = C (-i - 2x) e^{-ix} e^{-x^2},
// C = (2 pi)^{-1/4} making psi unit energy.
inline std::complex<double> wavelet_eval(const wavelet_spec& spec, double a, double b, double t) {
    const double x = (t - b) / a;
    if (spec.family == wavelet_family::gaussian) {
        const double s = spec.sigma;
        const double amp = 1.0 / (std::sqrt(2.0 * M_PI * a) * s);
        return {amp * std::exp(-(x * x) / (2.0 * s * s)), 0.0};
    }
    static const double c1 = std::pow(2.0 * M_PI, -0.25);
    const double g = c1 * std::exp(-x * x) / std::sqrt(a);
    const double cx = std::cos(x), sx = std::sin(x);
    // (-i - 2x) e^{-ix}: real -2x cos x - sin x, imag 2x sin x - cos x.
    return {g * (-2.0 * x * cx - sx), g * (2.0 * x * sx - cx)};
}

struct cwt_result {
    std::array<std::array<std::complex<double>, 3>, 3> coefficients{}; // [scale][shift]
    double real_sum = 0.0;
};

// coefficients[s][n] = sum_t series(t) conj(psi_{a_s, b_n}(t)), t = 0, 1, 2.
inline cwt_result cwt(std::span<const double> series, const wavelet_spec& spec) {
    if (series.size() != 3)
        throw error(errc::bad_window_length, "transform expects a length-3 series");
    spec.validate();
    cwt_result out;
    double acc = 0.0;
    for (int s = 0; s < 3; ++s) {
        for (int n = 0; n < 3; ++n) {
            std::complex<double> coef(0.0, 0.0);
            for (int t = 0; t < 3; ++t) {
                const auto w = std::conj(wavelet_eval(spec, spec.scales[s], spec.shifts[n], t));
                coef += series[t] * w;
            }
            out.coefficients[s][n] = coef;
            acc += coef.real();
        }
    }
    out.real_sum = acc;
    return out;
}

// Sign rule: a pixel belongs to the region of interest when the summed real
// part exceeds the threshold (strict, default 0).
inline bool classify_pixel(const cwt_result& r, double threshold = 0.0) {
    return r.real_sum > threshold;
}

} // namespace rppg
