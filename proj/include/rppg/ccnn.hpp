#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rppg/error.hpp"
#include "rppg/image.hpp"

namespace rppg {

// Coupled neuron lattice with feeding (F), linking (L), modulation (U),
// dynamic threshold (E) and sigmoid output (Y). Static stimulus settles the
// lattice onto a short limit cycle; a varying stimulus keeps it aperiodic.
// That dichotomy is what the skin classifier exploits.

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

using kernel3 = std::array<std::array<double, 3>, 3>;

// Inverse square distance weights, zero center.
inline constexpr kernel3 default_kernel = {{
    {0.5, 1.0, 0.5},
    {1.0, 0.0, 1.0},
    {0.5, 1.0, 0.5},
}};

// Shipped defaults: fixed by the dichotomy calibration sweep plus detector
// simulations on the synthetic oracle, recorded in config/ccnn_defaults.json.
// Under constant drive the lattice settles to period 2; under sinusoidal
// drive no period up to 500 appears within 2000 steps.
struct ccnn_params {
    double alpha_f = 1.3624;
    double alpha_l = 1.9261;
    double alpha_e = 5.647;
    double v_f = 0.0;
    double v_l = 1.36442;
    double v_e = 286.0173328471398;
    double beta = 41.5165;
    kernel3 m_kernel = default_kernel;
    kernel3 w_kernel = default_kernel;
    // When set, stimulus values are mapped from the signed chroma range
    // [-0.5959, 0.5959] onto [0, 1] before driving the lattice.
    bool unit_input = true;

    double decay_f() const { return std::exp(-alpha_f); }
    double decay_l() const { return std::exp(-alpha_l); }
    double decay_e() const { return std::exp(-alpha_e); }

    double to_input(double chroma) const {
        return unit_input ? (chroma + 0.5959) / 1.1918 : chroma;
    }

    void validate() const {
        if (!(alpha_f > 0) || !(alpha_l > 0) || !(alpha_e > 0))
            throw error(errc::bad_params, "decay constants must be positive");
        if (!(v_f >= 0) || !(v_l >= 0) || !(v_e >= 0) || !(beta >= 0))
            throw error(errc::bad_params, "gain factors must be non-negative");
    }
};

struct ccnn_state {
    planed f, l, u, e, y;

    ccnn_state() = default;
    ccnn_state(int h, int w)
        : f(h, w, 0.0), l(h, w, 0.0), u(h, w, 0.0), e(h, w, 0.0), y(h, w, 0.0) {}

    void reset() {
        std::fill(f.data.begin(), f.data.end(), 0.0);
        std::fill(l.data.begin(), l.data.end(), 0.0);
        std::fill(u.data.begin(), u.data.end(), 0.0);
        std::fill(e.data.begin(), e.data.end(), 0.0);
        std::fill(y.data.begin(), y.data.end(), 0.0);
    }
};

namespace detail {

// Zero padded 3x3 correlation of a plane with a kernel.
inline void correlate3(const planed& src, const kernel3& k, planed& dst) {
    const int h = src.height, w = src.width;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int dr = -1; dr <= 1; ++dr) {
                const int rr = r + dr;
                if (rr < 0 || rr >= h) continue;
                for (int dc = -1; dc <= 1; ++dc) {
                    const int cc = c + dc;
                    if (cc < 0 || cc >= w) continue;
                    acc += k[dr + 1][dc + 1] * src.at(rr, cc);
                }
            }
            dst.at(r, c) = acc;
        }
    }
}

} // namespace detail

// One synchronous lattice update. F, L, U and E are computed from the
// previous state (E sees the previous Y), then Y(n) = sigmoid(U(n) - E(n)).
inline void ccnn_step(ccnn_state& st, const planed& stimulus, const ccnn_params& p) {
    if (stimulus.height != st.y.height || stimulus.width != st.y.width)
        throw error(errc::dimension_mismatch, "stimulus plane does not match lattice dims");
    const int h = st.y.height, w = st.y.width;
    static thread_local planed my, wy;
    if (my.height != h || my.width != w) { my = planed(h, w); wy = planed(h, w); }
    detail::correlate3(st.y, p.m_kernel, my);
    detail::correlate3(st.y, p.w_kernel, wy);

    const double df = p.decay_f(), dl = p.decay_l(), de = p.decay_e();
    const size_t n = st.y.size();
    for (size_t i = 0; i < n; ++i) {
        const double yprev = st.y.data[i];
        const double f = df * st.f.data[i] + p.v_f * my.data[i] + stimulus.data[i];
        const double l = dl * st.l.data[i] + p.v_l * wy.data[i];
        const double u = f * (1.0 + p.beta * l);
        const double e = de * st.e.data[i] + p.v_e * yprev;
        st.f.data[i] = f;
        st.l.data[i] = l;
        st.u.data[i] = u;
        st.e.data[i] = e;
        st.y.data[i] = sigmoid(u - e);
    }
}

// ---- fixed 3x3 patch engine (allocation free, used per pixel window) ----

namespace detail {

struct patch_state {
    std::array<double, 9> f{}, l{}, e{}, y{};
};

// kernel correlation on a 3x3 patch, zero padding outside.
inline void correlate3_patch(const std::array<double, 9>& y, const kernel3& k,
                             std::array<double, 9>& out) {
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            double acc = 0.0;
            for (int dr = -1; dr <= 1; ++dr) {
                const int rr = r + dr;
                if (rr < 0 || rr >= 3) continue;
                for (int dc = -1; dc <= 1; ++dc) {
                    const int cc = c + dc;
                    if (cc < 0 || cc >= 3) continue;
                    acc += k[dr + 1][dc + 1] * y[rr * 3 + cc];
                }
            }
            out[r * 3 + c] = acc;
        }
    }
}

inline void patch_step(patch_state& st, const std::array<double, 9>& s, const ccnn_params& p,
                       double df, double dl, double de) {
    std::array<double, 9> my{}, wy{};
    correlate3_patch(st.y, p.m_kernel, my);
    correlate3_patch(st.y, p.w_kernel, wy);
    for (int i = 0; i < 9; ++i) {
        const double f = df * st.f[i] + p.v_f * my[i] + s[i];
        const double l = dl * st.l[i] + p.v_l * wy[i];
        const double u = f * (1.0 + p.beta * l);
        const double e = de * st.e[i] + p.v_e * st.y[i];
        st.f[i] = f;
        st.l[i] = l;
        st.e[i] = e;
        st.y[i] = sigmoid(u - e);
    }
}

} // namespace detail

// Encode one pixel's three-frame window. The lattice is a 3x3 patch around
// the pixel (zero padded outside), started from a zero state and stepped once
// per frame; the center neuron's outputs form the code. neighborhood_i holds
// the stimulus patches frame by frame, row major, center at index 4, and its
// centers must equal pixel_i.
inline std::array<double, 3> encode_window(std::span<const double> pixel_i,
                                           const ccnn_params& p,
                                           std::span<const double> neighborhood_i) {
    if (pixel_i.size() != 3)
        throw error(errc::bad_window_length, "window must hold exactly 3 samples");
    if (neighborhood_i.size() != 27)
        throw error(errc::bad_window_length, "neighborhood must hold 3 frames of 3x3 samples");

    const double df = p.decay_f(), dl = p.decay_l(), de = p.decay_e();
    detail::patch_state st;
    std::array<double, 3> code{};
    for (int n = 0; n < 3; ++n) {
        std::array<double, 9> s{};
        for (int i = 0; i < 9; ++i) s[i] = p.to_input(neighborhood_i[n * 9 + i]);
        detail::patch_step(st, s, p, df, dl, de);
        code[n] = st.y[4];
    }
    return code;
}

// ---- long-run behavior ----

// Smallest period p in [1, p_max] such that |y(n) - y(n-p)| < tol over the
// last `tail` samples; 0 when none qualifies.
inline int detect_period(std::span<const double> y, int p_max, int tail, double tol) {
    const int n = static_cast<int>(y.size());
    if (n < tail + p_max) throw error(errc::too_short, "trajectory shorter than tail + max period");
    for (int p = 1; p <= p_max; ++p) {
        bool ok = true;
        for (int i = n - tail; i < n; ++i) {
            if (std::abs(y[i] - y[i - p]) >= tol) { ok = false; break; }
        }
        if (ok) return p;
    }
    return 0;
}

// Drive a uniform 3x3 patch for n_steps and record the center output.
// stimulus(n) supplies the scalar input for step n (already in lattice units).
template <typename Fn>
inline std::vector<double> run_patch(const ccnn_params& p, int n_steps, Fn&& stimulus) {
    const double df = p.decay_f(), dl = p.decay_l(), de = p.decay_e();
    detail::patch_state st;
    std::vector<double> out(static_cast<size_t>(n_steps));
    for (int n = 0; n < n_steps; ++n) {
        std::array<double, 9> s{};
        s.fill(stimulus(n));
        detail::patch_step(st, s, p, df, dl, de);
        out[static_cast<size_t>(n)] = st.y[4];
    }
    return out;
}

// Frozen drive levels for the periodic/aperiodic dichotomy checks.
struct dichotomy_config {
    double const_level = 0.5;
    double sin_center = 0.5;
    double sin_amplitude = 0.1;
    double sin_freq = 23.0 / 600.0; // cycles per step; 1.15 Hz at 30 fps
    int period_max_const = 50;
    int period_max_sin = 500;
    int tail = 200;
    double tol = 1e-6;
};

struct dichotomy_result {
    bool periodic_under_constant = false;
    int period = 0;
    bool aperiodic_under_sinusoid = false;
    bool pass() const { return periodic_under_constant && aperiodic_under_sinusoid; }
};

inline dichotomy_result check_dichotomy(const ccnn_params& p, int n_steps,
                                        const dichotomy_config& cfg = {}) {
    if (n_steps < cfg.tail + cfg.period_max_sin + 1)
        throw error(errc::bad_params, "n_steps too small for the period detectors");
    dichotomy_result r;
    const auto yc = run_patch(p, n_steps, [&](int) { return cfg.const_level; });
    r.period = detect_period(yc, cfg.period_max_const, cfg.tail, cfg.tol);
    r.periodic_under_constant = r.period > 0;
    const auto ys = run_patch(p, n_steps, [&](int n) {
        return cfg.sin_center + cfg.sin_amplitude * std::sin(2.0 * M_PI * cfg.sin_freq * n);
    });
    r.aperiodic_under_sinusoid = detect_period(ys, cfg.period_max_sin, cfg.tail, cfg.tol) == 0;
    return r;
}

// First grid point whose long-run behavior is periodic under constant drive
// and aperiodic under sinusoidal drive.
inline ccnn_params calibrate_dichotomy(std::span<const ccnn_params> grid, int n_steps,
                                       const dichotomy_config& cfg = {}) {
    for (const auto& p : grid) {
        p.validate();
        if (check_dichotomy(p, n_steps, cfg).pass()) return p;
    }
    throw error(errc::no_params_found, "no grid point is periodic under constant drive and aperiodic under sinusoidal drive");
}

} // namespace rppg
