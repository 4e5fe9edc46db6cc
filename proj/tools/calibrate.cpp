// Parameter search for the lattice defaults.
//
// A usable parameter set must make the window classifier behave as a
// level-gated temporal disturbance detector:
//   - any temporally static window (all three frames equal), at any level or
//     spatial pattern, must classify non-roi;
//   - windows at skin-band chroma with frame-to-frame disturbances at the
//     8-bit quantization scale should fire as often as possible;
//   - windows at background chroma with the same disturbances must stay
//     mostly silent;
//   - the long-run lattice must be periodic under constant drive and
//     aperiodic under sinusoidal drive;
//   - a noise-free pulsing patch must light up enough windows per pulse
//     cycle that the per-frame mask overlap clears 0.6.
//
// The search samples shapes (decay/gain structure), places the threshold
// gain by scanning the second-step threshold gap, refines by coordinate
// descent, and ranks survivors. Finalists go through a miniature end-to-end
// video simulation (noisy static, noise-free pulse, translating patch,
// zero-amplitude control) that mirrors the real pipeline stages.
//
// Expected outcome, recorded here for honesty: with silence enforced at the
// resting level itself, the fire rate on symmetric quantization noise cannot
// exceed ~0.5, so the noisy-video mode estimate is not expected to recover
// the pulse; the simulation stage measures what actually happens.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rppg/ccnn.hpp"
#include "rppg/colorspace.hpp"
#include "rppg/rng.hpp"
#include "rppg/wavelet.hpp"

namespace {

constexpr double k_skin_r = 0.8;
constexpr double k_skin_g = 0.5176;
constexpr double k_skin_b = 0.451;
constexpr double k_bg = 90.0 / 255.0;
constexpr double k_fps = 30.0;
constexpr double k_amp = 2.0 / 255.0;
constexpr double k_noise = 1.0 / 255.0;
constexpr double k_hr = 69.0;

double quant(double v) { return std::clamp(std::round(v * 255.0), 0.0, 255.0) / 255.0; }

double chroma(double r, double g, double b) { return rppg::rgb_to_yiq(r, g, b)[1]; }

const double k_skin_i = chroma(quant(k_skin_r), quant(k_skin_g), quant(k_skin_b));
const double k_bg_i = chroma(quant(k_bg), quant(k_bg), quant(k_bg));

// Real parts of the transform as linear weights on the 3-sample code.
struct code_weights {
    std::array<double, 3> w{};
    code_weights() {
        rppg::wavelet_spec spec;
        for (int i = 0; i < 3; ++i) {
            std::array<double, 3> e{};
            e[i] = 1.0;
            w[i] = rppg::cwt(e, spec).real_sum;
        }
    }
    double real_sum(const std::array<double, 3>& y) const {
        return w[0] * y[0] + w[1] * y[1] + w[2] * y[2];
    }
};

const code_weights& weights() {
    static code_weights w;
    return w;
}

// One pixel window: 3 frames x 9 cells, frame major, chroma values.
struct window27 {
    std::array<double, 27> i{};
};

window27 uniform_window(double level) {
    window27 w;
    w.i.fill(level);
    return w;
}

window27 static_window(const std::array<double, 9>& cells) {
    window27 w;
    for (int f = 0; f < 3; ++f)
        for (int c = 0; c < 9; ++c) w.i[f * 9 + c] = cells[c];
    return w;
}

double window_score(const rppg::ccnn_params& p, const window27& w) {
    const std::array<double, 3> px{w.i[4], w.i[13], w.i[22]};
    const auto code = rppg::encode_window(px, p, w.i);
    return weights().real_sum(code);
}

bool window_fires(const rppg::ccnn_params& p, const window27& w) {
    return window_score(p, w) > 0.0;
}

// Skin-tone pixel window with the synthesizer's pulse and noise model:
// pulse rides on G with half weight on R, per-channel gaussian noise,
// then 8-bit quantization; all nine cells share base and pulse.
window27 skin_noise_window(rppg::rng& rg, double phase) {
    window27 w;
    const double dphi = 2.0 * M_PI * (k_hr / 60.0) / k_fps;
    for (int f = 0; f < 3; ++f) {
        const double s = std::sin(phase + f * dphi);
        for (int c = 0; c < 9; ++c) {
            const double r = quant(k_skin_r + 0.5 * k_amp * s + k_noise * rg.normal());
            const double g = quant(k_skin_g + k_amp * s + k_noise * rg.normal());
            const double b = quant(k_skin_b + k_noise * rg.normal());
            w.i[f * 9 + c] = chroma(r, g, b);
        }
    }
    return w;
}

window27 bg_noise_window(rppg::rng& rg) {
    window27 w;
    for (int f = 0; f < 3; ++f) {
        for (int c = 0; c < 9; ++c) {
            const double r = quant(k_bg + k_noise * rg.normal());
            const double g = quant(k_bg + k_noise * rg.normal());
            const double b = quant(k_bg + k_noise * rg.normal());
            w.i[f * 9 + c] = chroma(r, g, b);
        }
    }
    return w;
}

// Edge-of-patch windows under a rightward 1 px/frame drift. The trailing
// cell's own column runs (skin,bg,bg) and the cell still belongs to the
// patch on the mask's frame; the leading cell runs (bg,skin,skin) and does
// not. A lag-free mask fires the first and keeps the second dark.
window27 motion_window(bool is_trail, rppg::rng* nrg) {
    auto col_skin = [&](int f, int col) {
        if (is_trail) return col == 1 ? f == 0 : (col == 2 ? f <= 1 : false);
        return col == 0 ? true : (col == 1 ? f >= 1 : f >= 2);
    };
    window27 w{};
    for (int f = 0; f < 3; ++f) {
        for (int row = 0; row < 3; ++row) {
            for (int col = 0; col < 3; ++col) {
                const bool sk = col_skin(f, col);
                double r = sk ? k_skin_r : k_bg;
                double g = sk ? k_skin_g : k_bg;
                double b = sk ? k_skin_b : k_bg;
                if (nrg) {
                    r += k_noise * nrg->normal();
                    g += k_noise * nrg->normal();
                    b += k_noise * nrg->normal();
                }
                w.i[f * 9 + row * 3 + col] = chroma(quant(r), quant(g), quant(b));
            }
        }
    }
    return w;
}

// ---- precomputed evaluation suites ----

struct suites {
    std::vector<window27> skin_noise;  // fire-rate target, want ~1
    std::vector<window27> bg_noise;    // false-positive budget, want ~0
    std::vector<window27> bg_box;      // exact background level, silent
    std::vector<window27> boundary;    // exact patch-edge mixes, silent
    std::vector<window27> halo;        // jittered edge mixes, soft budget
    std::vector<window27> fire_ring;   // off-rest uniform skin levels
    std::vector<int> ring_side;        // chroma side of each ring level vs rest
    std::vector<window27> trail_noise; // trailing-edge drift windows, want fire
    std::vector<window27> lead_noise;  // leading-edge drift windows, want dark
    window27 rest;                     // quantized skin base, silent anchor
};

suites build_suites(uint64_t seed) {
    suites s;
    s.rest = uniform_window(k_skin_i);

    {
        rppg::rng rg = rppg::rng::for_stream(seed, 1);
        s.skin_noise.reserve(8192);
        for (int k = 0; k < 8192; ++k)
            s.skin_noise.push_back(skin_noise_window(rg, rg.uniform() * 2.0 * M_PI));
    }
    {
        rppg::rng rg = rppg::rng::for_stream(seed, 2);
        s.bg_noise.reserve(4096);
        for (int k = 0; k < 4096; ++k) s.bg_noise.push_back(bg_noise_window(rg));
    }
    {
        rppg::rng rg = rppg::rng::for_stream(seed, 6);
        s.trail_noise.reserve(512);
        s.lead_noise.reserve(512);
        for (int k = 0; k < 512; ++k) {
            s.trail_noise.push_back(motion_window(true, &rg));
            s.lead_noise.push_back(motion_window(false, &rg));
        }
    }

    // Exact static background: a fully static video must stay all-silent.
    s.bg_box.push_back(uniform_window(k_bg_i));

    // Off-rest uniform skin levels, tagged with their chroma side. Purely
    // diagnostic: noise moves windows off this axis, so the noisy fire
    // rate is the real objective and the ring only sketches the shape.
    for (int dg = -3; dg <= 3; ++dg)
        for (int dr = -3; dr <= 3; ++dr)
            for (int db = -1; db <= 1; ++db) {
                if (dg == 0 && dr == 0 && db == 0) continue;
                const double lvl = chroma(quant(k_skin_r + dr / 255.0),
                                          quant(k_skin_g + dg / 255.0),
                                          quant(k_skin_b + db / 255.0));
                s.fire_ring.push_back(uniform_window(lvl));
                s.ring_side.push_back(lvl >= k_skin_i ? +1 : -1);
            }

    // Patch-boundary windows: half-plane and quadrant mixes of resting
    // skin and background cells. The exact mixes must stay silent (they
    // appear in a fully static video); digit-jittered variants go to the
    // soft halo budget, since noisy edge pixels merely cost mask overlap.
    {
        rppg::rng rg = rppg::rng::for_stream(seed, 3);
        std::vector<uint16_t> masks;
        for (int cut = 1; cut <= 2; ++cut) {
            uint16_t v = 0, h = 0;
            for (int c = 0; c < 9; ++c) {
                if (c % 3 < cut) v |= static_cast<uint16_t>(1u << c);
                if (c / 3 < cut) h |= static_cast<uint16_t>(1u << c);
            }
            for (const uint16_t m : {v, h}) {
                masks.push_back(m);
                masks.push_back(static_cast<uint16_t>(~m & 0x1FFu));
            }
        }
        for (int cx = 1; cx <= 2; ++cx)
            for (int cy = 1; cy <= 2; ++cy) {
                uint16_t q = 0;
                for (int c = 0; c < 9; ++c)
                    if (c % 3 >= cx && c / 3 >= cy) q |= static_cast<uint16_t>(1u << c);
                masks.push_back(q);
                masks.push_back(static_cast<uint16_t>(~q & 0x1FFu));
            }
        auto digit = [&]() { return std::round(rg.normal()); };
        for (const uint16_t m : masks) {
            const bool center_bg = (m & (1u << 4)) == 0;
            for (int variant = 0; variant < 9; ++variant) {
                if (variant >= 5 && !center_bg) break;
                const bool per_frame = variant >= 5;
                window27 w{};
                for (int c = 0; c < 9; ++c) {
                    const bool skin = (m >> c) & 1u;
                    const double br = skin ? k_skin_r : k_bg;
                    const double bgc = skin ? k_skin_g : k_bg;
                    const double bb = skin ? k_skin_b : k_bg;
                    if (!per_frame) {
                        const double jr = variant == 0 ? 0.0 : digit();
                        const double jg = variant == 0 ? 0.0 : digit();
                        const double jb = variant == 0 ? 0.0 : digit();
                        const double lvl = chroma(quant(br + jr / 255.0), quant(bgc + jg / 255.0),
                                                  quant(bb + jb / 255.0));
                        for (int f = 0; f < 3; ++f) w.i[f * 9 + c] = lvl;
                    } else {
                        for (int f = 0; f < 3; ++f)
                            w.i[f * 9 + c] =
                                chroma(quant(br + digit() / 255.0), quant(bgc + digit() / 255.0),
                                       quant(bb + digit() / 255.0));
                    }
                }
                if (variant == 0) s.boundary.push_back(w);
                else s.halo.push_back(w);
            }
        }
    }
    return s;
}

// ---- per-candidate measurements ----

double fire_rate(const rppg::ccnn_params& p, const std::vector<window27>& ws, size_t n) {
    n = std::min(n, ws.size());
    if (n == 0) return 0.0;
    size_t f = 0;
    for (size_t k = 0; k < n; ++k) f += window_fires(p, ws[k]) ? 1 : 0;
    return static_cast<double>(f) / static_cast<double>(n);
}

// Most negative allowed: minimum silence margin (-score) over a suite.
double min_silence_margin(const rppg::ccnn_params& p, const std::vector<window27>& ws) {
    double m = 1e300;
    for (const auto& w : ws) m = std::min(m, -window_score(p, w));
    return m;
}

// Quantized noise-free pulse: fraction of fired windows over a full run.
// All cells share the pixel series, as in a patch interior.
double pulse_coverage(const rppg::ccnn_params& p, double hr, double amp, int frames) {
    std::vector<double> iv(static_cast<size_t>(frames));
    for (int t = 0; t < frames; ++t) {
        const double s = std::sin(2.0 * M_PI * (hr / 60.0) * t / k_fps);
        const double r = quant(k_skin_r + 0.5 * amp * s);
        const double g = quant(k_skin_g + amp * s);
        const double b = quant(k_skin_b);
        iv[static_cast<size_t>(t)] = chroma(r, g, b);
    }
    int fired = 0;
    const int nw = frames - 2;
    for (int k = 0; k < nw; ++k) {
        window27 w;
        for (int f = 0; f < 3; ++f)
            for (int c = 0; c < 9; ++c) w.i[f * 9 + c] = iv[static_cast<size_t>(k + f)];
        fired += window_fires(p, w) ? 1 : 0;
    }
    return static_cast<double>(fired) / nw;
}

// Closed-form second-step center activation for a uniform resting stimulus,
// used only to center the threshold-gap scan.
double u2_center(const rppg::ccnn_params& p, double s) {
    const double sg = 1.0 / (1.0 + std::exp(-s));
    const double f2 = s * (1.0 + p.decay_f()) + 6.0 * p.v_f * sg;
    const double l2 = 6.0 * p.v_l * sg;
    return f2 * (1.0 + p.beta * l2);
}

// Per-frame response taps at the resting level, by central difference on a
// spatially uniform blip. A usable detector needs individual taps alive
// (temporal response) while their sum cancels (level immunity): a static
// level shift moves the score by the tap sum, a frame-to-frame disturbance
// by single taps.
struct tap_probe {
    double u1 = 0.0, u2 = 0.0, u3 = 0.0;
    double mag() const { return std::max(std::abs(u2), std::abs(u3)); }
    double common() const { return std::abs(u1 + u2 + u3); }
};

tap_probe measure_taps(const rppg::ccnn_params& p) {
    tap_probe t;
    const double h = 5e-4;
    double* u[3] = {&t.u1, &t.u2, &t.u3};
    for (int f = 0; f < 3; ++f) {
        double sc[2];
        for (int sgn = 0; sgn < 2; ++sgn) {
            window27 w = uniform_window(k_skin_i);
            const double lvl = k_skin_i + (sgn == 0 ? h : -h);
            for (int c = 0; c < 9; ++c) w.i[f * 9 + c] = lvl;
            sc[sgn] = window_score(p, w);
        }
        *u[f] = (sc[0] - sc[1]) / (2.0 * h);
    }
    return t;
}

struct candidate {
    rppg::ccnn_params p;
    double kappa = 0.0;       // second-step threshold gap at rest
    double p0 = 0.0;          // skin noisy fire rate
    double p_bg = 1.0;        // background noisy fire rate
    double p_halo = 0.0;      // jittered boundary fire rate
    double p_trail = 0.0;     // trailing drift-edge fire rate, want high
    double p_lead = 0.0;      // leading drift-edge fire rate, want low
    double margin_bg = -1.0;  // worst background-box silence margin
    double margin_bnd = -1.0; // worst boundary-mix silence margin
    double ring_frac = 0.0;   // fraction of off-rest levels that fire
    double ring_lo = 0.0;     // firing fraction, below-rest chroma side
    double ring_hi = 0.0;     // firing fraction, above-rest chroma side
    double ring_min = -1.0;   // worst off-rest firing score
    double cov150 = 0.0;      // noise-free coverage, 150 bpm
    double cov69 = 0.0;       // noise-free coverage, 69 bpm
    bool dichotomy = false;
    int period = 0;
    tap_probe taps;
    double score = -1e300;
};

void set_ve_from_kappa(rppg::ccnn_params& p, double kappa) {
    const double s = p.to_input(k_skin_i);
    const double sg = 1.0 / (1.0 + std::exp(-s));
    const double u2 = u2_center(p, s);
    p.v_e = std::max(0.0, (u2 - kappa) / sg);
}

// Along the kappa axis the rest window passes through up to three regimes:
// silent at weak inhibition, firing once the second-step activation feeds
// the threshold, silent again in a valley where that activation has died,
// and firing once the decayed first-step inhibition alone overwhelms the
// stimulus. The usable operating points are the silent edges of those
// cliffs, which are far too narrow for any fixed grid, so the threshold
// gain is bisected until the resting window sits on the silent side with
// a prescribed margin. mode 0 takes the silent side below a fire region,
// mode 1 the silent side above one.
bool bisect_to_margin(rppg::ccnn_params& p, const window27& rest, double z_t, int mode,
                      double* kappa_out) {
    const double s = p.to_input(k_skin_i);
    const double u2 = u2_center(p, s);
    if (!(u2 > -20.0)) return false;
    const double k_top = std::min(u2 - 1e-9, 8.0);
    auto fires_at = [&](double k) {
        set_ve_from_kappa(p, k);
        return window_score(p, rest) + z_t > 0.0;
    };
    double k_true = std::nan(""), k_false = std::nan("");
    bool have_prev = false, prev = false;
    double prev_k = 0.0;
    const bool up = mode >= 2;
    const double k_from = up ? -25.0 : k_top;
    const double k_step = up ? 0.1 : -0.1;
    for (double k = k_from; up ? (k <= k_top) : (k >= -25.0); k += k_step) {
        const bool f = fires_at(k);
        if (have_prev && prev != f) {
            const bool want_fire_first = (mode == 0 || mode == 3);
            if (prev == want_fire_first) {
                if (prev) { k_true = prev_k; k_false = k; } else { k_false = prev_k; k_true = k; }
                break;
            }
        }
        prev = f;
        prev_k = k;
        have_prev = true;
    }
    if (!std::isfinite(k_true)) return false;
    for (int i = 0; i < 48; ++i) {
        const double mid = 0.5 * (k_true + k_false);
        if (fires_at(mid)) k_true = mid; else k_false = mid;
    }
    set_ve_from_kappa(p, k_false);
    if (kappa_out) *kappa_out = k_false;
    return window_score(p, rest) <= 0.0;
}

// Slope of the uniform-level score at the resting level, central difference
// over a quarter-digit chroma step.
double rest_slope(const rppg::ccnn_params& p) {
    const double h = 2.5e-4;
    const double a = window_score(p, uniform_window(k_skin_i + h));
    const double b = window_score(p, uniform_window(k_skin_i - h));
    return (a - b) / (2.0 * h);
}

// Solve the feeding gain so the uniform-level score is flat at rest. With
// the threshold gain seated to score(rest) = -z_t, a flat slope makes rest
// a dip: both chroma sides of the ring can rise above zero. The feeding
// route pulls the slope negative and the threshold route pulls it positive,
// so a geometric sweep brackets the crossing.
bool solve_flat_rest(rppg::ccnn_params& p, const window27& rest, double z_t, int mode) {
    auto slope_at = [&](double vf, bool& ok) {
        rppg::ccnn_params t = p;
        t.v_f = vf;
        if (!bisect_to_margin(t, rest, z_t, mode, nullptr)) { ok = false; return 0.0; }
        ok = true;
        return rest_slope(t);
    };
    double lo = -1.0, hi = -1.0, slo = 0.0;
    double prev_v = -1.0, prev_s = 0.0;
    bool have_prev = false;
    for (double v = 0.004; v < 60.0; v *= 1.35) {
        bool ok = false;
        const double sl = slope_at(v, ok);
        if (!ok) { have_prev = false; continue; }
        if (have_prev && ((prev_s < 0.0) != (sl < 0.0))) {
            lo = prev_v; slo = prev_s; hi = v;
            break;
        }
        prev_v = v; prev_s = sl; have_prev = true;
    }
    if (lo < 0.0) return false;
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        bool ok = false;
        const double sl = slope_at(mid, ok);
        if (!ok) return false;
        if ((sl < 0.0) == (slo < 0.0)) { lo = mid; slo = sl; } else { hi = mid; }
        if (std::abs(sl) < 1e-7) break;
    }
    p.v_f = 0.5 * (lo + hi);
    return bisect_to_margin(p, rest, z_t, mode, nullptr);
}

// Cheap probe: does the detector respond to digit-scale steps of either
// sign at both in-window transitions, and stay quiet at rest?
int step_probe(const rppg::ccnn_params& p) {
    int fires = 0;
    const double dg = 1.0 / 255.0;
    auto lvl = [&](double g_off) {
        return chroma(quant(k_skin_r), quant(k_skin_g + g_off), quant(k_skin_b));
    };
    const double base = lvl(0.0);
    for (const int t : {1, 2}) {          // transition position
        for (const double sgn : {+1.0, -1.0}) {
            window27 w = uniform_window(base);
            for (int f = t; f < 3; ++f)
                for (int c = 0; c < 9; ++c) w.i[f * 9 + c] = lvl(sgn * dg);
            fires += window_fires(p, w) ? 1 : 0;
        }
    }
    return fires; // 0..4
}

// Graded penalty for static windows that fire; a hard reject would leave
// the descent with no direction to follow.
double silence_penalty(const rppg::ccnn_params& p, const std::vector<window27>& ws, size_t stride) {
    size_t n = 0, fires = 0;
    double worst = 0.0;
    for (size_t k = 0; k < ws.size(); k += stride) {
        ++n;
        const double sc = window_score(p, ws[k]);
        if (sc > 0.0) { ++fires; worst = std::max(worst, sc); }
    }
    if (fires == 0) return 0.0;
    return 4.0 * static_cast<double>(fires) / static_cast<double>(n) +
           8.0 * std::min(worst, 0.3) + 1.0;
}

bool dichotomy_ok(const rppg::ccnn_params& p) {
    try {
        return rppg::check_dichotomy(p, 2000).pass();
    } catch (const rppg::error&) {
        return false;
    }
}

double quick_objective(const rppg::ccnn_params& p, const suites& su, size_t n_quick) {
    if (window_score(p, su.rest) > 0.0) return -1e9;
    // a fully static video must be all-silent: exact background, exact
    // rest, exact boundary mixes; violations dominate everything else
    const double pen = 20.0 * (silence_penalty(p, su.bg_box, 1) +
                               silence_penalty(p, su.boundary, 1));
    // the noisy fire rate over the patch is the real objective: it is the
    // per-frame mask coverage, and the overlap criterion needs ~0.62+
    const double p0 = fire_rate(p, su.skin_noise, n_quick);
    const double pb = fire_rate(p, su.bg_noise, n_quick / 2);
    const double ph = fire_rate(p, su.halo, su.halo.size());
    // drift edges: firing the trailing window removes the mask's motion lag,
    // firing the leading one would push it ahead instead
    const double pt = fire_rate(p, su.trail_noise, n_quick / 4);
    const double pl = fire_rate(p, su.lead_noise, n_quick / 4);
    double ring = 0.0;
    for (const auto& w : su.fire_ring) ring += window_fires(p, w) ? 1.0 : 0.0;
    ring /= static_cast<double>(su.fire_ring.size());
    const double dich_pen = dichotomy_ok(p) ? 0.0 : 4.0;
    return 6.0 * p0 + 0.3 * ring + 1.2 * pt - 1.2 * pl -
           8.0 * std::max(0.0, pb - 0.02) - 2.0 * std::max(0.0, ph - 0.45) -
           pen - dich_pen;
}

candidate evaluate_full(rppg::ccnn_params p, double kappa, const suites& su) {
    candidate c;
    c.p = p;
    c.kappa = kappa;
    c.margin_bg = min_silence_margin(p, su.bg_box);
    c.margin_bnd = min_silence_margin(p, su.boundary);
    c.ring_min = 1e300;
    double n_lo = 0.0, n_hi = 0.0;
    for (size_t i = 0; i < su.fire_ring.size(); ++i) {
        const double sc = window_score(p, su.fire_ring[i]);
        c.ring_min = std::min(c.ring_min, sc);
        if (su.ring_side[i] > 0) {
            n_hi += 1.0;
            if (sc > 0.0) { c.ring_hi += 1.0; c.ring_frac += 1.0; }
        } else {
            n_lo += 1.0;
            if (sc > 0.0) { c.ring_lo += 1.0; c.ring_frac += 1.0; }
        }
    }
    c.ring_frac /= static_cast<double>(su.fire_ring.size());
    if (n_lo > 0) c.ring_lo /= n_lo;
    if (n_hi > 0) c.ring_hi /= n_hi;
    c.taps = measure_taps(p);
    c.p0 = fire_rate(p, su.skin_noise, su.skin_noise.size());
    c.p_bg = fire_rate(p, su.bg_noise, su.bg_noise.size());
    c.p_halo = fire_rate(p, su.halo, su.halo.size());
    c.p_trail = fire_rate(p, su.trail_noise, su.trail_noise.size());
    c.p_lead = fire_rate(p, su.lead_noise, su.lead_noise.size());
    c.cov150 = pulse_coverage(p, 150.0, k_amp, 602);
    c.cov69 = pulse_coverage(p, 69.0, k_amp, 602);
    try {
        const auto d = rppg::check_dichotomy(p, 2000);
        c.dichotomy = d.pass();
        c.period = d.period;
    } catch (const rppg::error&) {
        c.dichotomy = false;
    }
    double sc = 6.0 * c.p0 + 0.3 * c.ring_frac + 1.2 * c.p_trail - 1.2 * c.p_lead;
    sc -= 8.0 * std::max(0.0, c.p_bg - 0.02);
    sc -= 2.0 * std::max(0.0, c.p_halo - 0.45);
    if (!c.dichotomy) sc -= 10.0;
    // silence violations keep the candidate visible but hopeless
    for (const double m : {c.margin_bg, c.margin_bnd})
        if (m <= 0.0) sc -= 100.0 + 10.0 * std::min(-m, 1.0);
    c.score = sc;
    return c;
}

// ---- miniature end-to-end simulation ----

struct sim_video {
    int w = 0, h = 0, frames = 0;
    std::vector<double> iplane;  // chroma, frame major
    std::vector<double> gplane;  // quantized green in [0,1]
    std::vector<uint8_t> truth;  // patch membership per frame
    int px = 0, py = 0, pw = 0, ph = 0;
    std::vector<int> ox, oy;     // patch offset per frame
};

// Mirrors the synthesizer: quantized skin patch with pulse on G (half on R)
// over a constant gray background, optional cyclic per-frame translation,
// per-channel gaussian noise before quantization.
sim_video make_video(int w, int h, int pw, int ph, int px0, int py0, int frames,
                     double hr, double amp, double noise, int dx, int dy, uint64_t seed) {
    sim_video v;
    v.w = w; v.h = h; v.frames = frames;
    v.px = px0; v.py = py0; v.pw = pw; v.ph = ph;
    v.iplane.resize(static_cast<size_t>(frames) * w * h);
    v.gplane.resize(static_cast<size_t>(frames) * w * h);
    v.truth.resize(static_cast<size_t>(frames) * w * h, 0);
    v.ox.resize(static_cast<size_t>(frames));
    v.oy.resize(static_cast<size_t>(frames));
    // cyclic translation: the offset advances without bound and the patch
    // occupies its footprint modulo the frame, so the mask at frame k is the
    // frame-0 mask cyclically shifted by k times the motion vector
    auto wrap = [](int pos, int range) {
        const int m = pos % range;
        return m < 0 ? m + range : m;
    };
    for (int t = 0; t < frames; ++t) {
        v.ox[static_cast<size_t>(t)] = wrap(px0 + dx * t, w);
        v.oy[static_cast<size_t>(t)] = wrap(py0 + dy * t, h);
        rppg::rng rg = rppg::rng::for_stream(seed, static_cast<uint64_t>(t) + 100);
        const double s = std::sin(2.0 * M_PI * (hr / 60.0) * t / k_fps);
        const int ox = v.ox[static_cast<size_t>(t)], oy = v.oy[static_cast<size_t>(t)];
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const int relx = (x - ox + w) % w, rely = (y - oy + h) % h;
                const bool in = relx < pw && rely < ph;
                double r, g, b;
                if (in) {
                    r = k_skin_r + 0.5 * amp * s;
                    g = k_skin_g + amp * s;
                    b = k_skin_b;
                } else {
                    r = k_bg; g = k_bg; b = k_bg;
                }
                if (noise > 0.0) {
                    r += noise * rg.normal();
                    g += noise * rg.normal();
                    b += noise * rg.normal();
                }
                const double rq = quant(r), gq = quant(g), bq = quant(b);
                const size_t at = (static_cast<size_t>(t) * h + y) * w + x;
                v.iplane[at] = chroma(rq, gq, bq);
                v.gplane[at] = gq;
                v.truth[at] = in ? 1 : 0;
            }
        }
    }
    return v;
}

struct sim_result {
    int n_windows = 0;
    double mean_iou = 0.0;
    double fired_any = 0.0;          // fraction of mask-true pixel-frames
    int included_patch = 0;
    int included_bg = 0;
    int mode_bpm = 0;
    int mode_count = 0;
    int second_bpm = 0;
    int second_count = 0;
    double centroid_err_max = 0.0;
    double excluded_bg_frac = 0.0;
    int all_false = 1;
    double fp_d1 = 0.0;              // mean per-frame false fires hugging the patch
    double fp_d2 = 0.0;
    double fp_far = 0.0;
    double fn_rate = 0.0;            // fraction of patch pixel-frames left out
    double cent_bias_x = 0.0;        // mean signed centroid error along x
    double col_rate[6] = {0, 0, 0, 0, 0, 0};  // fire rate by patch column 0,1,2,...,last-1,last (interior mid)
    double cent_err_body = 0.0;      // max centroid error over windowed frames
    double cent_err_tail = 0.0;      // max over the two mask-reuse frames
};

sim_result run_sim(const rppg::ccnn_params& p, const sim_video& v, bool estimate) {
    sim_result r;
    const int w = v.w, h = v.h, n = v.frames;
    const int nw = n - 2;
    r.n_windows = nw;
    std::vector<uint8_t> mask(static_cast<size_t>(n) * w * h, 0);

    window27 win;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int k = 0; k < nw; ++k) {
                for (int f = 0; f < 3; ++f) {
                    const size_t base = (static_cast<size_t>(k + f) * h) * w;
                    for (int dyy = -1; dyy <= 1; ++dyy) {
                        for (int dxx = -1; dxx <= 1; ++dxx) {
                            const int yy = y + dyy, xx = x + dxx;
                            const int cell = (dyy + 1) * 3 + (dxx + 1);
                            win.i[f * 9 + cell] =
                                (yy < 0 || yy >= h || xx < 0 || xx >= w)
                                    ? 0.0
                                    : v.iplane[base + static_cast<size_t>(yy) * w + xx];
                        }
                    }
                }
                mask[(static_cast<size_t>(k) * h + y) * w + x] = window_fires(p, win) ? 1 : 0;
            }
            // last two frames reuse the final mask
            for (int t = nw; t < n; ++t)
                mask[(static_cast<size_t>(t) * h + y) * w + x] =
                    mask[(static_cast<size_t>(nw - 1) * h + y) * w + x];
        }
    }

    // per-frame IoU and centroid against the moving truth
    double iou_sum = 0.0;
    size_t fired_total = 0, miss_total = 0, truth_total = 0;
    double col_n[6] = {0, 0, 0, 0, 0, 0};
    double bias_sum = 0.0;
    int bias_frames = 0;
    for (int t = 0; t < n; ++t) {
        size_t inter = 0, uni = 0, fired = 0;
        double cx = 0.0, cy = 0.0;
        const int px0 = v.ox[static_cast<size_t>(t)], py0 = v.oy[static_cast<size_t>(t)];
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const size_t at = (static_cast<size_t>(t) * h + y) * w + x;
                const bool m = mask[at] != 0, tr = v.truth[at] != 0;
                // patch-local coordinates, unwrapped around the footprint:
                // cells more than half the slack past the right edge belong
                // to the left halo
                int relx = (x - px0 + w) % w, rely = (y - py0 + h) % h;
                if (relx >= v.pw + (w - v.pw) / 2) relx -= w;
                if (rely >= v.ph + (h - v.ph) / 2) rely -= h;
                if (m) { ++fired; cx += relx; cy += rely; }
                if (m && tr) ++inter;
                if (m || tr) ++uni;
                if (tr) ++truth_total;
                if (tr && !m) ++miss_total;
                if (tr && t < nw) {
                    int slot = -1;
                    if (relx <= 2) slot = relx;
                    else if (relx >= v.pw - 2) slot = 3 + (relx - (v.pw - 2));
                    else slot = 5;
                    if (slot >= 0 && slot < 6) {
                        r.col_rate[slot] += m ? 1.0 : 0.0;
                        col_n[slot] += 1.0;
                    }
                }
                if (m && !tr) {
                    const int ddx = std::max({-relx, relx - (v.pw - 1), 0});
                    const int ddy = std::max({-rely, rely - (v.ph - 1), 0});
                    const int d = std::max(ddx, ddy);
                    if (d <= 1) r.fp_d1 += 1.0;
                    else if (d == 2) r.fp_d2 += 1.0;
                    else r.fp_far += 1.0;
                }
            }
        }
        fired_total += fired;
        iou_sum += uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
        if (fired > 0) {
            r.all_false = 0;
            const double err = std::hypot(cx / fired - (v.pw - 1) / 2.0,
                                          cy / fired - (v.ph - 1) / 2.0);
            r.centroid_err_max = std::max(r.centroid_err_max, err);
            if (t < nw) r.cent_err_body = std::max(r.cent_err_body, err);
            else r.cent_err_tail = std::max(r.cent_err_tail, err);
            bias_sum += cx / fired - (v.pw - 1) / 2.0;
            ++bias_frames;
        }
    }
    if (bias_frames > 0) r.cent_bias_x = bias_sum / bias_frames;
    for (int sl = 0; sl < 6; ++sl)
        if (col_n[sl] > 0) r.col_rate[sl] /= col_n[sl];
    r.mean_iou = iou_sum / n;
    r.fired_any = static_cast<double>(fired_total) / (static_cast<double>(n) * w * h);
    r.fp_d1 /= n;
    r.fp_d2 /= n;
    r.fp_far /= n;
    r.fn_rate = truth_total ? static_cast<double>(miss_total) / static_cast<double>(truth_total) : 0.0;
    if (!estimate) return r;

    // coverage screen and per-pixel spectral vote, mirroring the estimator:
    // two 10 s segments, Hamming window, zero-padded grid, band-limited
    // argmax, 1 bpm histogram with low tie-break.
    const int m = n / 2;
    const int fft = 4096;
    const int k_lo = static_cast<int>(std::ceil(0.7 * fft / k_fps));
    const int k_hi = static_cast<int>(std::floor(2.5 * fft / k_fps));
    std::vector<double> ham(static_cast<size_t>(m));
    double usum = 0.0;
    for (int i = 0; i < m; ++i) {
        ham[static_cast<size_t>(i)] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / (m - 1));
        usum += ham[static_cast<size_t>(i)] * ham[static_cast<size_t>(i)];
    }
    const double unorm = usum / m;
    const int nbin = k_hi - k_lo + 1;
    std::vector<double> ct(static_cast<size_t>(nbin) * m), st(static_cast<size_t>(nbin) * m);
    for (int kb = 0; kb < nbin; ++kb) {
        for (int i = 0; i < m; ++i) {
            const double ang = 2.0 * M_PI * (kb + k_lo) * i / fft;
            ct[static_cast<size_t>(kb) * m + i] = std::cos(ang) * ham[static_cast<size_t>(i)];
            st[static_cast<size_t>(kb) * m + i] = std::sin(ang) * ham[static_cast<size_t>(i)];
        }
    }

    std::array<int, 151> hist{};
    int excluded_bg = 0, bg_total = 0;
    std::vector<double> series(static_cast<size_t>(n));
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int cov = 0;
            for (int t = 0; t < n; ++t) {
                const size_t at = (static_cast<size_t>(t) * h + y) * w + x;
                series[static_cast<size_t>(t)] = mask[at] ? v.gplane[at] : 0.0;
                cov += mask[at];
            }
            bool ever_truth = false;
            for (int t = 0; t < n && !ever_truth; ++t)
                ever_truth = v.truth[(static_cast<size_t>(t) * h + y) * w + x] != 0;
            const bool is_bg = !ever_truth;
            if (is_bg) ++bg_total;
            if (n - cov > n / 2) { // masked in more than half the frames
                if (is_bg) ++excluded_bg;
                continue;
            }
            double best = -1.0;
            int best_k = -1;
            for (int kb = 0; kb < nbin; ++kb) {
                double acc = 0.0;
                for (int seg = 0; seg < 2; ++seg) {
                    double mean = 0.0;
                    for (int i = 0; i < m; ++i) mean += series[static_cast<size_t>(seg * m + i)];
                    mean /= m;
                    double re = 0.0, im = 0.0;
                    for (int i = 0; i < m; ++i) {
                        const double xv = series[static_cast<size_t>(seg * m + i)] - mean;
                        re += xv * ct[static_cast<size_t>(kb) * m + i];
                        im += xv * st[static_cast<size_t>(kb) * m + i];
                    }
                    acc += (re * re + im * im) / (m * unorm);
                }
                if (acc > best + 1e-15) { best = acc; best_k = kb; }
            }
            if (best_k < 0 || best < 1e-12) continue;
            const double bpm = 60.0 * (best_k + k_lo) * k_fps / fft;
            const int bin = std::clamp(static_cast<int>(std::llround(bpm)), 42, 150);
            hist[static_cast<size_t>(bin)]++;
            if (is_bg) ++r.included_bg; else ++r.included_patch;
        }
    }
    for (int b = 42; b <= 150; ++b) {
        if (hist[static_cast<size_t>(b)] > r.mode_count) {
            r.mode_count = hist[static_cast<size_t>(b)];
            r.mode_bpm = b;
        }
    }
    for (int b = 42; b <= 150; ++b) {
        if (b != r.mode_bpm && hist[static_cast<size_t>(b)] > r.second_count) {
            r.second_count = hist[static_cast<size_t>(b)];
            r.second_bpm = b;
        }
    }
    r.excluded_bg_frac = bg_total > 0 ? static_cast<double>(excluded_bg) / bg_total : 1.0;
    return r;
}

nlohmann::json params_json(const rppg::ccnn_params& p) {
    return nlohmann::json{
        {"alpha_f", p.alpha_f}, {"alpha_l", p.alpha_l}, {"alpha_e", p.alpha_e},
        {"v_f", p.v_f},         {"v_l", p.v_l},         {"v_e", p.v_e},
        {"beta", p.beta},       {"unit_input", p.unit_input},
    };
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice parameter search"};
    int n_samples = 1200;
    uint64_t seed = 20260816ull;
    int top = 16;
    bool full = false;
    bool verbose = false;
    bool preset = false;
    int sim_top = 10;
    std::string json_out;
    app.add_option("--samples", n_samples, "random shapes to draw");
    app.add_option("--seed", seed, "search seed");
    app.add_option("--top", top, "candidates kept on the scoreboard");
    app.add_option("--sim-top", sim_top, "candidates run through the mini simulation");
    app.add_flag("--preset", preset, "evaluate the built-in shortlist instead of searching");
    app.add_flag("--full", full, "run full-size confirmations for the finalists");
    app.add_flag("--verbose", verbose, "print per-sample scan results");
    app.add_option("--json-out", json_out, "write the scoreboard as JSON");
    CLI11_PARSE(app, argc, argv);

    std::printf("suites...\n");
    const suites su = build_suites(seed);
    std::printf("skin rest chroma %.6f, bg %.6f, weights %.6f %.6f %.6f\n",
                k_skin_i, k_bg_i, weights().w[0], weights().w[1], weights().w[2]);

    rppg::rng rg = rppg::rng::for_stream(seed, 0);
    std::vector<candidate> board;

    auto consider = [&](const candidate& c) {
        board.push_back(c);
        std::sort(board.begin(), board.end(),
                  [](const candidate& a, const candidate& b) { return a.score > b.score; });
        if (static_cast<int>(board.size()) > top) board.resize(static_cast<size_t>(top));
    };

    auto sample_shape = [&](rppg::ccnn_params& p) {
        auto logu = [&](double lo, double hi) {
            return lo * std::exp(rg.uniform() * std::log(hi / lo));
        };
        p = rppg::ccnn_params{};
        p.alpha_f = logu(0.02, 3.0);
        p.alpha_l = logu(0.02, 10.0);
        p.alpha_e = logu(0.05, 10.0);
        p.unit_input = rg.uniform() < 0.5;
        p.v_f = rg.uniform() < 0.4 ? 0.0 : logu(0.005, 5.0);
        p.beta = logu(0.2, 400.0);
        const double s = p.to_input(k_skin_i);
        const double sg = 1.0 / (1.0 + std::exp(-s));
        const double gain = 1.0 + logu(0.05, 5e5);
        p.v_l = (gain - 1.0) / (6.0 * p.beta * sg);
    };

    auto process_shape = [&](rppg::ccnn_params p, int it) {
        // seat the threshold gain so the exact rest level scores -z_t,
        // trying every cliff the threshold sweep exposes (top-down and
        // bottom-up, both polarities), then climb the noisy fire rate
        static const double z_grid[] = {1e-5, 3e-5, 1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2};
        double best_obj = -1e300, best_z = 0.0;
        int best_mode = 0;
        for (int mode = 0; mode < 4; ++mode) {
            for (const double z_t : z_grid) {
                rppg::ccnn_params t = p;
                if (!bisect_to_margin(t, su.rest, z_t, mode, nullptr)) continue;
                const double obj = quick_objective(t, su, 192);
                if (obj > best_obj) { best_obj = obj; best_z = z_t; best_mode = mode; }
            }
        }
        if (best_obj < -1e200) return;
        if (verbose) {
            rppg::ccnn_params t = p;
            bisect_to_margin(t, su.rest, best_z, best_mode, nullptr);
            double flo = 0.0, fhi = 0.0, nlo = 0.0, nhi = 0.0;
            for (size_t k = 0; k < su.fire_ring.size(); ++k) {
                const bool f = window_fires(t, su.fire_ring[k]);
                if (su.ring_side[k] > 0) { nhi += 1.0; fhi += f ? 1.0 : 0.0; }
                else { nlo += 1.0; flo += f ? 1.0 : 0.0; }
            }
            std::printf(
                "  smp %d: obj=%.4f z=%.0e m=%d ring=%.3f/%.3f p0q=%.3f | af=%.3f ae=%.3f vf=%.3f beta=%.2f vl=%.3g unit=%d\n",
                it, best_obj, best_z, best_mode, nlo > 0 ? flo / nlo : 0.0,
                nhi > 0 ? fhi / nhi : 0.0, fire_rate(t, su.skin_noise, 192),
                t.alpha_f, t.alpha_e, t.v_f, t.beta, t.v_l, t.unit_input ? 1 : 0);
        }

        // coordinate descent; every shape move re-seats the threshold gain
        rppg::ccnn_params q = p;
        double z_t = best_z;
        const int op_mode = best_mode;
        if (!bisect_to_margin(q, su.rest, z_t, op_mode, nullptr)) return;
        double cur = quick_objective(q, su, 768);
        double step = 1.0;
        for (int pass = 0; pass < 4; ++pass) {
            for (int dial = 0; dial < 7; ++dial) {
                for (const double dir : {+1.0, -1.0}) {
                    rppg::ccnn_params t = q;
                    double tz = z_t;
                    switch (dial) {
                        case 0: tz *= std::exp(dir * 1.0 * step); break;
                        case 1: t.alpha_f *= std::exp(dir * 0.30 * step); break;
                        case 2: t.alpha_l *= std::exp(dir * 0.30 * step); break;
                        case 3: t.alpha_e *= std::exp(dir * 0.30 * step); break;
                        case 4: t.v_f = std::max(t.v_f, 1e-4) * std::exp(dir * 0.45 * step); break;
                        case 5: t.beta *= std::exp(dir * 0.30 * step); break;
                        case 6: t.v_l *= std::exp(dir * 0.30 * step); break;
                    }
                    if (!bisect_to_margin(t, su.rest, tz, op_mode, nullptr)) continue;
                    const double obj = quick_objective(t, su, 768);
                    if (obj > cur) { q = t; z_t = tz; cur = obj; }
                }
            }
            step *= 0.55;
        }

        double kappa = 0.0;
        if (!bisect_to_margin(q, su.rest, z_t, op_mode, &kappa)) return;
        candidate c = evaluate_full(q, kappa, su);
        consider(c);
        if (it >= 0 && (it + 1) % 100 == 0)
            std::printf("  [%d/%d] board best %.4f\n", it + 1, n_samples,
                        board.empty() ? -1.0 : board.front().score);
    };

    if (preset) {
        // shortlist of the strongest shapes from earlier searches
        struct preset_row {
            double af, al, ae, vf, vl, beta;
            bool unit;
        };
        static const preset_row rows[] = {
            {1.3624, 1.9261, 5.6470, 0.0, 1.36442, 41.5165, true},
            {0.6480, 0.6270, 8.4992, 0.0, 241.759, 10.0424, true},
            {0.4804, 0.7016, 6.0016, 0.0, 1813.14, 9.2641, true},
            {0.5437, 0.6870, 3.8677, 0.0, 4827.15, 11.0244, true},
        };
        int sid = -1;
        for (const auto& r : rows) {
            rppg::ccnn_params p;
            p.alpha_f = r.af; p.alpha_l = r.al; p.alpha_e = r.ae;
            p.v_f = r.vf; p.v_l = r.vl; p.beta = r.beta; p.unit_input = r.unit;
            process_shape(p, sid--);
        }
        n_samples = 0;

        // horizontal-motion transition windows: a trailing-edge cell sees
        // (skin,bg,bg) down its own column while a leading-edge cell sees
        // (bg,skin,skin); report exact and noisy fire rates for both
        std::printf("\n== motion transition windows ==\n");
        for (const auto& c : board) {
            // skin flag per (frame, col) for a rightward 1 px/frame drift
            auto col_skin = [](bool is_trail, int f, int col) {
                if (is_trail) return col == 1 ? f == 0 : (col == 2 ? f <= 1 : false);
                return col == 0 ? true : (col == 1 ? f >= 1 : f >= 2);
            };
            auto make = [&](bool is_trail, rppg::rng* nrg) {
                window27 wn{};
                for (int f = 0; f < 3; ++f) {
                    for (int row = 0; row < 3; ++row) {
                        for (int col = 0; col < 3; ++col) {
                            const bool sk = col_skin(is_trail, f, col);
                            double r = sk ? k_skin_r : k_bg;
                            double g = sk ? k_skin_g : k_bg;
                            double b = sk ? k_skin_b : k_bg;
                            if (nrg) {
                                r += k_noise * nrg->normal();
                                g += k_noise * nrg->normal();
                                b += k_noise * nrg->normal();
                            }
                            wn.i[f * 9 + row * 3 + col] = chroma(quant(r), quant(g), quant(b));
                        }
                    }
                }
                return wn;
            };
            rppg::rng nrg = rppg::rng::for_stream(909, 5);
            int tf = 0, lf = 0;
            const int reps = 512;
            for (int r2 = 0; r2 < reps; ++r2) {
                tf += window_fires(c.p, make(true, &nrg)) ? 1 : 0;
                lf += window_fires(c.p, make(false, &nrg)) ? 1 : 0;
            }
            std::printf("  af=%.4f: trail exact=%d noisy=%.3f | lead exact=%d noisy=%.3f\n",
                        c.p.alpha_f, window_fires(c.p, make(true, nullptr)) ? 1 : 0,
                        static_cast<double>(tf) / reps, window_fires(c.p, make(false, nullptr)) ? 1 : 0,
                        static_cast<double>(lf) / reps);
        }
    }

    // directed seeds: linking-dominated shapes where the second step acts
    // as a high-gain comparator on the local neighborhood, spread over the
    // comparator gain and the decay mix that controls the third step
    if (!preset) {
        int sid = -1;
        for (const bool unit : {true, false}) {
            for (const double gn : {2000.0, 10000.0, 60000.0, 200000.0}) {
                for (const double ae : {2.0, 5.0, 6.5}) {
                    for (const double al : {0.7, 5.0, 8.0}) {
                        rppg::ccnn_params p;
                        p.alpha_f = 0.7; p.alpha_l = al; p.alpha_e = ae;
                        p.v_f = 0.0; p.beta = 10.0; p.unit_input = unit;
                        const double s = p.to_input(k_skin_i);
                        const double sg = 1.0 / (1.0 + std::exp(-s));
                        p.v_l = (gn - 1.0) / (6.0 * p.beta * sg);
                        process_shape(p, sid--);
                    }
                }
            }
        }
    }

    for (int it = 0; it < n_samples; ++it) {
        rppg::ccnn_params p;
        sample_shape(p);
        process_shape(p, it);
    }

    // basin hopping around the leaders
    if (!preset) {
        const auto leaders = board;
        int hops = 0;
        for (size_t li = 0; li < leaders.size() && li < 5; ++li) {
            for (int rep = 0; rep < 6; ++rep) {
                rppg::ccnn_params p = leaders[li].p;
                auto jit = [&]() { return std::exp((rg.uniform() - 0.5) * 0.5); };
                p.alpha_f *= jit();
                p.alpha_l *= jit();
                p.alpha_e *= jit();
                p.v_f *= jit();
                p.beta *= jit();
                p.v_l *= jit();
                process_shape(p, -1000 - hops++);
            }
        }
    }

    std::printf("\n== scoreboard ==\n");
    for (size_t i = 0; i < board.size(); ++i) {
        const auto& c = board[i];
        std::printf(
            "#%02zu score=%.4f p0=%.4f pbg=%.4f halo=%.3f t/l=%.2f/%.2f ring=%.3f/%.3f dich=%d per=%d "
            "mBG=%.2e mBND=%.2e | af=%.4f al=%.4f ae=%.4f vf=%.4f vl=%.6g ve=%.6g beta=%.4f unit=%d kappa=%.2f\n",
            i, c.score, c.p0, c.p_bg, c.p_halo, c.p_trail, c.p_lead, c.ring_lo, c.ring_hi,
            c.dichotomy ? 1 : 0, c.period, c.margin_bg, c.margin_bnd,
            c.p.alpha_f, c.p.alpha_l, c.p.alpha_e, c.p.v_f, c.p.v_l, c.p.v_e, c.p.beta,
            c.p.unit_input ? 1 : 0, c.kappa);
    }

    // mini end-to-end simulations for the leaders
    const int n_sim = std::min<int>(sim_top, static_cast<int>(board.size()));
    std::printf("\n== mini simulations (32x32, patch 20) ==\n");
    for (int i = 0; i < n_sim; ++i) {
        auto& c = board[static_cast<size_t>(i)];
        const auto noisy = make_video(32, 32, 20, 20, 6, 6, 600, k_hr, k_amp, k_noise, 0, 0, seed + 7);
        const auto sr = run_sim(c.p, noisy, true);
        const auto clean150 = make_video(32, 32, 20, 20, 6, 6, 300, 150.0, k_amp, 0.0, 0, 0, seed + 8);
        const auto cr = run_sim(c.p, clean150, false);
        const auto moving = make_video(32, 32, 20, 20, 6, 6, 600, k_hr, k_amp, k_noise, 1, 0, seed + 9);
        const auto mr = run_sim(c.p, moving, true);
        const auto flat = make_video(32, 32, 20, 20, 6, 6, 120, k_hr, 0.0, 0.0, 0, 0, seed + 10);
        const auto fr = run_sim(c.p, flat, false);
        std::printf(
            "#%02d noisy: inc=%d bg_inc=%d mode=%d(%d) second=%d(%d) iou=%.3f exbg=%.3f | "
            "clean150 iou=%.3f | move: mode=%d(%d) cent=%.2f inc=%d | flat all_false=%d\n",
            i, sr.included_patch, sr.included_bg, sr.mode_bpm, sr.mode_count, sr.second_bpm,
            sr.second_count, sr.mean_iou, sr.excluded_bg_frac, cr.mean_iou, mr.mode_bpm,
            mr.mode_count, mr.centroid_err_max, mr.included_patch, fr.all_false);
        c.score += (sr.mode_bpm >= 67 && sr.mode_bpm <= 71 ? 1.0 : 0.0) +
                   2.0 * std::min(sr.mean_iou, 0.9) + (fr.all_false ? 0.0 : -5.0) +
                   (mr.centroid_err_max <= 1.6 ? 0.5 : 0.0);
    }

    std::sort(board.begin(), board.end(),
              [](const candidate& a, const candidate& b) { return a.score > b.score; });

    if (full && !board.empty()) {
        std::printf("\n== full-size confirmation (64x64, patch 44) ==\n");
        for (int i = 0; i < std::min<int>(2, static_cast<int>(board.size())); ++i) {
            const auto& c = board[static_cast<size_t>(i)];
            for (const uint64_t vs : {1ull, 2ull, 3ull}) {
                const auto stat = make_video(64, 64, 44, 44, 10, 10, 600, k_hr, k_amp, k_noise, 0, 0, vs);
                const auto sr = run_sim(c.p, stat, true);
                const auto mov = make_video(64, 64, 44, 44, 10, 10, 600, k_hr, k_amp, k_noise, 1, 0, vs);
                const auto mr = run_sim(c.p, mov, true);
                std::printf(
                    "#%02d seed=%llu static: mode=%d(%d) second=%d(%d) iou=%.3f cent=%.2f | "
                    "move: mode=%d(%d) second=%d(%d) cent=%.2f body=%.2f tail=%.2f bias=%+.2f "
                    "cols=%.2f/%.2f/%.2f..%.2f..%.2f/%.2f\n",
                    i, static_cast<unsigned long long>(vs), sr.mode_bpm, sr.mode_count,
                    sr.second_bpm, sr.second_count, sr.mean_iou, sr.centroid_err_max,
                    mr.mode_bpm, mr.mode_count, mr.second_bpm, mr.second_count,
                    mr.centroid_err_max, mr.cent_err_body, mr.cent_err_tail, mr.cent_bias_x,
                    mr.col_rate[0], mr.col_rate[1], mr.col_rate[2], mr.col_rate[5],
                    mr.col_rate[3], mr.col_rate[4]);
            }
            const auto clean = make_video(64, 64, 44, 44, 10, 10, 300, 150.0, k_amp, 0.0, 0, 0, 99);
            const auto cr = run_sim(c.p, clean, false);
            const auto flat = make_video(64, 64, 44, 44, 10, 10, 120, k_hr, 0.0, 0.0, 0, 0, 99);
            const auto fr = run_sim(c.p, flat, false);
            std::printf("#%02d clean150 iou=%.3f | flat all_false=%d\n", i, cr.mean_iou, fr.all_false);
        }
    }

    if (!json_out.empty()) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& c : board) {
            j.push_back({
                {"params", params_json(c.p)},
                {"kappa", c.kappa},
                {"p0", c.p0},
                {"p_bg", c.p_bg},
                {"cov150", c.cov150},
                {"cov69", c.cov69},
                {"dichotomy", c.dichotomy},
                {"period", c.period},
                {"score", c.score},
            });
        }
        FILE* f = std::fopen(json_out.c_str(), "w");
        if (f) {
            const std::string s = j.dump(2);
            std::fwrite(s.data(), 1, s.size(), f);
            std::fclose(f);
        }
    }
    return 0;
}
