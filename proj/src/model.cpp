#include "sinest/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sinest {

namespace {
constexpr double kPi = std::numbers::pi;
}

FrameConfig make_frame_config(std::size_t frame_len) {
    if (frame_len < 8 || frame_len % 2 != 0)
        throw std::invalid_argument("frame_len must be even and >= 8, got " +
                                    std::to_string(frame_len));
    FrameConfig cfg;
    cfg.frame_len = frame_len;
    cfg.window.resize(frame_len);
    cfg.time_index.resize(frame_len);
    cfg.window_time.resize(frame_len);
    const double centre = (static_cast<double>(frame_len) + 1.0) / 2.0;
    for (std::size_t n = 0; n < frame_len; ++n) {
        const double t = (static_cast<double>(n) + 1.0) - centre;
        const double h = std::cos(kPi * t / static_cast<double>(frame_len));
        cfg.time_index[n] = t;
        cfg.window[n] = h;
        cfg.window_time[n] = h * t;
        cfg.window_sq_sum += h * h;
        cfg.window_time_sq_sum += h * h * t * t;
    }
    return cfg;
}

WeightQuad weights_from_params(const SinusoidParams& p, double dtheta) {
    const double cp = std::cos(p.phase);
    const double sp = std::sin(p.phase);
    WeightQuad w;
    w.c = p.amp * cp;
    w.s = -p.amp * sp;
    w.d = p.amp_slope * cp - p.amp * dtheta * sp;
    w.t = -p.amp_slope * sp - p.amp * dtheta * cp;
    return w;
}

RecoveredParams params_from_weights(const WeightQuad& w, double ref_freq,
                                    double amp_floor) {
    RecoveredParams r;
    r.params.freq = ref_freq;
    const double amp = std::hypot(w.c, w.s);
    if (!(amp > amp_floor)) {
        r.vanished = true;
        return r;
    }
    r.params.amp = amp;
    r.params.phase = wrap_phase(std::atan2(-w.s, w.c));
    r.params.amp_slope = (w.d * w.c + w.s * w.t) / amp;
    r.dtheta = (w.d * w.s - w.t * w.c) / (amp * amp);
    return r;
}

std::vector<double> synthesize(std::span<const SinusoidParams> partials,
                               const FrameConfig& cfg, bool windowed) {
    if (partials.empty())
        throw std::invalid_argument("synthesize: no partials given");
    for (const auto& p : partials) {
        if (!(p.freq > 0.0 && p.freq < kPi))
            throw std::invalid_argument("synthesize: frequency outside (0, pi)");
    }
    std::vector<double> x(cfg.frame_len, 0.0);
    for (const auto& p : partials) {
        for (std::size_t n = 0; n < cfg.frame_len; ++n) {
            const double t = cfg.time_index[n];
            x[n] += (p.amp + p.amp_slope * t) * std::cos(p.freq * t + p.phase);
        }
    }
    if (windowed) {
        for (std::size_t n = 0; n < cfg.frame_len; ++n) x[n] *= cfg.window[n];
    }
    return x;
}

double wrap_phase(double phase) {
    double p = std::remainder(phase, 2.0 * kPi);
    if (p <= -kPi) p = kPi;  // remainder returns [-pi, pi]; map -pi to +pi
    return p;
}

}  // namespace sinest
