#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sinest {

/// Analysis frame geometry shared by every estimator: a sine window
/// h(n) = cos(pi*t/L) over a centred time axis t = (n+1) - (L+1)/2.
/// With L even the time axis runs over half-integers symmetric about 0,
/// which makes the windowed basis functions exactly even or odd.
struct FrameConfig {
    std::size_t frame_len = 0;
    std::vector<double> window;      // h(n), values in (0, 1], even-symmetric
    std::vector<double> time_index;  // centred sample times, sums to 0

    // Window-derived constants reused by basis construction.
    std::vector<double> window_time;  // h(n) * t(n)
    double window_sq_sum = 0.0;       // sum of h(n)^2
    double window_time_sq_sum = 0.0;  // sum of h(n)^2 t(n)^2
};

/// Builds the frame configuration. frame_len must be even and >= 8;
/// the even/odd machinery and the centring both assume an even length.
FrameConfig make_frame_config(std::size_t frame_len);

/// One sinusoidal partial: x(n) = (amp + amp_slope*t) * cos(freq*t + phase),
/// t the centred time axis.
struct SinusoidParams {
    double amp = 0.0;        // linear amplitude, >= 0
    double freq = 0.0;       // rad/sample, strictly inside (0, pi)
    double phase = 0.0;      // radians in (-pi, pi]
    double amp_slope = 0.0;  // amplitude change per sample
};

/// Linear coefficients of the four-basis expansion, one quadruple per
/// partial: c*cos + s*sin + d*t*cos + t*t*sin (all windowed).
struct LinWeights {
    std::vector<double> c, s, d, t;

    std::size_t size() const { return c.size(); }
};

struct WeightQuad {
    double c = 0.0, s = 0.0, d = 0.0, t = 0.0;
};

/// Maps sinusoid parameters plus a frequency offset dtheta to the four
/// linear weights:
///   c =  A cos(phi)
///   s = -A sin(phi)
///   d =  A' cos(phi) - A dtheta sin(phi)
///   t = -A' sin(phi) - A dtheta cos(phi)
WeightQuad weights_from_params(const SinusoidParams& p, double dtheta);

struct RecoveredParams {
    SinusoidParams params;  // freq carries the reference frequency unchanged
    double dtheta = 0.0;    // frequency correction; caller applies it
    bool vanished = false;  // amplitude at or below the floor
};

/// Inverts weights_from_params:
///   A = sqrt(c^2 + s^2),  phi = arg(c - j s),
///   A' = (d c + s t) / A,  dtheta = (d s - t c) / A^2.
/// When the recovered amplitude does not exceed amp_floor the partial is
/// flagged vanished and all outputs are zeroed instead of dividing by a
/// denormal amplitude.
RecoveredParams params_from_weights(const WeightQuad& w, double ref_freq,
                                    double amp_floor = 0.0);

/// Evaluates the exact (non-linearised) model at the centred time axis.
/// The window is applied iff windowed is set. This is the ground-truth
/// synthesis route the solvers are checked against.
std::vector<double> synthesize(std::span<const SinusoidParams> partials,
                               const FrameConfig& cfg, bool windowed);

/// Wraps a phase to (-pi, pi].
double wrap_phase(double phase);

}  // namespace sinest
