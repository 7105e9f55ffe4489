#include "sinest/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sinest {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<double> dft_peak_pick(std::span<const double> x,
                                  const FrameConfig& cfg,
                                  std::size_t max_peaks) {
    const std::size_t len = cfg.frame_len;
    if (x.size() != len)
        throw std::invalid_argument("dft_peak_pick: frame length mismatch");
    if (max_peaks == 0 || 4 * max_peaks > len)
        throw std::invalid_argument("dft_peak_pick: bad peak count");

    std::vector<double> xw(len);
    for (std::size_t n = 0; n < len; ++n) xw[n] = x[n] * cfg.window[n];

    // Magnitude spectrum at bins 0..L/2 of the L-point DFT.
    const std::size_t nbins = len / 2 + 1;
    std::vector<double> mag(nbins);
    for (std::size_t m = 0; m < nbins; ++m) {
        double re = 0.0, im = 0.0;
        const double step = -2.0 * kPi * static_cast<double>(m) /
                            static_cast<double>(len);
        for (std::size_t n = 0; n < len; ++n) {
            const double ang = step * static_cast<double>(n);
            re += xw[n] * std::cos(ang);
            im += xw[n] * std::sin(ang);
        }
        mag[m] = std::hypot(re, im);
    }

    // Strict interior local maxima; bins 1..L/2-1 keep frequencies in (0, pi).
    std::vector<std::size_t> peaks;
    for (std::size_t m = 1; m + 1 < nbins; ++m)
        if (mag[m] > mag[m - 1] && mag[m] > mag[m + 1]) peaks.push_back(m);
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](std::size_t a, std::size_t b) {
                         if (mag[a] != mag[b]) return mag[a] > mag[b];
                         return a < b;
                     });
    if (peaks.size() > max_peaks) peaks.resize(max_peaks);

    std::vector<double> freqs;
    freqs.reserve(peaks.size());
    for (std::size_t m : peaks)
        freqs.push_back(2.0 * kPi * static_cast<double>(m) /
                        static_cast<double>(len));
    return freqs;
}

Dictionary::Dictionary(const FrameConfig& cfg, std::size_t oversample) {
    if (oversample == 0)
        throw std::invalid_argument("Dictionary: oversample must be positive");
    frame_len_ = cfg.frame_len;
    half_ = frame_len_ / 2;
    oversample_ = oversample;
    resolution_ = kPi / (static_cast<double>(frame_len_) *
                         static_cast<double>(oversample));
    grid_size_ = frame_len_ * oversample - 1;  // interior of (0, pi)

    cos_atoms_.resize(grid_size_ * half_);
    sin_atoms_.resize(grid_size_ * half_);
    cos_norms_.resize(grid_size_);
    sin_norms_.resize(grid_size_);
    for (std::size_t g = 0; g < grid_size_; ++g) {
        const double theta = grid_freq(g);
        double* ca = cos_atoms_.data() + g * half_;
        double* sa = sin_atoms_.data() + g * half_;
        double nc = 0.0, ns = 0.0;
        for (std::size_t n = 0; n < half_; ++n) {
            const double arg = theta * cfg.time_index[n];
            ca[n] = cfg.window[n] * std::cos(arg);
            sa[n] = cfg.window[n] * std::sin(arg);
            nc += ca[n] * ca[n];
            ns += sa[n] * sa[n];
        }
        // Full-length norms; mirror halves double the sums.
        cos_norms_[g] = std::sqrt(2.0 * nc);
        sin_norms_[g] = std::sqrt(2.0 * ns);
        const double ic = 1.0 / cos_norms_[g];
        const double is = 1.0 / sin_norms_[g];
        for (std::size_t n = 0; n < half_; ++n) {
            ca[n] *= ic;
            sa[n] *= is;
        }
    }
}

MpEstimate matching_pursuit(std::span<const double> x, const FrameConfig& cfg,
                            const Dictionary& dict, std::size_t n_atoms) {
    const std::size_t len = cfg.frame_len;
    const std::size_t half = len / 2;
    if (x.size() != len)
        throw std::invalid_argument("matching_pursuit: frame length mismatch");
    if (dict.frame_len() != len)
        throw std::invalid_argument("matching_pursuit: dictionary frame mismatch");
    if (n_atoms == 0)
        throw std::invalid_argument("matching_pursuit: n_atoms must be positive");

    MpEstimate est;
    // Even/odd halves of the windowed residual: ev[n] = r[n] + r[L-1-n],
    // od[n] = r[n] - r[L-1-n]. cos atoms live entirely in ev, sin in od.
    std::vector<double> ev(half), od(half);
    for (std::size_t n = 0; n < half; ++n) {
        const double a = x[n] * cfg.window[n];
        const double b = x[len - 1 - n] * cfg.window[len - 1 - n];
        ev[n] = a + b;
        od[n] = a - b;
    }
    est.flops += 2 * len;
    auto resid_energy = [&] {
        double e = 0.0;
        for (double v : ev) e += v * v;
        for (double v : od) e += v * v;
        return 0.5 * e;
    };
    est.residual_energy.push_back(resid_energy());

    for (std::size_t round = 0; round < n_atoms; ++round) {
        std::size_t best = 0;
        double best_gain = -1.0, best_bc = 0.0, best_bs = 0.0;
        for (std::size_t g = 0; g < dict.grid_size(); ++g) {
            const double* ca = dict.cos_half(g);
            const double* sa = dict.sin_half(g);
            double bc = 0.0, bs = 0.0;
            for (std::size_t n = 0; n < half; ++n) {
                bc += ca[n] * ev[n];
                bs += sa[n] * od[n];
            }
            // Energy removed by projecting on the orthonormal pair.
            const double gain = bc * bc + bs * bs;
            if (gain > best_gain) {
                best_gain = gain;
                best = g;
                best_bc = bc;
                best_bs = bs;
            }
        }
        est.flops += 2 * len * dict.grid_size();  // two half-length dots per atom

        const double* ca = dict.cos_half(best);
        const double* sa = dict.sin_half(best);
        const double gc = 2.0 * best_bc;
        const double gs = 2.0 * best_bs;
        for (std::size_t n = 0; n < half; ++n) {
            ev[n] -= gc * ca[n];
            od[n] -= gs * sa[n];
        }
        est.flops += 2 * len;

        // Unwindowed sinusoid A cos(theta t + phi) whose windowed form is
        // the removed projection.
        const double coef_cos = best_bc / dict.cos_norm(best);
        const double coef_sin = best_bs / dict.sin_norm(best);
        SinusoidParams p;
        p.amp = std::hypot(coef_cos, coef_sin);
        p.freq = dict.grid_freq(best);
        p.phase = wrap_phase(std::atan2(-coef_sin, coef_cos));
        est.atoms.push_back(p);
        est.residual_energy.push_back(resid_energy());
    }
    return est;
}

}  // namespace sinest
