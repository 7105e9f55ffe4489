#pragma once

#include <cstdint>
#include <string>

#include "sinest/baselines.hpp"
#include "sinest/model.hpp"

namespace sinest {

/// A bank of linearly swept cosines with fixed relative levels, plus the
/// frame layout used to analyse them.
struct ChirpSpec {
    std::vector<double> start_freqs;  // rad/sample, in (0, pi)
    std::vector<double> end_freqs;    // rad/sample, in (0, pi)
    std::vector<double> amps_db;      // level relative to full scale
    std::size_t duration = 48000;     // samples
    std::size_t frame_len = 256;
    std::size_t hop = 192;
    std::uint64_t phase_seed = 1;     // start phases drawn per chirp
};

/// The five-chirp benchmark signal: sweeps 0.05..0.25 -> 2.0..2.8
/// rad/sample at 0, -3, -6, -9, -12 dB.
ChirpSpec default_chirp_spec();

/// Ground truth for one analysis frame.
struct FrameTruth {
    std::size_t start = 0;                 // first sample index
    std::vector<SinusoidParams> partials;  // per chirp, at the frame centre
    std::vector<double> clean_windowed;    // windowed noise-free slice
};

struct ChirpSignal {
    std::vector<double> samples;
    std::vector<FrameTruth> frames;
};

/// Synthesises the chirp bank by exact cumulative phase
/// (psi(t) = phi0 + s t + (e - s) t^2 / (2 D), instantaneous frequency
/// s + (e - s) t / D) and records per-frame truth at the frame centres.
ChirpSignal gen_chirps(const ChirpSpec& spec);

/// Adds white Gaussian noise scaled so the realised energy ratio matches
/// snr_db exactly. An infinite snr_db returns the input unchanged.
/// Deterministic for a given seed.
std::vector<double> add_noise(std::span<const double> x, double snr_db,
                              std::uint64_t seed);

/// Per-frame scoring record. Estimated partials are greedily matched to
/// truth by frequency distance; any pair farther apart than one DFT bin
/// (2*pi/L) is dropped from the RMS sums and counted as an outlier, as is
/// any unmatched partial on either side. The reconstruction error compares
/// the resynthesised windowed frame against the clean windowed truth.
struct FrameScore {
    std::size_t matched = 0;
    std::size_t outliers = 0;
    double freq_sq_sum = 0.0;
    double amp_sq_sum = 0.0;
    double recon_sq_sum = 0.0;
};

FrameScore score_frame(std::span<const SinusoidParams> estimates,
                       const FrameTruth& truth, const FrameConfig& cfg);

enum class Method { linear, nonlinear, mp };

std::string method_name(Method m);

/// Closed-form operation counts per frame:
///   linear      (8M + 5) L N
///   non-linear  (17M - 4) L N
///   mp_slow     4 L N^2 P
std::uint64_t flop_model(Method m, std::uint64_t frame_len, std::uint64_t n,
                         std::uint64_t iters, std::uint64_t oversample);

struct SweepOptions {
    int linear_iters = 2;
    int nonlinear_iters = 3;
    double alpha = 1.0;
    std::size_t mp_oversample = 32;
};

struct ReportRow {
    double snr_db = 0.0;
    Method method = Method::linear;
    double freq_rms = 0.0;
    double amp_rms = 0.0;
    double recon_rms = 0.0;
    double outlier_rate = 0.0;
    double flops_per_frame = 0.0;  // instrumented mean
    int iterations = 0;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
};

/// Runs every method over every SNR point. Per SNR the same noisy signal
/// is shared across methods; the iterative estimators all receive the
/// same initial frequencies, the true frame-centre frequencies snapped to
/// the DFT-resolution grid (multiples of pi/L). Deterministic under
/// (spec, seed); noise streams derive from (seed, snr index).
ExperimentReport run_snr_sweep(const ChirpSpec& spec,
                               std::span<const double> snr_grid,
                               std::span<const Method> methods,
                               std::uint64_t seed,
                               const SweepOptions& opts = {});

struct ConvergenceCurve {
    std::string label;
    std::vector<double> values;  // index i = after iteration i (0 = start)
};

/// Frequency-error convergence of the non-linear estimator on a single
/// amplitude-modulated tone at 0.1*pi with the initial estimate at
/// 0.095*pi, one curve per step scale alpha.
std::vector<ConvergenceCurve> convergence_single_tone(
    std::span<const double> alphas, int max_iter);

/// Residual RMS as a function of the iteration count on the clean chirp
/// bank, one curve per method (linear and/or nonlinear).
std::vector<ConvergenceCurve> convergence_chirps(const ChirpSpec& spec,
                                                 std::span<const Method> methods,
                                                 int max_iter);

/// Snaps a frequency to the nearest point of the DFT-resolution grid
/// (multiples of pi/L), clamped inside (0, pi).
double snap_to_resolution_grid(double freq, std::size_t frame_len);

/// CSV renderings. Floats use 9 significant digits. with_model_cols
/// appends the closed-form per-frame count and its Mflops at the frame
/// rate implied by (sample_rate, hop) for each row's method, evaluated at
/// model_partials partials.
std::string report_csv(const ExperimentReport& report, bool with_model_cols,
                       std::size_t frame_len, std::size_t hop,
                       std::size_t model_partials, std::size_t mp_oversample,
                       double sample_rate = 48000.0);

std::string curves_csv(std::span<const ConvergenceCurve> curves);

}  // namespace sinest
