#include "sinest/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sinest/solvers.hpp"

namespace sinest {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

ChirpSpec default_chirp_spec() {
    ChirpSpec spec;
    spec.start_freqs = {0.05, 0.10, 0.15, 0.20, 0.25};
    spec.end_freqs = {2.0, 2.2, 2.4, 2.6, 2.8};
    spec.amps_db = {0.0, -3.0, -6.0, -9.0, -12.0};
    return spec;
}

ChirpSignal gen_chirps(const ChirpSpec& spec) {
    const std::size_t nchirps = spec.start_freqs.size();
    if (nchirps == 0 || spec.end_freqs.size() != nchirps ||
        spec.amps_db.size() != nchirps)
        throw std::invalid_argument("gen_chirps: chirp vectors must match");
    for (std::size_t k = 0; k < nchirps; ++k) {
        if (!(spec.start_freqs[k] > 0.0 && spec.start_freqs[k] < kPi) ||
            !(spec.end_freqs[k] > 0.0 && spec.end_freqs[k] < kPi))
            throw std::invalid_argument("gen_chirps: frequencies outside (0, pi)");
    }
    if (spec.duration < spec.frame_len)
        throw std::invalid_argument("gen_chirps: duration shorter than a frame");
    if (spec.hop == 0) throw std::invalid_argument("gen_chirps: hop must be >= 1");

    std::mt19937_64 rng(spec.phase_seed);
    std::uniform_real_distribution<double> phase_dist(-kPi, kPi);
    std::vector<double> phi0(nchirps), amp(nchirps);
    for (std::size_t k = 0; k < nchirps; ++k) {
        phi0[k] = wrap_phase(phase_dist(rng));
        amp[k] = std::pow(10.0, spec.amps_db[k] / 20.0);
    }

    const double dur = static_cast<double>(spec.duration);
    ChirpSignal sig;
    sig.samples.assign(spec.duration, 0.0);
    for (std::size_t k = 0; k < nchirps; ++k) {
        const double s = spec.start_freqs[k];
        const double rate = (spec.end_freqs[k] - s) / dur;
        for (std::size_t n = 0; n < spec.duration; ++n) {
            const double tn = static_cast<double>(n);
            const double psi = phi0[k] + s * tn + 0.5 * rate * tn * tn;
            sig.samples[n] += amp[k] * std::cos(psi);
        }
    }

    const FrameConfig cfg = make_frame_config(spec.frame_len);
    const std::size_t nframes =
        (spec.duration - spec.frame_len) / spec.hop + 1;
    sig.frames.resize(nframes);
    for (std::size_t f = 0; f < nframes; ++f) {
        FrameTruth& truth = sig.frames[f];
        truth.start = f * spec.hop;
        const double centre = static_cast<double>(truth.start) +
                              (static_cast<double>(spec.frame_len) - 1.0) / 2.0;
        truth.partials.resize(nchirps);
        for (std::size_t k = 0; k < nchirps; ++k) {
            const double s = spec.start_freqs[k];
            const double rate = (spec.end_freqs[k] - s) / dur;
            SinusoidParams& p = truth.partials[k];
            p.amp = amp[k];
            p.freq = s + rate * centre;
            p.phase = wrap_phase(phi0[k] + s * centre + 0.5 * rate * centre * centre);
            p.amp_slope = 0.0;
        }
        truth.clean_windowed.resize(spec.frame_len);
        for (std::size_t n = 0; n < spec.frame_len; ++n)
            truth.clean_windowed[n] =
                sig.samples[truth.start + n] * cfg.window[n];
    }
    return sig;
}

std::vector<double> add_noise(std::span<const double> x, double snr_db,
                              std::uint64_t seed) {
    std::vector<double> out(x.begin(), x.end());
    if (std::isinf(snr_db) && snr_db > 0.0) return out;

    double sig_energy = 0.0;
    for (double v : x) sig_energy += v * v;
    if (!(sig_energy > 0.0))
        throw std::invalid_argument("add_noise: zero-energy signal");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> noise(x.size());
    double noise_energy = 0.0;
    for (double& v : noise) {
        v = gauss(rng);
        noise_energy += v * v;
    }
    // Scale the realised noise so the energy ratio hits snr_db exactly.
    const double target = sig_energy / std::pow(10.0, snr_db / 10.0);
    const double scale = std::sqrt(target / noise_energy);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += scale * noise[n];
    return out;
}

FrameScore score_frame(std::span<const SinusoidParams> estimates,
                       const FrameTruth& truth, const FrameConfig& cfg) {
    FrameScore score;
    const double bin = 2.0 * kPi / static_cast<double>(cfg.frame_len);

    struct Pair {
        double dist;
        std::size_t est, tru;
    };
    std::vector<Pair> pairs;
    pairs.reserve(estimates.size() * truth.partials.size());
    for (std::size_t i = 0; i < estimates.size(); ++i)
        for (std::size_t j = 0; j < truth.partials.size(); ++j)
            pairs.push_back(
                {std::abs(estimates[i].freq - truth.partials[j].freq), i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.est != b.est) return a.est < b.est;
        return a.tru < b.tru;
    });

    std::vector<bool> est_used(estimates.size(), false);
    std::vector<bool> tru_used(truth.partials.size(), false);
    std::size_t assigned = 0;
    for (const Pair& p : pairs) {
        if (est_used[p.est] || tru_used[p.tru]) continue;
        est_used[p.est] = true;
        tru_used[p.tru] = true;
        ++assigned;
        if (p.dist > bin) {
            ++score.outliers;
        } else {
            ++score.matched;
            score.freq_sq_sum += p.dist * p.dist;
            const double da =
                estimates[p.est].amp - truth.partials[p.tru].amp;
            score.amp_sq_sum += da * da;
        }
    }
    score.outliers += (estimates.size() - assigned) +
                      (truth.partials.size() - assigned);

    if (!estimates.empty()) {
        const std::vector<double> recon = synthesize(estimates, cfg, true);
        for (std::size_t n = 0; n < cfg.frame_len; ++n) {
            const double d = recon[n] - truth.clean_windowed[n];
            score.recon_sq_sum += d * d;
        }
    } else {
        for (double v : truth.clean_windowed) score.recon_sq_sum += v * v;
    }
    return score;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::linear: return "linear";
        case Method::nonlinear: return "nonlinear";
        case Method::mp: return "mp";
    }
    return "?";
}

std::uint64_t flop_model(Method m, std::uint64_t frame_len, std::uint64_t n,
                         std::uint64_t iters, std::uint64_t oversample) {
    if (frame_len == 0 || n == 0)
        throw std::invalid_argument("flop_model: arguments must be positive");
    switch (m) {
        case Method::linear:
            if (iters == 0) throw std::invalid_argument("flop_model: M == 0");
            return (8 * iters + 5) * frame_len * n;
        case Method::nonlinear:
            if (iters == 0) throw std::invalid_argument("flop_model: M == 0");
            return (17 * iters - 4) * frame_len * n;
        case Method::mp:
            if (oversample == 0)
                throw std::invalid_argument("flop_model: P == 0");
            return 4 * frame_len * n * n * oversample;
    }
    throw std::invalid_argument("flop_model: unknown method");
}

double snap_to_resolution_grid(double freq, std::size_t frame_len) {
    const double step = kPi / static_cast<double>(frame_len);
    long idx = std::lround(freq / step);
    idx = std::clamp(idx, 1L, static_cast<long>(frame_len) - 1);
    return step * static_cast<double>(idx);
}

namespace {

std::vector<double> snapped_inits(const FrameTruth& truth,
                                  std::size_t frame_len) {
    std::vector<double> init(truth.partials.size());
    for (std::size_t k = 0; k < init.size(); ++k)
        init[k] = snap_to_resolution_grid(truth.partials[k].freq, frame_len);
    // Near-coincident truths can snap to the same grid point; nudge
    // upward so the basis stays full rank.
    std::sort(init.begin(), init.end());
    const double step = kPi / static_cast<double>(frame_len);
    for (std::size_t k = 1; k < init.size(); ++k)
        if (init[k] - init[k - 1] < 0.5 * step) init[k] = init[k - 1] + step;
    return init;
}

std::uint64_t derive_seed(std::uint64_t seed, std::size_t snr_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(snr_index + 1)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace

ExperimentReport run_snr_sweep(const ChirpSpec& spec,
                               std::span<const double> snr_grid,
                               std::span<const Method> methods,
                               std::uint64_t seed, const SweepOptions& opts) {
    if (methods.empty())
        throw std::invalid_argument("run_snr_sweep: no methods given");
    if (snr_grid.empty())
        throw std::invalid_argument("run_snr_sweep: empty SNR grid");

    const ChirpSignal sig = gen_chirps(spec);
    const FrameConfig cfg = make_frame_config(spec.frame_len);
    const bool wants_mp =
        std::find(methods.begin(), methods.end(), Method::mp) != methods.end();
    std::unique_ptr<Dictionary> dict;
    if (wants_mp)
        dict = std::make_unique<Dictionary>(cfg, opts.mp_oversample);

    ExperimentReport report;
    for (std::size_t si = 0; si < snr_grid.size(); ++si) {
        const std::vector<double> noisy =
            add_noise(sig.samples, snr_grid[si], derive_seed(seed, si));
        for (Method m : methods) {
            FrameScore total;
            std::uint64_t flops = 0;
            for (const FrameTruth& truth : sig.frames) {
                std::span<const double> frame(noisy.data() + truth.start,
                                              spec.frame_len);
                std::vector<SinusoidParams> est;
                if (m == Method::linear) {
                    const auto init = snapped_inits(truth, spec.frame_len);
                    LinearEstimate le =
                        estimate_linear(frame, init, cfg, opts.linear_iters);
                    est = std::move(le.params);
                    flops += le.trace.flops;
                } else if (m == Method::nonlinear) {
                    const auto init = snapped_inits(truth, spec.frame_len);
                    NonlinearResult nr = estimate_nonlinear(
                        frame, init, cfg, opts.nonlinear_iters, opts.alpha);
                    est = std::move(nr.params);
                    flops += nr.trace.flops;
                } else {
                    MpEstimate mp = matching_pursuit(frame, cfg, *dict,
                                                     truth.partials.size());
                    est = std::move(mp.atoms);
                    flops += mp.flops;
                }
                const FrameScore fs = score_frame(est, truth, cfg);
                total.matched += fs.matched;
                total.outliers += fs.outliers;
                total.freq_sq_sum += fs.freq_sq_sum;
                total.amp_sq_sum += fs.amp_sq_sum;
                total.recon_sq_sum += fs.recon_sq_sum;
            }
            ReportRow row;
            row.snr_db = snr_grid[si];
            row.method = m;
            const double nmatched = std::max<double>(1.0, total.matched);
            row.freq_rms = std::sqrt(total.freq_sq_sum / nmatched);
            row.amp_rms = std::sqrt(total.amp_sq_sum / nmatched);
            row.recon_rms = std::sqrt(
                total.recon_sq_sum /
                (static_cast<double>(sig.frames.size()) *
                 static_cast<double>(spec.frame_len)));
            const double denom =
                std::max<double>(1.0, total.matched + total.outliers);
            row.outlier_rate = static_cast<double>(total.outliers) / denom;
            row.flops_per_frame =
                static_cast<double>(flops) /
                static_cast<double>(sig.frames.size());
            row.iterations = m == Method::linear      ? opts.linear_iters
                             : m == Method::nonlinear ? opts.nonlinear_iters
                                                      : static_cast<int>(
                                                            sig.frames.empty()
                                                                ? 0
                                                                : sig.frames[0]
                                                                      .partials
                                                                      .size());
            report.rows.push_back(row);
        }
    }
    return report;
}

std::vector<ConvergenceCurve> convergence_single_tone(
    std::span<const double> alphas, int max_iter) {
    if (max_iter < 1)
        throw std::invalid_argument("convergence_single_tone: max_iter < 1");
    const FrameConfig cfg = make_frame_config(256);
    const double true_freq = 0.1 * kPi;
    const SinusoidParams tone{1.0, true_freq, 0.3, 2e-4};
    const std::vector<double> x = synthesize({&tone, 1}, cfg, false);
    const std::vector<double> init{0.095 * kPi};

    std::vector<ConvergenceCurve> curves;
    for (double alpha : alphas) {
        NonlinearResult res =
            estimate_nonlinear(x, init, cfg, max_iter, alpha);
        ConvergenceCurve curve;
        curve.label = "alpha=" + fmt_double(alpha);
        for (const auto& freqs : res.freq_history)
            curve.values.push_back(std::abs(freqs[0] - true_freq));
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::vector<ConvergenceCurve> convergence_chirps(const ChirpSpec& spec,
                                                 std::span<const Method> methods,
                                                 int max_iter) {
    if (max_iter < 1)
        throw std::invalid_argument("convergence_chirps: max_iter < 1");
    const ChirpSignal sig = gen_chirps(spec);
    const FrameConfig cfg = make_frame_config(spec.frame_len);

    std::vector<ConvergenceCurve> curves;
    for (Method m : methods) {
        if (m == Method::mp)
            throw std::invalid_argument(
                "convergence_chirps: iteration curves need an iterative method");
        std::vector<double> energy(static_cast<std::size_t>(max_iter) + 1, 0.0);
        for (const FrameTruth& truth : sig.frames) {
            std::span<const double> frame(sig.samples.data() + truth.start,
                                          spec.frame_len);
            const auto init = snapped_inits(truth, spec.frame_len);
            const std::vector<double>* resid = nullptr;
            LinearEstimate le;
            NonlinearResult nr;
            if (m == Method::linear) {
                le = estimate_linear(frame, init, cfg, max_iter);
                resid = &le.trace.residual_energy;
            } else {
                nr = estimate_nonlinear(frame, init, cfg, max_iter, 1.0);
                resid = &nr.trace.residual_energy;
            }
            for (std::size_t i = 0; i < energy.size(); ++i)
                energy[i] += (*resid)[i];
        }
        ConvergenceCurve curve;
        curve.label = method_name(m);
        const double denom = static_cast<double>(sig.frames.size()) *
                             static_cast<double>(spec.frame_len);
        for (double e : energy) curve.values.push_back(std::sqrt(e / denom));
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::string report_csv(const ExperimentReport& report, bool with_model_cols,
                       std::size_t frame_len, std::size_t hop,
                       std::size_t model_partials, std::size_t mp_oversample,
                       double sample_rate) {
    std::string out =
        "snr_db,method,freq_rms,amp_rms,recon_rms,outlier_rate,flops_per_frame";
    if (with_model_cols) out += ",flops_model_per_frame,mflops_model_typical";
    out += "\n";
    for (const ReportRow& row : report.rows) {
        out += fmt_double(row.snr_db);
        out += ",";
        out += method_name(row.method);
        out += ",";
        out += fmt_double(row.freq_rms);
        out += ",";
        out += fmt_double(row.amp_rms);
        out += ",";
        out += fmt_double(row.recon_rms);
        out += ",";
        out += fmt_double(row.outlier_rate);
        out += ",";
        out += fmt_double(row.flops_per_frame);
        if (with_model_cols) {
            const std::uint64_t model = flop_model(
                row.method, frame_len, model_partials,
                static_cast<std::uint64_t>(std::max(row.iterations, 1)),
                mp_oversample);
            const double frames_per_s =
                sample_rate / static_cast<double>(hop);
            out += ",";
            out += fmt_double(static_cast<double>(model));
            out += ",";
            out += fmt_double(static_cast<double>(model) * frames_per_s / 1e6);
        }
        out += "\n";
    }
    return out;
}

std::string curves_csv(std::span<const ConvergenceCurve> curves) {
    std::string out = "iteration,label,value\n";
    for (const ConvergenceCurve& c : curves) {
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            out += std::to_string(i);
            out += ",";
            out += c.label;
            out += ",";
            out += fmt_double(c.values[i]);
            out += "\n";
        }
    }
    return out;
}

}  // namespace sinest
