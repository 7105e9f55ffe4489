// Command-line front end: chirp synthesis, per-frame sinusoid estimation
// of raw signals, SNR benchmark sweeps and convergence curves. Signals are
// headerless little-endian float64; reports are CSV. Diagnostics go to
// stderr; the exit code is zero only when every output was fully written.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "sinest/baselines.hpp"
#include "sinest/experiments.hpp"
#include "sinest/io.hpp"
#include "sinest/solvers.hpp"

namespace {

using namespace sinest;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double parse_snr(const std::string& s) {
    if (s == "inf" || s == "clean")
        return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

Method parse_method(const std::string& s) {
    if (s == "linear") return Method::linear;
    if (s == "nonlinear") return Method::nonlinear;
    if (s == "mp") return Method::mp;
    throw CLI::ValidationError("--method", "expected linear, nonlinear or mp");
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text_file(path, text);
}

struct SynthArgs {
    std::string out, truth_out;
    std::size_t duration = 48000, frame_len = 256, hop = 192;
    std::string snr = "clean";
    std::uint64_t seed = 1;
};

int cmd_synth(const SynthArgs& args) {
    ChirpSpec spec = default_chirp_spec();
    spec.duration = args.duration;
    spec.frame_len = args.frame_len;
    spec.hop = args.hop;
    spec.phase_seed = args.seed;
    const ChirpSignal sig = gen_chirps(spec);
    const std::vector<double> noisy =
        add_noise(sig.samples, parse_snr(args.snr), args.seed + 0x9e3779b9);
    write_raw_f64(args.out, noisy);
    if (!args.truth_out.empty()) {
        std::string csv = "frame_index,partial,freq,amp\n";
        for (std::size_t f = 0; f < sig.frames.size(); ++f)
            for (std::size_t k = 0; k < sig.frames[f].partials.size(); ++k) {
                const SinusoidParams& p = sig.frames[f].partials[k];
                csv += std::to_string(f) + "," + std::to_string(k) + "," +
                       fmt(p.freq) + "," + fmt(p.amp) + "\n";
            }
        write_text_file(args.truth_out, csv);
    }
    return 0;
}

struct EstimateArgs {
    std::string in, out;
    std::string method = "nonlinear";
    std::size_t partials = 20, frame_len = 256, hop = 192;
    int iters = 0;  // 0: per-method default (2 linear, 3 nonlinear)
    double alpha = 1.0;
};

int cmd_estimate(const EstimateArgs& args) {
    const Method method = parse_method(args.method);
    const std::vector<double> signal = read_raw_f64(args.in);
    if (signal.size() < args.frame_len)
        throw std::runtime_error(
            args.in + ": input has " + std::to_string(signal.size()) +
            " samples, shorter than one frame of " +
            std::to_string(args.frame_len));
    const FrameConfig cfg = make_frame_config(args.frame_len);
    const int iters = args.iters > 0                ? args.iters
                      : method == Method::linear    ? 2
                                                    : 3;
    std::unique_ptr<Dictionary> dict;
    if (method == Method::mp) dict = std::make_unique<Dictionary>(cfg, 32);

    std::string csv =
        "frame_index,partial,amp,freq,phase,amp_slope,residual_rms,iters\n";
    const std::size_t nframes = (signal.size() - args.frame_len) / args.hop + 1;
    for (std::size_t f = 0; f < nframes; ++f) {
        std::span<const double> frame(signal.data() + f * args.hop,
                                      args.frame_len);
        std::vector<SinusoidParams> params;
        double residual_rms = 0.0;
        int iters_used = iters;
        if (method == Method::mp) {
            const MpEstimate mp =
                matching_pursuit(frame, cfg, *dict, args.partials);
            params = mp.atoms;
            residual_rms = std::sqrt(mp.residual_energy.back() /
                                     static_cast<double>(args.frame_len));
            iters_used = static_cast<int>(args.partials);
        } else {
            const std::vector<double> init =
                dft_peak_pick(frame, cfg, args.partials);
            if (init.empty()) continue;  // silent frame, nothing to track
            if (method == Method::linear) {
                LinearEstimate est = estimate_linear(frame, init, cfg, iters);
                params = std::move(est.params);
                residual_rms =
                    std::sqrt(est.trace.residual_energy.back() /
                              static_cast<double>(args.frame_len));
            } else {
                NonlinearResult est =
                    estimate_nonlinear(frame, init, cfg, iters, args.alpha);
                params = std::move(est.params);
                residual_rms =
                    std::sqrt(est.trace.residual_energy.back() /
                              static_cast<double>(args.frame_len));
            }
        }
        for (std::size_t k = 0; k < params.size(); ++k) {
            csv += std::to_string(f) + "," + std::to_string(k) + "," +
                   fmt(params[k].amp) + "," + fmt(params[k].freq) + "," +
                   fmt(params[k].phase) + "," + fmt(params[k].amp_slope) +
                   "," + fmt(residual_rms) + "," + std::to_string(iters_used) +
                   "\n";
        }
    }
    emit(args.out, csv);
    return 0;
}

struct BenchArgs {
    std::string out;
    std::vector<std::string> snr_list{"-10", "0", "10", "20", "30",
                                      "40",  "50", "60", "clean"};
    std::vector<std::string> methods{"linear", "nonlinear", "mp"};
    std::size_t duration = 48000, frame_len = 256, hop = 192, partials = 20;
    int linear_iters = 2, nonlinear_iters = 3;
    double alpha = 1.0;
    std::uint64_t seed = 1;
    bool flops = false;
};

int cmd_bench(const BenchArgs& args) {
    if (args.snr_list.empty())
        throw CLI::ValidationError("--snr", "empty SNR list");
    std::vector<double> snrs;
    for (const std::string& s : args.snr_list) snrs.push_back(parse_snr(s));
    std::vector<Method> methods;
    for (const std::string& s : args.methods)
        methods.push_back(parse_method(s));

    ChirpSpec spec = default_chirp_spec();
    spec.duration = args.duration;
    spec.frame_len = args.frame_len;
    spec.hop = args.hop;
    spec.phase_seed = args.seed;
    SweepOptions opts;
    opts.linear_iters = args.linear_iters;
    opts.nonlinear_iters = args.nonlinear_iters;
    opts.alpha = args.alpha;

    const ExperimentReport report =
        run_snr_sweep(spec, snrs, methods, args.seed, opts);
    emit(args.out, report_csv(report, args.flops, args.frame_len, args.hop,
                              args.partials, opts.mp_oversample));
    return 0;
}

struct ConvergenceArgs {
    std::string scenario = "single";
    std::string out;
    std::vector<double> alphas{0.25, 0.5, 0.75, 1.0};
    std::vector<std::string> methods{"linear", "nonlinear"};
    int iters = 10;
    std::size_t duration = 48000, frame_len = 256, hop = 192;
    std::uint64_t seed = 1;
};

int cmd_convergence(const ConvergenceArgs& args) {
    std::vector<ConvergenceCurve> curves;
    if (args.scenario == "single") {
        if (args.alphas.empty())
            throw CLI::ValidationError("--alpha", "empty alpha list");
        curves = convergence_single_tone(args.alphas, args.iters);
    } else if (args.scenario == "chirps") {
        ChirpSpec spec = default_chirp_spec();
        spec.duration = args.duration;
        spec.frame_len = args.frame_len;
        spec.hop = args.hop;
        spec.phase_seed = args.seed;
        std::vector<Method> methods;
        for (const std::string& s : args.methods)
            methods.push_back(parse_method(s));
        curves = convergence_chirps(spec, methods, args.iters);
    } else {
        throw CLI::ValidationError("--scenario", "expected single or chirps");
    }
    emit(args.out, curves_csv(curves));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sinusoidal parameter estimation toolkit"};
    app.require_subcommand(1);

    SynthArgs synth;
    CLI::App* s = app.add_subcommand("synth", "generate the chirp test signal");
    s->add_option("--out", synth.out, "output signal (raw little-endian f64)")
        ->required();
    s->add_option("--truth-out", synth.truth_out,
                  "per-frame ground-truth CSV");
    s->add_option("--duration", synth.duration, "signal length in samples");
    s->add_option("--frame-len", synth.frame_len, "analysis frame length");
    s->add_option("--hop", synth.hop, "frame hop in samples")
        ->check(CLI::PositiveNumber);
    s->add_option("--snr", synth.snr, "SNR in dB, or 'clean'");
    s->add_option("--seed", synth.seed, "random seed");

    EstimateArgs est;
    CLI::App* e = app.add_subcommand("estimate",
                                     "track sinusoids in a raw f64 signal");
    e->add_option("--in", est.in, "input signal")->required();
    e->add_option("--out", est.out, "parameter track CSV (default stdout)");
    e->add_option("--method", est.method, "linear, nonlinear or mp");
    e->add_option("--partials", est.partials, "partials per frame")
        ->check(CLI::PositiveNumber);
    e->add_option("--iters", est.iters, "solver iterations")
        ->check(CLI::PositiveNumber);
    e->add_option("--alpha", est.alpha, "frequency update scale");
    e->add_option("--frame-len", est.frame_len, "analysis frame length");
    e->add_option("--hop", est.hop, "frame hop in samples")
        ->check(CLI::PositiveNumber);

    BenchArgs bench;
    CLI::App* b = app.add_subcommand("bench", "SNR sweep over the chirp bank");
    b->add_option("--out", bench.out, "report CSV (default stdout)");
    b->add_option("--snr", bench.snr_list, "SNR grid in dB ('clean' allowed)")
        ->delimiter(',');
    b->add_option("--method", bench.methods, "methods to run")
        ->delimiter(',');
    b->add_option("--duration", bench.duration, "signal length in samples");
    b->add_option("--frame-len", bench.frame_len, "analysis frame length");
    b->add_option("--hop", bench.hop, "frame hop in samples")
        ->check(CLI::PositiveNumber);
    b->add_option("--partials", bench.partials,
                  "partial count for the flop-model columns");
    b->add_option("--iters", bench.linear_iters, "linear-method iterations")
        ->check(CLI::PositiveNumber);
    b->add_option("--nonlinear-iters", bench.nonlinear_iters,
                  "non-linear-method iterations");
    b->add_option("--alpha", bench.alpha, "frequency update scale");
    b->add_option("--seed", bench.seed, "random seed");
    b->add_flag("--flops", bench.flops,
                "append closed-form operation-count columns");

    ConvergenceArgs conv;
    CLI::App* c = app.add_subcommand("convergence",
                                     "iteration curves (CSV for plotting)");
    c->add_option("--scenario", conv.scenario, "single or chirps");
    c->add_option("--out", conv.out, "curve CSV (default stdout)");
    c->add_option("--alpha", conv.alphas, "alpha list (single-tone scenario)")
        ->delimiter(',');
    c->add_option("--method", conv.methods, "methods (chirps scenario)")
        ->delimiter(',');
    c->add_option("--iters", conv.iters, "maximum iterations")
        ->check(CLI::PositiveNumber);
    c->add_option("--duration", conv.duration, "signal length in samples");
    c->add_option("--frame-len", conv.frame_len, "analysis frame length");
    c->add_option("--hop", conv.hop, "frame hop in samples")
        ->check(CLI::PositiveNumber);
    c->add_option("--seed", conv.seed, "random seed");

    try {
        app.parse(argc, argv);
        if (s->parsed()) return cmd_synth(synth);
        if (e->parsed()) return cmd_estimate(est);
        if (b->parsed()) return cmd_bench(bench);
        if (c->parsed()) return cmd_convergence(conv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
