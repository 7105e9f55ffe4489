#include "sinest/solvers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sinest {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFreqClampEps = 1e-4;

LinWeights flat_to_weights(std::span<const double> w, std::size_t num) {
    LinWeights out;
    out.c.assign(w.begin(), w.begin() + num);
    out.s.assign(w.begin() + num, w.begin() + 2 * num);
    out.d.assign(w.begin() + 2 * num, w.begin() + 3 * num);
    out.t.assign(w.begin() + 3 * num, w.begin() + 4 * num);
    return out;
}

double energy(std::span<const double> v) {
    double e = 0.0;
    for (double x : v) e += x * x;
    return e;
}

// Half-length even/odd components of a frame: ev[n] = x[n] + x[L-1-n],
// od[n] = x[n] - x[L-1-n]. The full energy is (|ev|^2 + |od|^2) / 2.
void decompose(std::span<const double> x, std::vector<double>& ev,
               std::vector<double>& od) {
    const std::size_t half = x.size() / 2;
    ev.resize(half);
    od.resize(half);
    for (std::size_t n = 0; n < half; ++n) {
        const double a = x[n];
        const double b = x[x.size() - 1 - n];
        ev[n] = a + b;
        od[n] = a - b;
    }
}

double half_energy(const std::vector<double>& ev, const std::vector<double>& od) {
    double e = 0.0;
    for (double x : ev) e += x * x;
    for (double x : od) e += x * x;
    return 0.5 * e;
}

}  // namespace

double amp_floor_for(std::span<const double> xh) {
    return 1e-12 * std::sqrt(energy(xh) / static_cast<double>(xh.size()));
}

LinWeights solve_direct(const BasisSet& basis, std::span<const double> xh) {
    if (xh.size() != basis.frame_len)
        throw std::invalid_argument("solve_direct: frame length mismatch");
    const auto cols = static_cast<Eigen::Index>(basis.n_columns());
    const auto len = static_cast<Eigen::Index>(basis.frame_len);
    Eigen::Map<const Eigen::MatrixXd> a(basis.columns.data(), len, cols);
    Eigen::Map<const Eigen::VectorXd> x(xh.data(), len);
    Eigen::MatrixXd gram = a.transpose() * a;
    Eigen::VectorXd rhs = a.transpose() * x;
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("solve_direct: normal equations not SPD");
    Eigen::VectorXd w = llt.solve(rhs);
    return flat_to_weights({w.data(), static_cast<std::size_t>(cols)},
                           basis.n_partials);
}

SolveTrace solve_jacobi(const BasisSet& basis, std::span<const double> xh,
                        int iterations) {
    if (iterations < 0)
        throw std::invalid_argument("solve_jacobi: negative iteration count");
    const std::size_t len = basis.frame_len;
    const std::size_t ncols = basis.n_columns();
    SolveTrace trace;

    std::vector<double> w(ncols, 0.0);
    std::vector<double> resid(xh.begin(), xh.end());
    auto refresh_residual = [&] {
        std::copy(xh.begin(), xh.end(), resid.begin());
        for (std::size_t j = 0; j < ncols; ++j) {
            const double* col = basis.columns.data() + j * len;
            const double wj = w[j];
            for (std::size_t n = 0; n < len; ++n) resid[n] -= wj * col[n];
        }
        trace.flops += 2 * len * ncols;
    };

    // Initial estimate w0 = A^T x_h (unit diagonal after normalisation).
    for (std::size_t j = 0; j < ncols; ++j) {
        const double* col = basis.columns.data() + j * len;
        double dot = 0.0;
        for (std::size_t n = 0; n < len; ++n) dot += col[n] * xh[n];
        w[j] = dot;
    }
    trace.flops += 2 * len * ncols;
    refresh_residual();
    trace.residual_energy.push_back(energy(resid));

    int growth_streak = 0;
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t j = 0; j < ncols; ++j) {
            const double* col = basis.columns.data() + j * len;
            double dot = 0.0;
            for (std::size_t n = 0; n < len; ++n) dot += col[n] * resid[n];
            w[j] += dot;
        }
        trace.flops += 2 * len * ncols;
        refresh_residual();
        const double e = energy(resid);
        if (e > trace.residual_energy.back()) {
            if (++growth_streak >= 3) trace.diverged = true;
        } else {
            growth_streak = 0;
        }
        trace.residual_energy.push_back(e);
    }
    trace.iterations = iterations;
    trace.weights = flat_to_weights(w, basis.n_partials);
    return trace;
}

SolveTrace solve_gauss_seidel(const BasisSet& basis, std::span<const double> xh,
                              int iterations, std::vector<double>* step_energy,
                              double stop_dw_rel, double stop_energy_rel) {
    if (iterations < 1)
        throw std::invalid_argument("solve_gauss_seidel: iterations must be >= 1");
    const std::size_t len = basis.frame_len;
    const std::size_t ncols = basis.n_columns();

    SolveTrace trace;
    std::vector<double> w(ncols, 0.0);
    std::vector<double> e(xh.begin(), xh.end());
    trace.residual_energy.push_back(energy(e));

    for (int it = 0; it < iterations; ++it) {
        double max_dw = 0.0;
        for (std::size_t j = 0; j < ncols; ++j) {
            const double* col = basis.columns.data() + j * len;
            double dw = 0.0;
            for (std::size_t n = 0; n < len; ++n) dw += col[n] * e[n];
            for (std::size_t n = 0; n < len; ++n) e[n] -= dw * col[n];
            w[j] += dw;
            max_dw = std::max(max_dw, std::abs(dw));
            if (step_energy) step_energy->push_back(energy(e));
        }
        trace.flops += 4 * len * ncols;
        const double prev = trace.residual_energy.back();
        const double cur = energy(e);
        trace.residual_energy.push_back(cur);
        trace.iterations = it + 1;

        if (stop_dw_rel > 0.0) {
            double w_inf = 1.0;
            for (double v : w) w_inf = std::max(w_inf, std::abs(v));
            if (max_dw <= stop_dw_rel * w_inf) break;
        }
        if (stop_energy_rel > 0.0 && prev - cur < stop_energy_rel * prev) break;
    }
    trace.weights = flat_to_weights(w, basis.n_partials);
    return trace;
}

SolveTrace solve_gauss_seidel_evenodd(const BasisSet& basis,
                                      std::span<const double> xh,
                                      int iterations, double stop_energy_rel) {
    if (iterations < 1)
        throw std::invalid_argument(
            "solve_gauss_seidel_evenodd: iterations must be >= 1");
    if (basis.frame_len % 2 != 0)
        throw std::invalid_argument("solve_gauss_seidel_evenodd: odd frame length");
    const std::size_t len = basis.frame_len;
    const std::size_t half = len / 2;
    const std::size_t ncols = basis.n_columns();

    SolveTrace trace;
    std::vector<double> ev, od;
    decompose(xh, ev, od);
    trace.flops += len;
    trace.residual_energy.push_back(half_energy(ev, od));

    std::vector<double> w(ncols, 0.0);
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t j = 0; j < ncols; ++j) {
            // An even column only sees the even residual component (and
            // likewise odd), and the mirror halves contribute equal terms,
            // so the full-length dot product reduces to the stored half.
            const double* col = basis.columns.data() + j * len;
            double* comp =
                (basis.parity[j] == Parity::even) ? ev.data() : od.data();
            double dw = 0.0;
            for (std::size_t n = 0; n < half; ++n) dw += col[n] * comp[n];
            const double g = 2.0 * dw;
            for (std::size_t n = 0; n < half; ++n) comp[n] -= g * col[n];
            w[j] += dw;
        }
        trace.flops += 2 * len * ncols;
        const double prev = trace.residual_energy.back();
        const double cur = half_energy(ev, od);
        trace.residual_energy.push_back(cur);
        trace.iterations = it + 1;
        if (stop_energy_rel > 0.0 && prev - cur < stop_energy_rel * prev) break;
    }
    trace.weights = flat_to_weights(w, basis.n_partials);
    return trace;
}

LinearEstimate estimate_linear(std::span<const double> x,
                               std::span<const double> init_freqs,
                               const FrameConfig& cfg, int iterations) {
    if (x.size() != cfg.frame_len)
        throw std::invalid_argument("estimate_linear: frame length mismatch");
    const std::size_t num = init_freqs.size();
    const std::size_t len = cfg.frame_len;

    std::vector<double> xh(len);
    for (std::size_t n = 0; n < len; ++n) xh[n] = x[n] * cfg.window[n];

    BasisSet basis = build_basis(init_freqs, cfg);
    SolveTrace trace = solve_gauss_seidel_evenodd(basis, xh, iterations);
    trace.flops += len + basis.build_flops;

    const double floor = amp_floor_for(xh);
    LinearEstimate est;
    est.params.resize(num);
    est.dtheta.resize(num);
    est.vanished.resize(num);
    LinWeights raw;
    raw.c.resize(num);
    raw.s.resize(num);
    raw.d.resize(num);
    raw.t.resize(num);
    for (std::size_t k = 0; k < num; ++k) {
        WeightQuad q;
        q.c = trace.weights.c[k] / basis.col_norms[0 * num + k];
        q.s = trace.weights.s[k] / basis.col_norms[1 * num + k];
        q.d = trace.weights.d[k] / basis.col_norms[2 * num + k];
        q.t = trace.weights.t[k] / basis.col_norms[3 * num + k];
        raw.c[k] = q.c;
        raw.s[k] = q.s;
        raw.d[k] = q.d;
        raw.t[k] = q.t;
        RecoveredParams rec = params_from_weights(q, init_freqs[k], floor);
        est.params[k] = rec.params;
        est.params[k].freq = init_freqs[k] + rec.dtheta;
        est.dtheta[k] = rec.dtheta;
        est.vanished[k] = rec.vanished;
    }
    trace.weights = std::move(raw);
    est.trace = std::move(trace);
    return est;
}

NonlinearResult estimate_nonlinear(std::span<const double> x,
                                   std::span<const double> init_freqs,
                                   const FrameConfig& cfg, int iterations,
                                   double alpha) {
    if (x.size() != cfg.frame_len)
        throw std::invalid_argument("estimate_nonlinear: frame length mismatch");
    if (iterations < 1)
        throw std::invalid_argument("estimate_nonlinear: iterations must be >= 1");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("estimate_nonlinear: alpha outside (0, 1]");
    const std::size_t num = init_freqs.size();
    const std::size_t len = cfg.frame_len;
    const std::size_t half = len / 2;

    NonlinearResult res;
    std::vector<double> xh(len);
    for (std::size_t n = 0; n < len; ++n) xh[n] = x[n] * cfg.window[n];
    res.trace.flops += len;
    const double floor = amp_floor_for(xh);

    std::vector<double> ev_x, od_x;
    decompose(xh, ev_x, od_x);
    res.trace.flops += len;
    res.trace.residual_energy.push_back(half_energy(ev_x, od_x));

    std::vector<double> theta(init_freqs.begin(), init_freqs.end());
    res.params.resize(num);
    res.vanished.assign(num, false);
    res.freq_history.push_back(theta);

    std::vector<double> w(4 * num, 0.0);  // solver space (unit-norm columns)
    std::vector<double> ev(half), od(half);
    BasisSet basis;

    for (int it = 0; it < iterations; ++it) {
        basis = build_basis(theta, cfg);
        res.trace.flops += basis.build_flops;

        // Re-expand the running parameters into linear weights. The
        // frequency correction was already folded into theta, so d and t
        // are rebuilt from the amplitude slope alone.
        for (std::size_t k = 0; k < num; ++k) {
            const WeightQuad q = weights_from_params(res.params[k], 0.0);
            w[0 * num + k] = q.c * basis.col_norms[0 * num + k];
            w[1 * num + k] = q.s * basis.col_norms[1 * num + k];
            w[2 * num + k] = q.d * basis.col_norms[2 * num + k];
            w[3 * num + k] = q.t * basis.col_norms[3 * num + k];
        }

        // e <- x_h - A w, in half-length components. On the first
        // iteration the weights are zero and the copy already is the
        // residual.
        ev = ev_x;
        od = od_x;
        if (it > 0) {
            for (std::size_t j = 0; j < 4 * num; ++j) {
                const double* col = basis.columns.data() + j * len;
                double* comp =
                    (basis.parity[j] == Parity::even) ? ev.data() : od.data();
                const double g = 2.0 * w[j];
                for (std::size_t n = 0; n < half; ++n) comp[n] -= g * col[n];
            }
            res.trace.flops += 4 * len * num;  // 4N columns, L ops each
        }

        // One Gauss-Seidel sweep over all 4N components.
        for (std::size_t j = 0; j < 4 * num; ++j) {
            const double* col = basis.columns.data() + j * len;
            double* comp =
                (basis.parity[j] == Parity::even) ? ev.data() : od.data();
            double dw = 0.0;
            for (std::size_t n = 0; n < half; ++n) dw += col[n] * comp[n];
            const double g = 2.0 * dw;
            for (std::size_t n = 0; n < half; ++n) comp[n] -= g * col[n];
            w[j] += dw;
        }
        res.trace.flops += 8 * len * num;
        res.trace.residual_energy.push_back(half_energy(ev, od));

        // Recover parameters and advance the frequencies.
        for (std::size_t k = 0; k < num; ++k) {
            WeightQuad q;
            q.c = w[0 * num + k] / basis.col_norms[0 * num + k];
            q.s = w[1 * num + k] / basis.col_norms[1 * num + k];
            q.d = w[2 * num + k] / basis.col_norms[2 * num + k];
            q.t = w[3 * num + k] / basis.col_norms[3 * num + k];
            RecoveredParams rec = params_from_weights(q, theta[k], floor);
            res.params[k] = rec.params;
            res.params[k].freq = theta[k];
            if (rec.vanished) res.vanished[k] = true;
            if (res.vanished[k]) continue;  // frequency frozen once vanished
            double next = theta[k] + alpha * rec.dtheta;
            if (next < kFreqClampEps) {
                next = kFreqClampEps;
                ++res.clamp_count;
            } else if (next > kPi - kFreqClampEps) {
                next = kPi - kFreqClampEps;
                ++res.clamp_count;
            }
            theta[k] = next;
            res.params[k].freq = theta[k];
        }
        res.freq_history.push_back(theta);
        res.trace.iterations = it + 1;
    }

    // De-normalised weights for the trace.
    LinWeights raw;
    raw.c.resize(num);
    raw.s.resize(num);
    raw.d.resize(num);
    raw.t.resize(num);
    for (std::size_t k = 0; k < num; ++k) {
        raw.c[k] = w[0 * num + k] / basis.col_norms[0 * num + k];
        raw.s[k] = w[1 * num + k] / basis.col_norms[1 * num + k];
        raw.d[k] = w[2 * num + k] / basis.col_norms[2 * num + k];
        raw.t[k] = w[3 * num + k] / basis.col_norms[3 * num + k];
    }
    res.trace.weights = std::move(raw);
    return res;
}

}  // namespace sinest
