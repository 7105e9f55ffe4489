#pragma once

#include <cstdint>

#include "sinest/basis.hpp"
#include "sinest/model.hpp"

namespace sinest {

/// Record of one iterative solve. residual_energy holds the squared
/// residual norm before any iteration and after each one (iterations+1
/// entries). From the solve_* functions, weights are coefficients of the
/// unit-norm basis columns; the estimate_* wrappers de-normalise them to
/// raw-basis coefficients before returning. flops counts multiply/add
/// operations in the array passes; O(N) scalar bookkeeping is excluded,
/// matching the complexity model's convention of dropping negligible
/// terms.
struct SolveTrace {
    std::vector<double> residual_energy;
    LinWeights weights;
    int iterations = 0;
    std::uint64_t flops = 0;
    bool diverged = false;
};

/// Exact normal-equations solution w = (A^T A)^-1 A^T x_h via a dense
/// SPD factorisation. This is the oracle the iterative solvers converge
/// to. Throws on factorisation failure (unreachable for bases that pass
/// build_basis validation).
LinWeights solve_direct(const BasisSet& basis, std::span<const double> xh);

/// Jacobi iteration: w0 = A^T x_h, then w <- w + A^T (x_h - A w).
/// With unit-norm columns the diagonal preconditioner is the identity.
/// Convergence is not guaranteed; sustained residual growth over three
/// consecutive iterations marks the trace diverged (reported, not thrown).
SolveTrace solve_jacobi(const BasisSet& basis, std::span<const double> xh,
                        int iterations);

/// Gauss-Seidel sweeps: for each of the 4N components in block order
/// (all cos, all sin, all t*cos, all t*sin), project the running residual
/// onto the column and subtract. Every inner step is an exact 1-D
/// projection, so the residual never grows.
///
/// step_energy, when given, receives the residual energy after every
/// inner step (diagnostic; not counted in flops). stop_dw_rel > 0 stops
/// early once a full sweep's largest |delta w| falls below
/// stop_dw_rel * max(1, |w|_inf); stop_energy_rel > 0 stops once a
/// sweep's relative residual-energy reduction falls below it.
SolveTrace solve_gauss_seidel(const BasisSet& basis, std::span<const double> xh,
                              int iterations,
                              std::vector<double>* step_energy = nullptr,
                              double stop_dw_rel = 0.0,
                              double stop_energy_rel = 0.0);

/// Gauss-Seidel over half-length even/odd residual components. Exploits
/// the exact column parity: each column touches only its own component,
/// halving the work per sweep. Produces the same weights as the plain
/// path up to rounding.
SolveTrace solve_gauss_seidel_evenodd(const BasisSet& basis,
                                      std::span<const double> xh,
                                      int iterations,
                                      double stop_energy_rel = 0.0);

struct LinearEstimate {
    std::vector<SinusoidParams> params;  // freq = init + dtheta, per partial
    std::vector<double> dtheta;
    std::vector<bool> vanished;
    SolveTrace trace;  // weights de-normalised to raw-basis coefficients
};

/// The linear estimator: window the frame, build the basis at the initial
/// frequencies, run even/odd Gauss-Seidel for the given number of sweeps,
/// de-normalise and recover (A, phi, A', dtheta) per partial.
LinearEstimate estimate_linear(std::span<const double> x,
                               std::span<const double> init_freqs,
                               const FrameConfig& cfg, int iterations);

struct NonlinearResult {
    std::vector<SinusoidParams> params;
    std::vector<bool> vanished;
    SolveTrace trace;
    std::vector<std::vector<double>> freq_history;  // init + per iteration
    std::size_t clamp_count = 0;  // frequency updates clipped to (eps, pi-eps)
};

/// The non-linear estimator. Each outer iteration rebuilds the basis at
/// the current frequencies, re-expands the running parameters into linear
/// weights (with the frequency correction folded into the basis, so d and
/// t are rebuilt from A' alone), recomputes the residual, runs one
/// Gauss-Seidel sweep and applies theta += alpha * dtheta. With alpha = 1
/// and a single iteration this is exactly estimate_linear.
///
/// A partial whose amplitude falls below the floor keeps its frequency
/// frozen for the remaining iterations. Frequency updates are clamped to
/// (1e-4, pi - 1e-4); clamp events are counted in the result.
NonlinearResult estimate_nonlinear(std::span<const double> x,
                                   std::span<const double> init_freqs,
                                   const FrameConfig& cfg, int iterations,
                                   double alpha = 1.0);

/// Amplitude floor used by the estimators: 1e-12 * |x_h| / sqrt(L).
double amp_floor_for(std::span<const double> xh);

}  // namespace sinest
