#include "sinest/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sinest {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDuplicateTol = 1e-9;  // rad/sample
}

BasisSet build_basis(std::span<const double> freqs, const FrameConfig& cfg) {
    const std::size_t num = freqs.size();
    const std::size_t len = cfg.frame_len;
    if (num == 0) throw std::invalid_argument("build_basis: no frequencies");
    if (4 * num > len)
        throw std::invalid_argument("build_basis: 4N > L, system underdetermined");
    for (double f : freqs) {
        if (!(f > 0.0 && f < kPi))
            throw std::invalid_argument("build_basis: frequency " +
                                        std::to_string(f) + " outside (0, pi)");
    }
    for (std::size_t i = 0; i < num; ++i)
        for (std::size_t j = i + 1; j < num; ++j)
            if (std::abs(freqs[i] - freqs[j]) < kDuplicateTol)
                throw std::invalid_argument(
                    "build_basis: duplicate frequencies (closer than 1e-9)");

    BasisSet basis;
    basis.freqs.assign(freqs.begin(), freqs.end());
    basis.frame_len = len;
    basis.n_partials = num;
    basis.columns.resize(4 * num * len);
    basis.col_norms.resize(4 * num);
    basis.parity.resize(4 * num);

    const std::size_t half = len / 2;
    double* const cols = basis.columns.data();
    for (std::size_t k = 0; k < num; ++k) {
        const double theta = freqs[k];
        double* col_c = cols + (0 * num + k) * len;
        double* col_s = cols + (1 * num + k) * len;
        double* col_d = cols + (2 * num + k) * len;
        double* col_t = cols + (3 * num + k) * len;

        // Fill the left half; the right half is the mirror image with the
        // column's parity sign, so its entries cost no arithmetic.
        double nc = 0.0, nd = 0.0;
        for (std::size_t n = 0; n < half; ++n) {
            const double arg = theta * cfg.time_index[n];
            const double c0 = std::cos(arg);
            const double s0 = std::sin(arg);
            const double ac = cfg.window[n] * c0;
            const double as = cfg.window[n] * s0;
            const double ad = cfg.window_time[n] * c0;
            const double at = cfg.window_time[n] * s0;
            col_c[n] = ac;
            col_s[n] = as;
            col_d[n] = ad;
            col_t[n] = at;
            nc += ac * ac;
            nd += ad * ad;
        }
        basis.build_flops += 9 * half;  // 5 per sample + 4 norm accumulation

        // Full-length norms. cos^2 + sin^2 pairs make two of them free:
        // |a_s|^2 = sum h^2 - |a_c|^2 and |a_t|^2 = sum (h t)^2 - |a_d|^2.
        const double norm_c = std::sqrt(2.0 * nc);
        const double norm_s = std::sqrt(cfg.window_sq_sum - 2.0 * nc);
        const double norm_d = std::sqrt(2.0 * nd);
        const double norm_t = std::sqrt(cfg.window_time_sq_sum - 2.0 * nd);
        if (!(norm_c > 0.0) || !(norm_s > 0.0) || !(norm_d > 0.0) ||
            !(norm_t > 0.0))
            throw std::runtime_error("build_basis: degenerate column at theta=" +
                                     std::to_string(theta));
        basis.col_norms[0 * num + k] = norm_c;
        basis.col_norms[1 * num + k] = norm_s;
        basis.col_norms[2 * num + k] = norm_d;
        basis.col_norms[3 * num + k] = norm_t;

        const double ic = 1.0 / norm_c, is = 1.0 / norm_s;
        const double id = 1.0 / norm_d, it = 1.0 / norm_t;
        for (std::size_t n = 0; n < half; ++n) {
            const std::size_t r = len - 1 - n;
            col_c[n] *= ic;
            col_s[n] *= is;
            col_d[n] *= id;
            col_t[n] *= it;
            col_c[r] = col_c[n];   // even
            col_s[r] = -col_s[n];  // odd
            col_d[r] = -col_d[n];  // odd
            col_t[r] = col_t[n];   // even
        }
        basis.build_flops += 4 * half;  // normalisation scaling
        basis.parity[0 * num + k] = Parity::even;
        basis.parity[1 * num + k] = Parity::odd;
        basis.parity[2 * num + k] = Parity::odd;
        basis.parity[3 * num + k] = Parity::even;
    }
    return basis;
}

}  // namespace sinest
