#pragma once

#include <cstdint>
#include <span>

#include "sinest/model.hpp"

namespace sinest {

enum class Parity : std::uint8_t { even, odd };

/// The windowed basis of the linearised model. For each partial k the four
/// columns are h*cos(theta_k t), h*sin(theta_k t), h*t*cos(theta_k t) and
/// h*t*sin(theta_k t), stored in blocks [all cos | all sin | all t*cos |
/// all t*sin]. Columns are normalised to unit Euclidean norm and the
/// original norms kept for de-normalising recovered weights.
///
/// With the centred time axis the cos and t*sin columns are exactly even
/// and the sin and t*cos columns exactly odd, which is what allows the
/// half-length solver path.
struct BasisSet {
    std::vector<double> freqs;
    std::size_t frame_len = 0;
    std::size_t n_partials = 0;
    std::vector<double> columns;    // 4N columns, each frame_len contiguous
    std::vector<double> col_norms;  // pre-normalisation norms, all > 0
    std::vector<Parity> parity;
    std::uint64_t build_flops = 0;  // arithmetic spent building the basis

    std::size_t n_columns() const { return 4 * n_partials; }

    std::span<const double> column(std::size_t j) const {
        return {columns.data() + j * frame_len, frame_len};
    }
};

/// Builds the basis at the given frequencies. Rejects frequencies outside
/// (0, pi), more partials than the frame can determine (4N > L), and
/// near-duplicate frequencies (closer than 1e-9 rad/sample), which would
/// make the normal equations numerically rank-deficient.
BasisSet build_basis(std::span<const double> freqs, const FrameConfig& cfg);

}  // namespace sinest
