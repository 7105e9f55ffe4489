#pragma once

#include <cstdint>

#include "sinest/model.hpp"

namespace sinest {

/// Frequencies of the N largest strict local maxima of the windowed
/// frame's L-point DFT magnitude spectrum, as bin centres 2*pi*m/L,
/// ordered by descending magnitude (ties broken towards the lower
/// frequency). May return fewer than max_peaks when the spectrum has
/// fewer peaks; an all-zero frame yields none.
std::vector<double> dft_peak_pick(std::span<const double> x,
                                  const FrameConfig& cfg,
                                  std::size_t max_peaks);

/// Dictionary of windowed, non-modulated sinusoid pairs on a uniform
/// frequency grid of step pi/(L*P) covering (0, pi) exclusive, where P is
/// the oversampling factor over the DFT resolution pi/L. Atom pairs are
/// cached in half-length form (the cos atom is even, the sin atom odd)
/// so a pursuit touches only the matching residual component.
class Dictionary {
  public:
    Dictionary(const FrameConfig& cfg, std::size_t oversample);

    double resolution() const { return resolution_; }
    std::size_t oversample() const { return oversample_; }
    std::size_t grid_size() const { return grid_size_; }
    double grid_freq(std::size_t g) const {
        return resolution_ * static_cast<double>(g + 1);
    }
    std::size_t frame_len() const { return frame_len_; }

    // Unit-norm atom halves and pre-normalisation norms for grid index g.
    const double* cos_half(std::size_t g) const {
        return cos_atoms_.data() + g * half_;
    }
    const double* sin_half(std::size_t g) const {
        return sin_atoms_.data() + g * half_;
    }
    double cos_norm(std::size_t g) const { return cos_norms_[g]; }
    double sin_norm(std::size_t g) const { return sin_norms_[g]; }

  private:
    double resolution_ = 0.0;
    std::size_t oversample_ = 0;
    std::size_t grid_size_ = 0;
    std::size_t frame_len_ = 0;
    std::size_t half_ = 0;
    std::vector<double> cos_atoms_, sin_atoms_;
    std::vector<double> cos_norms_, sin_norms_;
};

struct MpEstimate {
    std::vector<SinusoidParams> atoms;  // amp/freq/phase; amp_slope stays 0
    std::vector<double> residual_energy;  // initial + after each round
    std::uint64_t flops = 0;
};

/// Greedy pursuit: each round scans every grid frequency, projects the
/// residual onto the two-dimensional subspace spanned by the windowed
/// cos/sin pair there (the pair is orthogonal by parity, so the 2x2 Gram
/// solve reduces to two independent projections), keeps the frequency
/// that removes the most energy and subtracts the projection. No
/// post-refinement of picked atoms.
MpEstimate matching_pursuit(std::span<const double> x, const FrameConfig& cfg,
                            const Dictionary& dict, std::size_t n_atoms);

}  // namespace sinest
