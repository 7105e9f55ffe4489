#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>

#include "sinest/model.hpp"

using namespace sinest;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("frame config: centred time axis and sine window") {
    const FrameConfig cfg = make_frame_config(256);
    CHECK(cfg.time_index[127] == -0.5);
    CHECK(cfg.window[127] ==
          doctest::Approx(0.999981175282601142).epsilon(1e-14));

    double tsum = 0.0;
    for (double t : cfg.time_index) tsum += t;
    CHECK(tsum == 0.0);

    // Values frozen from an independent high-precision evaluation.
    const FrameConfig small = make_frame_config(64);
    CHECK(small.time_index[0] == -31.5);
    CHECK(small.window[0] ==
          doctest::Approx(0.024541228522912288).epsilon(1e-13));

    for (std::size_t n = 0; n < cfg.frame_len; ++n) {
        CHECK(cfg.window[n] > 0.0);
        CHECK(cfg.window[n] <= 1.0);
        CHECK(cfg.window[n] == cfg.window[cfg.frame_len - 1 - n]);
    }
}

TEST_CASE("frame config: rejects odd and tiny lengths") {
    CHECK_THROWS_AS(make_frame_config(255), std::invalid_argument);
    CHECK_THROWS_AS(make_frame_config(6), std::invalid_argument);
    CHECK_THROWS_AS(make_frame_config(0), std::invalid_argument);
    CHECK_NOTHROW(make_frame_config(8));
}

TEST_CASE("weights_from_params: spot values") {
    SinusoidParams p;
    p.amp = 1.0;
    p.phase = 0.0;
    WeightQuad w = weights_from_params(p, 0.0);
    CHECK(w.c == 1.0);
    CHECK(w.s == 0.0);
    CHECK(w.d == 0.0);
    CHECK(w.t == 0.0);

    p.phase = kPi / 2.0;
    w = weights_from_params(p, 0.0);
    CHECK(std::abs(w.c) < 1e-15);
    CHECK(w.s == doctest::Approx(-1.0).epsilon(1e-15));

    p.amp = 2.0;
    p.phase = kPi / 4.0;
    p.amp_slope = 0.01;
    w = weights_from_params(p, 0.001);
    CHECK(w.c == doctest::Approx(1.4142135623730950).epsilon(1e-14));
    CHECK(w.s == doctest::Approx(-1.4142135623730950).epsilon(1e-14));
    CHECK(w.d == doctest::Approx(0.0056568542494923802).epsilon(1e-12));
    CHECK(w.t == doctest::Approx(-0.0084852813742385703).epsilon(1e-12));
}

TEST_CASE("params_from_weights: spot values and the vanish guard") {
    RecoveredParams r = params_from_weights({1.0, 0.0, 0.0, 0.0}, 0.3);
    CHECK(r.params.amp == 1.0);
    CHECK(r.params.phase == 0.0);
    CHECK(r.params.amp_slope == 0.0);
    CHECK(r.dtheta == 0.0);
    CHECK(r.params.freq == 0.3);
    CHECK_FALSE(r.vanished);

    r = params_from_weights({0.0, -1.0, 0.0, 0.0}, 0.3);
    CHECK(r.params.amp == doctest::Approx(1.0));
    CHECK(r.params.phase == doctest::Approx(kPi / 2.0));

    r = params_from_weights({0.0, 0.0, 1.0, 1.0}, 0.3, 1e-9);
    CHECK(r.vanished);
    CHECK(r.params.amp == 0.0);
    CHECK(r.dtheta == 0.0);

    // Exact zero weights never divide even with a zero floor.
    r = params_from_weights({0.0, 0.0, 0.0, 0.0}, 0.3, 0.0);
    CHECK(r.vanished);
}

TEST_CASE("weights/params round trip is the identity") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> amp(1e-3, 10.0);
    std::uniform_real_distribution<double> ph(-kPi, kPi);
    std::uniform_real_distribution<double> slope(-0.01, 0.01);
    std::uniform_real_distribution<double> dth(-0.01, 0.01);
    for (int i = 0; i < 2000; ++i) {
        SinusoidParams p;
        p.amp = amp(rng);
        p.phase = wrap_phase(ph(rng));
        p.amp_slope = slope(rng);
        p.freq = 0.3;
        const double dtheta = dth(rng);
        const WeightQuad w = weights_from_params(p, dtheta);
        const RecoveredParams r = params_from_weights(w, p.freq);
        CHECK(r.params.amp == doctest::Approx(p.amp).epsilon(1e-12));
        CHECK(r.params.phase == doctest::Approx(p.phase).epsilon(1e-11));
        CHECK(std::abs(r.params.amp_slope - p.amp_slope) <= 1e-12 * p.amp);
        CHECK(std::abs(r.dtheta - dtheta) <= 1e-12);
    }
}

TEST_CASE("synthesize: single partial matches the cosine directly") {
    const FrameConfig cfg = make_frame_config(256);
    SinusoidParams p;
    p.amp = 1.0;
    p.freq = 0.1 * kPi;
    const std::vector<double> x = synthesize({&p, 1}, cfg, false);
    for (std::size_t n = 0; n < cfg.frame_len; ++n)
        CHECK(x[n] == std::cos(0.1 * kPi * cfg.time_index[n]));
}

TEST_CASE("synthesize: zero amplitude gives a zero frame") {
    const FrameConfig cfg = make_frame_config(64);
    SinusoidParams p;
    p.amp = 0.0;
    p.freq = 0.3;
    const std::vector<double> x = synthesize({&p, 1}, cfg, true);
    for (double v : x) CHECK(v == 0.0);
}

TEST_CASE("synthesize: agrees with an independent evaluation") {
    const FrameConfig cfg = make_frame_config(256);
    SinusoidParams p;
    p.amp = 1.0;
    p.freq = 0.1 * kPi;
    p.phase = kPi / 4.0;
    p.amp_slope = 0.001;
    const std::vector<double> x = synthesize({&p, 1}, cfg, true);

    // Oracle: re-derive the model sample by sample from scratch.
    double energy = 0.0, oracle_energy = 0.0;
    for (std::size_t n = 0; n < 256; ++n) {
        const double t = (static_cast<double>(n) + 1.0) - 257.0 / 2.0;
        const double h = std::cos(kPi * t / 256.0);
        const double v =
            h * (1.0 + 0.001 * t) * std::cos(0.1 * kPi * t + kPi / 4.0);
        oracle_energy += v * v;
        energy += x[n] * x[n];
        CHECK(x[n] == doctest::Approx(v).epsilon(1e-14));
    }
    CHECK(energy == doctest::Approx(oracle_energy).epsilon(1e-12));
}

TEST_CASE("synthesize: rejects invalid input") {
    const FrameConfig cfg = make_frame_config(64);
    CHECK_THROWS_AS(synthesize({}, cfg, true), std::invalid_argument);
    SinusoidParams p;
    p.amp = 1.0;
    p.freq = kPi;  // boundary excluded
    CHECK_THROWS_AS(synthesize({&p, 1}, cfg, true), std::invalid_argument);
}

TEST_CASE("wrap_phase maps into (-pi, pi]") {
    CHECK(wrap_phase(kPi) == kPi);
    CHECK(wrap_phase(-kPi) == kPi);
    CHECK(wrap_phase(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_phase(0.5) == doctest::Approx(0.5));
    CHECK(wrap_phase(2.0 * kPi + 0.25) == doctest::Approx(0.25));
}
