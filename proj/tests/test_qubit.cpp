#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcs/qubit/prng.hpp"
#include "qcs/qubit/rabi.hpp"
#include "qcs/qubit/two_level.hpp"

#include "oracles.hpp"

using namespace qcs;

namespace {

constexpr double kOmega = 2.0 * M_PI * 1e6;

DriveParams resonant(double rabi_rate, double t, double phase = 0.0) {
    DriveParams d;
    d.rabi_rate = rabi_rate;
    d.duration_s = t;
    d.phase_rad = phase;
    return d;
}

}  // namespace

TEST_CASE("pi pulse inverts the ground state") {
    const auto out = evolve(QubitState::ground(), resonant(kOmega, M_PI / kOmega));
    CHECK(out.p1() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.norm_error() <= 1e-12);
}

TEST_CASE("half pulse reaches the equator") {
    const auto out = evolve(QubitState::ground(), resonant(kOmega, M_PI / kOmega / 2.0));
    CHECK(out.p1() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("detuned drive caps the transfer at one half") {
    // detuning == rabi rate, generalized angle = pi -> P1 = (1/2) sin^2(pi/2)
    DriveParams d;
    d.rabi_rate = kOmega;
    d.detuning = kOmega;
    d.duration_s = M_PI / (kOmega * std::sqrt(2.0));
    const auto out = evolve(QubitState::ground(), d);
    CHECK(out.p1() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.p1() ==
          doctest::Approx(oracle::rabi_p1(d.rabi_rate, d.detuning, d.duration_s)).epsilon(1e-12));
}

TEST_CASE("evolution matches the closed-form population for random drives") {
    Prng rng(21);
    for (int i = 0; i < 500; ++i) {
        DriveParams d;
        d.rabi_rate = rng.uniform() * 1e7;
        d.detuning = (rng.uniform() - 0.5) * 1e7;
        d.duration_s = rng.uniform() * 5e-6;
        d.phase_rad = rng.uniform() * 2.0 * M_PI;
        const auto out = evolve(QubitState::ground(), d);
        REQUIRE(out.p1() == doctest::Approx(oracle::rabi_p1(d.rabi_rate, d.detuning,
                                                            d.duration_s))
                                .epsilon(1e-10));
    }
}

TEST_CASE("norm is preserved across long sequences") {
    Prng rng(22);
    QubitState state = QubitState::ground();
    for (int i = 0; i < 2000; ++i) {
        DriveParams d;
        d.rabi_rate = rng.uniform() * 1e7;
        d.detuning = (rng.uniform() - 0.5) * 1e7;
        d.duration_s = rng.uniform() * 1e-6;
        d.phase_rad = rng.uniform() * 2.0 * M_PI;
        state = evolve(state, d);
        REQUIRE(state.norm_error() <= 1e-12);
    }
}

TEST_CASE("same-axis rotations compose additively") {
    Prng rng(23);
    for (int i = 0; i < 200; ++i) {
        DriveParams d;
        d.rabi_rate = rng.uniform() * 1e7;
        d.detuning = (rng.uniform() - 0.5) * 1e7;
        d.phase_rad = rng.uniform() * 2.0 * M_PI;
        const double t1 = rng.uniform() * 2e-6;
        const double t2 = rng.uniform() * 2e-6;

        DriveParams da = d, db = d, dc = d;
        da.duration_s = t1;
        db.duration_s = t2;
        dc.duration_s = t1 + t2;
        const auto split = evolve(evolve(QubitState::ground(), da), db);
        const auto joint = evolve(QubitState::ground(), dc);
        REQUIRE((split.amplitudes - joint.amplitudes).norm() <= 1e-10);
    }
}

TEST_CASE("a pi pulse is undone by a phase-inverted pi pulse") {
    const auto there = evolve(QubitState::ground(), resonant(kOmega, M_PI / kOmega, 0.0));
    const auto back = evolve(there, resonant(kOmega, M_PI / kOmega, M_PI));
    CHECK(std::norm(back.alpha()) >= 1.0 - 1e-10);  // fidelity with |0>
}

TEST_CASE("evolve rejects junk states") {
    QubitState bad;
    bad.amplitudes = {0.5, 0.5};
    CHECK_THROWS_AS(evolve(bad, resonant(kOmega, 1e-6)), Error);
}

TEST_CASE("measurement edge probabilities") {
    CHECK(measure(QubitState::ground(), 1000, 1) == 0);
    CHECK(measure(QubitState::excited(), 100, 2) == 100);
    CHECK_THROWS_AS(measure(QubitState::ground(), 0, 3), Error);
}

TEST_CASE("measurement is seeded and near the Born probability") {
    const auto state = evolve(QubitState::ground(), resonant(kOmega, M_PI / kOmega / 2.0));
    const auto ones_a = measure(state, 10000, 1234);
    const auto ones_b = measure(state, 10000, 1234);
    CHECK(ones_a == ones_b);  // bit-identical with the same seed
    CHECK(std::abs(static_cast<double>(ones_a) / 1e4 - 0.5) <= 0.02);
    CHECK(measure(state, 10000, 77) != ones_a);  // different stream, almost surely
}

TEST_CASE("full depolarization flattens the outcome") {
    const auto ones = measure(QubitState::ground(), 20000, 5, 1.0);
    CHECK(std::abs(static_cast<double>(ones) / 2e4 - 0.5) <= 0.02);
}

TEST_CASE("duration scan traces the closed form") {
    DriveTemplate drive;
    drive.coupling = kOmega;  // rad/s per unit amplitude
    drive.amplitude = 1.0;
    const auto xs = Eigen::ArrayXd::LinSpaced(64, 0.0, 4e-6);
    const auto result = run_rabi_scan(ScanAxis::duration, xs, drive, 10000, 42);
    REQUIRE(result.points.size() == 64);
    for (const auto& point : result.points) {
        const double expected = oracle::rabi_p1(kOmega, 0.0, point.x);
        REQUIRE(std::abs(point.p_estimate - expected) <= 0.03);  // few-sigma shot noise
    }
    REQUIRE(result.fit.has_value());
    CHECK(result.fit->frequency ==
          doctest::Approx(1e6).epsilon(0.05));  // P oscillates at Omega/2pi
}

TEST_CASE("zero-amplitude scan stays dark and fails the fit") {
    DriveTemplate drive;
    drive.coupling = kOmega;
    drive.amplitude = 0.0;
    const auto xs = Eigen::ArrayXd::LinSpaced(16, 0.0, 4e-6);
    const auto result = run_rabi_scan(ScanAxis::duration, xs, drive, 500, 9);
    for (const auto& point : result.points) REQUIRE(point.p_estimate == 0.0);
    CHECK(!result.fit.has_value());
    CHECK(!result.fit_error.empty());
}

TEST_CASE("scan preconditions") {
    DriveTemplate drive;
    drive.coupling = kOmega;
    const auto xs = Eigen::ArrayXd::LinSpaced(8, 0.0, 1e-6);
    CHECK_THROWS_AS(run_rabi_scan(ScanAxis::duration, xs.head(4), drive, 1000, 1), Error);
    CHECK_THROWS_AS(run_rabi_scan(ScanAxis::duration, xs, drive, 10, 1), Error);
    CHECK_THROWS_AS(
        run_rabi_scan(ScanAxis::duration, Eigen::ArrayXd::Constant(16, 1e-6), drive, 1000, 1),
        Error);
}

TEST_CASE("scan points own their seeds: workers cannot change results") {
    DriveTemplate drive;
    drive.coupling = kOmega;
    drive.amplitude = 0.8;
    const auto xs = Eigen::ArrayXd::LinSpaced(40, 0.0, 4e-6);
    const auto seq = run_rabi_scan(ScanAxis::duration, xs, drive, 2000, 7, 0.0, 1);
    const auto par2 = run_rabi_scan(ScanAxis::duration, xs, drive, 2000, 7, 0.0, 2);
    const auto par8 = run_rabi_scan(ScanAxis::duration, xs, drive, 2000, 7, 0.0, 8);
    for (std::size_t i = 0; i < seq.points.size(); ++i) {
        REQUIRE(seq.points[i].ones == par2.points[i].ones);
        REQUIRE(seq.points[i].ones == par8.points[i].ones);
    }
}

TEST_CASE("noiseless fit lands within 1 percent") {
    // P(t) = sin^2(Omega t / 2) sampled exactly; no measurement in the loop.
    const auto xs = Eigen::ArrayXd::LinSpaced(64, 0.0, 4e-6);
    Eigen::ArrayXd ps(xs.size());
    for (Eigen::Index i = 0; i < xs.size(); ++i) {
        ps[i] = oracle::rabi_p1(kOmega, 0.0, xs[i]);
    }
    const auto fit = fit_oscillation(xs, ps);
    CHECK(std::abs(fit.frequency - 1e6) / 1e6 <= 0.01);

    // off-bin frequency too
    const double omega2 = 2.0 * M_PI * 1.3217e6;
    for (Eigen::Index i = 0; i < xs.size(); ++i) {
        ps[i] = oracle::rabi_p1(omega2, 0.0, xs[i]);
    }
    const auto fit2 = fit_oscillation(xs, ps);
    CHECK(std::abs(fit2.frequency - 1.3217e6) / 1.3217e6 <= 0.01);
}

TEST_CASE("flat data fails the fit") {
    const auto xs = Eigen::ArrayXd::LinSpaced(32, 0.0, 1e-6);
    CHECK_THROWS_AS(fit_oscillation(xs, Eigen::ArrayXd::Constant(32, 0.3)), FitError);
}

TEST_CASE("fit needs uniform spacing") {
    Eigen::ArrayXd xs = Eigen::ArrayXd::LinSpaced(16, 0.0, 1e-6);
    Eigen::ArrayXd ps = Eigen::ArrayXd::Zero(16);
    for (Eigen::Index i = 0; i < 16; ++i) ps[i] = 0.5 + 0.4 * std::sin(1.0 * i);
    xs[7] += 2e-8;
    CHECK_THROWS_AS(fit_oscillation(xs, ps), Error);
}

TEST_CASE("fit error shrinks with shot count") {
    DriveTemplate drive;
    drive.coupling = kOmega;
    drive.amplitude = 1.0;
    const auto xs = Eigen::ArrayXd::LinSpaced(64, 0.0, 4e-6);

    const auto fit_at = [&](std::uint64_t shots) {
        const auto result = run_rabi_scan(ScanAxis::duration, xs, drive, shots, 2026);
        REQUIRE(result.fit.has_value());
        return std::abs(result.fit->frequency - 1e6) / 1e6;
    };
    const double e2 = fit_at(100);
    const double e3 = fit_at(1000);
    const double e4 = fit_at(10000);
    CHECK(e3 <= 0.05);
    CHECK(e4 < e2);
    CHECK(e4 <= 0.01);
}

TEST_CASE("amplitude scan calibrates a unit pi amplitude") {
    // kappa = 2 pi MHz rad/s per unit amplitude, t = 500 ns: kappa a t = pi at a = 1.
    const double kappa = 2.0 * M_PI * 1e6;
    const double t = 500e-9;

    DriveTemplate drive;
    drive.coupling = kappa;
    drive.duration_s = t;
    // three full population cycles across the swept range
    const auto xs = Eigen::ArrayXd::LinSpaced(96, 0.0, 6.0);
    auto scan = run_rabi_scan(ScanAxis::amplitude, xs, drive, 20000, 31);
    REQUIRE(scan.fit.has_value());

    const auto table = calibrate_pi_pulse(scan, t, 12345);
    CHECK(table.timestamp == 12345);
    const auto& x_entry = table.entries.at(GateName::x);
    CHECK(x_entry.duration_s == t);
    CHECK(std::abs(x_entry.amplitude - 1.0) <= 0.01);
    CHECK(std::abs(table.coupling - kappa) / kappa <= 0.01);

    // the first P maximum sits where kappa * a * t = pi
    const auto& points = scan.points;
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < points.size() && points[i].x < 2.0; ++i) {
        if (points[i].p_estimate > points[argmax].p_estimate) argmax = i;
    }
    CHECK(std::abs(points[argmax].x - 1.0) <= 0.1);

    // calibrated X: P1 >= 0.999 noiseless
    DriveParams pi_pulse;
    pi_pulse.rabi_rate = table.coupling * x_entry.amplitude;
    pi_pulse.duration_s = x_entry.duration_s;
    const auto flipped = evolve(QubitState::ground(), pi_pulse);
    CHECK(flipped.p1() >= 0.999);

    // calibrated H: P1 = 0.5 +/- 0.02 over 10^4 shots
    const auto& h_entry = table.entries.at(GateName::h);
    DriveParams half_pulse;
    half_pulse.rabi_rate = table.coupling * h_entry.amplitude;
    half_pulse.duration_s = h_entry.duration_s;
    half_pulse.phase_rad = h_entry.phase_rad;
    const auto super = evolve(QubitState::ground(), half_pulse);
    const auto ones = measure(super, 10000, 2718);
    CHECK(std::abs(static_cast<double>(ones) / 1e4 - 0.5) <= 0.02);
}

TEST_CASE("calibration needs an amplitude scan and a fit") {
    DriveTemplate drive;
    drive.coupling = kOmega;
    drive.amplitude = 1.0;
    const auto xs = Eigen::ArrayXd::LinSpaced(16, 0.0, 4e-6);
    const auto scan = run_rabi_scan(ScanAxis::duration, xs, drive, 1000, 3);
    CHECK_THROWS_AS(calibrate_pi_pulse(scan, 500e-9), Error);

    DriveTemplate dark;
    dark.coupling = kOmega;
    dark.amplitude = 0.0;
    const auto amp_xs = Eigen::ArrayXd::LinSpaced(16, 0.0, 2.0);
    DriveTemplate tpl;
    tpl.coupling = 0.0;  // no response on the amplitude axis either
    tpl.duration_s = 500e-9;
    const auto flat = run_rabi_scan(ScanAxis::amplitude, amp_xs, tpl, 500, 4);
    CHECK(!flat.fit.has_value());
    CHECK_THROWS_AS(calibrate_pi_pulse(flat, 500e-9), FitError);
}

TEST_CASE("frequency scans sweep the detuning") {
    DriveTemplate drive;
    drive.coupling = kOmega;
    drive.amplitude = 1.0;
    drive.duration_s = M_PI / kOmega;  // resonant pi pulse
    const auto xs = Eigen::ArrayXd::LinSpaced(33, -2e7, 2e7);
    const auto result = run_rabi_scan(ScanAxis::frequency, xs, drive, 5000, 8);
    // response peaks on resonance (middle point, detuning 0)
    const auto& mid = result.points[16];
    CHECK(mid.x == doctest::Approx(0.0));
    CHECK(mid.p_estimate >= 0.98);
    for (const auto& point : result.points) REQUIRE(point.p_estimate <= mid.p_estimate + 1e-9);
}

TEST_CASE("mix_seed separates scan points deterministically") {
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
    CHECK(mix_seed(123, 45) == mix_seed(123, 45));
}
