#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcs/fixed.hpp"
#include "qcs/qubit/prng.hpp"

#include "oracles.hpp"

using qcs::FixedFormat;
using qcs::fixed_to_float;
using qcs::float_to_fixed;
using qcs::kQ15;
using qcs::q15_mul;

TEST_CASE("q15 format bounds") {
    CHECK(kQ15.valid());
    CHECK(kQ15.min_code() == -32768);
    CHECK(kQ15.max_code() == 32767);
    CHECK(kQ15.resolution() == doctest::Approx(1.0 / 32768).epsilon(1e-15));

    const FixedFormat u16{16, 16, false};
    CHECK(u16.valid());
    CHECK(u16.min_code() == 0);
    CHECK(u16.max_code() == 65535);

    const FixedFormat bad{16, 16, true};  // no room for the sign bit
    CHECK(!bad.valid());
}

TEST_CASE("float_to_fixed basics") {
    CHECK(float_to_fixed(0.5) == 16384);
    CHECK(float_to_fixed(1.0) == 32767);    // saturates
    CHECK(float_to_fixed(-1.0) == -32768);  // exactly representable
    CHECK(float_to_fixed(0.0) == 0);
    CHECK(float_to_fixed(2.0) == 32767);
    CHECK(float_to_fixed(-7.5) == -32768);
}

TEST_CASE("rounding is nearest, ties to even") {
    // 16384.5/2^15 and 16385.5/2^15 are exact halves between codes.
    CHECK(float_to_fixed(16384.5 / 32768.0) == 16384);
    CHECK(float_to_fixed(16385.5 / 32768.0) == 16386);
    CHECK(float_to_fixed(-16384.5 / 32768.0) == -16384);
    CHECK(float_to_fixed(-16385.5 / 32768.0) == -16386);
}

TEST_CASE("exhaustive 16-bit round trip") {
    for (std::int64_t code = -32768; code <= 32767; ++code) {
        REQUIRE(float_to_fixed(fixed_to_float(code)) == code);
    }
}

TEST_CASE("fixed_to_float is exact") {
    CHECK(fixed_to_float(1) == 0x1.0p-15);
    CHECK(fixed_to_float(-32768) == -1.0);
    CHECK(fixed_to_float(16384) == 0.5);
}

TEST_CASE("float_to_fixed is monotone non-decreasing") {
    qcs::Prng rng(2024);
    double prev_x = -2.0;
    std::int64_t prev_code = float_to_fixed(prev_x);
    for (int i = 0; i < 20000; ++i) {
        const double x = prev_x + rng.uniform() * 1e-3;
        const std::int64_t code = float_to_fixed(x);
        REQUIRE(code >= prev_code);
        prev_x = x;
        prev_code = code;
    }
}

TEST_CASE("q15_mul matches a floating-point route") {
    qcs::Prng rng(7);
    for (int i = 0; i < 100000; ++i) {
        const auto a = static_cast<std::int16_t>(rng.next() & 0xFFFF);
        const auto b = static_cast<std::int16_t>(rng.next() & 0xFFFF);
        REQUIRE(q15_mul(a, b) == oracle::q15_mul_float(a, b));
    }
}

TEST_CASE("q15_mul pinned values") {
    CHECK(q15_mul(32767, 32767) == 32766);  // full-scale squared loses 1 LSB
    CHECK(q15_mul(16384, 16384) == 8192);   // 0.5 * 0.5
    CHECK(q15_mul(16384, 1) == 0);          // 0.5 ties to even -> 0
    CHECK(q15_mul(16384, 3) == 2);          // 1.5 ties to even -> 2
    CHECK(q15_mul(-32768, -32768) == 32767);  // (-1)^2 saturates
    CHECK(q15_mul(-32768, 32767) == -32767);
    CHECK(q15_mul(0, 12345) == 0);
}
