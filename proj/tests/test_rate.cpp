#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "semnoma/errors.hpp"
#include "semnoma/rate.hpp"

using namespace semnoma;

TEST_CASE("decibel conversions") {
  CHECK(decibel_to_linear(0.0) == 1.0);
  CHECK(decibel_to_linear(-30.0) == doctest::Approx(1e-3).epsilon(1e-14));
  CHECK(dbm_to_watts(-80.0) == doctest::Approx(1e-11).epsilon(1e-14));
  CHECK(decibel_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("semantic rate") {
  const SourceStats src{};
  CHECK(semantic_rate({1.0}, src, 5.0, 0.98) == doctest::Approx(0.196).epsilon(1e-14));
  CHECK(semantic_rate({2.0}, src, 5.0, 0.98) == doctest::Approx(0.392).epsilon(1e-14));
  CHECK(semantic_rate({1.0}, src, 5.0, 0.0) == 0.0);
  CHECK(semantic_rate({3.0}, {2.0, 4.0, 40.0, 1.0}, 2.0, 0.0) == 0.0);
  // Linear in epsilon.
  CHECK(semantic_rate({1.0}, src, 5.0, 0.4) ==
        doctest::Approx(2.0 * semantic_rate({1.0}, src, 5.0, 0.2)).epsilon(1e-15));
}

TEST_CASE("Shannon bit rate") {
  CHECK(bit_rate({1.0}, 1.0) == 1.0);
  CHECK(bit_rate({1.0}, 3.0) == 2.0);
  CHECK(std::abs(bit_rate({1.0}, 24.387) - 4.666) <= 1e-3);
  CHECK(bit_rate({1.0}, 0.0) == 0.0);
}

TEST_CASE("bit rate is strictly increasing and concave") {
  const double h = 1e-2;
  for (int i = 1; i < 2000; ++i) {
    const double x = 0.05 * i;
    const double left = bit_rate({1.0}, x - h);
    const double mid = bit_rate({1.0}, x);
    const double right = bit_rate({1.0}, x + h);
    CHECK(right > mid);
    CHECK(right - 2 * mid + left < 0.0);
  }
}

TEST_CASE("bit-equivalent semantic rate") {
  const SourceStats src{};
  CHECK(bit_equivalent_semantic_rate(4.0, src) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(bit_equivalent_semantic_rate(0.0, src) == 0.0);
  SourceStats half = src;
  half.eps_c = 0.5;
  CHECK(bit_equivalent_semantic_rate(4.0, half) ==
        doctest::Approx(0.5 * bit_equivalent_semantic_rate(4.0, src)).epsilon(1e-15));
  CHECK(bit_equivalent_semantic_rate(8.0, src) ==
        doctest::Approx(2.0 * bit_equivalent_semantic_rate(4.0, src)).epsilon(1e-15));
}

TEST_CASE("source and bandwidth validation") {
  CHECK_NOTHROW(SourceStats{}.validate());
  CHECK_THROWS_AS((SourceStats{1.0, 1.0, 40.0, 0.0}.validate()), ValidationError);
  CHECK_THROWS_AS((SourceStats{0.0, 1.0, 40.0, 1.0}.validate()), ValidationError);
  CHECK_THROWS_AS((SourceStats{1.0, 1.0, -1.0, 1.0}.validate()), ValidationError);
  CHECK_THROWS_AS(Bandwidth{0.0}.validate(), ValidationError);
}
