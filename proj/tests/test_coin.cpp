#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qwf/coin.hpp"
#include "qwf/error.hpp"

using namespace qwf;

TEST_CASE("coin is unitary with determinant one") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const CoinParams p = testing::random_coin(rng);
    const Mat2 c = build_coin(p);
    CHECK(max_abs(c * c.adjoint() - Mat2::identity()) < 1e-14);
    CHECK(std::abs(c.det() - 1.0) < 1e-14);
  }
}

TEST_CASE("coin entries follow the parametrization") {
  const CoinParams p(0.7, 0.3, -1.1);
  const Mat2 c = build_coin(p);
  CHECK(std::abs(c.a - std::polar(std::cos(0.7), 0.3)) < 1e-15);
  CHECK(std::abs(c.b - std::polar(std::sin(0.7), -1.1)) < 1e-15);
  CHECK(std::abs(c.c + std::polar(std::sin(0.7), 1.1)) < 1e-15);
  CHECK(std::abs(c.d - std::polar(std::cos(0.7), -0.3)) < 1e-15);
}

TEST_CASE("canonicalization keeps the coin matrix") {
  for (double th : {-0.4, -2.0, 3.5, 7.0, -6.0}) {
    const CoinAngles raw{th, 0.2, 0.9};
    const CoinParams p(raw);
    CHECK(p.theta() > 0.0);
    CHECK(p.theta() < kPi);
    CHECK(p.alpha() >= -kPi);
    CHECK(p.alpha() < kPi);
    CHECK(p.beta() >= -kPi);
    CHECK(p.beta() < kPi);
    CHECK(max_abs(build_coin(p) - build_coin(raw)) < 1e-14);
  }
  const CoinParams neg(-0.4, 0.2, 0.9);
  CHECK(neg.theta() == doctest::Approx(0.4));
  CHECK(neg.beta() == doctest::Approx(wrap_angle(0.9 + kPi)));
}

TEST_CASE("degenerate and non-finite angles are rejected") {
  CHECK_THROWS_AS(CoinParams(0.0, 0.0, 0.0), Error);
  CHECK_THROWS_AS(CoinParams(kPi, 0.0, 0.0), Error);
  CHECK_THROWS_AS(CoinParams(2 * kPi, 0.0, 0.0), Error);
  CHECK_THROWS_AS(CoinParams(std::nan(""), 0.0, 0.0), Error);
  CHECK_THROWS_AS(CoinParams(0.5, INFINITY, 0.0), Error);
  try {
    CoinParams(0.0, 0.0, 0.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParams);
  }
}

TEST_CASE("wrap_angle maps into [-pi, pi)") {
  CHECK(wrap_angle(kPi) == doctest::Approx(-kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(-kPi));
  CHECK(wrap_angle(3.0) == doctest::Approx(3.0));
  CHECK(wrap_angle(7.0) == doctest::Approx(7.0 - 2 * kPi));
}

TEST_CASE("coin derivative matches central differences") {
  std::mt19937_64 rng(2);
  const double h = 1e-6;
  for (int i = 0; i < 20; ++i) {
    const CoinParams p = testing::random_coin(rng);
    for (Param mu : kAllParams) {
      CoinAngles plus{p.theta(), p.alpha(), p.beta()};
      CoinAngles minus = plus;
      double* fp = mu == Param::Theta ? &plus.theta : mu == Param::Alpha ? &plus.alpha : &plus.beta;
      double* fm = mu == Param::Theta ? &minus.theta : mu == Param::Alpha ? &minus.alpha : &minus.beta;
      *fp += h;
      *fm -= h;
      const Mat2 fd = (1.0 / (2.0 * h)) * (build_coin(plus) - build_coin(minus));
      CHECK(max_abs(fd - coin_derivative(p, mu)) < 1e-9);
    }
  }
}

TEST_CASE("u_k is the phase diagonal times the coin") {
  const CoinParams p(1.1, -0.4, 2.0);
  const double k = 0.37;
  const Mat2 d{std::polar(1.0, -k), 0.0, 0.0, std::polar(1.0, k)};
  CHECK(max_abs(u_k(p, k) - d * build_coin(p)) < 1e-15);
}

TEST_CASE("shifted re-canonicalizes") {
  const CoinParams p(0.1, 0.0, 0.0);
  const CoinParams q = p.shifted(Param::Theta, -0.3);
  CHECK(q.theta() == doctest::Approx(0.2));
  CHECK(max_abs(build_coin(q) - build_coin(CoinAngles{-0.2, 0.0, 0.0})) < 1e-14);
}
