#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qwf/coin.hpp"
#include "qwf/walker.hpp"

namespace testing {

using qwf::cplx;

inline qwf::CoinParams random_coin(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> th(0.05, qwf::kPi - 0.05);
  std::uniform_real_distribution<double> ph(-qwf::kPi, qwf::kPi);
  return qwf::CoinParams(th(rng), ph(rng), ph(rng));
}

inline Eigen::Matrix2cd to_eigen(const qwf::Mat2& m) {
  Eigen::Matrix2cd e;
  e << m.a, m.b, m.c, m.d;
  return e;
}

// Dense walk unitary on sites [lo, lo + n): shift after coin, amplitude order
// (site, coin). Sites that would leave the window are dropped, so callers keep
// the support well inside.
inline Eigen::MatrixXcd dense_step(const qwf::Mat2& coin, std::int64_t n) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (std::int64_t x = 0; x < n; ++x) {
    // coin 0 moves right, coin 1 moves left
    if (x + 1 < n) {
      u(2 * (x + 1), 2 * x) = coin.a;
      u(2 * (x + 1), 2 * x + 1) = coin.b;
    }
    if (x - 1 >= 0) {
      u(2 * (x - 1) + 1, 2 * x) = coin.c;
      u(2 * (x - 1) + 1, 2 * x + 1) = coin.d;
    }
  }
  return u;
}

inline Eigen::VectorXcd dense_state(const qwf::WalkerState& s, std::int64_t lo, std::int64_t n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
  for (std::int64_t x = s.x_min(); x <= s.x_max(); ++x) {
    const qwf::Vec2 a = s.at(x);
    v(2 * (x - lo)) = a.c0;
    v(2 * (x - lo) + 1) = a.c1;
  }
  return v;
}

}  // namespace testing
