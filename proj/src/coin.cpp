#include "qwf/coin.hpp"

#include <cmath>
#include <string>

#include "qwf/error.hpp"

namespace qwf {

namespace {

constexpr double kDegenerateTheta = 1e-12;

}  // namespace

std::string_view param_name(Param p) noexcept {
  switch (p) {
    case Param::Theta: return "theta";
    case Param::Alpha: return "alpha";
    case Param::Beta: return "beta";
  }
  return "?";
}

double wrap_angle(double x) noexcept {
  double r = std::fmod(x + kPi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  r -= kPi;
  // fmod rounding can land exactly on +pi
  if (r >= kPi) r -= 2.0 * kPi;
  return r;
}

CoinParams::CoinParams(double theta, double alpha, double beta) {
  if (!std::isfinite(theta) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorKind::InvalidParams, "coin angles must be finite");
  }
  double t = wrap_angle(theta);
  double b = beta;
  if (t < 0.0) {
    t = -t;
    b += kPi;
  }
  if (t < kDegenerateTheta || kPi - t < kDegenerateTheta) {
    throw Error(ErrorKind::InvalidParams,
                "degenerate coin: theta = " + std::to_string(theta) + " has sin(theta) = 0");
  }
  theta_ = t;
  alpha_ = wrap_angle(alpha);
  beta_ = wrap_angle(b);
}

double CoinParams::get(Param p) const noexcept {
  switch (p) {
    case Param::Theta: return theta_;
    case Param::Alpha: return alpha_;
    case Param::Beta: return beta_;
  }
  return 0.0;
}

CoinParams CoinParams::shifted(Param p, double h) const {
  CoinParams out = *this;
  switch (p) {
    case Param::Theta: out = CoinParams(theta_ + h, alpha_, beta_); break;
    case Param::Alpha: out = CoinParams(theta_, alpha_ + h, beta_); break;
    case Param::Beta: out = CoinParams(theta_, alpha_, beta_ + h); break;
  }
  return out;
}

Mat2 build_coin(const CoinAngles& p) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  const cplx ea = std::polar(1.0, p.alpha);
  const cplx eb = std::polar(1.0, p.beta);
  return {ea * c, eb * s, -std::conj(eb) * s, std::conj(ea) * c};
}

Mat2 build_coin(const CoinParams& p) { return build_coin(CoinAngles{p.theta(), p.alpha(), p.beta()}); }

Mat2 coin_derivative(const CoinParams& p, Param mu) {
  const double c = std::cos(p.theta());
  const double s = std::sin(p.theta());
  const cplx ea = std::polar(1.0, p.alpha());
  const cplx eb = std::polar(1.0, p.beta());
  switch (mu) {
    case Param::Theta:
      return {-ea * s, eb * c, -std::conj(eb) * c, -std::conj(ea) * s};
    case Param::Alpha:
      return {kI * ea * c, 0.0, 0.0, -kI * std::conj(ea) * c};
    case Param::Beta:
      return {0.0, kI * eb * s, kI * std::conj(eb) * s, 0.0};
  }
  return Mat2::zero();
}

Mat2 u_k(const Mat2& coin, double k) {
  const cplx em = std::polar(1.0, -k);
  const cplx ep = std::conj(em);
  return {em * coin.a, em * coin.b, ep * coin.c, ep * coin.d};
}

Mat2 u_k(const CoinParams& p, double k) { return u_k(build_coin(p), k); }

}  // namespace qwf
