#pragma once

#include <array>
#include <string_view>

#include "qwf/mat2.hpp"

namespace qwf {

/// Coin parameter index; order matches the rows of every Fisher matrix.
enum class Param { Theta = 0, Alpha = 1, Beta = 2 };

inline constexpr std::array<Param, 3> kAllParams{Param::Theta, Param::Alpha, Param::Beta};

std::string_view param_name(Param p) noexcept;

/// Raw coin angles as produced by a physical mapping, before canonicalization.
struct CoinAngles {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// Validated coin parameters of the U(2) coin
///   C = [[e^{ia} cos t, e^{ib} sin t], [-e^{-ib} sin t, e^{-ia} cos t]].
///
/// Canonical form: theta in (0, pi), alpha and beta in [-pi, pi). The reduction
/// uses only exact matrix identities (2 pi periodicity in every angle and
/// C(-t, a, b) = C(t, a, b + pi)), so the coin matrix is unchanged by it.
/// Coins with sin(theta) == 0 are rejected: they do not mix the coin and the
/// asymptotic Fisher information is singular there.
class CoinParams {
public:
  CoinParams(double theta, double alpha, double beta);
  explicit CoinParams(const CoinAngles& raw) : CoinParams(raw.theta, raw.alpha, raw.beta) {}

  double theta() const noexcept { return theta_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  /// phi = alpha - beta, the combination the localized closed forms depend on.
  double phi() const noexcept { return alpha_ - beta_; }
  double get(Param p) const noexcept;

  /// Copy with one parameter shifted by h (re-canonicalized).
  CoinParams shifted(Param p, double h) const;

private:
  double theta_;
  double alpha_;
  double beta_;
};

/// Wraps an angle into [-pi, pi).
double wrap_angle(double x) noexcept;

Mat2 build_coin(const CoinParams& p);
/// Coin matrix for arbitrary angles, no validation.
Mat2 build_coin(const CoinAngles& a);

/// Partial derivative of the coin matrix with respect to one parameter.
Mat2 coin_derivative(const CoinParams& p, Param mu);

/// Momentum-space step u_k = diag(e^{-ik}, e^{ik}) C.
Mat2 u_k(const CoinParams& p, double k);
Mat2 u_k(const Mat2& coin, double k);

}  // namespace qwf
