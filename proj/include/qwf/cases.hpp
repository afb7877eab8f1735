#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qwf/coin.hpp"
#include "qwf/param_matrix.hpp"
#include "qwf/table.hpp"

namespace qwf {

/// Field B = (0, b2, b3) in energy units (hbar = 1), one step of duration 1.
struct MagneticField {
  double b2 = 0.0;
  double b3 = 0.0;
  double magnitude() const noexcept;
};

/// 1+1 D Dirac particle: mass m, charge q, vector potential A_x, Trotter step eps.
struct DiracParams {
  double m = 0.0;
  double q = 0.0;
  double a_x = 0.0;
  double eps = 0.0;
  /// Omega = sqrt(q^2 A_x^2 + m^2).
  double omega() const noexcept;
};

/// Principal-branch invertibility window: rotation angle strictly below pi/2.
inline constexpr double kWindow = kPi / 2.0;

/// Exact forward maps, raw (non-canonical) angles. Throw OutOfWindow.
///   magnetic: sin t = -(sin B / B) b2, tan a = -(tan B / B) b3, b = 0
///   dirac:    sin t = -(m / W) sin(eps W), tan a = -(q A / W) tan(eps W), b = pi/2
CoinAngles magnetic_coin_angles(const MagneticField& f);
CoinAngles dirac_coin_angles(const DiracParams& d);

/// Validated coins. A vanishing theta (b2 = 0, or m = 0) is a degenerate walk
/// and throws InvalidParams.
CoinParams coin_from_magnetic(const MagneticField& f);
CoinParams coin_from_dirac(const DiracParams& d);

/// Linearized maps: theta ~ -b2, alpha ~ -b3 and theta ~ -m eps, alpha ~ -q A eps.
CoinAngles magnetic_coin_angles_first_order(const MagneticField& f);
CoinAngles dirac_coin_angles_first_order(const DiracParams& d);

struct InverseReport {
  int iterations = 0;
  double residual = 0.0;   // max residual of (sin theta, cos theta sin alpha)
  double condition = 0.0;  // 2-norm condition number of the Newton Jacobian
};

struct MagneticInverse {
  MagneticField field;
  InverseReport report;
};

struct DiracInverse {
  double m = 0.0;
  double q = 0.0;
  InverseReport report;
};

/// Newton inversion of the exact maps. The coin must lie in the image of the
/// forward map (beta = 0 or pi for the magnetic case, +-pi/2 for Dirac).
/// Throws InvalidParams outside the image, NoConvergence after 100 iterations.
MagneticInverse magnetic_from_coin(const CoinParams& p);
/// Throws ChargeUnidentifiable if a_x == 0.
DiracInverse dirac_from_coin(const CoinParams& p, double a_x, double eps);

/// Inverse of the linearized Dirac map: m ~ -sin(theta)/eps, q ~ -tan(alpha)/(A eps),
/// with theta the signed (raw) angle.
std::pair<double, double> dirac_first_order_inverse(const CoinParams& p, double a_x, double eps);

/// d(theta, alpha) / d(physical), rows theta then alpha, theta canonical.
struct Jacobian2 {
  std::array<double, 4> j{};  // row-major
  std::vector<std::string> labels;  // physical parameter names
  double operator()(std::size_t r, std::size_t c) const { return j[r * 2 + c]; }
};

Jacobian2 magnetic_jacobian(const MagneticField& f);
Jacobian2 dirac_jacobian(const DiracParams& d);

/// F_phys = J^T F_coin J over the (theta, alpha) block. Throws SingularJacobian.
ParamMatrix pullback_qfim(const ParamMatrix& coin_fisher, const Jacobian2& jac);

/// QFI against t: t, QFI for the maximizing (r_y = 0) and minimizing (r_y = +-1)
/// coin states, closed forms; alpha = beta = 0.
Table sweep_fig1(double theta, std::int64_t t_max, std::int64_t t_step = 1);
/// Bounds against t: t, theta, Holevo bound g(theta)/t^2 and Tr(F^-1) of the
/// asymptotic QFIm (entangled fixture).
Table sweep_fig2(const std::vector<double>& thetas, std::int64_t t_max, std::int64_t t_step = 1);
/// Inset prefactors over theta in (0, pi/2): f_r for r_y = 0 and r_y = 1, and g.
Table sweep_insets(std::size_t n_points);

}  // namespace qwf
