#include "qwf/cases.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qwf/bounds.hpp"
#include "qwf/error.hpp"
#include "qwf/qfim_analytic.hpp"
#include "qwf/walker.hpp"

namespace qwf {

namespace {

// Both physical maps share one shape: a rotation exp(-i (u s1 + v s2)) with
// X = |(u, v)| and
//   sin theta = -(sin X / X) u,   tan alpha = -(tan X / X) v.

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }
double tanc(double x) { return std::abs(x) < 1e-8 ? 1.0 + x * x / 3.0 : std::tan(x) / x; }
// derivatives divided by x, regular at 0
double sinc_prime_over_x(double x) {
  return std::abs(x) < 1e-4 ? -1.0 / 3.0 + x * x / 30.0
                            : (x * std::cos(x) - std::sin(x)) / (x * x * x);
}
double tanc_prime_over_x(double x) {
  if (std::abs(x) < 1e-4) return 2.0 / 3.0 + 4.0 * x * x / 15.0;
  const double c = std::cos(x);
  return (x / (c * c) - std::tan(x)) / (x * x * x);
}

void check_window(double x, const char* what) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidParams, std::string(what) + " is not finite");
  if (x >= kWindow) {
    std::ostringstream os;
    os.precision(17);
    os << what << " = " << x << " is outside the invertibility window (< pi/2)";
    throw Error(ErrorKind::OutOfWindow, os.str());
  }
}

// (sin theta, tan alpha) as functions of (u, v)
std::array<double, 2> forward(double u, double v) {
  const double x = std::hypot(u, v);
  return {-sinc(x) * u, -tanc(x) * v};
}

// d(sin theta, tan alpha) / d(u, v), row-major
std::array<double, 4> forward_jacobian(double u, double v) {
  const double x = std::hypot(u, v);
  const double sp = sinc_prime_over_x(x);
  const double tp = tanc_prime_over_x(x);
  return {-(sinc(x) + sp * u * u), -sp * u * v, -tp * u * v, -(tanc(x) + tp * v * v)};
}

CoinAngles rotation_angles(double u, double v, double beta) {
  const auto [s, tau] = forward(u, v);
  return {std::asin(s), std::atan(tau), beta};
}

double condition_number(const std::array<double, 4>& a) {
  // singular values of a 2x2 matrix
  const double f = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
  const double det = std::abs(a[0] * a[3] - a[1] * a[2]);
  const double disc = std::sqrt(std::max(0.0, f * f / 4.0 - det * det));
  const double smax = std::sqrt(f / 2.0 + disc);
  const double smin = det / smax;
  return smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

// Signed theta of a canonical coin produced by a map with base phase beta0:
// canonical beta == beta0 keeps the sign, beta0 + pi flips it.
double signed_theta(const CoinParams& p, double beta0, const char* what) {
  constexpr double tol = 1e-9;
  double s;
  if (std::abs(wrap_angle(p.beta() - beta0)) <= tol) {
    s = 1.0;
  } else if (std::abs(wrap_angle(p.beta() - beta0 - kPi)) <= tol) {
    s = -1.0;
  } else {
    throw Error(ErrorKind::InvalidParams,
                std::string("coin is not in the image of the ") + what + " map (beta mismatch)");
  }
  if (p.theta() >= kPi / 2.0) {
    throw Error(ErrorKind::InvalidParams,
                std::string("coin is not in the image of the ") + what + " map (theta >= pi/2)");
  }
  return s * p.theta();
}

struct Solved {
  double u, v;
  InverseReport report;
};

// Solved in the tan-free form (sin t, cos t sin a) = -(sin X / X)(u, v), which
// is equivalent inside the window (cos t cos a = cos X > 0) and stays well
// conditioned as X -> pi/2.
Solved solve_rotation(double theta_signed, double alpha) {
  const std::array<double, 2> target{std::sin(theta_signed), std::cos(theta_signed) * std::sin(alpha)};
  auto image = [](double uu, double vv) {
    const double a = sinc(std::hypot(uu, vv));
    return std::array<double, 2>{-a * uu, -a * vv};
  };
  auto image_jacobian = [](double uu, double vv) {
    const double x = std::hypot(uu, vv);
    const double a = sinc(x);
    const double sp = sinc_prime_over_x(x);
    return std::array<double, 4>{-(a + sp * uu * uu), -sp * uu * vv, -sp * uu * vv, -(a + sp * vv * vv)};
  };
  // first-order guess
  double u = -theta_signed;
  double v = -alpha;
  if (const double x0 = std::hypot(u, v); x0 >= 0.95 * kWindow) {
    u *= 0.95 * kWindow / x0;
    v *= 0.95 * kWindow / x0;
  }
  auto residual_at = [&](double uu, double vv) {
    const auto f = image(uu, vv);
    return std::array<double, 2>{f[0] - target[0], f[1] - target[1]};
  };
  auto rnorm = [](const std::array<double, 2>& r) { return std::max(std::abs(r[0]), std::abs(r[1])); };
  auto r = residual_at(u, v);
  InverseReport rep;
  constexpr int kMaxIter = 100;
  for (int it = 0; it < kMaxIter; ++it) {
    rep.iterations = it;
    if (rnorm(r) <= 2e-16) break;
    const auto j = image_jacobian(u, v);
    const double det = j[0] * j[3] - j[1] * j[2];
    if (det == 0.0 || !std::isfinite(det)) break;
    const double du = -(j[3] * r[0] - j[1] * r[1]) / det;
    const double dv = -(-j[2] * r[0] + j[0] * r[1]) / det;
    // damped step: stay inside the window and do not increase the residual
    double lam = 1.0;
    bool moved = false;
    for (int k = 0; k < 60; ++k, lam *= 0.5) {
      const double nu = u + lam * du;
      const double nv = v + lam * dv;
      if (std::hypot(nu, nv) >= kWindow) continue;
      const auto nr = residual_at(nu, nv);
      if (rnorm(nr) < rnorm(r)) {
        u = nu;
        v = nv;
        r = nr;
        moved = true;
        break;
      }
    }
    if (!moved || std::abs(lam * du) + std::abs(lam * dv) <= 1e-17) break;
    if (it + 1 == kMaxIter) rep.iterations = kMaxIter;
  }
  rep.residual = rnorm(r);
  rep.condition = condition_number(image_jacobian(u, v));
  if (rep.iterations >= kMaxIter || !(rep.residual <= 1e-13)) {
    std::ostringstream os;
    os.precision(3);
    os << "Newton inversion did not converge (residual " << rep.residual << ", iterations "
       << rep.iterations << ")";
    throw Error(ErrorKind::NoConvergence, os.str());
  }
  return {u, v, rep};
}

// d(theta_canonical, alpha) / d(u, v)
std::array<double, 4> angle_jacobian(double u, double v) {
  const auto [s, tau] = forward(u, v);
  const auto j = forward_jacobian(u, v);
  const double dtheta = 1.0 / std::sqrt(1.0 - s * s);
  const double dalpha = 1.0 / (1.0 + tau * tau);
  // canonical theta = |asin s|, so the theta row picks up sign(s)
  const double sg = s > 0.0 ? 1.0 : -1.0;
  return {sg * dtheta * j[0], sg * dtheta * j[1], dalpha * j[2], dalpha * j[3]};
}

}  // namespace

double MagneticField::magnitude() const noexcept { return std::hypot(b2, b3); }

double DiracParams::omega() const noexcept { return std::hypot(q * a_x, m); }

CoinAngles magnetic_coin_angles(const MagneticField& f) {
  check_window(f.magnitude(), "|B|");
  return rotation_angles(f.b2, f.b3, 0.0);
}

CoinAngles dirac_coin_angles(const DiracParams& d) {
  if (!(d.eps > 0.0)) throw Error(ErrorKind::InvalidParams, "Trotter step eps must be positive");
  check_window(d.eps * d.omega(), "eps * Omega");
  return rotation_angles(d.eps * d.m, d.eps * d.q * d.a_x, kPi / 2.0);
}

CoinParams coin_from_magnetic(const MagneticField& f) {
  const CoinAngles a = magnetic_coin_angles(f);
  if (f.b2 == 0.0) {
    throw Error(ErrorKind::InvalidParams, "b2 = 0 gives theta = 0: degenerate (non-mixing) walk");
  }
  return CoinParams(a);
}

CoinParams coin_from_dirac(const DiracParams& d) {
  const CoinAngles a = dirac_coin_angles(d);
  if (d.m == 0.0) {
    throw Error(ErrorKind::InvalidParams, "m = 0 gives theta = 0: degenerate (non-mixing) walk");
  }
  return CoinParams(a);
}

CoinAngles magnetic_coin_angles_first_order(const MagneticField& f) { return {-f.b2, -f.b3, 0.0}; }

CoinAngles dirac_coin_angles_first_order(const DiracParams& d) {
  return {-d.m * d.eps, -d.q * d.a_x * d.eps, kPi / 2.0};
}

MagneticInverse magnetic_from_coin(const CoinParams& p) {
  const double th = signed_theta(p, 0.0, "magnetic");
  const Solved s = solve_rotation(th, p.alpha());
  return {{s.u, s.v}, s.report};
}

DiracInverse dirac_from_coin(const CoinParams& p, double a_x, double eps) {
  if (a_x == 0.0) {
    throw Error(ErrorKind::ChargeUnidentifiable, "A_x = 0: the charge does not enter the coin");
  }
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidParams, "Trotter step eps must be positive");
  const double th = signed_theta(p, kPi / 2.0, "Dirac");
  const Solved s = solve_rotation(th, p.alpha());
  return {s.u / eps, s.v / (eps * a_x), s.report};
}

std::pair<double, double> dirac_first_order_inverse(const CoinParams& p, double a_x, double eps) {
  if (a_x == 0.0) {
    throw Error(ErrorKind::ChargeUnidentifiable, "A_x = 0: the charge does not enter the coin");
  }
  const double th = signed_theta(p, kPi / 2.0, "Dirac");
  return {-std::sin(th) / eps, -std::tan(p.alpha()) / (a_x * eps)};
}

Jacobian2 magnetic_jacobian(const MagneticField& f) {
  check_window(f.magnitude(), "|B|");
  return {angle_jacobian(f.b2, f.b3), {"b2", "b3"}};
}

Jacobian2 dirac_jacobian(const DiracParams& d) {
  check_window(d.eps * d.omega(), "eps * Omega");
  auto j = angle_jacobian(d.eps * d.m, d.eps * d.q * d.a_x);
  // chain rule: u = eps m, v = eps A q
  j[0] *= d.eps;
  j[2] *= d.eps;
  j[1] *= d.eps * d.a_x;
  j[3] *= d.eps * d.a_x;
  return {j, {"m", "q"}};
}

ParamMatrix pullback_qfim(const ParamMatrix& coin_fisher, const Jacobian2& jac) {
  const ParamMatrix f = identifiable_block(coin_fisher);
  const auto& j = jac.j;
  const double jn = std::max({std::abs(j[0]), std::abs(j[1]), std::abs(j[2]), std::abs(j[3])});
  const double det = j[0] * j[3] - j[1] * j[2];
  if (!(jn > 0.0) || std::abs(det) <= 1e-14 * jn * jn) {
    throw Error(ErrorKind::SingularJacobian, "parameter map Jacobian is singular");
  }
  std::vector<double> out(4, 0.0);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      double acc = 0.0;
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) acc += jac(r, a) * f(r, c) * jac(c, b);
      }
      out[a * 2 + b] = acc;
    }
  }
  // symmetrize the rounding
  const double off = 0.5 * (out[1] + out[2]);
  out[1] = out[2] = off;
  return ParamMatrix(jac.labels, std::move(out), f.t(), f.regime());
}

Table sweep_fig1(double theta, std::int64_t t_max, std::int64_t t_step) {
  if (t_max < 1 || t_step < 1) throw Error(ErrorKind::InvalidParams, "t_max and t_step must be >= 1");
  Table tab({"t", "qfi_max", "qfi_min", "ratio"});
  for (std::int64_t t = t_step; t <= t_max; t += t_step) {
    const double hi = single_param_qfi(theta, 0.0, t);
    const double lo = single_param_qfi(theta, 1.0, t);
    tab.add_row({static_cast<double>(t), hi, lo, hi / lo});
  }
  return tab;
}

Table sweep_fig2(const std::vector<double>& thetas, std::int64_t t_max, std::int64_t t_step) {
  if (t_max < 1 || t_step < 1) throw Error(ErrorKind::InvalidParams, "t_max and t_step must be >= 1");
  Table tab({"t", "theta", "holevo", "trace_inverse_qfim"});
  const WalkerState init = make_initial(Entangled{0, 1});
  for (double th : thetas) {
    const CoinParams p(th, 0.0, 0.0);
    // C^S at t = 1 scales exactly as 1/t^2 in the asymptotic regime
    const double cs1 = symmetric_bound(qfim_asymptotic(p, init, 1).fisher);
    const double g = holevo_g(p.theta());
    for (std::int64_t t = t_step; t <= t_max; t += t_step) {
      const double t2 = static_cast<double>(t) * static_cast<double>(t);
      tab.add_row({static_cast<double>(t), p.theta(), g / t2, cs1 / t2});
    }
  }
  return tab;
}

Table sweep_insets(std::size_t n_points) {
  if (n_points < 2) throw Error(ErrorKind::InvalidParams, "need at least 2 points");
  Table tab({"theta", "f_ry0", "f_ry1", "g"});
  // open interval (0, pi/2)
  for (std::size_t i = 1; i <= n_points; ++i) {
    const double th = (kPi / 2.0) * static_cast<double>(i) / static_cast<double>(n_points + 1);
    tab.add_row({th, single_param_prefactor(th, 0.0), single_param_prefactor(th, 1.0), holevo_g(th)});
  }
  return tab;
}

}  // namespace qwf
