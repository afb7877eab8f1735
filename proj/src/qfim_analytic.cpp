#include "qwf/qfim_analytic.hpp"

#include <cmath>
#include <string>

#include "qwf/error.hpp"
#include "qwf/kspace.hpp"

namespace qwf {

Bloch4 o_vector(const CoinParams& p, Param mu) {
  const double phi = p.phi();
  const double s2t = std::sin(2.0 * p.theta());
  const double ct = std::cos(p.theta());
  const double st = std::sin(p.theta());
  Bloch4 b;
  switch (mu) {
    case Param::Theta:
      b.c = {0.0, cplx{0.0, -2.0 * std::sin(phi)}, cplx{0.0, 2.0 * std::cos(phi)}, 0.0};
      break;
    case Param::Alpha:
      b.c = {0.0, cplx{0.0, std::cos(phi) * s2t}, cplx{0.0, std::sin(phi) * s2t},
             cplx{0.0, 2.0 * ct * ct}};
      break;
    case Param::Beta:
      b.c = {0.0, cplx{0.0, std::cos(phi) * s2t}, cplx{0.0, std::sin(phi) * s2t},
             cplx{0.0, -2.0 * st * st}};
      break;
  }
  return b;
}

std::vector<double> uniform_k_grid(std::size_t n) {
  std::vector<double> k(n);
  for (std::size_t j = 0; j < n; ++j) {
    k[j] = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
  }
  return k;
}

double beta_null_check(const CoinParams& p, std::span<const double> k_grid) {
  const Bloch4 ob = o_vector(p, Param::Beta);
  double worst = 0.0;
  for (double k : k_grid) worst = std::max(worst, bloch_norm(projector_A1(p, k) * ob));
  return worst;
}

AsymptoticQfim qfim_asymptotic(const CoinParams& p, const WalkerState& init, std::int64_t t,
                               const QuadratureOptions& opts) {
  if (t < 1) throw Error(ErrorKind::InvalidParams, "asymptotic QFIm needs t >= 1");

  const std::array<Bloch4, 3> ovec{o_vector(p, Param::Theta), o_vector(p, Param::Alpha),
                                   o_vector(p, Param::Beta)};
  // layout: 6 upper-triangle entries of the state-independent term,
  // then re/im of the three state overlaps
  constexpr std::size_t kDim = 12;
  const auto integrand = [&](double k, std::span<double> out) {
    const Superop4 a1 = projector_A1(p, k);
    const Vec2 phi0 = spinor_at(init, k);
    const Bloch4 rho = to_bloch(outer(phi0, phi0), OperatorKind::Hermitian);
    const double c0 = rho[0].real();
    std::size_t slot = 0;
    for (std::size_t m = 0; m < 3; ++m) {
      for (std::size_t n = m; n < 3; ++n) {
        out[slot++] = c0 * sandwich(ovec[m], a1, ovec[n]).real() / (2.0 * kPi);
      }
    }
    for (std::size_t m = 0; m < 3; ++m) {
      const cplx v = sandwich(ovec[m], a1, rho);
      out[6 + 2 * m] = v.real() / (2.0 * kPi);
      out[7 + 2 * m] = v.imag() / (2.0 * kPi);
    }
  };

  // Integrate over one period starting at alpha - pi: the projector's
  // normalization peaks at k = alpha and alpha +- pi, which then sit on panel
  // boundaries where Gauss-Legendre nodes cluster.
  const double a = p.alpha() - kPi;
  const QuadratureResult q = integrate_adaptive(integrand, kDim, a, a + 2.0 * kPi, opts);
  if (!q.converged) {
    throw Error(ErrorKind::QuadratureNonConvergence,
                "node doubling stopped at " + std::to_string(q.nodes_used) +
                    " nodes with relative change " + std::to_string(q.last_change));
  }

  AsymptoticQfim res{
      ParamMatrix::zeros({"theta", "alpha", "beta"}, t, Regime::Asymptotic, Symmetry::Symmetric),
      ParamMatrix::zeros({"theta", "alpha", "beta"}, t, Regime::Asymptotic,
                         Symmetry::Antisymmetric),
      {}, {}, 0.0, q.nodes_used, q.last_change};
  std::size_t slot = 0;
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t n = m; n < 3; ++n) {
      res.state_independent[m][n] = q.values[slot];
      res.state_independent[n][m] = q.values[slot];
      ++slot;
    }
  }
  for (std::size_t m = 0; m < 3; ++m) res.state_overlap[m] = {q.values[6 + 2 * m], q.values[7 + 2 * m]};

  // imaginary residue check on a coarse uniform pass
  for (double k : uniform_k_grid(64)) {
    const Superop4 a1 = projector_A1(p, k);
    const Vec2 phi0 = spinor_at(init, k);
    const Bloch4 rho = to_bloch(outer(phi0, phi0), OperatorKind::Hermitian);
    for (std::size_t m = 0; m < 3; ++m) {
      res.imag_residue = std::max(res.imag_residue, std::abs(sandwich(ovec[m], a1, rho).real()));
      for (std::size_t n = 0; n < 3; ++n) {
        res.imag_residue = std::max(res.imag_residue, std::abs(sandwich(ovec[m], a1, ovec[n]).imag()));
      }
    }
  }

  const double t2 = static_cast<double>(t) * static_cast<double>(t);
  std::vector<double> f(9);
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t n = 0; n < 3; ++n) {
      const cplx prod = res.state_overlap[m] * std::conj(res.state_overlap[n]);
      f[m * 3 + n] = t2 * (res.state_independent[m][n] - prod.real());
    }
  }
  res.fisher = ParamMatrix({"theta", "alpha", "beta"}, std::move(f), t, Regime::Asymptotic);
  return res;
}

std::pair<double, double> qfim_max_diag(double theta, std::int64_t t) {
  const double s = std::sin(theta);
  if (!(s > 0.0)) throw Error(ErrorKind::InvalidParams, "qfim_max_diag needs sin(theta) > 0");
  const double t2 = static_cast<double>(t) * static_cast<double>(t);
  return {4.0 * t2 * s / (1.0 + s), 4.0 * t2 * (1.0 - s)};
}

double golden_theta() { return std::asin((std::sqrt(5.0) - 1.0) / 2.0); }

ParamMatrix qfim_localized(double theta, double phi, const CoinBlochState& r, std::int64_t t) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const std::array<double, 3> n{s * std::cos(phi), s * std::sin(phi), c};
  const double n_dot_r = n[0] * r.r[0] + n[1] * r.r[1] + n[2] * r.r[2];
  const double cross_z = n[0] * r.r[1] - n[1] * r.r[0];
  const double t2 = static_cast<double>(t) * static_cast<double>(t);

  const double f_tt = 4.0 * t2 / (1.0 + s) * (s - cross_z * cross_z / (1.0 + s));
  const double f_pp = 4.0 * t2 * (1.0 - s) * (1.0 - n_dot_r * n_dot_r / (1.0 + s));
  const double f_tp = -4.0 * t2 * (1.0 - s) / (c * (1.0 + s)) * n_dot_r * cross_z;
  return ParamMatrix({"theta", "phi"}, {f_tt, f_tp, f_tp, f_pp}, t, Regime::ClosedForm);
}

ParamMatrix qfim_localized(const CoinParams& p, const CoinBlochState& r, std::int64_t t) {
  const ParamMatrix m = qfim_localized(p.theta(), p.phi(), r, t);
  return ParamMatrix({"theta", "alpha"}, m.entries(), t, Regime::ClosedForm);
}

double single_param_prefactor(double theta, double r_y) {
  const double s = std::sin(theta);
  return 4.0 * s * (1.0 + s * (1.0 - r_y * r_y)) / ((1.0 + s) * (1.0 + s));
}

double single_param_qfi(double theta, double r_y, std::int64_t t) {
  if (std::abs(r_y) > 1.0) throw Error(ErrorKind::InvalidParams, "|r_y| must be <= 1");
  return static_cast<double>(t) * static_cast<double>(t) * single_param_prefactor(theta, r_y);
}

}  // namespace qwf
