#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qwf/bloch.hpp"
#include "qwf/coin.hpp"
#include "qwf/param_matrix.hpp"
#include "qwf/quadrature.hpp"
#include "qwf/walker.hpp"

namespace qwf {

/// Bloch vector of O_mu = u_k^dagger d_mu u_k = C^dagger d_mu C (independent of k):
///   theta: 2i (0, -sin phi, cos phi, 0)
///   alpha:  i (0, cos phi sin 2t, sin phi sin 2t, 2 cos^2 t)
///   beta:   i (0, cos phi sin 2t, sin phi sin 2t, -2 sin^2 t)
Bloch4 o_vector(const CoinParams& p, Param mu);

/// Uniform grid k_j = -pi + 2 pi j / n.
std::vector<double> uniform_k_grid(std::size_t n);

/// max_k |A1_k O_beta|; zero up to rounding for every coin.
double beta_null_check(const CoinParams& p, std::span<const double> k_grid);

/// Asymptotic (t >> 1) QFIm from the eigenvalue-1 projector:
///   F_mn = t^2 { int dk/2pi c0(k) (O_m|A1_k|O_n)
///                - [int dk/2pi (O_m|A1_k|rho0_k)] [int dk/2pi (rho0_k|A1_k|O_n)] }
/// where rho0_k = phi_k(0) phi_k(0)^dagger and c0(k) = |phi_k(0)|^2 (= 1 for
/// localized and two-site entangled states). The finite-t deviation is O(1/t)
/// relative.
struct AsymptoticQfim {
  ParamMatrix fisher;   // 3x3 over theta, alpha, beta
  ParamMatrix uhlmann;  // identically zero
  /// int dk/2pi c0 (O_m|A1|O_n), real.
  std::array<std::array<double, 3>, 3> state_independent{};
  /// int dk/2pi (O_m|A1|rho0), purely imaginary.
  std::array<cplx, 3> state_overlap{};
  /// Largest imaginary residue of the real-by-construction quadratic forms.
  double imag_residue = 0.0;
  std::size_t nodes_used = 0;
  double last_change = 0.0;

  ParamMatrix fisher2() const { return fisher.block({"theta", "alpha"}); }
};

/// Throws QuadratureNonConvergence if node doubling does not settle.
AsymptoticQfim qfim_asymptotic(const CoinParams& p, const WalkerState& init, std::int64_t t,
                               const QuadratureOptions& opts = {});

/// Upper bounds on the diagonal QFIm entries reached when the state-dependent
/// term vanishes: (4 t^2 sin t / (1 + sin t), 4 t^2 (1 - sin t)).
std::pair<double, double> qfim_max_diag(double theta, std::int64_t t);

/// theta at which both maxima coincide: sin theta = (sqrt 5 - 1) / 2.
double golden_theta();

/// Localized walker with coin Bloch vector r; closed forms over (theta, phi)
/// with phi = alpha - beta and n = (sin t cos phi, sin t sin phi, cos t).
ParamMatrix qfim_localized(double theta, double phi, const CoinBlochState& r, std::int64_t t);
/// Same over (theta, alpha) at fixed beta; d phi / d alpha = 1.
ParamMatrix qfim_localized(const CoinParams& p, const CoinBlochState& r, std::int64_t t);

/// Single-parameter prefactor f_r(theta) for alpha = beta = 0:
///   4 sin t (1 + sin t (1 - r_y^2)) / (1 + sin t)^2.
double single_param_prefactor(double theta, double r_y);
double single_param_qfi(double theta, double r_y, std::int64_t t);

}  // namespace qwf
