#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qwf/coin.hpp"
#include "qwf/param_matrix.hpp"
#include "qwf/walker.hpp"

namespace qwf {

/// Unnormalized position-space field (derivative states, differences).
struct LatticeField {
  std::int64_t origin = 0;
  std::vector<Vec2> sites;

  Vec2 at(std::int64_t x) const noexcept;
};

LatticeField as_field(const WalkerState& s);
cplx inner(const LatticeField& a, const LatticeField& b);
/// max_x of the largest component difference; windows may differ.
double max_abs_diff(const LatticeField& a, const LatticeField& b);

enum class DerivativeMethod {
  Sum,               // per-node sum over u^{m+1} O u^{dagger (m+1)}, exact
  FiniteDifference,  // central difference of evolved states, step h
  ProductRule,       // differentiate the t-fold product step by step in position space
};

struct DerivativeOptions {
  DerivativeMethod method = DerivativeMethod::Sum;
  double h = 1e-5;
  std::size_t n_nodes = 0;  // 0: smallest exact uniform grid
};

/// |d_mu Psi(t)> in position space over the light-cone window of the evolved state.
LatticeField derivative_state(const WalkerState& init, const CoinParams& p, std::int64_t t,
                              Param mu, const DerivativeOptions& opts = {});

struct OracleResult {
  ParamMatrix fisher;   // 3x3, finite t
  ParamMatrix uhlmann;  // 3x3 antisymmetric, finite t
  std::array<cplx, 3> berry{};  // <Psi|d_mu Psi>, purely imaginary
  std::size_t n_nodes = 0;
};

/// Exact finite-t QFIm and Uhlmann curvature of the pure walker state:
///   F = 4 Re G, D = 4 Im G, G_mn = <d_m Psi|d_n Psi> - <d_m Psi|Psi><Psi|d_n Psi>.
/// Derivatives come from the per-node sum on a uniform k-grid large enough
/// that every integrand (a trigonometric polynomial) is integrated exactly.
/// Uses only raw 2x2 products, never the Bloch/projector machinery.
OracleResult qfim_exact(const WalkerState& init, const CoinParams& p, std::int64_t t,
                        std::size_t n_nodes = 0);

ParamMatrix uhlmann_exact(const WalkerState& init, const CoinParams& p, std::int64_t t);

}  // namespace qwf
