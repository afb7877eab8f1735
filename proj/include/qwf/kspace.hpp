#pragma once

#include <cstdint>
#include <vector>

#include "qwf/coin.hpp"
#include "qwf/walker.hpp"

namespace qwf {

/// Momentum-space representation of a walker on a uniform grid of nodes
/// k_j = -pi + 2 pi j / n with weights 2 pi / n. The grid also remembers the
/// position window it represents so the inverse transform is exact.
struct KSpinorGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<Vec2> spinors;
  std::int64_t origin = 0;  // first site of the represented window
  std::int64_t width = 0;   // number of sites in the window
  std::int64_t steps_elapsed = 0;

  std::size_t size() const noexcept { return nodes.size(); }
  /// (1 / 2 pi) sum_j w_j |phi_j|^2; equals the state norm without aliasing.
  double norm2() const;
};

/// Fourier amplitude phi(k) = sum_x e^{-ikx} c_x of a position-space state.
Vec2 spinor_at(const WalkerState& s, double k);

/// Uniform nodes on [-pi, pi). Requires n_nodes >= 2 * width; smaller grids
/// are rejected with ErrorKind::Aliasing.
KSpinorGrid to_k_space(const WalkerState& s, std::size_t n_nodes);

/// Inverse transform onto the grid's window. Rejects grids that alias.
WalkerState from_k_space(const KSpinorGrid& g);

/// Applies u_k^t at every node and widens the window by t on each side.
KSpinorGrid evolve_k(const KSpinorGrid& g, const CoinParams& p, std::int64_t t);

/// Smallest power of two >= 2 * width, at least 16.
std::size_t min_nodes_for(std::int64_t width);

}  // namespace qwf
