#include "qwf/kspace.hpp"

#include <cmath>
#include <string>

#include "qwf/error.hpp"
#include "qwf/parallel.hpp"

namespace qwf {

namespace {

void check_aliasing(std::size_t n_nodes, std::int64_t width) {
  if (n_nodes < 2 * static_cast<std::size_t>(width)) {
    throw Error(ErrorKind::Aliasing, "k-grid of " + std::to_string(n_nodes) +
                                         " nodes cannot represent a window of " +
                                         std::to_string(width) + " sites (need >= " +
                                         std::to_string(2 * width) + ")");
  }
}

}  // namespace

double KSpinorGrid::norm2() const {
  KahanSum acc;
  for (std::size_t j = 0; j < spinors.size(); ++j) acc.add(weights[j] * qwf::norm2(spinors[j]));
  return acc.value() / (2.0 * kPi);
}

Vec2 spinor_at(const WalkerState& s, double k) {
  Vec2 acc{};
  const auto sites = s.sites();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const double x = static_cast<double>(s.origin() + static_cast<std::int64_t>(i));
    acc += std::polar(1.0, -k * x) * sites[i];
  }
  return acc;
}

std::size_t min_nodes_for(std::int64_t width) {
  std::size_t n = 16;
  while (n < 2 * static_cast<std::size_t>(width)) n *= 2;
  return n;
}

KSpinorGrid to_k_space(const WalkerState& s, std::size_t n_nodes) {
  check_aliasing(n_nodes, s.width());
  KSpinorGrid g;
  g.origin = s.origin();
  g.width = s.width();
  g.steps_elapsed = s.steps_elapsed();
  g.nodes.resize(n_nodes);
  g.weights.assign(n_nodes, 2.0 * kPi / static_cast<double>(n_nodes));
  g.spinors.resize(n_nodes);
  for (std::size_t j = 0; j < n_nodes; ++j) {
    g.nodes[j] = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_nodes);
  }
  parallel_for(n_nodes, [&](std::size_t j) { g.spinors[j] = spinor_at(s, g.nodes[j]); });
  return g;
}

WalkerState from_k_space(const KSpinorGrid& g) {
  check_aliasing(g.size(), g.width);
  std::vector<Vec2> sites(static_cast<std::size_t>(g.width));
  parallel_for(sites.size(), [&](std::size_t i) {
    const double x = static_cast<double>(g.origin + static_cast<std::int64_t>(i));
    Vec2 acc{};
    for (std::size_t j = 0; j < g.size(); ++j) {
      acc += (g.weights[j] / (2.0 * kPi)) * (std::polar(1.0, g.nodes[j] * x) * g.spinors[j]);
    }
    sites[i] = acc;
  });
  return WalkerState(g.origin, std::move(sites), g.steps_elapsed);
}

KSpinorGrid evolve_k(const KSpinorGrid& g, const CoinParams& p, std::int64_t t) {
  if (t < 0) throw Error(ErrorKind::InvalidParams, "number of steps must be non-negative");
  KSpinorGrid out = g;
  const Mat2 coin = build_coin(p);
  parallel_for(g.size(), [&](std::size_t j) {
    const Mat2 u = u_k(coin, g.nodes[j]);
    Vec2 v = g.spinors[j];
    for (std::int64_t s = 0; s < t; ++s) v = u * v;
    out.spinors[j] = v;
  });
  out.origin = g.origin - t;
  out.width = g.width + 2 * t;
  out.steps_elapsed = g.steps_elapsed + t;
  return out;
}

}  // namespace qwf
