#include "qwf/qfim_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwf/error.hpp"
#include "qwf/kspace.hpp"
#include "qwf/parallel.hpp"

namespace qwf {

namespace {

void check_steps(std::int64_t t) {
  if (t < 1) throw Error(ErrorKind::InvalidParams, "oracle needs t >= 1");
}

/// Per-node state and derivatives at step t.
struct NodeDerivatives {
  Vec2 phi;
  std::array<Vec2, 3> dphi;
};

NodeDerivatives node_derivatives(const Mat2& coin, const std::array<Mat2, 3>& dcoin, double k,
                                 const Vec2& phi0, std::int64_t t) {
  const Mat2 u = u_k(coin, k);
  const Mat2 ud = u.adjoint();
  NodeDerivatives out;
  out.phi = phi0;
  for (std::int64_t s = 0; s < t; ++s) out.phi = u * out.phi;
  for (std::size_t mu = 0; mu < 3; ++mu) {
    const Mat2 o = ud * u_k(dcoin[mu], k);
    // sum_{m=0}^{t-1} u^{m+1} O u^{dagger(m+1)}
    Mat2 term = u * o * ud;
    Mat2 acc = term;
    for (std::int64_t m = 1; m < t; ++m) {
      term = u * term * ud;
      acc = acc + term;
    }
    out.dphi[mu] = acc * out.phi;
  }
  return out;
}

std::vector<Vec2> shift_step(const std::vector<Vec2>& in, const Mat2& coin) {
  std::vector<Vec2> out(in.size() + 2);
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Vec2 c = coin * in[i];
    out[i + 2].c0 += c.c0;
    out[i].c1 += c.c1;
  }
  return out;
}

struct ComplexKahan {
  KahanSum re, im;
  void add(cplx z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

}  // namespace

Vec2 LatticeField::at(std::int64_t x) const noexcept {
  if (x < origin || x >= origin + static_cast<std::int64_t>(sites.size())) return {};
  return sites[static_cast<std::size_t>(x - origin)];
}

LatticeField as_field(const WalkerState& s) {
  return {s.origin(), std::vector<Vec2>(s.sites().begin(), s.sites().end())};
}

cplx inner(const LatticeField& a, const LatticeField& b) {
  const std::int64_t lo = std::max(a.origin, b.origin);
  const std::int64_t hi = std::min(a.origin + static_cast<std::int64_t>(a.sites.size()),
                                   b.origin + static_cast<std::int64_t>(b.sites.size()));
  ComplexKahan acc;
  for (std::int64_t x = lo; x < hi; ++x) acc.add(qwf::inner(a.at(x), b.at(x)));
  return acc.value();
}

double max_abs_diff(const LatticeField& a, const LatticeField& b) {
  const std::int64_t lo = std::min(a.origin, b.origin);
  const std::int64_t hi = std::max(a.origin + static_cast<std::int64_t>(a.sites.size()),
                                   b.origin + static_cast<std::int64_t>(b.sites.size()));
  double worst = 0.0;
  for (std::int64_t x = lo; x < hi; ++x) {
    const Vec2 d = a.at(x) - b.at(x);
    worst = std::max({worst, std::abs(d.c0), std::abs(d.c1)});
  }
  return worst;
}

LatticeField derivative_state(const WalkerState& init, const CoinParams& p, std::int64_t t,
                              Param mu, const DerivativeOptions& opts) {
  check_steps(t);
  const std::int64_t origin = init.origin() - t;
  const std::int64_t width = init.width() + 2 * t;

  switch (opts.method) {
    case DerivativeMethod::FiniteDifference: {
      if (!(opts.h >= 1e-7 && opts.h <= 1e-4)) {
        throw Error(ErrorKind::InvalidParams, "finite-difference step must lie in [1e-7, 1e-4]");
      }
      const WalkerState plus = evolve(init, p.shifted(mu, opts.h), t);
      const WalkerState minus = evolve(init, p.shifted(mu, -opts.h), t);
      LatticeField out{origin, std::vector<Vec2>(static_cast<std::size_t>(width))};
      for (std::size_t i = 0; i < out.sites.size(); ++i) {
        out.sites[i] = (1.0 / (2.0 * opts.h)) * (plus.sites()[i] - minus.sites()[i]);
      }
      return out;
    }
    case DerivativeMethod::ProductRule: {
      const Mat2 coin = build_coin(p);
      const Mat2 dcoin = coin_derivative(p, mu);
      std::vector<Vec2> psi(init.sites().begin(), init.sites().end());
      std::vector<Vec2> dpsi(psi.size());
      for (std::int64_t s = 0; s < t; ++s) {
        std::vector<Vec2> next_d = shift_step(dpsi, coin);
        const std::vector<Vec2> source = shift_step(psi, dcoin);
        for (std::size_t i = 0; i < next_d.size(); ++i) next_d[i] += source[i];
        dpsi = std::move(next_d);
        psi = shift_step(psi, coin);
      }
      return {origin, std::move(dpsi)};
    }
    case DerivativeMethod::Sum:
      break;
  }

  const std::size_t n = opts.n_nodes ? opts.n_nodes : min_nodes_for(width);
  if (n < 2 * static_cast<std::size_t>(width)) {
    throw Error(ErrorKind::Aliasing, "derivative grid too small for the light-cone window");
  }
  const Mat2 coin = build_coin(p);
  const std::array<Mat2, 3> dcoin{coin_derivative(p, Param::Theta), coin_derivative(p, Param::Alpha),
                                  coin_derivative(p, Param::Beta)};
  const std::size_t mu_index = static_cast<std::size_t>(mu);
  std::vector<double> nodes(n);
  std::vector<Vec2> dphi(n);
  parallel_for(n, [&](std::size_t j) {
    nodes[j] = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    dphi[j] = node_derivatives(coin, dcoin, nodes[j], spinor_at(init, nodes[j]), t).dphi[mu_index];
  });
  LatticeField out{origin, std::vector<Vec2>(static_cast<std::size_t>(width))};
  parallel_for(out.sites.size(), [&](std::size_t i) {
    const double x = static_cast<double>(origin + static_cast<std::int64_t>(i));
    Vec2 acc{};
    for (std::size_t j = 0; j < n; ++j) acc += std::polar(1.0, nodes[j] * x) * dphi[j];
    out.sites[i] = (1.0 / static_cast<double>(n)) * acc;
  });
  return out;
}

OracleResult qfim_exact(const WalkerState& init, const CoinParams& p, std::int64_t t,
                        std::size_t n_nodes) {
  check_steps(t);
  const std::int64_t width = init.width() + 2 * t;
  const std::size_t n = n_nodes ? n_nodes : min_nodes_for(width);
  if (n < 2 * static_cast<std::size_t>(width)) {
    throw Error(ErrorKind::Aliasing, "oracle grid too small for the light-cone window");
  }
  const Mat2 coin = build_coin(p);
  const std::array<Mat2, 3> dcoin{coin_derivative(p, Param::Theta), coin_derivative(p, Param::Alpha),
                                  coin_derivative(p, Param::Beta)};

  std::vector<NodeDerivatives> per_node(n);
  parallel_for(n, [&](std::size_t j) {
    const double k = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    per_node[j] = node_derivatives(coin, dcoin, k, spinor_at(init, k), t);
  });

  // uniform weights 1/n integrate every trigonometric polynomial of degree < n exactly
  std::array<std::array<ComplexKahan, 3>, 3> dd{};
  std::array<ComplexKahan, 3> dpsi{};
  for (const NodeDerivatives& nd : per_node) {
    for (std::size_t m = 0; m < 3; ++m) {
      dpsi[m].add(qwf::inner(nd.dphi[m], nd.phi));
      for (std::size_t l = m; l < 3; ++l) dd[m][l].add(qwf::inner(nd.dphi[m], nd.dphi[l]));
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  std::array<cplx, 3> dm_psi{};  // <d_m Psi|Psi>
  for (std::size_t m = 0; m < 3; ++m) dm_psi[m] = inv_n * dpsi[m].value();

  std::vector<double> f(9, 0.0);
  std::vector<double> d(9, 0.0);
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t l = m; l < 3; ++l) {
      const cplx g = inv_n * dd[m][l].value() - dm_psi[m] * std::conj(dm_psi[l]);
      f[m * 3 + l] = f[l * 3 + m] = 4.0 * g.real();
      if (l != m) {
        d[m * 3 + l] = 4.0 * g.imag();
        d[l * 3 + m] = -4.0 * g.imag();
      }
    }
  }
  OracleResult res{ParamMatrix({"theta", "alpha", "beta"}, std::move(f), t, Regime::FiniteT),
                   ParamMatrix({"theta", "alpha", "beta"}, std::move(d), t, Regime::FiniteT,
                               Symmetry::Antisymmetric),
                   {}, n};
  for (std::size_t m = 0; m < 3; ++m) res.berry[m] = std::conj(dm_psi[m]);
  return res;
}

ParamMatrix uhlmann_exact(const WalkerState& init, const CoinParams& p, std::int64_t t) {
  return qfim_exact(init, p, t).uhlmann;
}

}  // namespace qwf
