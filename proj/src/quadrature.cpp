#include "qwf/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "qwf/error.hpp"
#include "qwf/mat2.hpp"
#include "qwf/parallel.hpp"

namespace qwf {

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidParams, "Gauss-Legendre order must be positive");
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th root
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t l = 2; l <= n; ++l) {
        const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / static_cast<double>(l);
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pn1 = n == 1 ? 1.0 : p0;
      dp = static_cast<double>(n) * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t l = 2; l <= n; ++l) {
      const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / static_cast<double>(l);
      p0 = p1;
      p1 = p2;
    }
    const double pn1 = n == 1 ? 1.0 : p0;
    const double pn = n == 1 ? x : p1;
    dp = static_cast<double>(n) * (x * pn - pn1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels, std::size_t order) {
  const QuadratureRule base = gauss_legendre(order);
  QuadratureRule r;
  r.nodes.reserve(panels * order);
  r.weights.reserve(panels * order);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < order; ++i) {
      r.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      r.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return r;
}

std::vector<double> integrate_rule(const VectorIntegrand& f, std::size_t dim,
                                   const QuadratureRule& rule) {
  const std::size_t n = rule.nodes.size();
  std::vector<double> samples(n * dim, 0.0);
  parallel_for(n, [&](std::size_t i) {
    f(rule.nodes[i], std::span<double>(samples.data() + i * dim, dim));
  });
  std::vector<KahanSum> acc(dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 0; d < dim; ++d) acc[d].add(rule.weights[i] * samples[i * dim + d]);
  std::vector<double> out(dim);
  for (std::size_t d = 0; d < dim; ++d) out[d] = acc[d].value();
  return out;
}

QuadratureResult integrate_adaptive(const VectorIntegrand& f, std::size_t dim, double a, double b,
                                    const QuadratureOptions& opts) {
  QuadratureResult res;
  std::size_t panels = std::max<std::size_t>(1, opts.initial_panels);
  std::vector<double> prev = integrate_rule(f, dim, composite_gauss_legendre(a, b, panels, opts.order));
  res.nodes_used = panels * opts.order;
  while (panels < opts.max_panels) {
    panels *= 2;
    std::vector<double> next =
        integrate_rule(f, dim, composite_gauss_legendre(a, b, panels, opts.order));
    double scale = 0.0;
    double change = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      scale = std::max(scale, std::abs(next[d]));
      change = std::max(change, std::abs(next[d] - prev[d]));
    }
    res.nodes_used = panels * opts.order;
    res.last_change = scale > 0.0 ? change / scale : change;
    prev = std::move(next);
    if (res.last_change < opts.rel_tol) {
      res.converged = true;
      break;
    }
  }
  res.values = std::move(prev);
  return res;
}

}  // namespace qwf
