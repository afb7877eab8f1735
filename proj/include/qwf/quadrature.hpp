#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qwf {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(std::size_t n);

/// Composite rule: `panels` equal panels on [a, b], each carrying `order` GL nodes.
QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels, std::size_t order);

struct QuadratureOptions {
  double rel_tol = 1e-9;
  std::size_t order = 16;
  std::size_t initial_panels = 8;
  std::size_t max_panels = std::size_t{1} << 13;
};

struct QuadratureResult {
  std::vector<double> values;
  std::size_t nodes_used = 0;
  double last_change = 0.0;  // max |I_n - I_{n/2}| relative to the largest component
  bool converged = false;
};

/// Integrand writing `dim` real components at k into `out`.
using VectorIntegrand = std::function<void(double k, std::span<double> out)>;

/// Integrates a vector-valued integrand over [a, b], doubling the panel count
/// until successive estimates differ by less than rel_tol (relative to the
/// largest component). Node evaluations run in parallel; sums are taken in
/// node order so results are bit-stable.
QuadratureResult integrate_adaptive(const VectorIntegrand& f, std::size_t dim, double a, double b,
                                    const QuadratureOptions& opts = {});

/// Single pass of a fixed rule, same reduction order as integrate_adaptive.
std::vector<double> integrate_rule(const VectorIntegrand& f, std::size_t dim,
                                   const QuadratureRule& rule);

}  // namespace qwf
