#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qwf {

/// How a Fisher-type matrix was obtained.
enum class Regime {
  Asymptotic,  // leading t^2 order, fast oscillations dropped; relative error O(1/t)
  FiniteT,     // exact at the stated step count
  ClosedForm,  // analytic formula (same asymptotic validity as Asymptotic)
};

enum class Symmetry { Symmetric, Antisymmetric };

const char* to_string(Regime r) noexcept;

/// Small dense real matrix over named parameters: the quantum Fisher matrix
/// (symmetric) or the Uhlmann curvature (antisymmetric).
class ParamMatrix {
public:
  /// Row-major entries. The (anti)symmetry is checked to 1e-12 relative to the
  /// largest entry and then enforced exactly from the upper triangle.
  ParamMatrix(std::vector<std::string> labels, std::vector<double> entries, std::int64_t t,
              Regime regime, Symmetry symmetry = Symmetry::Symmetric);

  static ParamMatrix zeros(std::vector<std::string> labels, std::int64_t t, Regime regime,
                           Symmetry symmetry);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::int64_t t() const noexcept { return t_; }
  Regime regime() const noexcept { return regime_; }
  Symmetry symmetry() const noexcept { return symmetry_; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }
  double at(const std::string& row, const std::string& col) const;
  std::size_t index_of(const std::string& label) const;
  bool has(const std::string& label) const noexcept;

  /// Sub-matrix over the given labels, in that order.
  ParamMatrix block(const std::vector<std::string>& labels) const;
  ParamMatrix scaled(double factor) const;
  ParamMatrix minus(const ParamMatrix& other) const;

  double max_abs() const noexcept;
  /// Eigenvalues of a symmetric matrix, ascending.
  std::vector<double> eigenvalues() const;
  double min_eigenvalue() const;
  /// Smallest eigenvalue >= -tol * max(1, max_abs()).
  bool is_psd(double tol = 1e-9) const;

  nlohmann::json to_json() const;

private:
  std::vector<std::string> labels_;
  std::vector<double> entries_;
  std::int64_t t_;
  Regime regime_;
  Symmetry symmetry_;
};

}  // namespace qwf
