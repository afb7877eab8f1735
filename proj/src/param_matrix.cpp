#include "qwf/param_matrix.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qwf/error.hpp"

namespace qwf {

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Asymptotic: return "asymptotic t>>1";
    case Regime::FiniteT: return "finite t";
    case Regime::ClosedForm: return "closed form (asymptotic t>>1)";
  }
  return "?";
}

ParamMatrix::ParamMatrix(std::vector<std::string> labels, std::vector<double> entries,
                         std::int64_t t, Regime regime, Symmetry symmetry)
    : labels_(std::move(labels)),
      entries_(std::move(entries)),
      t_(t),
      regime_(regime),
      symmetry_(symmetry) {
  const std::size_t n = labels_.size();
  if (entries_.size() != n * n) {
    throw Error(ErrorKind::InvalidParams, "matrix entries do not match label count");
  }
  const double scale = std::max(1.0, max_abs());
  const double sign = symmetry_ == Symmetry::Symmetric ? 1.0 : -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (symmetry_ == Symmetry::Antisymmetric && std::abs(entries_[i * n + i]) > 1e-12 * scale) {
      throw Error(ErrorKind::InvalidParams, "antisymmetric matrix with nonzero diagonal");
    }
    if (symmetry_ == Symmetry::Antisymmetric) entries_[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(entries_[i * n + j] - sign * entries_[j * n + i]) > 1e-12 * scale) {
        throw Error(ErrorKind::InvalidParams, "matrix violates its declared symmetry");
      }
      entries_[j * n + i] = sign * entries_[i * n + j];
    }
  }
}

ParamMatrix ParamMatrix::zeros(std::vector<std::string> labels, std::int64_t t, Regime regime,
                               Symmetry symmetry) {
  const std::size_t n = labels.size();
  return ParamMatrix(std::move(labels), std::vector<double>(n * n, 0.0), t, regime, symmetry);
}

std::size_t ParamMatrix::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(ErrorKind::InvalidParams, "no parameter named " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

bool ParamMatrix::has(const std::string& label) const noexcept {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

double ParamMatrix::at(const std::string& row, const std::string& col) const {
  return (*this)(index_of(row), index_of(col));
}

ParamMatrix ParamMatrix::block(const std::vector<std::string>& labels) const {
  std::vector<std::size_t> idx;
  for (const auto& l : labels) idx.push_back(index_of(l));
  std::vector<double> e;
  for (std::size_t i : idx)
    for (std::size_t j : idx) e.push_back((*this)(i, j));
  return ParamMatrix(labels, std::move(e), t_, regime_, symmetry_);
}

ParamMatrix ParamMatrix::scaled(double factor) const {
  std::vector<double> e = entries_;
  for (double& v : e) v *= factor;
  return ParamMatrix(labels_, std::move(e), t_, regime_, symmetry_);
}

ParamMatrix ParamMatrix::minus(const ParamMatrix& other) const {
  if (other.labels_ != labels_) throw Error(ErrorKind::InvalidParams, "label mismatch");
  std::vector<double> e = entries_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= other.entries_[i];
  return ParamMatrix(labels_, std::move(e), t_, regime_, symmetry_);
}

double ParamMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> ParamMatrix::eigenvalues() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double ParamMatrix::min_eigenvalue() const { return eigenvalues().front(); }

bool ParamMatrix::is_psd(double tol) const {
  return min_eigenvalue() >= -tol * std::max(1.0, max_abs());
}

nlohmann::json ParamMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < size(); ++j) row.push_back((*this)(i, j));
    rows.push_back(row);
  }
  return {{"labels", labels_},
          {"t", t_},
          {"regime", to_string(regime_)},
          {"symmetry", symmetry_ == Symmetry::Symmetric ? "symmetric" : "antisymmetric"},
          {"entries", rows}};
}

}  // namespace qwf
