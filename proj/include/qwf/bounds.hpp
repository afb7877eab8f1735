#pragma once

#include <array>
#include <optional>
#include <string>

#include <json.hpp>

#include "qwf/param_matrix.hpp"

namespace qwf {

/// Real symmetric positive-definite 2x2 weight matrix [[w00, w01], [w01, w11]].
class WeightMatrix {
public:
  WeightMatrix(double w00, double w01, double w11);
  static WeightMatrix identity() { return {1.0, 0.0, 1.0}; }

  double operator()(std::size_t i, std::size_t j) const { return m_[i * 2 + j]; }

private:
  std::array<double, 4> m_;
};

/// The identifiable 2x2 block: (theta, alpha) of a 3x3 coin matrix, or the
/// matrix itself when it is already 2x2 (e.g. after a physical pullback).
ParamMatrix identifiable_block(const ParamMatrix& m);

/// C^S = Tr(F^{-1} W) on the identifiable block, inverted by adjugate.
/// Throws SingularFisher naming the non-identifiable parameter.
double symmetric_bound(const ParamMatrix& fisher, const WeightMatrix& w = WeightMatrix::identity());

/// R = || i F^{-1} D ||_inf (largest eigenvalue modulus). Values exceeding 1
/// by less than 1e-9 are reported as 1.
double incompatibility_R(const ParamMatrix& fisher, const ParamMatrix& uhlmann);

inline constexpr double kCompatTolerance = 1e-6;

struct HolevoReport {
  double symmetric = 0.0;     // C^S
  double holevo = 0.0;        // C^H = C^S (compatible models only)
  double incompatibility = 0.0;
  double upper = 0.0;         // (1 + R) C^S
  double uhlmann_ratio = 0.0; // ||D|| / ||F||
  bool certified = false;
  std::optional<double> closed_form;  // g(theta) / t^2 for the entangled fixture
  nlohmann::json to_json() const;
};

/// Compatible-model Holevo bound: requires ||D|| <= kCompatTolerance ||F|| and
/// then certifies C^H = C^S. Otherwise throws IncompatibleModel. When
/// `entangled_theta` is given the closed form g(theta) / t^2 is attached.
HolevoReport holevo_compatible(const ParamMatrix& fisher, const WeightMatrix& w,
                               const ParamMatrix& uhlmann,
                               std::optional<double> entangled_theta = std::nullopt);

/// Sandwich C^S <= C^H <= (1 + R) C^S without an equality claim (finite-t inputs).
HolevoReport holevo_sandwich(const ParamMatrix& fisher, const WeightMatrix& w,
                             const ParamMatrix& uhlmann);

/// g(theta) = (sin t + cos^2 t) / (4 sin t (1 - sin t)); C^H = g / t^2.
double holevo_g(double theta);

}  // namespace qwf
