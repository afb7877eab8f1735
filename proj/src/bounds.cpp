#include "qwf/bounds.hpp"

#include <cmath>
#include <complex>

#include "qwf/error.hpp"
#include "qwf/mat2.hpp"

namespace qwf {

namespace {

using Mat22 = std::array<double, 4>;

Mat22 to_mat22(const ParamMatrix& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

Mat22 inverse_checked(const ParamMatrix& f) {
  const Mat22 a = to_mat22(f);
  const double scale = std::max(std::abs(a[0]), std::abs(a[3]));
  const double det = a[0] * a[3] - a[1] * a[2];
  const double tol = 1e-12;
  if (scale == 0.0 || std::abs(det) <= tol * scale * scale) {
    std::string which;
    if (std::abs(a[0]) <= tol * scale) which = f.labels()[0];
    if (std::abs(a[3]) <= tol * scale) which += (which.empty() ? "" : ", ") + f.labels()[1];
    if (which.empty()) which = f.labels()[0] + " and " + f.labels()[1] + " (jointly)";
    throw Error(ErrorKind::SingularFisher, "Fisher matrix is singular; non-identifiable: " + which);
  }
  return {a[3] / det, -a[1] / det, -a[2] / det, a[0] / det};
}

}  // namespace

WeightMatrix::WeightMatrix(double w00, double w01, double w11) : m_{w00, w01, w01, w11} {
  if (!(w00 > 0.0) || !(w00 * w11 - w01 * w01 > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "weight matrix must be positive definite");
  }
}

ParamMatrix identifiable_block(const ParamMatrix& m) {
  if (m.size() == 2) return m;
  if (m.has("theta") && m.has("alpha")) return m.block({"theta", "alpha"});
  throw Error(ErrorKind::InvalidParams, "cannot find a 2x2 identifiable block");
}

double symmetric_bound(const ParamMatrix& fisher, const WeightMatrix& w) {
  const Mat22 inv = inverse_checked(identifiable_block(fisher));
  // Tr(F^{-1} W)
  return inv[0] * w(0, 0) + inv[1] * w(1, 0) + inv[2] * w(0, 1) + inv[3] * w(1, 1);
}

double incompatibility_R(const ParamMatrix& fisher, const ParamMatrix& uhlmann) {
  const ParamMatrix fb = identifiable_block(fisher);
  const ParamMatrix db = identifiable_block(uhlmann);
  const Mat22 inv = inverse_checked(fb);
  const Mat22 d = to_mat22(db);
  // M = i F^{-1} D
  const std::array<cplx, 4> m{kI * (inv[0] * d[0] + inv[1] * d[2]), kI * (inv[0] * d[1] + inv[1] * d[3]),
                              kI * (inv[2] * d[0] + inv[3] * d[2]), kI * (inv[2] * d[1] + inv[3] * d[3])};
  const cplx tr = m[0] + m[3];
  const cplx det = m[0] * m[3] - m[1] * m[2];
  const cplx disc = std::sqrt(tr * tr / 4.0 - det);
  double r = std::max(std::abs(tr / 2.0 + disc), std::abs(tr / 2.0 - disc));
  if (r > 1.0 && r - 1.0 < 1e-9) r = 1.0;
  return r;
}

double holevo_g(double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return (s + c * c) / (4.0 * s * (1.0 - s));
}

nlohmann::json HolevoReport::to_json() const {
  nlohmann::json j{{"symmetric_bound", symmetric},
                   {"holevo_bound", certified ? nlohmann::json(holevo) : nlohmann::json(nullptr)},
                   {"incompatibility_R", incompatibility},
                   {"holevo_upper", upper},
                   {"uhlmann_ratio", uhlmann_ratio},
                   {"certified_compatible", certified}};
  if (closed_form) j["closed_form"] = *closed_form;
  return j;
}

HolevoReport holevo_sandwich(const ParamMatrix& fisher, const WeightMatrix& w,
                             const ParamMatrix& uhlmann) {
  HolevoReport r;
  r.symmetric = symmetric_bound(fisher, w);
  r.incompatibility = incompatibility_R(fisher, uhlmann);
  r.upper = (1.0 + r.incompatibility) * r.symmetric;
  const double fnorm = identifiable_block(fisher).max_abs();
  r.uhlmann_ratio = fnorm > 0.0 ? identifiable_block(uhlmann).max_abs() / fnorm : 0.0;
  return r;
}

HolevoReport holevo_compatible(const ParamMatrix& fisher, const WeightMatrix& w,
                               const ParamMatrix& uhlmann, std::optional<double> entangled_theta) {
  HolevoReport r = holevo_sandwich(fisher, w, uhlmann);
  if (r.uhlmann_ratio > kCompatTolerance) {
    throw Error(ErrorKind::IncompatibleModel,
                "Uhlmann curvature is not negligible (||D||/||F|| = " +
                    std::to_string(r.uhlmann_ratio) + "); only the sandwich bound applies");
  }
  r.holevo = r.symmetric;
  r.certified = true;
  if (entangled_theta) {
    const double t = static_cast<double>(fisher.t());
    r.closed_form = holevo_g(*entangled_theta) / (t * t);
  }
  return r;
}

}  // namespace qwf
