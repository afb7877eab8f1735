#include "qwf/bloch.hpp"

#include <cmath>

#include "qwf/error.hpp"

namespace qwf {

Bloch4 to_bloch(const Mat2& op, OperatorKind kind) {
  Bloch4 b;
  for (std::size_t i = 0; i < 4; ++i) b.c[i] = (op * pauli::basis[i]).trace();
  if (kind == OperatorKind::General) return b;

  double scale = 0.0;
  double residual = 0.0;
  for (cplx& v : b.c) {
    scale = std::max(scale, std::abs(v));
    if (kind == OperatorKind::Hermitian) {
      residual = std::max(residual, std::abs(v.imag()));
      v = {v.real(), 0.0};
    } else {
      residual = std::max(residual, std::abs(v.real()));
      v = {0.0, v.imag()};
    }
  }
  if (residual > 1e-12 * std::max(1.0, scale)) {
    throw Error(ErrorKind::InvalidParams, kind == OperatorKind::Hermitian
                                              ? "operator is not Hermitian"
                                              : "operator is not anti-Hermitian");
  }
  return b;
}

Mat2 from_bloch(const Bloch4& b) {
  Mat2 out = Mat2::zero();
  for (std::size_t i = 0; i < 4; ++i) out = out + (0.5 * b.c[i]) * pauli::basis[i];
  return out;
}

cplx bloch_inner(const Bloch4& a, const Bloch4& b) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) acc += std::conj(a.c[i]) * b.c[i];
  return acc;
}

double bloch_norm(const Bloch4& a) { return std::sqrt(bloch_inner(a, a).real()); }

namespace {

cplx dot3(const Bloch4& a, const Bloch4& b) { return a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

cplx triple3(const Bloch4& a, const Bloch4& b, const Bloch4& c) {
  return a[1] * (b[2] * c[3] - b[3] * c[2]) + a[2] * (b[3] * c[1] - b[1] * c[3]) +
         a[3] * (b[1] * c[2] - b[2] * c[1]);
}

}  // namespace

cplx trace_product(const Bloch4& a, const Bloch4& b) { return 0.5 * (a[0] * b[0] + dot3(a, b)); }

cplx trace_triple(const Bloch4& a, const Bloch4& b, const Bloch4& c) {
  return 0.25 * (kI * triple3(a, b, c) + a[0] * dot3(b, c) + b[0] * dot3(a, c) +
                 c[0] * dot3(a, b) + a[0] * b[0] * c[0]);
}

cplx trace_anticommutator(const Bloch4& a, const Bloch4& b, const Bloch4& c) {
  return 0.5 * (a[0] * dot3(b, c) + b[0] * dot3(a, c) + c[0] * dot3(a, b) + a[0] * b[0] * c[0]);
}

cplx trace_commutator(const Bloch4& a, const Bloch4& b, const Bloch4& c) {
  return 0.5 * kI * triple3(a, b, c);
}

Superop4 Superop4::identity() {
  Superop4 s;
  for (std::size_t i = 0; i < 4; ++i) s.m[i][i] = 1.0;
  return s;
}

double Superop4::trace() const { return m[0][0] + m[1][1] + m[2][2] + m[3][3]; }

double Superop4::spatial_det() const {
  return m[1][1] * (m[2][2] * m[3][3] - m[2][3] * m[3][2]) -
         m[1][2] * (m[2][1] * m[3][3] - m[2][3] * m[3][1]) +
         m[1][3] * (m[2][1] * m[3][2] - m[2][2] * m[3][1]);
}

Superop4 operator*(const Superop4& x, const Superop4& y) {
  Superop4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (std::size_t l = 0; l < 4; ++l) acc += x.m[i][l] * y.m[l][j];
      out.m[i][j] = acc;
    }
  return out;
}

Bloch4 operator*(const Superop4& x, const Bloch4& b) {
  Bloch4 out;
  for (std::size_t i = 0; i < 4; ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < 4; ++j) acc += x.m[i][j] * b.c[j];
    out.c[i] = acc;
  }
  return out;
}

Superop4 operator-(const Superop4& x, const Superop4& y) {
  Superop4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out.m[i][j] = x.m[i][j] - y.m[i][j];
  return out;
}

double max_abs(const Superop4& s) {
  double out = 0.0;
  for (const auto& row : s.m)
    for (double v : row) out = std::max(out, std::abs(v));
  return out;
}

double max_abs(const Bloch4& b) {
  double out = 0.0;
  for (const cplx& v : b.c) out = std::max(out, std::abs(v));
  return out;
}

cplx sandwich(const Bloch4& a, const Superop4& M, const Bloch4& b) { return bloch_inner(a, M * b); }

Superop4 superop_matrix(const CoinParams& p, double k) {
  const double ka = k - p.alpha();
  const double kb = k - p.beta();
  const double c2 = std::cos(p.theta()) * std::cos(p.theta());
  const double s2 = std::sin(p.theta()) * std::sin(p.theta());
  const double s2t = std::sin(2.0 * p.theta());
  const double sum_angle = 2.0 * k - p.alpha() - p.beta();

  Superop4 a;
  a.m[0] = {1.0, 0.0, 0.0, 0.0};
  a.m[1] = {0.0, std::cos(2.0 * ka) * c2 - std::cos(2.0 * kb) * s2,
            -std::sin(2.0 * ka) * c2 - std::sin(2.0 * kb) * s2, -std::cos(sum_angle) * s2t};
  a.m[2] = {0.0, std::sin(2.0 * ka) * c2 - std::sin(2.0 * kb) * s2,
            std::cos(2.0 * ka) * c2 + std::cos(2.0 * kb) * s2, -std::sin(sum_angle) * s2t};
  a.m[3] = {0.0, std::cos(p.phi()) * s2t, std::sin(p.phi()) * s2t, std::cos(2.0 * p.theta())};
  return a;
}

Spectrum spectral(const CoinParams& p, double k, double eps_deg) {
  const double ct = std::cos(p.theta());
  const double st = std::sin(p.theta());
  const double ka = k - p.alpha();
  const double kb = k - p.beta();
  const double cos_omega = std::cos(ka) * ct;
  if (std::abs(cos_omega) >= 1.0 - eps_deg) {
    throw Error(ErrorKind::DegenerateK, "|cos omega| = " + std::to_string(std::abs(cos_omega)) +
                                            " too close to 1 at k = " + std::to_string(k));
  }
  Spectrum s;
  s.omega = std::acos(cos_omega);
  s.eigenvalues = {1.0, 1.0, std::polar(1.0, 2.0 * s.omega), std::polar(1.0, -2.0 * s.omega)};
  const double n1 = 1.0 / std::sqrt(2.0 * (1.0 - cos_omega));
  const double n2 = 1.0 / std::sqrt(2.0 * (1.0 + cos_omega));
  const std::array<double, 3> spatial{std::sin(kb) * st, -std::cos(kb) * st, std::sin(ka) * ct};
  s.lambda1 = {n1 * (cos_omega - 1.0), n1 * spatial[0], n1 * spatial[1], n1 * spatial[2]};
  s.lambda2 = {n2 * (cos_omega + 1.0), n2 * spatial[0], n2 * spatial[1], n2 * spatial[2]};
  return s;
}

Superop4 projector_A1_from_spectrum(const Spectrum& s) {
  Superop4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      out.m[i][j] = s.lambda1[i] * s.lambda1[j] + s.lambda2[i] * s.lambda2[j];
  return out;
}

Superop4 projector_A1(const CoinParams& p, double k) {
  const double st = std::sin(p.theta());
  const double cot = std::cos(p.theta()) / st;
  const double ka = k - p.alpha();
  const double kb = k - p.beta();
  const double cka = std::cos(ka);
  const double ct = std::cos(p.theta());
  const double n = st * st / (1.0 - ct * ct * cka * cka);
  // the spatial block is n v v^T
  const std::array<double, 3> v{std::sin(kb), -std::cos(kb), cot * std::sin(ka)};
  Superop4 out;
  out.m[0][0] = 1.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out.m[i + 1][j + 1] = n * v[i] * v[j];
  return out;
}

}  // namespace qwf
