#pragma once

#include <array>

#include "qwf/coin.hpp"
#include "qwf/mat2.hpp"

namespace qwf {

/// Pauli-basis 4-vector (o0, ox, oy, oz) with o_i = Tr(O sigma_i), so that
/// O = (o0 1 + ox sx + oy sy + oz sz) / 2. Components are complex: Hermitian
/// operators give real vectors, anti-Hermitian ones purely imaginary vectors.
struct Bloch4 {
  std::array<cplx, 4> c{};

  cplx& operator[](std::size_t i) { return c[i]; }
  const cplx& operator[](std::size_t i) const { return c[i]; }
};

enum class OperatorKind { General, Hermitian, AntiHermitian };

/// Expansion in the Pauli basis. With a Hermitian or AntiHermitian tag the
/// result is checked to be real or imaginary (to 1e-12 relative) and the
/// residual part is dropped; a violation throws InvalidParams.
Bloch4 to_bloch(const Mat2& op, OperatorKind kind = OperatorKind::General);
Mat2 from_bloch(const Bloch4& b);

/// (a|b) = sum_i conj(a_i) b_i.
cplx bloch_inner(const Bloch4& a, const Bloch4& b);
double bloch_norm(const Bloch4& a);

// Trace identities for operators given by their Bloch vectors.
/// Tr(AB) = (A^dagger|B) / 2.
cplx trace_product(const Bloch4& a, const Bloch4& b);
/// Tr(ABC).
cplx trace_triple(const Bloch4& a, const Bloch4& b, const Bloch4& c);
/// Tr(A {B, C}).
cplx trace_anticommutator(const Bloch4& a, const Bloch4& b, const Bloch4& c);
/// Tr(A [B, C]) = i a.(b x c) / 2.
cplx trace_commutator(const Bloch4& a, const Bloch4& b, const Bloch4& c);

/// Real 4x4 matrix acting on Bloch vectors.
struct Superop4 {
  std::array<std::array<double, 4>, 4> m{};

  static Superop4 identity();
  double& operator()(std::size_t i, std::size_t j) { return m[i][j]; }
  double operator()(std::size_t i, std::size_t j) const { return m[i][j]; }
  double trace() const;
  /// Determinant of the lower-right 3x3 (spatial) block.
  double spatial_det() const;

  friend Superop4 operator*(const Superop4& x, const Superop4& y);
  friend Bloch4 operator*(const Superop4& x, const Bloch4& b);
  friend Superop4 operator-(const Superop4& x, const Superop4& y);
};

/// Largest absolute entry.
double max_abs(const Superop4& s);
double max_abs(const Bloch4& b);

/// (a|M|b).
cplx sandwich(const Bloch4& a, const Superop4& M, const Bloch4& b);

/// Bloch representation of O -> u_k O u_k^dagger.
Superop4 superop_matrix(const CoinParams& p, double k);

struct Spectrum {
  std::array<cplx, 4> eigenvalues;  // 1, 1, e^{2i omega}, e^{-2i omega}
  double omega = 0.0;               // arccos(cos(k - alpha) cos theta)
  std::array<double, 4> lambda1{};  // unit eigenvectors with eigenvalue 1
  std::array<double, 4> lambda2{};
};

inline constexpr double kDegenerateK = 1e-9;

/// Eigen-structure of the superoperator. Throws DegenerateK when
/// |cos omega| >= 1 - eps_deg, where the eigenvector normalization diverges.
Spectrum spectral(const CoinParams& p, double k, double eps_deg = kDegenerateK);

/// Projector onto the eigenvalue-1 subspace, closed form. Finite for every k
/// because sin(theta) != 0 is guaranteed by CoinParams.
Superop4 projector_A1(const CoinParams& p, double k);

/// Same projector assembled as |l1><l1| + |l2><l2| from spectral().
Superop4 projector_A1_from_spectrum(const Spectrum& s);

}  // namespace qwf
