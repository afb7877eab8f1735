#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace qwf {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Two-component complex column vector (coin spinor).
struct Vec2 {
  cplx c0{}, c1{};

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
  friend Vec2 operator*(cplx s, const Vec2& a) { return {s * a.c0, s * a.c1}; }
  Vec2& operator+=(const Vec2& o) {
    c0 += o.c0;
    c1 += o.c1;
    return *this;
  }
};

inline double norm2(const Vec2& v) { return std::norm(v.c0) + std::norm(v.c1); }
inline cplx inner(const Vec2& a, const Vec2& b) {
  return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

/// Row-major 2x2 complex matrix [[a, b], [c, d]].
struct Mat2 {
  cplx a{}, b{}, c{}, d{};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 zero() { return {}; }

  Mat2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
  friend Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.a * v.c0 + m.b * v.c1, m.c * v.c0 + m.d * v.c1};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend Mat2 operator*(cplx s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
};

/// Largest absolute entry; used as the matrix distance in tolerance checks.
inline double max_abs(const Mat2& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

inline Mat2 outer(const Vec2& x, const Vec2& y) {
  return {x.c0 * std::conj(y.c0), x.c0 * std::conj(y.c1), x.c1 * std::conj(y.c0),
          x.c1 * std::conj(y.c1)};
}

namespace pauli {
inline constexpr Mat2 I{1.0, 0.0, 0.0, 1.0};
inline constexpr Mat2 X{0.0, 1.0, 1.0, 0.0};
inline constexpr Mat2 Y{0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0};
inline constexpr Mat2 Z{1.0, 0.0, 0.0, -1.0};
inline constexpr std::array<Mat2, 4> basis{I, X, Y, Z};
}  // namespace pauli

}  // namespace qwf
