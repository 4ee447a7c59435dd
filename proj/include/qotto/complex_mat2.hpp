#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace qotto {

using complex = std::complex<double>;
using Vec2 = std::array<complex, 2>;

/// Dense 2x2 complex matrix, row-major (a00, a01, a10, a11).
struct ComplexMat2 {
  std::array<complex, 4> a{};

  constexpr ComplexMat2() = default;
  constexpr ComplexMat2(complex a00, complex a01, complex a10, complex a11)
      : a{a00, a01, a10, a11} {}

  static constexpr ComplexMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr ComplexMat2 zero() { return {}; }

  constexpr complex& operator()(int r, int c) { return a[static_cast<std::size_t>(2 * r + c)]; }
  constexpr const complex& operator()(int r, int c) const {
    return a[static_cast<std::size_t>(2 * r + c)];
  }

  ComplexMat2 adjoint() const {
    return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
  }
  complex trace() const { return a[0] + a[3]; }
  complex det() const { return a[0] * a[3] - a[1] * a[2]; }

  /// Largest entry modulus.
  double max_abs() const {
    double m = 0.0;
    for (const auto& z : a) m = std::max(m, std::abs(z));
    return m;
  }

  bool is_finite() const {
    for (const auto& z : a)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  ComplexMat2& operator+=(const ComplexMat2& o) {
    for (std::size_t i = 0; i < 4; ++i) a[i] += o.a[i];
    return *this;
  }
  ComplexMat2& operator-=(const ComplexMat2& o) {
    for (std::size_t i = 0; i < 4; ++i) a[i] -= o.a[i];
    return *this;
  }
  ComplexMat2& operator*=(complex s) {
    for (auto& z : a) z *= s;
    return *this;
  }

  friend ComplexMat2 operator+(ComplexMat2 l, const ComplexMat2& r) { return l += r; }
  friend ComplexMat2 operator-(ComplexMat2 l, const ComplexMat2& r) { return l -= r; }
  friend ComplexMat2 operator-(ComplexMat2 m) { return m *= -1.0; }
  friend ComplexMat2 operator*(ComplexMat2 m, complex s) { return m *= s; }
  friend ComplexMat2 operator*(complex s, ComplexMat2 m) { return m *= s; }
  friend ComplexMat2 operator*(ComplexMat2 m, double s) { return m *= s; }
  friend ComplexMat2 operator*(double s, ComplexMat2 m) { return m *= s; }

  friend ComplexMat2 operator*(const ComplexMat2& l, const ComplexMat2& r) {
    return {l.a[0] * r.a[0] + l.a[1] * r.a[2], l.a[0] * r.a[1] + l.a[1] * r.a[3],
            l.a[2] * r.a[0] + l.a[3] * r.a[2], l.a[2] * r.a[1] + l.a[3] * r.a[3]};
  }

  friend Vec2 operator*(const ComplexMat2& m, const Vec2& v) {
    return {m.a[0] * v[0] + m.a[1] * v[1], m.a[2] * v[0] + m.a[3] * v[1]};
  }

  friend bool operator==(const ComplexMat2&, const ComplexMat2&) = default;
};

/// max_ij |l_ij - r_ij|
inline double max_abs_diff(const ComplexMat2& l, const ComplexMat2& r) { return (l - r).max_abs(); }

/// <u|v>
inline complex inner(const Vec2& u, const Vec2& v) {
  return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
}

/// <u|M|v>
inline complex matrix_element(const Vec2& u, const ComplexMat2& m, const Vec2& v) {
  return inner(u, m * v);
}

/// |v><v|
inline ComplexMat2 projector(const Vec2& v) {
  return {v[0] * std::conj(v[0]), v[0] * std::conj(v[1]), v[1] * std::conj(v[0]),
          v[1] * std::conj(v[1])};
}

/// Tr(l r) without forming the product.
inline complex trace_product(const ComplexMat2& l, const ComplexMat2& r) {
  return l.a[0] * r.a[0] + l.a[1] * r.a[2] + l.a[2] * r.a[1] + l.a[3] * r.a[3];
}

inline double hermiticity_defect(const ComplexMat2& m) { return max_abs_diff(m, m.adjoint()); }

/// Unitary polar factor U (U^dag U)^{-1/2}; closed form for 2x2.
ComplexMat2 polar_unitary(const ComplexMat2& m);

}  // namespace qotto
