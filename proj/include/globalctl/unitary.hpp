#pragma once

// Single-qubit unitaries as dense 2x2 complex matrices, plus the small
// amount of linear algebra the rest of the library needs: composition,
// adjoints, axis-angle and Euler-angle constructors, and classification
// of the special cases (diagonal / antidiagonal / identity up to phase)
// that the chain kernel fast-paths.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace globalctl {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Tolerance used when classifying a matrix as a structural special case
// (permutation, diagonal, identity-up-to-phase).  Anything within 1e-12
// of the exact shape is treated as that shape.
inline constexpr double kStructTol = 1e-12;

struct Unitary1 {
  // Row-major: m[0] m[1] / m[2] m[3].
  std::array<cplx, 4> m{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};

  static Unitary1 identity() { return {}; }

  static Unitary1 from_rows(cplx a, cplx b, cplx c, cplx d) {
    Unitary1 u;
    u.m = {a, b, c, d};
    return u;
  }

  static Unitary1 pauli_x() { return from_rows(0, 1, 1, 0); }
  static Unitary1 pauli_y() { return from_rows(0, cplx{0, -1}, cplx{0, 1}, 0); }
  static Unitary1 pauli_z() { return from_rows(1, 0, 0, -1); }

  static Unitary1 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return from_rows(s, s, s, -s);
  }

  // exp(-i * angle/2 * (axis . sigma)) for axis in {x, y, z}.
  static Unitary1 rx(double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    return from_rows(c, cplx{0, -s}, cplx{0, -s}, c);
  }
  static Unitary1 ry(double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    return from_rows(c, -s, s, c);
  }
  static Unitary1 rz(double angle) {
    return from_rows(std::polar(1.0, -angle / 2), 0, 0,
                     std::polar(1.0, angle / 2));
  }

  static Unitary1 axis_angle(const std::string& axis, double angle) {
    if (axis == "x") return rx(angle);
    if (axis == "y") return ry(angle);
    if (axis == "z") return rz(angle);
    if (axis == "h") {
      // Rotation about the (x+z)/sqrt(2) axis; angle=pi gives H up to phase.
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      const double r = 1.0 / std::sqrt(2.0);
      return from_rows(cplx{c, -s * r}, cplx{0, -s * r}, cplx{0, -s * r},
                       cplx{c, s * r});
    }
    throw std::invalid_argument("unknown rotation axis: " + axis);
  }

  // Z(beta) then Y(gamma) then Z(delta), i.e. Rz(delta)*Ry(gamma)*Rz(beta).
  static Unitary1 euler_zyz(double beta, double gamma, double delta);

  // Diagonal phase gate diag(1, e^{i*theta}).
  static Unitary1 phase(double theta) {
    return from_rows(1, 0, 0, std::polar(1.0, theta));
  }

  cplx operator()(int r, int c) const { return m[2 * r + c]; }

  Unitary1 adjoint() const {
    return from_rows(std::conj(m[0]), std::conj(m[2]), std::conj(m[1]),
                     std::conj(m[3]));
  }

  Unitary1 scaled(cplx s) const {
    return from_rows(s * m[0], s * m[1], s * m[2], s * m[3]);
  }

  cplx trace() const { return m[0] + m[3]; }
  cplx det() const { return m[0] * m[3] - m[1] * m[2]; }

  bool is_diagonal(double tol = kStructTol) const {
    return std::abs(m[1]) <= tol && std::abs(m[2]) <= tol;
  }
  bool is_antidiagonal(double tol = kStructTol) const {
    return std::abs(m[0]) <= tol && std::abs(m[3]) <= tol;
  }
  // Either computational basis state maps to a basis state (up to phase).
  bool is_permutation(double tol = kStructTol) const {
    return is_diagonal(tol) || is_antidiagonal(tol);
  }
  bool is_identity_up_to_phase(double tol = kStructTol) const {
    return is_diagonal(tol) && std::abs(m[0] - m[3]) <= 2 * tol;
  }
};

inline Unitary1 operator*(const Unitary1& a, const Unitary1& b) {
  return Unitary1::from_rows(a.m[0] * b.m[0] + a.m[1] * b.m[2],
                             a.m[0] * b.m[1] + a.m[1] * b.m[3],
                             a.m[2] * b.m[0] + a.m[3] * b.m[2],
                             a.m[2] * b.m[1] + a.m[3] * b.m[3]);
}

inline Unitary1 Unitary1::euler_zyz(double beta, double gamma, double delta) {
  return rz(delta) * ry(gamma) * rz(beta);
}

// max-norm distance between a and b after aligning global phase to the
// largest-magnitude entry of a.
inline double distance_up_to_phase(const Unitary1& a, const Unitary1& b) {
  int k = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(a.m[i]) > std::abs(a.m[k])) k = i;
  if (std::abs(a.m[k]) < 1e-300 || std::abs(b.m[k]) < 1e-300) {
    double d = 0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
    return d;
  }
  const cplx ph = (a.m[k] / std::abs(a.m[k])) / (b.m[k] / std::abs(b.m[k]));
  double d = 0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a.m[i] - ph * b.m[i]));
  return d;
}

inline bool approx_equal(const Unitary1& a, const Unitary1& b,
                         double tol = 1e-10) {
  double d = 0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
  return d <= tol;
}

inline bool approx_equal_up_to_phase(const Unitary1& a, const Unitary1& b,
                                     double tol = 1e-10) {
  return distance_up_to_phase(a, b) <= tol;
}

}  // namespace globalctl
