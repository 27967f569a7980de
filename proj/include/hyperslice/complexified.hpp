#pragma once

// The complexified algebra A_C = A + iA. The imaginary unit i is central and
// commutes with every element of A; it is unrelated to the imaginary units of A.

#include <complex>

#include "hyperslice/algebra.hpp"

namespace hyperslice {

using ComplexScalar = std::complex<double>;

template <std::size_t Dim>
struct Complexified {
  Hypercomplex<Dim> re;
  Hypercomplex<Dim> im;

  static Complexified real(const Hypercomplex<Dim>& x) { return {x, {}}; }
  static Complexified scalar(ComplexScalar c) {
    return {Hypercomplex<Dim>::real(c.real()), Hypercomplex<Dim>::real(c.imag())};
  }

  Complexified& operator+=(const Complexified& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complexified& operator-=(const Complexified& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complexified& operator*=(double s) {
    re *= s;
    im *= s;
    return *this;
  }

  friend Complexified operator+(Complexified a, const Complexified& b) { return a += b; }
  friend Complexified operator-(Complexified a, const Complexified& b) { return a -= b; }
  friend Complexified operator-(Complexified a) { return a *= -1.0; }
  friend Complexified operator*(Complexified a, double s) { return a *= s; }
  friend Complexified operator*(double s, Complexified a) { return a *= s; }

  /// (x + iy)(u + iv) = xu - yv + i(xv + yu)
  friend Complexified operator*(const Complexified& w, const Complexified& v) {
    return {w.re * v.re - w.im * v.im, w.re * v.im + w.im * v.re};
  }

  friend bool operator==(const Complexified&, const Complexified&) = default;
};

template <std::size_t Dim>
Complexified<Dim> c_multiply(const Complexified<Dim>& w, const Complexified<Dim>& v) {
  return w * v;
}

/// w^c = conj(x) + i conj(y), the complex-linear anti-involution.
template <std::size_t Dim>
Complexified<Dim> c_involution(const Complexified<Dim>& w) {
  return {conjugate(w.re), conjugate(w.im)};
}

/// conj(w) = x - iy, the complex conjugation.
template <std::size_t Dim>
Complexified<Dim> complex_conjugate(const Complexified<Dim>& w) {
  return {w.re, -w.im};
}

template <std::size_t Dim>
struct Involutions {
  Complexified<Dim> w_c;
  Complexified<Dim> w_bar;
};

template <std::size_t Dim>
Involutions<Dim> c_involutions(const Complexified<Dim>& w) {
  return {c_involution(w), complex_conjugate(w)};
}

/// (a + ib) w for a complex scalar, which is central in A_C.
template <std::size_t Dim>
Complexified<Dim> scalar_action(ComplexScalar c, const Complexified<Dim>& w) {
  return {c.real() * w.re - c.imag() * w.im, c.real() * w.im + c.imag() * w.re};
}

template <std::size_t Dim>
double norm(const Complexified<Dim>& w) {
  return std::sqrt(norm_squared(w.re) + norm_squared(w.im));
}

template <std::size_t Dim>
double distance(const Complexified<Dim>& a, const Complexified<Dim>& b) {
  return norm(a - b);
}

}  // namespace hyperslice
