#pragma once

// Quaternion and octonion arithmetic built by the Cayley-Dickson doubling
//   (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
// starting from the reals. Elements are fixed-size coefficient arrays over the
// basis e_0 = 1, e_1, ..., e_{Dim-1}.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "hyperslice/error.hpp"

namespace hyperslice {

enum class AlgebraKind { Quaternion, Octonion };

template <std::size_t Dim>
struct AlgebraTraits;

template <>
struct AlgebraTraits<4> {
  static constexpr AlgebraKind kind = AlgebraKind::Quaternion;
  static constexpr std::string_view name = "quaternion";
};

template <>
struct AlgebraTraits<8> {
  static constexpr AlgebraKind kind = AlgebraKind::Octonion;
  static constexpr std::string_view name = "octonion";
};

/// Runtime description of the algebra; the compile-time parameter Dim is
/// authoritative inside the library, this tag is what files and the CLI carry.
struct AlgebraTag {
  AlgebraKind kind = AlgebraKind::Octonion;

  constexpr std::size_t dim() const { return kind == AlgebraKind::Quaternion ? 4 : 8; }
  constexpr std::string_view name() const {
    return kind == AlgebraKind::Quaternion ? "quaternion" : "octonion";
  }

  static AlgebraTag parse(std::string_view text) {
    if (text == "quaternion") return {AlgebraKind::Quaternion};
    if (text == "octonion") return {AlgebraKind::Octonion};
    throw Error(ErrorCode::ParseError, "unknown algebra '" + std::string(text) + "'");
  }

  template <std::size_t Dim>
  static constexpr AlgebraTag of() {
    return {AlgebraTraits<Dim>::kind};
  }

  friend constexpr bool operator==(AlgebraTag, AlgebraTag) = default;
};

namespace detail {

template <std::size_t N>
constexpr std::array<double, N> cd_conjugate(const std::array<double, N>& a) {
  std::array<double, N> out{};
  out[0] = a[0];
  for (std::size_t k = 1; k < N; ++k) out[k] = -a[k];
  return out;
}

template <std::size_t N>
constexpr std::array<double, N> cd_product(const std::array<double, N>& x,
                                           const std::array<double, N>& y) {
  if constexpr (N == 1) {
    return {x[0] * y[0]};
  } else {
    constexpr std::size_t H = N / 2;
    std::array<double, H> a{}, b{}, c{}, d{};
    for (std::size_t k = 0; k < H; ++k) {
      a[k] = x[k];
      b[k] = x[H + k];
      c[k] = y[k];
      d[k] = y[H + k];
    }
    const auto ac = cd_product<H>(a, c);
    const auto dbar_b = cd_product<H>(cd_conjugate<H>(d), b);
    const auto da = cd_product<H>(d, a);
    const auto b_cbar = cd_product<H>(b, cd_conjugate<H>(c));
    std::array<double, N> out{};
    for (std::size_t k = 0; k < H; ++k) {
      out[k] = ac[k] - dbar_b[k];
      out[H + k] = da[k] + b_cbar[k];
    }
    return out;
  }
}

}  // namespace detail

/// e_i e_j = sign * e_index.
struct BasisProduct {
  int index = 0;
  int sign = 1;
  friend constexpr bool operator==(const BasisProduct&, const BasisProduct&) = default;
};

template <std::size_t Dim>
using BasisTable = std::array<std::array<BasisProduct, Dim>, Dim>;

template <std::size_t Dim>
constexpr BasisTable<Dim> make_basis_table() {
  BasisTable<Dim> table{};
  for (std::size_t i = 0; i < Dim; ++i) {
    for (std::size_t j = 0; j < Dim; ++j) {
      std::array<double, Dim> ei{}, ej{};
      ei[i] = 1.0;
      ej[j] = 1.0;
      const auto p = detail::cd_product<Dim>(ei, ej);
      for (std::size_t k = 0; k < Dim; ++k) {
        if (p[k] != 0.0) table[i][j] = {static_cast<int>(k), p[k] > 0.0 ? 1 : -1};
      }
    }
  }
  return table;
}

/// The frozen multiplication table used by every product in the library.
template <std::size_t Dim>
inline constexpr BasisTable<Dim> basis_table = make_basis_table<Dim>();

template <std::size_t Dim>
class Hypercomplex {
  static_assert(Dim == 4 || Dim == 8, "only quaternions and octonions are supported");

 public:
  static constexpr std::size_t dim = Dim;
  using Coeffs = std::array<double, Dim>;

  constexpr Hypercomplex() = default;
  constexpr explicit Hypercomplex(const Coeffs& coeffs) : c_(coeffs) {}

  static constexpr Hypercomplex real(double r) {
    Coeffs c{};
    c[0] = r;
    return Hypercomplex(c);
  }
  static constexpr Hypercomplex basis(std::size_t k) {
    Coeffs c{};
    c[k] = 1.0;
    return Hypercomplex(c);
  }
  static constexpr AlgebraTag tag() { return AlgebraTag::of<Dim>(); }

  constexpr double operator[](std::size_t k) const { return c_[k]; }
  constexpr double& operator[](std::size_t k) { return c_[k]; }
  constexpr const Coeffs& coeffs() const { return c_; }

  constexpr double real_part() const { return c_[0]; }
  constexpr Hypercomplex imaginary_part() const {
    Hypercomplex out = *this;
    out.c_[0] = 0.0;
    return out;
  }

  constexpr Hypercomplex& operator+=(const Hypercomplex& o) {
    for (std::size_t k = 0; k < Dim; ++k) c_[k] += o.c_[k];
    return *this;
  }
  constexpr Hypercomplex& operator-=(const Hypercomplex& o) {
    for (std::size_t k = 0; k < Dim; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  constexpr Hypercomplex& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  constexpr Hypercomplex& operator/=(double s) {
    for (auto& v : c_) v /= s;
    return *this;
  }

  friend constexpr Hypercomplex operator+(Hypercomplex a, const Hypercomplex& b) { return a += b; }
  friend constexpr Hypercomplex operator-(Hypercomplex a, const Hypercomplex& b) { return a -= b; }
  friend constexpr Hypercomplex operator-(Hypercomplex a) { return a *= -1.0; }
  friend constexpr Hypercomplex operator*(Hypercomplex a, double s) { return a *= s; }
  friend constexpr Hypercomplex operator*(double s, Hypercomplex a) { return a *= s; }
  friend constexpr Hypercomplex operator/(Hypercomplex a, double s) { return a /= s; }

  friend constexpr Hypercomplex operator*(const Hypercomplex& a, const Hypercomplex& b) {
    Coeffs out{};
    for (std::size_t i = 0; i < Dim; ++i) {
      if (a.c_[i] == 0.0) continue;
      for (std::size_t j = 0; j < Dim; ++j) {
        const BasisProduct& p = basis_table<Dim>[i][j];
        out[p.index] += p.sign * (a.c_[i] * b.c_[j]);
      }
    }
    return Hypercomplex(out);
  }

  friend constexpr bool operator==(const Hypercomplex&, const Hypercomplex&) = default;

 private:
  Coeffs c_{};
};

using Quaternion = Hypercomplex<4>;
using Octonion = Hypercomplex<8>;

template <std::size_t Dim>
constexpr Hypercomplex<Dim> multiply(const Hypercomplex<Dim>& a, const Hypercomplex<Dim>& b) {
  return a * b;
}

template <std::size_t Dim>
constexpr Hypercomplex<Dim> conjugate(const Hypercomplex<Dim>& a) {
  return Hypercomplex<Dim>(detail::cd_conjugate<Dim>(a.coeffs()));
}

/// Euclidean inner product of coefficient vectors; equals Re(a conj(b)).
template <std::size_t Dim>
constexpr double dot(const Hypercomplex<Dim>& a, const Hypercomplex<Dim>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < Dim; ++k) s += a[k] * b[k];
  return s;
}

/// n(a) = a conj(a), a nonnegative real.
template <std::size_t Dim>
constexpr double norm_squared(const Hypercomplex<Dim>& a) {
  return dot(a, a);
}

template <std::size_t Dim>
double norm(const Hypercomplex<Dim>& a) {
  return std::sqrt(norm_squared(a));
}

template <std::size_t Dim>
double distance(const Hypercomplex<Dim>& a, const Hypercomplex<Dim>& b) {
  return norm(a - b);
}

inline constexpr double kZeroNormSquared = 1e-300;

template <std::size_t Dim>
Hypercomplex<Dim> inverse(const Hypercomplex<Dim>& a) {
  const double n = norm_squared(a);
  if (n < kZeroNormSquared) throw Error(ErrorCode::DivisionByZero, "inverse of a zero element");
  return conjugate(a) / n;
}

/// An element J with J^2 = -1, i.e. a purely imaginary element of unit norm.
template <std::size_t Dim>
class ImaginaryUnit {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Default is e_1, the placeholder unit used for real slice points.
  ImaginaryUnit() : value_(Hypercomplex<Dim>::basis(1)) {}

  static ImaginaryUnit from(const Hypercomplex<Dim>& v, double tol = kTolerance) {
    if (std::abs(v.real_part()) > tol || std::abs(norm_squared(v) - 1.0) > tol) {
      throw Error(ErrorCode::NotUnitImaginary, "element is not a unit imaginary");
    }
    return ImaginaryUnit(v);
  }

  /// Direction of the imaginary part of v; throws when it vanishes.
  static ImaginaryUnit normalized(const Hypercomplex<Dim>& v) {
    const auto im = v.imaginary_part();
    const double n = norm(im);
    if (n < 1e-150) throw Error(ErrorCode::NotUnitImaginary, "imaginary part is zero");
    return ImaginaryUnit(im / n);
  }

  static ImaginaryUnit basis(std::size_t k) { return ImaginaryUnit(Hypercomplex<Dim>::basis(k)); }

  const Hypercomplex<Dim>& value() const { return value_; }
  operator const Hypercomplex<Dim>&() const { return value_; }

  ImaginaryUnit operator-() const { return ImaginaryUnit(-value_); }

  /// True when the first coefficient with magnitude above 1e-12 is positive.
  bool is_canonical() const {
    for (std::size_t k = 1; k < Dim; ++k) {
      if (std::abs(value_[k]) > kTolerance) return value_[k] > 0.0;
    }
    return true;
  }

 private:
  explicit ImaginaryUnit(const Hypercomplex<Dim>& v) : value_(v) {}
  Hypercomplex<Dim> value_;
};

/// Uniform sample on the unit sphere of imaginary elements (S^2 or S^6).
template <std::size_t Dim, class Rng>
ImaginaryUnit<Dim> sample_unit_imaginary(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    typename Hypercomplex<Dim>::Coeffs c{};
    for (std::size_t k = 1; k < Dim; ++k) c[k] = gauss(rng);
    Hypercomplex<Dim> v(c);
    if (norm_squared(v) > 1e-8) return ImaginaryUnit<Dim>::normalized(v);
  }
}

template <std::size_t Dim>
ImaginaryUnit<Dim> sample_unit_imaginary(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_unit_imaginary<Dim>(rng);
}

}  // namespace hyperslice
