#pragma once

// Slice functions on the slice cone A_s^n = union over J of C_J^n, induced by
// stem functions: f(alpha + beta J) = F1(alpha + i beta) + J F2(alpha + i beta).

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "hyperslice/stem.hpp"

namespace hyperslice {

/// x = alpha + beta J with one imaginary unit J shared by every coordinate.
/// Nonreal points keep J canonical (first significant coefficient positive).
template <std::size_t Dim>
struct SlicePoint {
  std::vector<double> alpha;
  std::vector<double> beta;
  ImaginaryUnit<Dim> j;
  bool is_real = true;

  /// Canonicalizes (beta, J) -> (-beta, -J) when needed. All-zero beta gives a
  /// real point with the placeholder unit.
  static SlicePoint make(std::vector<double> alpha, std::vector<double> beta, const ImaginaryUnit<Dim>& j) {
    if (alpha.size() != beta.size() || alpha.empty()) {
      throw Error(ErrorCode::ArityMismatch, "alpha and beta must have the same nonzero length");
    }
    SlicePoint x{std::move(alpha), std::move(beta), j, false};
    bool all_zero = true;
    for (double b : x.beta) all_zero = all_zero && b == 0.0;
    if (all_zero) {
      x.is_real = true;
      x.j = ImaginaryUnit<Dim>();
      return x;
    }
    if (!x.j.is_canonical()) {
      x.j = -x.j;
      for (double& b : x.beta) b = -b;
    }
    return x;
  }

  static SlicePoint real(std::vector<double> alpha) {
    std::vector<double> beta(alpha.size(), 0.0);
    return make(std::move(alpha), std::move(beta), ImaginaryUnit<Dim>());
  }

  std::size_t arity() const { return alpha.size(); }

  /// z = alpha + i beta in C^n.
  ComplexPoint complex_point() const {
    ComplexPoint z(alpha.size());
    for (std::size_t k = 0; k < alpha.size(); ++k) z[k] = {alpha[k], beta[k]};
    return z;
  }

  /// The conjugate point alpha - beta J.
  SlicePoint mirror() const {
    SlicePoint x = *this;
    for (double& b : x.beta) b = -b;
    return x;
  }

  std::vector<Hypercomplex<Dim>> elements() const {
    std::vector<Hypercomplex<Dim>> xs;
    xs.reserve(alpha.size());
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      xs.push_back(Hypercomplex<Dim>::real(alpha[k]) + beta[k] * j.value());
    }
    return xs;
  }

  double beta_norm() const {
    double s = 0.0;
    for (double b : beta) s += b * b;
    return std::sqrt(s);
  }
};

inline constexpr double kParallelTolerance = 1e-10;

/// Splits each x_k into alpha_k + beta_k J. Throws NotInSliceCone when the
/// imaginary parts are not all parallel.
template <std::size_t Dim>
SlicePoint<Dim> decompose_point(std::span<const Hypercomplex<Dim>> xs) {
  std::vector<double> alpha(xs.size());
  double largest = 0.0, alpha_scale = 1.0;
  std::size_t ref = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    alpha[k] = xs[k].real_part();
    alpha_scale = std::max(alpha_scale, std::abs(alpha[k]));
    const double m = norm(xs[k].imaginary_part());
    if (m > largest) {
      largest = m;
      ref = k;
    }
  }
  if (largest <= 1e-14 * alpha_scale) return SlicePoint<Dim>::real(std::move(alpha));

  const auto dir = xs[ref].imaginary_part() / largest;
  std::vector<double> beta(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const auto v = xs[k].imaginary_part();
    beta[k] = dot(v, dir);
    if (norm(v - beta[k] * dir) > kParallelTolerance * largest) {
      throw Error(ErrorCode::NotInSliceCone, "imaginary parts do not share one direction");
    }
  }
  return SlicePoint<Dim>::make(std::move(alpha), std::move(beta), ImaginaryUnit<Dim>::normalized(dir));
}

/// f = I(F), the (left) slice function induced by a stem function.
template <std::size_t Dim>
class SliceFunction {
 public:
  explicit SliceFunction(StemFunction<Dim> stem) : stem_(std::move(stem)) {}

  static SliceFunction lift(StemFunction<Dim> stem) { return SliceFunction(std::move(stem)); }

  const StemFunction<Dim>& stem() const { return stem_; }
  std::size_t arity() const { return stem_.arity(); }
  static constexpr AlgebraTag tag() { return AlgebraTag::of<Dim>(); }

  Hypercomplex<Dim> operator()(const SlicePoint<Dim>& x) const;

 private:
  StemFunction<Dim> stem_;
};

inline constexpr double kRealPointOddnessTolerance = 1e-10;

template <std::size_t Dim>
Hypercomplex<Dim> lift_evaluate(const SliceFunction<Dim>& f, const SlicePoint<Dim>& x) {
  if (x.arity() != f.arity()) throw Error(ErrorCode::ArityMismatch, "point arity differs from function arity");
  const auto F = f.stem()(x.complex_point());
  if (x.is_real) {
    if (norm(F.im) > kRealPointOddnessTolerance) {
      throw Error(ErrorCode::NotIntrinsic, "F2 does not vanish at a real point");
    }
    return F.re;
  }
  return F.re + x.j.value() * F.im;
}

/// F1(z) + J F2(z) for an arbitrary (not canonicalized) representation.
template <std::size_t Dim>
Hypercomplex<Dim> lift_evaluate(const SliceFunction<Dim>& f, std::span<const double> alpha,
                                std::span<const double> beta, const Hypercomplex<Dim>& j) {
  if (alpha.size() != f.arity() || beta.size() != f.arity()) {
    throw Error(ErrorCode::ArityMismatch, "point arity differs from function arity");
  }
  ComplexPoint z(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) z[k] = {alpha[k], beta[k]};
  const auto F = f.stem()(z);
  return F.re + j * F.im;
}

template <std::size_t Dim>
Hypercomplex<Dim> SliceFunction<Dim>::operator()(const SlicePoint<Dim>& x) const {
  return lift_evaluate(*this, x);
}

/// Values of f at alpha + beta J and alpha + beta K reconstruct f at
/// alpha + beta I:  (I-K)((J-K)^{-1} f_J) - (I-J)((J-K)^{-1} f_K).
template <std::size_t Dim>
Hypercomplex<Dim> representation(const Hypercomplex<Dim>& f_at_j, const Hypercomplex<Dim>& f_at_k,
                                 const ImaginaryUnit<Dim>& i, const ImaginaryUnit<Dim>& j,
                                 const ImaginaryUnit<Dim>& k) {
  const auto j_minus_k = j.value() - k.value();
  if (norm(j_minus_k) <= 1e-8) throw Error(ErrorCode::DegenerateUnits, "J and K coincide");
  const auto inv = inverse(j_minus_k);
  return (i.value() - k.value()) * (inv * f_at_j) - (i.value() - j.value()) * (inv * f_at_k);
}

/// The K = -J case: 1/2 (f_J + f_{-J}) - (I/2)(J (f_J - f_{-J})).
template <std::size_t Dim>
Hypercomplex<Dim> representation(const Hypercomplex<Dim>& f_at_j, const Hypercomplex<Dim>& f_at_minus_j,
                                 const ImaginaryUnit<Dim>& i, const ImaginaryUnit<Dim>& j) {
  return 0.5 * (f_at_j + f_at_minus_j) - 0.5 * (i.value() * (j.value() * (f_at_j - f_at_minus_j)));
}

/// Sign of the first significant beta coordinate. Together with |beta| it fixes
/// Im(x) = sigma |beta| J, which is invariant under (beta, J) -> (-beta, -J).
template <std::size_t Dim>
double imaginary_orientation(const SlicePoint<Dim>& x) {
  const double scale = x.beta_norm();
  for (double b : x.beta) {
    if (std::abs(b) > 1e-12 * scale) return b > 0.0 ? 1.0 : -1.0;
  }
  return 1.0;
}

/// Im(x) w := sigma |beta| (J w).
template <std::size_t Dim>
Hypercomplex<Dim> apply_imaginary_part(const SlicePoint<Dim>& x, const Hypercomplex<Dim>& w) {
  return (imaginary_orientation(x) * x.beta_norm()) * (x.j.value() * w);
}

/// Im(x)^{-1} w := -(J w) / (sigma |beta|). For n = 1 this is (beta J)^{-1} w.
template <std::size_t Dim>
Hypercomplex<Dim> apply_inverse_imaginary_part(const SlicePoint<Dim>& x, const Hypercomplex<Dim>& w) {
  if (x.is_real) throw Error(ErrorCode::RealPoint, "Im(x) is not invertible at a real point");
  return -(x.j.value() * w) / (imaginary_orientation(x) * x.beta_norm());
}

template <std::size_t Dim>
Hypercomplex<Dim> spherical_value(const SliceFunction<Dim>& f, const SlicePoint<Dim>& x) {
  if (x.is_real) return f(x);
  return 0.5 * (f(x) + f(x.mirror()));
}

template <std::size_t Dim>
Hypercomplex<Dim> spherical_derivative(const SliceFunction<Dim>& f, const SlicePoint<Dim>& x) {
  if (x.is_real) throw Error(ErrorCode::RealPoint, "spherical derivative requested at a real point");
  return 0.5 * apply_inverse_imaginary_part(x, f(x) - f(x.mirror()));
}

template <std::size_t Dim>
struct SphericalParts {
  Hypercomplex<Dim> value;
  Hypercomplex<Dim> derivative;
};

template <std::size_t Dim>
SphericalParts<Dim> spherical(const SliceFunction<Dim>& f, const SlicePoint<Dim>& x) {
  if (x.is_real) throw Error(ErrorCode::RealPoint, "spherical derivative requested at a real point");
  const auto fx = f(x);
  const auto fm = f(x.mirror());
  return {0.5 * (fx + fm), 0.5 * apply_inverse_imaginary_part(x, fx - fm)};
}

/// v_s f as a slice function: the lift of the stem z -> F1(z).
template <std::size_t Dim>
SliceFunction<Dim> spherical_value_function(const SliceFunction<Dim>& f) {
  const auto F = f.stem();
  return SliceFunction<Dim>::lift(StemFunction<Dim>::from_closure(
      F.arity(), [F](const ComplexPoint& z) { return Complexified<Dim>::real(F(z).re); }, F.smoothness()));
}

/// d_s f as a slice function on nonreal points: the lift of z -> sigma F2(z) / |Im z|.
template <std::size_t Dim>
SliceFunction<Dim> spherical_derivative_function(const SliceFunction<Dim>& f) {
  const auto F = f.stem();
  return SliceFunction<Dim>::lift(StemFunction<Dim>::from_closure(
      F.arity(),
      [F](const ComplexPoint& z) {
        std::vector<double> alpha(z.size()), beta(z.size());
        for (std::size_t k = 0; k < z.size(); ++k) {
          alpha[k] = z[k].real();
          beta[k] = z[k].imag();
        }
        const auto x = SlicePoint<Dim>::make(std::move(alpha), std::move(beta), ImaginaryUnit<Dim>());
        if (x.is_real) throw Error(ErrorCode::RealPoint, "spherical derivative stem at a real point");
        return Complexified<Dim>::real(F(z).im / (imaginary_orientation(x) * x.beta_norm()));
      },
      F.smoothness()));
}

/// f . g := I(FG).
template <std::size_t Dim>
SliceFunction<Dim> slice_product(const SliceFunction<Dim>& f, const SliceFunction<Dim>& g) {
  return SliceFunction<Dim>::lift(stem_product(f.stem(), g.stem()));
}

/// sum_gamma x^gamma (sum_{mu+nu=gamma} a_mu b_nu).
template <std::size_t Dim>
StemPolynomial<Dim> star_product(const StemPolynomial<Dim>& p, const StemPolynomial<Dim>& q) {
  return p * q;
}

/// sum_mu x^mu a_mu evaluated in the algebra, with x^mu formed from the
/// coordinates x_k = alpha_k + beta_k J (which commute with each other).
template <std::size_t Dim>
Hypercomplex<Dim> evaluate_power_series(const StemPolynomial<Dim>& p, const SlicePoint<Dim>& x) {
  if (x.arity() != p.arity()) throw Error(ErrorCode::ArityMismatch, "point arity differs from polynomial arity");
  const auto xs = x.elements();
  Hypercomplex<Dim> out{};
  for (const auto& [mu, a] : p.terms()) {
    auto xmu = Hypercomplex<Dim>::real(1.0);
    for (std::size_t k = 0; k < mu.size(); ++k) {
      for (unsigned e = 0; e < mu[k]; ++e) xmu = xmu * xs[k];
    }
    out += xmu * a;
  }
  return out;
}

template <std::size_t Dim>
double imaginary_magnitude(const Hypercomplex<Dim>& a) {
  return norm(a.imaginary_part());
}

inline constexpr double kRealSliceTolerance = 1e-10;

/// True when v_s f and d_s f have no imaginary components at the samples.
template <std::size_t Dim>
bool is_real_slice(const SliceFunction<Dim>& f, std::span<const SlicePoint<Dim>> samples,
                   double tol = kRealSliceTolerance) {
  for (const auto& x : samples) {
    if (x.is_real) {
      if (imaginary_magnitude(f(x)) > tol) return false;
      continue;
    }
    const auto s = spherical(f, x);
    if (imaginary_magnitude(s.value) > tol || imaginary_magnitude(s.derivative) > tol) return false;
  }
  return true;
}

struct SliceRegularityReport {
  /// max over units, samples and axes of |df_J/dalpha_t + J df_J/dbeta_t|.
  double max_slice_residual = 0.0;
  /// max |dF/dzbar_t| of the stem at the same samples.
  double max_stem_residual = 0.0;
  bool pass = true;
};

/// Per-slice Cauchy-Riemann residuals by central differences on each C_J, plus
/// the stem-level check. Sample points are given as z = alpha + i beta.
template <std::size_t Dim>
SliceRegularityReport check_slice_regular(const SliceFunction<Dim>& f, std::span<const ImaginaryUnit<Dim>> units,
                                          std::span<const ComplexPoint> samples, double tol) {
  SliceRegularityReport r;
  const double h = f.stem().finite_difference_step();
  const std::size_t n = f.arity();
  for (const auto& unit : units) {
    const auto& J = unit.value();
    for (const auto& z : samples) {
      std::vector<double> alpha(n), beta(n);
      for (std::size_t k = 0; k < n; ++k) {
        alpha[k] = z[k].real();
        beta[k] = z[k].imag();
      }
      for (std::size_t t = 0; t < n; ++t) {
        auto ap = alpha, am = alpha, bp = beta, bm = beta;
        ap[t] += h;
        am[t] -= h;
        bp[t] += h;
        bm[t] -= h;
        const auto d_alpha = (lift_evaluate<Dim>(f, ap, beta, J) - lift_evaluate<Dim>(f, am, beta, J)) / (2 * h);
        const auto d_beta = (lift_evaluate<Dim>(f, alpha, bp, J) - lift_evaluate<Dim>(f, alpha, bm, J)) / (2 * h);
        r.max_slice_residual = std::max(r.max_slice_residual, norm(d_alpha + J * d_beta));
      }
    }
  }
  r.max_stem_residual = is_holomorphic(f.stem(), samples, tol).max_residual;
  r.pass = r.max_slice_residual <= tol && r.max_stem_residual <= tol;
  return r;
}

enum class SphereZeroKind { Empty, RealZero, SphericalZero, SinglePoint };

constexpr std::string_view to_string(SphereZeroKind k) {
  switch (k) {
    case SphereZeroKind::Empty: return "empty";
    case SphereZeroKind::RealZero: return "real";
    case SphereZeroKind::SphericalZero: return "spherical";
    case SphereZeroKind::SinglePoint: return "single-point";
  }
  return "unknown";
}

template <std::size_t Dim>
struct SphereZeroClass {
  SphereZeroKind kind = SphereZeroKind::Empty;
  std::optional<SlicePoint<Dim>> point;
  /// For the single-point test: max(|Re I|, ||I| - 1|) of the candidate unit.
  double residual = 0.0;
};

inline constexpr double kZeroClassTolerance = 1e-9;

/// Zeros of f on the sphere S_x = {alpha + beta I : I in S}. On S_x,
/// f(alpha + beta I) = F1 + I F2, so a unique zero needs I = (-F1) F2^{-1} to
/// be a unit imaginary.
template <std::size_t Dim>
SphereZeroClass<Dim> classify_sphere_zeros(const SliceFunction<Dim>& f, const SlicePoint<Dim>& x,
                                           double tol = kZeroClassTolerance) {
  const auto F = f.stem()(x.complex_point());
  const double n1 = norm(F.re), n2 = norm(F.im);
  SphereZeroClass<Dim> out;
  if (x.is_real) {
    out.kind = n1 <= tol ? SphereZeroKind::RealZero : SphereZeroKind::Empty;
    return out;
  }
  if (n1 <= tol && n2 <= tol) {
    out.kind = SphereZeroKind::SphericalZero;
    return out;
  }
  if (n2 <= tol) return out;

  const auto candidate = (-F.re) * inverse(F.im);
  out.residual = std::max(std::abs(candidate.real_part()), std::abs(norm(candidate) - 1.0));
  if (out.residual <= tol) {
    out.kind = SphereZeroKind::SinglePoint;
    out.point = SlicePoint<Dim>::make(x.alpha, x.beta, ImaginaryUnit<Dim>::normalized(candidate));
  }
  return out;
}

/// f_{j,a} = I(F_{j,a}); the off-axis anchor coordinates must be real.
template <std::size_t Dim>
SliceFunction<Dim> restrict_slice(const SliceFunction<Dim>& f, std::size_t axis, const ComplexPoint& anchor) {
  for (std::size_t k = 0; k < anchor.size(); ++k) {
    if (k != axis && anchor[k].imag() != 0.0) {
      throw Error(ErrorCode::NonIntrinsicRestriction, "off-axis anchor coordinates must be real");
    }
  }
  return SliceFunction<Dim>::lift(restrict_stem(f.stem(), axis, anchor));
}

}  // namespace hyperslice
