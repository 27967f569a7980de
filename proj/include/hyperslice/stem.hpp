#pragma once

// Stem functions F : D in C^n -> A_C. A stem function is complex intrinsic when
// F(conj z) = conj(F(z)); its lift to the slice cone is defined in slice.hpp.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperslice/complexified.hpp"

namespace hyperslice {

using ComplexPoint = std::vector<ComplexScalar>;
using MultiIndex = std::vector<unsigned>;

enum class Smoothness { C0 = 0, C1 = 1, Analytic = 2 };

template <std::size_t Dim>
struct WirtingerPair {
  Complexified<Dim> dz;
  Complexified<Dim> dzbar;
};

/// F(z) = sum_mu z^mu a_mu with right coefficients a_mu in A. Always intrinsic
/// and holomorphic.
template <std::size_t Dim>
class StemPolynomial {
 public:
  using Terms = std::map<MultiIndex, Hypercomplex<Dim>>;

  explicit StemPolynomial(std::size_t arity) : arity_(arity) {
    if (arity == 0) throw Error(ErrorCode::ArityMismatch, "stem arity must be at least 1");
  }

  static StemPolynomial constant(std::size_t arity, const Hypercomplex<Dim>& c) {
    StemPolynomial p(arity);
    p.add_term(MultiIndex(arity, 0u), c);
    return p;
  }

  static StemPolynomial monomial(MultiIndex mu, const Hypercomplex<Dim>& c) {
    StemPolynomial p(mu.size());
    p.add_term(std::move(mu), c);
    return p;
  }

  /// Accumulates into an existing coefficient; zero results are dropped.
  StemPolynomial& add_term(MultiIndex mu, const Hypercomplex<Dim>& coeff) {
    if (mu.size() != arity_) throw Error(ErrorCode::ArityMismatch, "multi-index length differs from arity");
    auto [it, inserted] = terms_.try_emplace(std::move(mu), coeff);
    if (!inserted) it->second += coeff;
    if (it->second == Hypercomplex<Dim>{}) terms_.erase(it);
    return *this;
  }

  std::size_t arity() const { return arity_; }
  const Terms& terms() const { return terms_; }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [mu, c] : terms_) {
      unsigned s = 0;
      for (unsigned e : mu) s += e;
      d = std::max(d, s);
    }
    return d;
  }

  Complexified<Dim> evaluate(std::span<const ComplexScalar> z) const {
    if (z.size() != arity_) throw Error(ErrorCode::ArityMismatch, "point dimension differs from arity");
    Complexified<Dim> out{};
    // Powers are built incrementally per coordinate; monomials are tiny.
    std::vector<std::vector<ComplexScalar>> powers(arity_);
    for (const auto& [mu, c] : terms_) {
      ComplexScalar zmu{1.0, 0.0};
      for (std::size_t t = 0; t < arity_; ++t) {
        auto& pw = powers[t];
        if (pw.empty()) pw.push_back({1.0, 0.0});
        while (pw.size() <= mu[t]) pw.push_back(pw.back() * z[t]);
        zmu *= pw[mu[t]];
      }
      out.re += zmu.real() * c;
      out.im += zmu.imag() * c;
    }
    return out;
  }

  /// Exact d/dz_t, term by term.
  StemPolynomial derivative(std::size_t axis) const {
    if (axis >= arity_) throw Error(ErrorCode::AxisOutOfRange, "derivative axis out of range");
    StemPolynomial d(arity_);
    for (const auto& [mu, c] : terms_) {
      if (mu[axis] == 0) continue;
      MultiIndex nu = mu;
      nu[axis] -= 1;
      d.add_term(std::move(nu), static_cast<double>(mu[axis]) * c);
    }
    return d;
  }

  friend StemPolynomial operator+(const StemPolynomial& p, const StemPolynomial& q) {
    if (p.arity_ != q.arity_) throw Error(ErrorCode::ArityMismatch, "polynomial arities differ");
    StemPolynomial out = p;
    for (const auto& [mu, c] : q.terms_) out.add_term(mu, c);
    return out;
  }

  friend StemPolynomial operator*(double s, const StemPolynomial& p) {
    StemPolynomial out(p.arity_);
    for (const auto& [mu, c] : p.terms_) out.add_term(mu, s * c);
    return out;
  }

  /// Coefficient convolution c_gamma = sum_{mu+nu=gamma} a_mu b_nu, factor order kept.
  friend StemPolynomial operator*(const StemPolynomial& p, const StemPolynomial& q) {
    if (p.arity_ != q.arity_) throw Error(ErrorCode::ArityMismatch, "polynomial arities differ");
    StemPolynomial out(p.arity_);
    for (const auto& [mu, a] : p.terms_) {
      for (const auto& [nu, b] : q.terms_) {
        MultiIndex gamma(p.arity_);
        for (std::size_t t = 0; t < p.arity_; ++t) gamma[t] = mu[t] + nu[t];
        out.add_term(std::move(gamma), a * b);
      }
    }
    return out;
  }

  friend bool operator==(const StemPolynomial&, const StemPolynomial&) = default;

 private:
  std::size_t arity_;
  Terms terms_;
};

inline constexpr double kDefaultFiniteDifferenceStep = 1e-5;

/// A stem function backed either by a StemPolynomial or by an arbitrary pure
/// evaluator. Intrinsicity is not enforced per call; see check_intrinsic.
template <std::size_t Dim>
class StemFunction {
 public:
  using Evaluator = std::function<Complexified<Dim>(const ComplexPoint&)>;
  using WirtingerEvaluator = std::function<WirtingerPair<Dim>(const ComplexPoint&, std::size_t)>;
  using DomainPredicate = std::function<bool(const ComplexPoint&)>;

  StemFunction(StemPolynomial<Dim> poly)  // NOLINT(google-explicit-constructor)
      : arity_(poly.arity()),
        smoothness_(Smoothness::Analytic),
        holomorphic_(true),
        poly_(std::make_shared<const StemPolynomial<Dim>>(std::move(poly))) {
    auto derivs = std::make_shared<std::vector<StemPolynomial<Dim>>>();
    for (std::size_t t = 0; t < arity_; ++t) derivs->push_back(poly_->derivative(t));
    poly_derivatives_ = std::move(derivs);
    auto p = poly_;
    eval_ = [p](const ComplexPoint& z) { return p->evaluate(z); };
  }

  static StemFunction from_closure(std::size_t arity, Evaluator eval, Smoothness smoothness,
                                   WirtingerEvaluator wirtinger = {}) {
    if (arity == 0) throw Error(ErrorCode::ArityMismatch, "stem arity must be at least 1");
    StemFunction f;
    f.arity_ = arity;
    f.eval_ = std::move(eval);
    f.smoothness_ = smoothness;
    f.wirtinger_ = std::move(wirtinger);
    return f;
  }

  std::size_t arity() const { return arity_; }
  Smoothness smoothness() const { return smoothness_; }
  const StemPolynomial<Dim>* polynomial() const { return poly_.get(); }
  /// d/dz_t of the backing polynomial; only valid when polynomial() is set.
  const StemPolynomial<Dim>& polynomial_derivative(std::size_t axis) const {
    return (*poly_derivatives_)[axis];
  }
  const WirtingerEvaluator& wirtinger_evaluator() const { return wirtinger_; }
  bool has_exact_wirtinger() const { return poly_ || wirtinger_; }

  /// Declares the function holomorphic (used to skip the volume term in
  /// integral formulas). Polynomials are holomorphic automatically.
  StemFunction& set_known_holomorphic(bool v) {
    holomorphic_ = v;
    return *this;
  }
  bool known_holomorphic() const { return holomorphic_; }

  /// False for restrictions anchored at non-real off-axis coordinates.
  StemFunction& set_intrinsic_flag(bool v) {
    intrinsic_ = v;
    return *this;
  }
  bool intrinsic_flag() const { return intrinsic_; }

  StemFunction& set_domain(DomainPredicate domain) {
    domain_ = std::move(domain);
    return *this;
  }
  bool contains(const ComplexPoint& z) const { return !domain_ || domain_(z); }

  StemFunction& set_finite_difference_step(double h) {
    fd_step_ = h;
    return *this;
  }
  double finite_difference_step() const { return fd_step_; }

  Complexified<Dim> operator()(const ComplexPoint& z) const { return eval_(z); }

 private:
  StemFunction() = default;

  std::size_t arity_ = 1;
  Evaluator eval_;
  Smoothness smoothness_ = Smoothness::C0;
  WirtingerEvaluator wirtinger_;
  bool holomorphic_ = false;
  bool intrinsic_ = true;
  DomainPredicate domain_;
  double fd_step_ = kDefaultFiniteDifferenceStep;
  std::shared_ptr<const StemPolynomial<Dim>> poly_;
  std::shared_ptr<const std::vector<StemPolynomial<Dim>>> poly_derivatives_;
};

template <std::size_t Dim>
Complexified<Dim> evaluate_stem(const StemFunction<Dim>& f, const ComplexPoint& z) {
  return f(z);
}

inline ComplexPoint conj(const ComplexPoint& z) {
  ComplexPoint out(z.size());
  std::transform(z.begin(), z.end(), out.begin(), [](ComplexScalar c) { return std::conj(c); });
  return out;
}

struct IntrinsicReport {
  double max_violation = 0.0;
  bool pass = true;
};

/// max |F(conj z) - conj(F(z))| over the samples.
template <std::size_t Dim>
IntrinsicReport check_intrinsic(const StemFunction<Dim>& f, std::span<const ComplexPoint> samples,
                                double tol) {
  IntrinsicReport r;
  for (const auto& z : samples) {
    const double v = distance(f(conj(z)), complex_conjugate(f(z)));
    r.max_violation = std::max(r.max_violation, v);
  }
  r.pass = r.max_violation <= tol;
  return r;
}

template <std::size_t Dim>
struct StemDecomposition {
  Hypercomplex<Dim> f1;
  Hypercomplex<Dim> f2;
  /// F^k = F1^k + i F2^k, so that F = sum_k F^k e_k.
  std::array<ComplexScalar, Dim> components{};

  Complexified<Dim> reassemble() const {
    Complexified<Dim> out{};
    for (std::size_t k = 0; k < Dim; ++k) {
      out.re[k] = components[k].real();
      out.im[k] = components[k].imag();
    }
    return out;
  }
};

template <std::size_t Dim>
StemDecomposition<Dim> decompose(const Complexified<Dim>& w) {
  StemDecomposition<Dim> d{w.re, w.im, {}};
  for (std::size_t k = 0; k < Dim; ++k) d.components[k] = {w.re[k], w.im[k]};
  return d;
}

template <std::size_t Dim>
StemDecomposition<Dim> decompose_stem(const StemFunction<Dim>& f, const ComplexPoint& z) {
  return decompose(f(z));
}

namespace detail {

/// Left multiplication by the central unit i: i(x + iy) = -y + ix.
template <std::size_t Dim>
Complexified<Dim> times_i(const Complexified<Dim>& w) {
  return {-w.im, w.re};
}

}  // namespace detail

/// (dF/dz_t, dF/dzbar_t) = 1/2 (dF/dalpha_t -+ i dF/dbeta_t). Axes are 0-based.
template <std::size_t Dim>
WirtingerPair<Dim> wirtinger(const StemFunction<Dim>& f, const ComplexPoint& z, std::size_t axis) {
  if (axis >= f.arity()) throw Error(ErrorCode::AxisOutOfRange, "wirtinger axis out of range");
  if (f.smoothness() == Smoothness::C0) {
    throw Error(ErrorCode::MissingDerivative, "wirtinger derivative needs a C1 stem");
  }
  if (f.wirtinger_evaluator()) return f.wirtinger_evaluator()(z, axis);
  if (f.polynomial()) return {f.polynomial_derivative(axis).evaluate(z), {}};

  const double h = f.finite_difference_step();
  ComplexPoint zp = z, zm = z;
  zp[axis] += ComplexScalar{h, 0.0};
  zm[axis] -= ComplexScalar{h, 0.0};
  const auto d_alpha = (f(zp) - f(zm)) * (0.5 / h);
  zp = z;
  zm = z;
  zp[axis] += ComplexScalar{0.0, h};
  zm[axis] -= ComplexScalar{0.0, h};
  const auto d_beta = (f(zp) - f(zm)) * (0.5 / h);
  const auto i_d_beta = detail::times_i(d_beta);
  return {(d_alpha - i_d_beta) * 0.5, (d_alpha + i_d_beta) * 0.5};
}

struct HolomorphyReport {
  double max_residual = 0.0;
  bool pass = true;
};

template <std::size_t Dim>
HolomorphyReport is_holomorphic(const StemFunction<Dim>& f, std::span<const ComplexPoint> samples,
                                double tol) {
  HolomorphyReport r;
  if (f.polynomial()) return r;
  for (const auto& z : samples) {
    for (std::size_t t = 0; t < f.arity(); ++t) {
      r.max_residual = std::max(r.max_residual, norm(wirtinger(f, z, t).dzbar));
    }
  }
  r.pass = r.max_residual <= tol;
  return r;
}

/// Pointwise sum; stays polynomial when both operands are.
template <std::size_t Dim>
StemFunction<Dim> operator+(const StemFunction<Dim>& f, const StemFunction<Dim>& g) {
  if (f.arity() != g.arity()) throw Error(ErrorCode::ArityMismatch, "stem arities differ");
  if (f.polynomial() && g.polynomial()) return StemFunction<Dim>(*f.polynomial() + *g.polynomial());
  typename StemFunction<Dim>::WirtingerEvaluator w;
  if (f.has_exact_wirtinger() && g.has_exact_wirtinger()) {
    w = [f, g](const ComplexPoint& z, std::size_t t) {
      auto a = wirtinger(f, z, t);
      auto b = wirtinger(g, z, t);
      return WirtingerPair<Dim>{a.dz + b.dz, a.dzbar + b.dzbar};
    };
  }
  auto out = StemFunction<Dim>::from_closure(
      f.arity(), [f, g](const ComplexPoint& z) { return f(z) + g(z); },
      std::min(f.smoothness(), g.smoothness()), std::move(w));
  out.set_known_holomorphic(f.known_holomorphic() && g.known_holomorphic());
  out.set_intrinsic_flag(f.intrinsic_flag() && g.intrinsic_flag());
  return out;
}

/// Real multiple s F.
template <std::size_t Dim>
StemFunction<Dim> operator*(double s, const StemFunction<Dim>& f) {
  if (f.polynomial()) return StemFunction<Dim>(s * *f.polynomial());
  typename StemFunction<Dim>::WirtingerEvaluator w;
  if (f.has_exact_wirtinger()) {
    w = [f, s](const ComplexPoint& z, std::size_t t) {
      auto a = wirtinger(f, z, t);
      return WirtingerPair<Dim>{a.dz * s, a.dzbar * s};
    };
  }
  auto out = StemFunction<Dim>::from_closure(
      f.arity(), [f, s](const ComplexPoint& z) { return f(z) * s; }, f.smoothness(), std::move(w));
  out.set_known_holomorphic(f.known_holomorphic());
  out.set_intrinsic_flag(f.intrinsic_flag());
  return out;
}

/// Pointwise product FG in A_C. Two polynomials give the convolution polynomial.
template <std::size_t Dim>
StemFunction<Dim> stem_product(const StemFunction<Dim>& f, const StemFunction<Dim>& g) {
  if (f.arity() != g.arity()) throw Error(ErrorCode::ArityMismatch, "stem arities differ");
  if (f.polynomial() && g.polynomial()) return StemFunction<Dim>(*f.polynomial() * *g.polynomial());
  auto out = StemFunction<Dim>::from_closure(
      f.arity(), [f, g](const ComplexPoint& z) { return f(z) * g(z); },
      std::min(f.smoothness(), g.smoothness()));
  out.set_known_holomorphic(f.known_holomorphic() && g.known_holomorphic());
  out.set_intrinsic_flag(f.intrinsic_flag() && g.intrinsic_flag());
  return out;
}

/// u -> F(a_1, ..., a_{j-1}, u, a_{j+1}, ..., a_n). The result is flagged
/// non-intrinsic unless every off-axis anchor coordinate is real.
template <std::size_t Dim>
StemFunction<Dim> restrict_stem(const StemFunction<Dim>& f, std::size_t axis, const ComplexPoint& anchor) {
  if (axis >= f.arity()) throw Error(ErrorCode::AxisOutOfRange, "restriction axis out of range");
  if (anchor.size() != f.arity()) throw Error(ErrorCode::ArityMismatch, "anchor dimension differs from arity");
  bool real_anchor = true;
  for (std::size_t k = 0; k < anchor.size(); ++k) {
    if (k != axis && anchor[k].imag() != 0.0) real_anchor = false;
  }

  if (const auto* p = f.polynomial(); p && real_anchor) {
    StemPolynomial<Dim> r(1);
    for (const auto& [mu, c] : p->terms()) {
      double scale = 1.0;
      for (std::size_t k = 0; k < mu.size(); ++k) {
        if (k != axis) scale *= std::pow(anchor[k].real(), static_cast<double>(mu[k]));
      }
      r.add_term(MultiIndex{mu[axis]}, scale * c);
    }
    return StemFunction<Dim>(std::move(r));
  }

  auto embed = [anchor, axis](const ComplexPoint& u) {
    ComplexPoint z = anchor;
    z[axis] = u[0];
    return z;
  };
  typename StemFunction<Dim>::WirtingerEvaluator w;
  if (f.has_exact_wirtinger()) {
    w = [f, embed, axis](const ComplexPoint& u, std::size_t) { return wirtinger(f, embed(u), axis); };
  }
  auto out = StemFunction<Dim>::from_closure(
      1, [f, embed](const ComplexPoint& u) { return f(embed(u)); }, f.smoothness(), std::move(w));
  out.set_known_holomorphic(f.known_holomorphic());
  out.set_intrinsic_flag(real_anchor && f.intrinsic_flag());
  out.set_finite_difference_step(f.finite_difference_step());
  return out;
}

}  // namespace hyperslice
