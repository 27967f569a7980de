#pragma once

// Seeded samplers shared by the verification suites and the tests.

#include <random>

#include "hyperslice/slice.hpp"

namespace hyperslice {

using Rng = std::mt19937_64;

/// Coefficients uniform in [-1, 1] / sqrt(Dim), so the norm is at most 1.
template <std::size_t Dim>
Hypercomplex<Dim> random_element(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(Dim));
  typename Hypercomplex<Dim>::Coeffs c{};
  for (auto& v : c) v = scale * u(rng);
  return Hypercomplex<Dim>(c);
}

/// Like random_element but with norm bounded below by 1e-3.
template <std::size_t Dim>
Hypercomplex<Dim> random_nonzero_element(Rng& rng) {
  for (;;) {
    auto a = random_element<Dim>(rng);
    if (norm(a) >= 1e-3) return a;
  }
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random multi-indices of total degree <= max_degree with random coefficients.
template <std::size_t Dim>
StemPolynomial<Dim> random_polynomial(Rng& rng, std::size_t arity, unsigned max_degree, std::size_t terms) {
  StemPolynomial<Dim> p(arity);
  std::uniform_int_distribution<unsigned> pick(0, max_degree);
  for (std::size_t k = 0; k < terms; ++k) {
    MultiIndex mu(arity, 0u);
    unsigned budget = pick(rng);
    for (std::size_t t = 0; t < arity && budget > 0; ++t) {
      const unsigned e = (t + 1 == arity) ? budget : std::uniform_int_distribution<unsigned>(0, budget)(rng);
      mu[t] = e;
      budget -= e;
    }
    std::shuffle(mu.begin(), mu.end(), rng);
    p.add_term(std::move(mu), random_element<Dim>(rng));
  }
  return p;
}

/// Nonreal point with alpha_k, beta_k uniform in [-bound, bound] on slice J.
template <std::size_t Dim>
SlicePoint<Dim> random_slice_point(Rng& rng, std::size_t arity, const ImaginaryUnit<Dim>& j, double bound = 0.6) {
  for (;;) {
    std::vector<double> alpha(arity), beta(arity);
    for (auto& a : alpha) a = uniform(rng, -bound, bound);
    for (auto& b : beta) b = uniform(rng, -bound, bound);
    auto x = SlicePoint<Dim>::make(std::move(alpha), std::move(beta), j);
    if (x.beta_norm() > 1e-3) return x;
  }
}

template <std::size_t Dim>
SlicePoint<Dim> random_slice_point(Rng& rng, std::size_t arity, double bound = 0.6) {
  return random_slice_point<Dim>(rng, arity, sample_unit_imaginary<Dim>(rng), bound);
}

/// z with real and imaginary parts uniform in [-bound, bound].
inline ComplexPoint random_complex_point(Rng& rng, std::size_t arity, double bound = 0.6) {
  ComplexPoint z(arity);
  for (auto& c : z) c = {uniform(rng, -bound, bound), uniform(rng, -bound, bound)};
  return z;
}

/// Point strictly inside the polydisc |z_k| < radius (uniform in the disc).
inline ComplexPoint random_disc_point(Rng& rng, std::size_t arity, double radius) {
  ComplexPoint z(arity);
  for (auto& c : z) {
    const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
    c = std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
  }
  return z;
}

/// The stem evaluated through an opaque closure, hiding the polynomial backing.
template <std::size_t Dim>
StemFunction<Dim> as_closure(const StemPolynomial<Dim>& p) {
  return StemFunction<Dim>::from_closure(
      p.arity(), [p](const ComplexPoint& z) { return p.evaluate(z); }, Smoothness::Analytic);
}

}  // namespace hyperslice
