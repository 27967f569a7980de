#pragma once

// Named verification suites. Each suite draws its samples from a generator
// seeded by (seed, suite), so suites are reproducible in isolation and in `all`.

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "hyperslice/config.hpp"
#include "hyperslice/io.hpp"
#include "hyperslice/random.hpp"
#include "hyperslice/report.hpp"

namespace hyperslice {

namespace detail {

inline Rng suite_rng(std::uint64_t seed, SuiteKind suite) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(suite)};
  return Rng(seq);
}

class Recorder {
 public:
  Recorder(SuiteReport& report, std::string prefix) : report_(report), prefix_(std::move(prefix)) {}

  /// Runs `body` (returning the metric) and records metric <= tol.
  void at_most(const std::string& name, double tol, const std::function<double()>& body) {
    run(name, tol, body, [](double m, double t) { return m <= t; });
  }

  /// Runs `body` and records metric > tol.
  void above(const std::string& name, double tol, const std::function<double()>& body) {
    run(name, tol, body, [](double m, double t) { return m > t; });
  }

  /// Records a metric computed elsewhere in `ms` of wall time.
  void record_at_most(const std::string& name, double tol, double metric, double ms) {
    store({prefix_ + name, std::isfinite(metric) && metric <= tol, metric, tol, ms});
  }

  void row(ConvergenceRow r) { report_.convergence.push_back(r); }

 private:
  void run(const std::string& name, double tol, const std::function<double()>& body,
           bool (*accept)(double, double)) {
    const auto start = std::chrono::steady_clock::now();
    CheckRecord rec{prefix_ + name, false, 0.0, tol, 0.0};
    try {
      rec.metric = body();
      rec.pass = std::isfinite(rec.metric) && accept(rec.metric, tol);
    } catch (const std::exception&) {
      rec.metric = std::numeric_limits<double>::quiet_NaN();
      rec.pass = false;
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    store(std::move(rec));
  }

  void store(CheckRecord rec) { report_.checks.push_back(std::move(rec)); }

  SuiteReport& report_;
  std::string prefix_;
};

template <class Fn>
double timed_ms(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

template <std::size_t Dim>
ImaginaryUnit<Dim> unit_away_from(Rng& rng, const ImaginaryUnit<Dim>& j, double min_distance) {
  for (;;) {
    auto u = sample_unit_imaginary<Dim>(rng);
    if (distance(u.value(), j.value()) > min_distance && distance(u.value(), -j.value()) > min_distance) return u;
  }
}

/// Polynomials named in the config, loaded for this algebra.
template <std::size_t Dim>
std::vector<StemPolynomial<Dim>> config_functions(const ExperimentConfig& cfg, std::size_t arity) {
  std::vector<StemPolynomial<Dim>> out;
  for (const auto& [name, path] : cfg.functions) {
    auto p = load_polynomial<Dim>(path);
    if (p.arity() != arity) {
      throw Error(ErrorCode::InvalidConfig, "function '" + name + "' has arity " + std::to_string(p.arity()) +
                                                ", suite runs with n = " + std::to_string(arity));
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// F(z) = s(z) c for a complex scalar field s with s(zbar) = conj(s(z)).
template <std::size_t Dim>
Complexified<Dim> scalar_times(ComplexScalar s, const Hypercomplex<Dim>& c) {
  return {s.real() * c, s.imag() * c};
}

/// I(zbar_axis c): a C^1 slice function that is not slice regular.
template <std::size_t Dim>
SliceFunction<Dim> conjugate_variable(std::size_t arity, std::size_t axis, const Hypercomplex<Dim>& c) {
  return SliceFunction<Dim>::lift(StemFunction<Dim>::from_closure(
      arity, [axis, c](const ComplexPoint& z) { return scalar_times(std::conj(z[axis]), c); }, Smoothness::C1,
      [axis, c](const ComplexPoint&, std::size_t t) {
        WirtingerPair<Dim> w{};
        if (t == axis) w.dzbar = Complexified<Dim>::real(c);
        return w;
      }));
}

}  // namespace detail

// ---------------------------------------------------------------- algebra

namespace detail {

template <std::size_t Dim>
void algebra_checks(const ExperimentConfig& cfg, Rng& rng, Recorder& rec) {
  const std::string pre = "algebra." + std::string(AlgebraTag::of<Dim>().name()) + ".";
  const double tol = cfg.tolerance("algebra.identities");
  std::vector<std::pair<Hypercomplex<Dim>, Hypercomplex<Dim>>> pairs;
  for (std::size_t s = 0; s < cfg.samples; ++s) pairs.emplace_back(random_element<Dim>(rng), random_element<Dim>(rng));

  rec.at_most(pre + "alternative_left", tol, [&] {
    double m = 0.0;
    for (const auto& [a, b] : pairs) m = std::max(m, distance((a * a) * b, a * (a * b)));
    return m;
  });
  rec.at_most(pre + "alternative_right", tol, [&] {
    double m = 0.0;
    for (const auto& [a, b] : pairs) m = std::max(m, distance((b * a) * a, b * (a * a)));
    return m;
  });
  rec.at_most(pre + "artin", tol, [&] {
    double m = 0.0;
    std::vector<Hypercomplex<Dim>> words;
    for (const auto& [a, b] : pairs) {
      words.clear();
      for (unsigned len = 1; len <= 3; ++len) {
        for (unsigned bits = 0; bits < (1u << len); ++bits) {
          auto w = (bits & 1u) ? b : a;
          for (unsigned k = 1; k < len; ++k) w = w * (((bits >> k) & 1u) ? b : a);
          words.push_back(w);
        }
      }
      for (const auto& u : words) {
        for (const auto& v : words) {
          const auto uv = u * v;
          for (const auto& w : words) m = std::max(m, distance(uv * w, u * (v * w)));
        }
      }
    }
    return m;
  });
  rec.at_most(pre + "norm_composition", tol, [&] {
    double m = 0.0;
    for (const auto& [a, b] : pairs) {
      const double na = norm_squared(a), nb = norm_squared(b);
      m = std::max(m, std::abs(norm_squared(a * b) - na * nb) / (na * nb));
    }
    return m;
  });
  rec.at_most(pre + "conjugation_reverses_products", tol, [&] {
    double m = 0.0;
    for (const auto& [a, b] : pairs) m = std::max(m, distance(conjugate(a * b), conjugate(b) * conjugate(a)));
    return m;
  });

  if constexpr (Dim == 8) {
    rec.above(pre + "nonassociative_basis_triple", 0.0, [&] {
      const auto e1 = Hypercomplex<Dim>::basis(1), e2 = Hypercomplex<Dim>::basis(2), e4 = Hypercomplex<Dim>::basis(4);
      return distance((e1 * e2) * e4, e1 * (e2 * e4));
    });
  } else {
    // Largest associator norm over all basis triples.
    auto basis_associator = [] {
      double m = 0.0;
      for (std::size_t i = 0; i < Dim; ++i) {
        for (std::size_t j = 0; j < Dim; ++j) {
          for (std::size_t k = 0; k < Dim; ++k) {
            const auto ei = Hypercomplex<Dim>::basis(i), ej = Hypercomplex<Dim>::basis(j),
                       ek = Hypercomplex<Dim>::basis(k);
            m = std::max(m, distance((ei * ej) * ek, ei * (ej * ek)));
          }
        }
      }
      return m;
    };
    rec.at_most(pre + "basis_associativity", 0.0, basis_associator);
  }
}

}  // namespace detail

inline void run_algebra_suite(const ExperimentConfig& cfg, detail::Recorder& rec) {
  auto rng = detail::suite_rng(cfg.seed, SuiteKind::Algebra);
  detail::algebra_checks<8>(cfg, rng, rec);
  detail::algebra_checks<4>(cfg, rng, rec);
}

// --------------------------------------------------------- representation

template <std::size_t Dim>
void run_representation_suite(const ExperimentConfig& cfg, detail::Recorder& rec) {
  auto rng = detail::suite_rng(cfg.seed, SuiteKind::Representation);
  const double tol = cfg.tolerance("representation.lift");
  const double agree_tol = cfg.tolerance("representation.agreement");
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto f = SliceFunction<Dim>::lift(random_polynomial<Dim>(rng, n, 4, 8));
    double err_general = 0.0, err_opposite = 0.0, agreement = 0.0;
    const double ms = detail::timed_ms([&] {
    for (std::size_t s = 0; s < cfg.samples; ++s) {
      const auto i = sample_unit_imaginary<Dim>(rng);
      const auto j = sample_unit_imaginary<Dim>(rng);
      ImaginaryUnit<Dim> k;
      do {
        k = sample_unit_imaginary<Dim>(rng);
      } while (distance(j.value(), k.value()) < 1e-2);
      std::vector<double> alpha(n), beta(n);
      for (auto& a : alpha) a = uniform(rng, -0.6, 0.6);
      for (auto& b : beta) b = uniform(rng, -0.6, 0.6);
      const auto at = [&](const Hypercomplex<Dim>& u) { return lift_evaluate<Dim>(f, alpha, beta, u); };
      const auto fi = at(i), fj = at(j), fk = at(k), fmj = at(-j.value());
      err_general = std::max(err_general, distance(representation(fj, fk, i, j, k), fi));
      const auto opposite = representation(fj, fmj, i, j);
      err_opposite = std::max(err_opposite, distance(opposite, fi));
      agreement = std::max(agreement, distance(representation(fj, fmj, i, j, -j), opposite));
    }
    });
    const std::string pre = "representation.n" + std::to_string(n) + ".";
    rec.record_at_most(pre + "general", tol, err_general, ms);
    rec.record_at_most(pre + "opposite_units", tol, err_opposite, ms);
    rec.record_at_most(pre + "formulas_agree", agree_tol, agreement, ms);
  }
}

// --------------------------------------------------------------- products

template <std::size_t Dim>
void run_products_suite(const ExperimentConfig& cfg, detail::Recorder& rec) {
  auto rng = detail::suite_rng(cfg.seed, SuiteKind::Products);
  const std::size_t n = cfg.n;
  constexpr std::size_t kPoints = 100;

  rec.at_most("products.star_equals_slice", cfg.tolerance("products.star"), [&] {
    double m = 0.0;
    for (std::size_t s = 0; s < kPoints; ++s) {
      const auto p = random_polynomial<Dim>(rng, n, 3, 5), q = random_polynomial<Dim>(rng, n, 3, 5);
      const auto x = random_slice_point<Dim>(rng, n);
      const auto star = star_product(p, q);
      const auto via_closures =
          slice_product(SliceFunction<Dim>::lift(as_closure(p)), SliceFunction<Dim>::lift(as_closure(q)))(x);
      m = std::max(m, distance(SliceFunction<Dim>::lift(star)(x), via_closures));
      m = std::max(m, distance(evaluate_power_series(star, x), via_closures));
    }
    return m;
  });

  rec.at_most("products.leibniz", cfg.tolerance("products.leibniz"), [&] {
    double m = 0.0;
    for (std::size_t s = 0; s < kPoints; ++s) {
      const auto f = SliceFunction<Dim>::lift(random_polynomial<Dim>(rng, n, 3, 5));
      const auto g = SliceFunction<Dim>::lift(random_polynomial<Dim>(rng, n, 3, 5));
      const auto x = random_slice_point<Dim>(rng, n);
      const auto sf = spherical(f, x), sg = spherical(g, x), sfg = spherical(slice_product(f, g), x);
      m = std::max(m, distance(sfg.derivative, sf.derivative * sg.value + sf.value * sg.derivative));
    }
    return m;
  });

  rec.at_most("products.real_stem_pointwise", cfg.tolerance("products.pointwise"), [&] {
    double m = 0.0;
    for (std::size_t s = 0; s < kPoints; ++s) {
      StemPolynomial<Dim> real_poly(n);
      const auto source = random_polynomial<Dim>(rng, n, 3, 5);
      for (const auto& [mu, a] : source.terms()) {
        real_poly.add_term(mu, Hypercomplex<Dim>::real(a.real_part()));
      }
      const auto f = SliceFunction<Dim>::lift(real_poly);
      const auto g = SliceFunction<Dim>::lift(random_polynomial<Dim>(rng, n, 3, 5));
      const auto x = random_slice_point<Dim>(rng, n);
      m = std::max(m, distance(slice_product(f, g)(x), f(x) * g(x)));
    }
    return m;
  });

  // Octonions: f = I(z e1), g = I(e2) at J = e4 (the associator [e4, e1, e2] is
  // nonzero). Quaternions are associative, so g = I(z e2) is used instead.
  rec.above("products.pointwise_witness", cfg.tolerance("products.witness"), [&] {
    using H = Hypercomplex<Dim>;
    const auto f = SliceFunction<Dim>::lift(StemPolynomial<Dim>::monomial({1}, H::basis(1)));
    const auto g = SliceFunction<Dim>::lift(Dim == 8 ? StemPolynomial<Dim>::constant(1, H::basis(2))
                                                     : StemPolynomial<Dim>::monomial({1}, H::basis(2)));
    const auto x = SlicePoint<Dim>::make({0.3}, {0.8}, ImaginaryUnit<Dim>::basis(Dim == 8 ? 4 : 2));
    return distance(slice_product(f, g)(x), f(x) * g(x));
  });
}

// -------------------------------------------------------------- spherical

template <std::size_t Dim>
void run_spherical_suite(const ExperimentConfig& cfg, detail::Recorder& rec) {
  auto rng = detail::suite_rng(cfg.seed, SuiteKind::Spherical);
  const double tol = cfg.tolerance("spherical.identities");
  const std::size_t n = cfg.n;
  const std::size_t points = std::min<std::size_t>(cfg.samples, 200);
  double dd = 0.0, dv = 0.0, decomposition = 0.0, constancy = 0.0;
  const double ms = detail::timed_ms([&] {
    for (std::size_t s = 0; s < points; ++s) {
      const auto f = SliceFunction<Dim>::lift(random_polynomial<Dim>(rng, n, 4, 6));
      const auto x = random_slice_point<Dim>(rng, n);
      const auto parts = spherical(f, x);
      dd = std::max(dd, norm(spherical_derivative(spherical_derivative_function(f), x)));
      dv = std::max(dv, norm(spherical_derivative(spherical_value_function(f), x)));
      decomposition = std::max(decomposition, distance(f(x), parts.value + apply_imaginary_part(x, parts.derivative)));
      const auto other = SlicePoint<Dim>::make(x.alpha, x.beta, sample_unit_imaginary<Dim>(rng));
      const auto other_parts = spherical(f, other);
      constancy = std::max({constancy, distance(parts.value, other_parts.value),
                            distance(parts.derivative, other_parts.derivative)});
    }
  });
  rec.record_at_most("spherical.derivative_of_derivative", tol, dd, ms);
  rec.record_at_most("spherical.derivative_of_value", tol, dv, ms);
  rec.record_at_most("spherical.decomposition", tol, decomposition, ms);
  rec.record_at_most("spherical.constant_on_spheres", tol, constancy, ms);
}

// ------------------------------------------------------------------ zeros

namespace detail {

template <std::size_t Dim>
struct ZeroTestCase {
  SliceFunction<Dim> f;
  std::vector<SlicePoint<Dim>> spheres;
};

template <std::size_t Dim>
SlicePoint<Dim> sphere_of(const Hypercomplex<Dim>& q) {
  return SlicePoint<Dim>::make({q.real_part()}, {norm(q.imaginary_part())}, ImaginaryUnit<Dim>::normalized(q));
}

template <std::size_t Dim>
StemPolynomial<Dim> linear_factor(const Hypercomplex<Dim>& q) {
  return StemPolynomial<Dim>::monomial({1}, Hypercomplex<Dim>::real(1.0)).add_term({0}, -q);
}

/// Nonreal q with |Im q| bounded away from 0.
template <std::size_t Dim>
Hypercomplex<Dim> random_nonreal(Rng& rng) {
  const auto unit = sample_unit_imaginary<Dim>(rng);
  return Hypercomplex<Dim>::real(uniform(rng, -0.8, 0.8)) + uniform(rng, 0.3, 1.0) * unit.value();
}

/// 50 one-variable functions of degree <= 3 with known zero structure, each
/// with the spheres to classify.
template <std::size_t Dim>
std::vector<ZeroTestCase<Dim>> zero_test_set(Rng& rng) {
  using P = StemPolynomial<Dim>;
  std::vector<ZeroTestCase<Dim>> cases;
  for (int k = 0; k < 50; ++k) {
    const auto c = random_nonzero_element<Dim>(rng);
    const auto constant = P::constant(1, c);
    const auto q = random_nonreal<Dim>(rng);
    const double r = uniform(rng, -0.9, 0.9);
    const auto real_root = linear_factor<Dim>(Hypercomplex<Dim>::real(r));
    P p(1);
    std::vector<SlicePoint<Dim>> spheres;
    switch (k % 5) {
      case 0:
        p = star_product(linear_factor(q), constant);
        spheres = {sphere_of(q)};
        break;
      case 1: {
        P quadratic = P::monomial({2}, Hypercomplex<Dim>::real(1.0));
        quadratic.add_term({1}, Hypercomplex<Dim>::real(-2.0 * q.real_part()));
        quadratic.add_term({0}, Hypercomplex<Dim>::real(norm_squared(q)));
        p = star_product(star_product(real_root, quadratic), constant);
        spheres = {sphere_of(q), SlicePoint<Dim>::real({r})};
        break;
      }
      case 2:
        p = star_product(star_product(real_root, linear_factor(q)), constant);
        spheres = {sphere_of(q), SlicePoint<Dim>::real({r})};
        break;
      case 3: {
        auto q2 = random_nonreal<Dim>(rng);
        while (std::abs(norm(q2.imaginary_part()) - norm(q.imaginary_part())) < 0.05) q2 = random_nonreal<Dim>(rng);
        p = star_product(star_product(linear_factor(q), linear_factor(q2)), constant);
        spheres = {sphere_of(q), sphere_of(q2)};
        break;
      }
      default:
        p = random_polynomial<Dim>(rng, 1, 3, 4);
        break;
    }
    spheres.push_back(sphere_of(random_nonreal<Dim>(rng)));
    spheres.push_back(SlicePoint<Dim>::real({uniform(rng, -1.0, 1.0)}));
    cases.push_back({SliceFunction<Dim>::lift(std::move(p)), std::move(spheres)});
  }
  return cases;
}

/// Minimizes |f(alpha + beta I)|^2 over unit imaginary I by projected gradient
/// descent, using only function values.
template <std::size_t Dim>
double polish_sphere_minimum(const SliceFunction<Dim>& f, const SlicePoint<Dim>& s, Hypercomplex<Dim> unit) {
  auto value = [&](const Hypercomplex<Dim>& v) {
    return norm_squared(lift_evaluate<Dim>(f, s.alpha, s.beta, v / norm(v)));
  };
  double g = value(unit);
  constexpr double h = 1e-7;
  for (int iter = 0; iter < 1000 && g > 1e-30; ++iter) {
    Hypercomplex<Dim> grad{};
    for (std::size_t k = 1; k < Dim; ++k) {
      const auto e = h * Hypercomplex<Dim>::basis(k);
      grad += ((value(unit + e) - value(unit - e)) / (2 * h)) * Hypercomplex<Dim>::basis(k);
    }
    const double gg = norm_squared(grad);
    if (gg == 0.0) break;
    double t = 1.0 / std::sqrt(gg);
    bool moved = false;
    for (int half = 0; half < 60; ++half, t *= 0.5) {
      auto trial = unit - t * grad;
      trial = trial / norm(trial);
      const double gt = value(trial);
      if (gt <= g - 1e-4 * t * gg) {
        unit = trial;
        g = gt;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return std::sqrt(g);
}

/// Brute-force classification: `scan` random units, zero iff |f| < threshold.
template <std::size_t Dim>
SphereZeroKind brute_force_sphere(const SliceFunction<Dim>& f, const SlicePoint<Dim>& s, Rng& rng,
                                  std::size_t scan, double threshold) {
  if (s.is_real) return norm(f(s)) < threshold ? SphereZeroKind::RealZero : SphereZeroKind::Empty;
  std::size_t zeros = 0;
  double best = std::numeric_limits<double>::infinity();
  Hypercomplex<Dim> best_unit{};
  for (std::size_t k = 0; k < scan; ++k) {
    const auto unit = sample_unit_imaginary<Dim>(rng).value();
    const double v = norm(lift_evaluate<Dim>(f, s.alpha, s.beta, unit));
    if (v < threshold) ++zeros;
    if (v < best) {
      best = v;
      best_unit = unit;
    }
  }
  if (zeros == scan) return SphereZeroKind::SphericalZero;
  if (zeros > 0 || polish_sphere_minimum(f, s, best_unit) < threshold) return SphereZeroKind::SinglePoint;
  return SphereZeroKind::Empty;
}

}  // namespace detail

template <std::size_t Dim>
void run_zeros_suite(const ExperimentConfig& cfg, detail::Recorder& rec) {
  auto rng = detail::suite_rng(cfg.seed, SuiteKind::Zeros);
  const double threshold = cfg.tolerance("zeros.brute_force");
  const double classify_tol = cfg.tolerance("zeros.classify");
  const auto cases = detail::zero_test_set<Dim>(rng);
  std::size_t disagreements = 0;
  std::array<std::size_t, 4> seen{};
  const double ms = detail::timed_ms([&] {
    for (const auto& tc : cases) {
      for (const auto& s : tc.spheres) {
        const auto kind = classify_sphere_zeros(tc.f, s, classify_tol).kind;
        ++seen[static_cast<std::size_t>(kind)];
        if (kind != detail::brute_force_sphere(tc.f, s, rng, 10000, threshold)) ++disagreements;
      }
    }
  });
  rec.record_at_most("zeros.brute_force_disagreements", 0.0, static_cast<double>(disagreements), ms);
  // Cases of the structure theorem: real zero, spherical zero, single point.
  rec.above("zeros.real_case_occurs", 0.0,
            [&] { return static_cast<double>(seen[static_cast<std::size_t>(SphereZeroKind::RealZero)]); });
  rec.above("zeros.spherical_case_occurs", 0.0,
            [&] { return static_cast<double>(seen[static_cast<std::size_t>(SphereZeroKind::SphericalZero)]); });
  rec.above("zeros.single_point_case_occurs", 0.0,
            [&] { return static_cast<double>(seen[static_cast<std::size_t>(SphereZeroKind::SinglePoint)]); });
}

// --------------------------------------------------------------------- bm

namespace detail {

/// The reproduction test set: z1 z2^2 + z1 e3 when n >= 2, random cubic
/// polynomials, and the functions named in the config.
template <std::size_t Dim>
std::vector<SliceFunction<Dim>> reproduction_set(const ExperimentConfig& cfg, Rng& rng) {
  const std::size_t n = cfg.n;
  std::vector<SliceFunction<Dim>> fs;
  if (n >= 2) {
    MultiIndex a(n, 0u), b(n, 0u);
    a[0] = 1;
    a[1] = 2;
    b[0] = 1;
    StemPolynomial<Dim> p(n);
    p.add_term(a, Hypercomplex<Dim>::real(1.0)).add_term(b, Hypercomplex<Dim>::basis(3));
    fs.push_back(SliceFunction<Dim>::lift(p));
  }
  for (int k = 0; k < 3; ++k) fs.push_back(SliceFunction<Dim>::lift(random_polynomial<Dim>(rng, n, 3, 6)));
  for (auto& p : config_functions<Dim>(cfg, n)) fs.push_back(SliceFunction<Dim>::lift(std::move(p)));
  return fs;
}

template <std::size_t Dim>
SlicePoint<Dim> interior_point(Rng& rng, std::size_t n, const ImaginaryUnit<Dim>& j) {
  const auto z = random_disc_point(rng, n, 0.5);
  std::vector<double> alpha(n), beta(n);
  for (std::size_t k = 0; k < n; ++k) {
    alpha[k] = z[k].real();
    beta[k] = z[k].imag();
  }
  return SlicePoint<Dim>::make(std::move(alpha), std::move(beta), j);
}

}  // namespace detail

template <std::size_t Dim>
void run_bm_suite(const ExperimentConfig& cfg, detail::Recorder& rec) {
  auto rng = detail::suite_rng(cfg.seed, SuiteKind::Bm);
  const std::size_t n = cfg.n;
  const auto j = sample_unit_imaginary<Dim>(rng);
  const auto dom = PolydiscDomain<Dim>::unit(n, j);
  const auto fs = detail::reproduction_set<Dim>(cfg, rng);
  const auto x = n == 2 ? SlicePoint<Dim>::make({0.3, -0.1}, {0.2, 0.4}, j) : detail::interior_point(rng, n, j);
  const auto q = cfg.quadrature;

  // Convergence in M at fixed R, V; the last row is the configured rule.
  std::vector<double> errors;
  double route_gap = 0.0, sweep_ms = 0.0;
  for (std::size_t m : {std::max<std::size_t>(8, q.angular_nodes / 4), std::max<std::size_t>(8, q.angular_nodes / 2),
                        q.angular_nodes}) {
    auto qm = q;
    qm.angular_nodes = m;
    double err = 0.0;
    const double ms = detail::timed_ms([&] {
      for (const auto& f : fs) {
        const auto v = bm_boundary_integral_routes(f, dom, x, qm);
        err = std::max(err, distance(v.direct, f(x)));
        route_gap = std::max(route_gap, v.route_discrepancy());
      }
    });
    errors.push_back(err);
    sweep_ms += ms;
    rec.row({m, q.radial_nodes, q.volume_refinement, err, ms});
  }
  rec.record_at_most("bm.reproduction", cfg.tolerance("bm.reproduction"), errors.back(), sweep_ms);
  rec.at_most("bm.monotone_in_M", 1.0, [&] {
    double worst = 0.0;
    for (std::size_t k = 1; k < errors.size(); ++k) worst = std::max(worst, errors[k] / std::max(errors[k - 1], 1e-14));
    return worst;
  });

  rec.at_most("bm.calibration_constant", cfg.tolerance("bm.calibration"), [&] {
    const auto one = SliceFunction<Dim>::lift(StemPolynomial<Dim>::constant(n, Hypercomplex<Dim>::real(1.0)));
    double m = distance(bm_boundary_integral(one, dom, x, q), Hypercomplex<Dim>::real(1.0));
    for (int k = 0; k < 2; ++k) {
      m = std::max(m, distance(bm_boundary_integral(one, dom, detail::interior_point(rng, n, j), q),
                               Hypercomplex<Dim>::real(1.0)));
    }
    return m;
  });

  const auto c = random_nonzero_element<Dim>(rng);
  const auto c1 = detail::conjugate_variable<Dim>(n, 0, c);
  std::vector<double> c1_errors;
  double c1_ms = 0.0;
  for (std::size_t v = 1; v <= q.volume_refinement; ++v) {
    auto qv = q;
    qv.volume_refinement = v;
    double err = 0.0;
    const double ms = detail::timed_ms([&] {
      const auto boundary = bm_boundary_integral_routes(c1, dom, x, qv);
      const auto volume = bm_volume_integral_routes(c1, dom, x, qv);
      err = distance(boundary.direct - volume.direct, c1(x));
      route_gap = std::max({route_gap, boundary.route_discrepancy(), volume.route_discrepancy()});
    });
    c1_errors.push_back(err);
    c1_ms += ms;
    rec.row({q.angular_nodes, q.radial_nodes, v, err, ms});
  }
  rec.at_most("bm.routes_agree", cfg.tolerance("bm.routes"), [&] { return route_gap; });
  rec.record_at_most("bm.c1_boundary_minus_volume", cfg.tolerance("bm.c1"), c1_errors.back(), c1_ms);
}

// -------------------------------------------------------------- off-slice

template <std::size_t Dim>
void run_off_slice_suite(const ExperimentConfig& cfg, detail::Recorder& rec) {
  auto rng = detail::suite_rng(cfg.seed, SuiteKind::OffSlice);
  const std::size_t n = cfg.n;
  const auto j = sample_unit_imaginary<Dim>(rng);
  const auto dom = PolydiscDomain<Dim>::unit(n, j);
  const auto fs = detail::reproduction_set<Dim>(cfg, rng);
  double off = 0.0, collapse = 0.0;
  const double ms = detail::timed_ms([&] {
    for (const auto& f : fs) {
      for (int k = 0; k < 2; ++k) {
        const auto on = detail::interior_point(rng, n, j);
        const auto i = detail::unit_away_from(rng, j, 0.1);
        const auto at_i = SlicePoint<Dim>::make(on.alpha, on.beta, i);
        off = std::max(off, distance(off_slice_evaluate(f, dom, at_i, cfg.quadrature), f(at_i)));
        const auto at_j = SlicePoint<Dim>::make(on.alpha, on.beta, j);
        collapse = std::max(collapse, distance(off_slice_evaluate(f, dom, at_j, cfg.quadrature),
                                               bm_boundary_integral(f, dom, at_j, cfg.quadrature)));
      }
    }
  });
  rec.record_at_most("off_slice.matches_lift", cfg.tolerance("off_slice.lift"), off, ms);
  rec.record_at_most("off_slice.collapses_on_slice", cfg.tolerance("off_slice.collapse"), collapse, ms);
}

// ---------------------------------------------------------------- hartogs

namespace detail {

/// (z1 - 2)^{-1} c, defined on all of the closed unit polydisc.
template <std::size_t Dim>
Complexified<Dim> pole_outside(const ComplexPoint& z, const Hypercomplex<Dim>& c) {
  return scalar_times(1.0 / (z[0] - 2.0), c);
}

}  // namespace detail

inline constexpr double kHartogsHoleFraction = 0.5;

template <std::size_t Dim>
void run_hartogs_suite(const ExperimentConfig& cfg, detail::Recorder& rec) {
  auto rng = detail::suite_rng(cfg.seed, SuiteKind::Hartogs);
  const auto j = sample_unit_imaginary<Dim>(rng);

  // n = 1: f = 1/z on the annulus; the contour integral sees the pole at 0.
  rec.above("hartogs.n1_counterexample", cfg.tolerance("hartogs.counterexample"), [&] {
    const auto f = SliceFunction<Dim>::lift(StemFunction<Dim>::from_closure(
        1, [](const ComplexPoint& z) { return detail::scalar_times(1.0 / z[0], Hypercomplex<Dim>::real(1.0)); },
        Smoothness::Analytic));
    const auto dom = PolydiscDomain<Dim>::unit(1, j);
    const auto x = SlicePoint<Dim>::make({0.0}, {0.7}, j);
    return distance(scaled_contour_integral(f, dom, kHartogsContourScale, x, cfg.quadrature), f(x));
  });
  rec.at_most("hartogs.n1_rejected", 0.0, [&] {
    try {
      hartogs_extend(SliceFunction<Dim>::lift(StemPolynomial<Dim>::constant(1, Hypercomplex<Dim>::real(1.0))),
                     PolydiscDomain<Dim>::unit(1, j), kHartogsHoleFraction, cfg.quadrature);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::HartogsRequiresSeveralVariables) return 0.0;
    }
    return 1.0;
  });

  if (cfg.n < 2) return;
  const std::size_t n = cfg.n;
  const auto c = random_nonzero_element<Dim>(rng);
  const auto dom = PolydiscDomain<Dim>::unit(n, j);
  const auto hole = dom.scaled(kHartogsHoleFraction);
  // Known only on D \ K: the evaluator refuses points of the hole.
  auto restricted = StemFunction<Dim>::from_closure(
      n,
      [c, hole](const ComplexPoint& z) {
        if (hole.contains(z)) throw Error(ErrorCode::InvalidDomain, "queried inside the removed set");
        return detail::pole_outside(z, c);
      },
      Smoothness::Analytic);
  restricted.set_known_holomorphic(true).set_domain([hole](const ComplexPoint& z) { return !hole.contains(z); });
  const auto extension = hartogs_extend(SliceFunction<Dim>::lift(restricted), dom, kHartogsHoleFraction, cfg.quadrature);
  const auto direct = SliceFunction<Dim>::lift(StemFunction<Dim>::from_closure(
      n, [c](const ComplexPoint& z) { return detail::pole_outside(z, c); }, Smoothness::Analytic));

  rec.at_most("hartogs.extension_inside_hole", cfg.tolerance("hartogs.extension"), [&] {
    double m = 0.0;
    for (int k = 0; k < 3; ++k) {
      const auto z = random_disc_point(rng, n, 0.9 * kHartogsHoleFraction);
      std::vector<double> alpha(n), beta(n);
      for (std::size_t t = 0; t < n; ++t) {
        alpha[t] = z[t].real();
        beta[t] = z[t].imag();
      }
      const auto x = SlicePoint<Dim>::make(std::move(alpha), std::move(beta), j);
      m = std::max(m, distance(extension(x), direct(x)));
    }
    return m;
  });
}

// ------------------------------------------------------------- regularity

template <std::size_t Dim>
void run_regularity_suite(const ExperimentConfig& cfg, detail::Recorder& rec) {
  auto rng = detail::suite_rng(cfg.seed, SuiteKind::Regularity);
  const std::size_t n = cfg.n;
  std::vector<ImaginaryUnit<Dim>> units;
  for (int k = 0; k < 3; ++k) units.push_back(sample_unit_imaginary<Dim>(rng));
  std::vector<ComplexPoint> samples;
  for (int k = 0; k < 10; ++k) samples.push_back(random_complex_point(rng, n));
  const double pass_tol = cfg.tolerance("regularity.pass");

  rec.at_most("regularity.polynomials_pass", pass_tol, [&] {
    double m = 0.0;
    for (int k = 0; k < 3; ++k) {
      const auto f = SliceFunction<Dim>::lift(random_polynomial<Dim>(rng, n, 4, 6));
      const auto r = check_slice_regular<Dim>(f, units, samples, pass_tol);
      m = std::max({m, r.max_slice_residual, r.max_stem_residual});
    }
    return m;
  });

  rec.at_most("regularity.conjugate_fails_with_2a", cfg.tolerance("regularity.fail"), [&] {
    const auto a = random_nonzero_element<Dim>(rng);
    const auto r = check_slice_regular<Dim>(detail::conjugate_variable<Dim>(n, 0, a), units, samples, pass_tol);
    if (r.pass) return std::numeric_limits<double>::infinity();
    return std::abs(r.max_slice_residual / (2.0 * norm(a)) - 1.0);
  });

  // Every one-variable restriction through a real grid is slice regular, and
  // so is the function jointly on the grid.
  const auto f = SliceFunction<Dim>::lift(random_polynomial<Dim>(rng, n, 3, 6));
  const std::array<double, 3> grid{-0.5, 0.0, 0.5};
  std::vector<ComplexPoint> anchors;
  std::size_t count = 1;
  for (std::size_t t = 0; t < n; ++t) count *= grid.size();
  for (std::size_t idx = 0; idx < count; ++idx) {
    ComplexPoint a(n);
    for (std::size_t t = 0, rest = idx; t < n; ++t, rest /= grid.size()) a[t] = grid[rest % grid.size()];
    anchors.push_back(std::move(a));
  }
  rec.at_most("regularity.osgood_restrictions", pass_tol, [&] {
    double m = 0.0;
    std::vector<ComplexPoint> line;
    for (double s : {-0.4, 0.1, 0.5}) line.push_back({ComplexScalar(s, 0.3)});
    for (const auto& a : anchors) {
      for (std::size_t t = 0; t < n; ++t) {
        const auto r = check_slice_regular<Dim>(restrict_slice(f, t, a), units, line, pass_tol);
        m = std::max({m, r.max_slice_residual, r.max_stem_residual});
      }
    }
    return m;
  });
  rec.at_most("regularity.osgood_joint", cfg.tolerance("regularity.osgood"), [&] {
    std::vector<ComplexPoint> points;
    for (auto a : anchors) {
      for (auto& z : a) z += ComplexScalar(0.0, 0.3);
      points.push_back(std::move(a));
    }
    const auto r = check_slice_regular<Dim>(f, units, points, pass_tol);
    return std::max(r.max_slice_residual, r.max_stem_residual);
  });
}

// ---------------------------------------------------------------- dispatch

namespace detail {

template <std::size_t Dim>
void run_one(SuiteKind kind, const ExperimentConfig& cfg, Recorder& rec) {
  switch (kind) {
    case SuiteKind::Algebra: run_algebra_suite(cfg, rec); break;
    case SuiteKind::Representation: run_representation_suite<Dim>(cfg, rec); break;
    case SuiteKind::Products: run_products_suite<Dim>(cfg, rec); break;
    case SuiteKind::Spherical: run_spherical_suite<Dim>(cfg, rec); break;
    case SuiteKind::Zeros: run_zeros_suite<Dim>(cfg, rec); break;
    case SuiteKind::Bm: run_bm_suite<Dim>(cfg, rec); break;
    case SuiteKind::OffSlice: run_off_slice_suite<Dim>(cfg, rec); break;
    case SuiteKind::Hartogs: run_hartogs_suite<Dim>(cfg, rec); break;
    case SuiteKind::Regularity: run_regularity_suite<Dim>(cfg, rec); break;
    case SuiteKind::All: break;
  }
}

}  // namespace detail

/// Suites 2-9 in the order `all` runs them.
inline constexpr std::array<SuiteKind, 8> kAlgebraSpecificSuites{
    SuiteKind::Representation, SuiteKind::Products, SuiteKind::Spherical, SuiteKind::Zeros,
    SuiteKind::Bm,             SuiteKind::OffSlice, SuiteKind::Hartogs,   SuiteKind::Regularity};

/// Runs one suite over cfg.algebra. `algebra` always covers both algebras;
/// `all` runs it once, then suites 2-9 over the octonions and again over the
/// quaternions, with check names prefixed by the algebra.
inline SuiteReport run_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  SuiteReport report;
  report.suite = std::string(to_string(cfg.suite));
  report.seed = cfg.seed;
  if (cfg.suite == SuiteKind::All || cfg.suite == SuiteKind::Algebra) {
    report.algebra = "octonion,quaternion";
  } else {
    report.algebra = std::string(cfg.algebra.name());
  }

  if (cfg.suite != SuiteKind::All) {
    detail::Recorder rec(report, "");
    if (cfg.algebra.dim() == 8) {
      detail::run_one<8>(cfg.suite, cfg, rec);
    } else {
      detail::run_one<4>(cfg.suite, cfg, rec);
    }
    return report;
  }

  detail::Recorder rec(report, "");
  run_algebra_suite(cfg, rec);
  detail::Recorder oct(report, "octonion/");
  for (auto kind : kAlgebraSpecificSuites) detail::run_one<8>(kind, cfg, oct);
  detail::Recorder quat(report, "quaternion/");
  for (auto kind : kAlgebraSpecificSuites) detail::run_one<4>(kind, cfg, quat);
  return report;
}

}  // namespace hyperslice
