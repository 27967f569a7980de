#include <gtest/gtest.h>

#include <cstdlib>

#include "hyperslice/integral.hpp"
#include "hyperslice/random.hpp"

using namespace hyperslice;

namespace {

using O = Octonion;
using OC = Complexified<8>;
using P = StemPolynomial<8>;
using S = StemFunction<8>;
using F = SliceFunction<8>;
using U = ImaginaryUnit<8>;

const QuadratureSpec kDefault{64, 32, 3};

O from_coeffs(std::array<double, 8> c) { return O(c); }

F conjugate_z1(std::size_t arity, const O& c) {
  return F::lift(S::from_closure(
      arity, [c](const ComplexPoint& z) { return OC{z[0].real() * c, -z[0].imag() * c}; }, Smoothness::C1,
      [c](const ComplexPoint&, std::size_t t) {
        WirtingerPair<8> w{};
        if (t == 0) w.dzbar = OC::real(c);
        return w;
      }));
}

F pole_outside(std::size_t arity, const O& c) {
  return F::lift(S::from_closure(
      arity,
      [c](const ComplexPoint& z) {
        const auto s = 1.0 / (z[0] - 2.0);
        return OC{s.real() * c, s.imag() * c};
      },
      Smoothness::Analytic));
}

class ScopedThreads {
 public:
  explicit ScopedThreads(const char* value) {
    if (const char* old = std::getenv("HYPERSLICE_THREADS")) old_ = old;
    setenv("HYPERSLICE_THREADS", value, 1);
  }
  ~ScopedThreads() {
    if (old_.empty()) {
      unsetenv("HYPERSLICE_THREADS");
    } else {
      setenv("HYPERSLICE_THREADS", old_.c_str(), 1);
    }
  }

 private:
  std::string old_;
};

}  // namespace

TEST(Quadrature, GaussLegendreExactForPolynomials) {
  const auto rule = gauss_legendre(8, -1.0, 2.0);
  for (int degree = 0; degree <= 15; ++degree) {
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) sum += rule.weights[k] * std::pow(rule.nodes[k], degree);
    const double exact = (std::pow(2.0, degree + 1) - std::pow(-1.0, degree + 1)) / (degree + 1);
    EXPECT_NEAR(sum, exact, 1e-12 * std::max(1.0, std::abs(exact))) << "degree " << degree;
  }
}

TEST(Quadrature, GradedRuleIntegratesSmoothFunctions) {
  const auto rule = graded_gauss_legendre(16, 3);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) sum += rule.weights[k] * std::exp(rule.nodes[k]);
  EXPECT_NEAR(sum, std::exp(1.0) - 1.0, 1e-14);
}

TEST(Quadrature, SpecValidation) {
  EXPECT_THROW((QuadratureSpec{4, 32, 3}.validate()), Error);
  EXPECT_THROW((QuadratureSpec{64, 2, 3}.validate()), Error);
  EXPECT_THROW((QuadratureSpec{64, 32, 0}.validate()), Error);
  EXPECT_NO_THROW(kDefault.validate());
  EXPECT_THROW(gauss_legendre(0), Error);
}

TEST(Domain, Validation) {
  const auto j = U::basis(1);
  EXPECT_THROW(PolydiscDomain<8>::make({{0.0, 0.1}}, {1.0}, j), Error);
  EXPECT_THROW(PolydiscDomain<8>::make({0.0}, {-1.0}, j), Error);
  EXPECT_THROW(PolydiscDomain<8>::make({0.0, 0.0}, {1.0}, j), Error);
  const auto d = PolydiscDomain<8>::unit(2, j);
  EXPECT_TRUE(d.contains({{0.5, 0.5}, {0.0, -0.9}}));
  EXPECT_FALSE(d.contains({{0.5, 0.5}, {1.0, 0.0}}));
  EXPECT_FALSE(d.scaled(0.5).contains({{0.6, 0.0}, {0.0, 0.0}}));
}

TEST(BoundaryIntegral, PointNearBoundaryRejected) {
  const auto dom = PolydiscDomain<8>::unit(1, U::basis(1));
  const auto f = F::lift(P::constant(1, O::real(1.0)));
  try {
    bm_boundary_integral(f, dom, SlicePoint<8>::make({0.0}, {0.99}, U::basis(1)), kDefault);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointTooCloseToBoundary);
  }
}

TEST(BoundaryIntegral, Calibration) {
  Rng rng(1);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto j = sample_unit_imaginary<8>(rng);
    const auto dom = PolydiscDomain<8>::unit(n, j);
    const auto x = random_slice_point<8>(rng, n, j, 0.5);
    const auto v = bm_boundary_integral(F::lift(P::constant(n, O::real(1.0))), dom, x, QuadratureSpec{32, 16, 3});
    EXPECT_LE(distance(v, O::real(1.0)), 1e-10) << "n = " << n;
  }
}

TEST(BoundaryIntegral, ReproducesPolynomialFromOracle) {
  P p(2);
  p.add_term({1, 2}, O::real(1.0)).add_term({1, 0}, O::basis(3));
  const auto j = U::basis(1);
  const auto x = SlicePoint<8>::make({0.3, -0.1}, {0.2, 0.4}, j);
  const auto oracle = from_coeffs({-0.029, -0.054000000000000006, -0.2, 0.3, 0, 0, 0, 0});
  EXPECT_LE(distance(F::lift(p)(x), oracle), 1e-15);
  EXPECT_LE(distance(bm_boundary_integral(F::lift(p), PolydiscDomain<8>::unit(2, j), x, kDefault), oracle), 1e-8);
}

TEST(BoundaryIntegral, OneVariableCauchyFromOracle) {
  const auto j = U::basis(1);
  const auto f = F::lift(P::monomial({2}, O::basis(2) + O::basis(7)));
  const auto x = SlicePoint<8>::make({0.0}, {0.5}, j);
  const auto oracle = from_coeffs({0, 0, -0.25, 0, 0, 0, 0, -0.25});
  EXPECT_LE(distance(bm_boundary_integral(f, PolydiscDomain<8>::unit(1, j), x, kDefault), oracle), 1e-10);
}

TEST(BoundaryIntegral, ErrorShrinksAsAngularNodesDouble) {
  Rng rng(2);
  const auto j = sample_unit_imaginary<8>(rng);
  const auto f = F::lift(random_polynomial<8>(rng, 2, 3, 6));
  const auto x = random_slice_point<8>(rng, 2, j, 0.5);
  const auto dom = PolydiscDomain<8>::unit(2, j);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t m : {16, 32, 64}) {
    const double err = distance(bm_boundary_integral(f, dom, x, QuadratureSpec{m, 32, 3}), f(x));
    EXPECT_LE(err, std::max(previous, 1e-14));
    previous = err;
  }
  EXPECT_LE(previous, 1e-8);
}

TEST(BoundaryIntegral, RoutesAgree) {
  Rng rng(3);
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto j = sample_unit_imaginary<8>(rng);
    const auto f = F::lift(random_polynomial<8>(rng, n, 3, 5));
    const auto r = bm_boundary_integral_routes(f, PolydiscDomain<8>::unit(n, j), random_slice_point<8>(rng, n, j, 0.5),
                                               QuadratureSpec{32, 16, 2});
    EXPECT_LE(r.route_discrepancy(), 1e-12);
    EXPECT_GT(r.nodes, 0u);
  }
}

TEST(BoundaryIntegral, RealLinearInF) {
  Rng rng(4);
  const auto j = sample_unit_imaginary<8>(rng);
  const auto dom = PolydiscDomain<8>::unit(2, j);
  const auto p = random_polynomial<8>(rng, 2, 3, 4), q = random_polynomial<8>(rng, 2, 3, 4);
  const auto x = random_slice_point<8>(rng, 2, j, 0.5);
  const QuadratureSpec spec{16, 8, 2};
  const auto lhs = bm_boundary_integral(F::lift(S(p) + S(1.5 * q)), dom, x, spec);
  const auto rhs = bm_boundary_integral(F::lift(p), dom, x, spec) + 1.5 * bm_boundary_integral(F::lift(q), dom, x, spec);
  EXPECT_LE(distance(lhs, rhs), 1e-13);
}

TEST(BoundaryIntegral, IndependentOfThreadCount) {
  Rng rng(5);
  const auto j = sample_unit_imaginary<8>(rng);
  const auto f = F::lift(random_polynomial<8>(rng, 2, 3, 5));
  const auto x = random_slice_point<8>(rng, 2, j, 0.5);
  const auto dom = PolydiscDomain<8>::unit(2, j);
  O one, four;
  {
    ScopedThreads t("1");
    one = bm_boundary_integral(f, dom, x, kDefault);
  }
  {
    ScopedThreads t("4");
    four = bm_boundary_integral(f, dom, x, kDefault);
  }
  EXPECT_EQ(one, four);
}

TEST(Parallel, DeterministicSumIndependentOfWorkers) {
  auto body = [](std::size_t i, double& acc) { acc += 1.0 / (1.0 + static_cast<double>(i)); };
  const double a = deterministic_sum(100000, 0.0, body, 1);
  const double b = deterministic_sum(100000, 0.0, body, 7);
  EXPECT_EQ(a, b);
}

TEST(VolumeIntegral, VanishesForRegularFunctions) {
  Rng rng(6);
  const auto j = sample_unit_imaginary<8>(rng);
  const auto f = F::lift(as_closure(random_polynomial<8>(rng, 2, 3, 4)));
  const auto x = random_slice_point<8>(rng, 2, j, 0.5);
  EXPECT_LE(norm(bm_volume_integral(f, PolydiscDomain<8>::unit(2, j), x, QuadratureSpec{32, 16, 2})), 2e-3);
}

TEST(VolumeIntegral, ConjugateVariableReproduced) {
  Rng rng(7);
  const auto j = sample_unit_imaginary<8>(rng);
  const auto c = random_nonzero_element<8>(rng);
  const auto f = conjugate_z1(2, c);
  const auto x = random_slice_point<8>(rng, 2, j, 0.5);
  const auto dom = PolydiscDomain<8>::unit(2, j);
  EXPECT_LE(distance(bm_reproduce(f, dom, x, kDefault), f(x)), 5e-3);
  const auto routes = bm_volume_integral_routes(f, dom, x, kDefault);
  EXPECT_LE(routes.route_discrepancy(), 1e-12);
}

TEST(VolumeIntegral, RealLinearInF) {
  Rng rng(8);
  const auto j = sample_unit_imaginary<8>(rng);
  const auto dom = PolydiscDomain<8>::unit(2, j);
  const auto a = conjugate_z1(2, random_element<8>(rng)), b = conjugate_z1(2, random_element<8>(rng));
  const auto sum = F::lift(a.stem() + 2.0 * b.stem());
  const auto x = random_slice_point<8>(rng, 2, j, 0.5);
  const QuadratureSpec spec{16, 8, 2};
  const auto lhs = bm_volume_integral(sum, dom, x, spec);
  const auto rhs = bm_volume_integral(a, dom, x, spec) + 2.0 * bm_volume_integral(b, dom, x, spec);
  EXPECT_LE(distance(lhs, rhs), 1e-12);
}

TEST(BMReportTest, Fields) {
  Rng rng(9);
  const auto j = sample_unit_imaginary<8>(rng);
  const auto f = F::lift(random_polynomial<8>(rng, 2, 3, 4));
  const auto x = random_slice_point<8>(rng, 2, j, 0.5);
  const auto r = bm_report(f, PolydiscDomain<8>::unit(2, j), x, kDefault);
  EXPECT_EQ(r.reproduced.size(), 8u);
  EXPECT_EQ(r.reference.size(), 8u);
  EXPECT_LE(r.abs_error, 1e-8);
  EXPECT_GT(r.nodes_used, 0u);
}

TEST(OffSlice, CollapsesOnTheSlice) {
  Rng rng(10);
  const auto j = sample_unit_imaginary<8>(rng);
  const auto f = F::lift(random_polynomial<8>(rng, 2, 3, 4));
  const auto x = random_slice_point<8>(rng, 2, j, 0.5);
  const auto dom = PolydiscDomain<8>::unit(2, j);
  EXPECT_LE(distance(off_slice_evaluate(f, dom, x, kDefault), bm_boundary_integral(f, dom, x, kDefault)), 1e-12);
}

TEST(OffSlice, OrthogonalUnitMatchesLift) {
  const auto j = U::basis(1);
  Rng rng(11);
  const auto f = F::lift(random_polynomial<8>(rng, 2, 3, 4));
  const auto q = SlicePoint<8>::make({0.2, -0.3}, {0.1, 0.35}, U::basis(4));
  EXPECT_LE(distance(off_slice_evaluate(f, PolydiscDomain<8>::unit(2, j), q, kDefault), f(q)), 1e-8);
}

TEST(OffSlice, NonCanonicalDomainUnit) {
  Rng rng(15);
  const auto j = -U::basis(3);
  const auto f = F::lift(random_polynomial<8>(rng, 2, 3, 4));
  const auto dom = PolydiscDomain<8>::unit(2, j);
  const auto q = SlicePoint<8>::make({0.2, -0.3}, {0.1, 0.35}, sample_unit_imaginary<8>(rng));
  EXPECT_LE(distance(off_slice_evaluate(f, dom, q, kDefault), f(q)), 1e-8);
  const auto x = SlicePoint<8>::make({0.2, -0.3}, {0.1, 0.35}, j);
  EXPECT_LE(distance(off_slice_evaluate(f, dom, x, kDefault), bm_boundary_integral(f, dom, x, kDefault)), 1e-12);
}

TEST(OffSlice, RealFunctionLandsInSliceOfQuery) {
  Rng rng(12);
  P p(1);
  p.add_term({3}, O::real(0.7)).add_term({1}, O::real(-1.2)).add_term({0}, O::real(0.4));
  const auto f = F::lift(p);
  const auto j = sample_unit_imaginary<8>(rng), i = sample_unit_imaginary<8>(rng);
  const auto q = SlicePoint<8>::make({0.25}, {0.4}, i);
  const auto v = off_slice_evaluate(f, PolydiscDomain<8>::unit(1, j), q, kDefault);
  // v lies in C_I = span(1, I).
  const auto imag = v.imaginary_part();
  EXPECT_LE(norm(imag - dot(imag, i.value()) * i.value()), 1e-10);
  EXPECT_LE(distance(v, f(q)), 1e-8);
}

TEST(Hartogs, ExtendsRationalFunctionInsideTheHole) {
  const auto j = U::basis(1);
  const auto c = O::real(1.0) + 2.0 * O::basis(5) - O::basis(6);
  const auto dom = PolydiscDomain<8>::unit(2, j);
  const auto hole = dom.scaled(0.5);
  auto known = pole_outside(2, c).stem();
  known = S::from_closure(
      2,
      [known, hole](const ComplexPoint& z) {
        if (hole.contains(z)) throw Error(ErrorCode::InvalidDomain, "inside the removed set");
        return known(z);
      },
      Smoothness::Analytic);
  known.set_known_holomorphic(true);
  const auto g = hartogs_extend(F::lift(known), dom, 0.5, kDefault);
  const auto x = SlicePoint<8>::make({0.1, -0.15}, {0.2, 0.05}, j);
  ASSERT_TRUE(hole.contains(x.complex_point()));
  const auto oracle = from_coeffs({-0.5205479452054794, -0.05479452054794521, 0, 0, 0.10958904109589042,
                                   -1.0410958904109588, 0.5205479452054794, -0.05479452054794521});
  EXPECT_LE(distance(pole_outside(2, c)(x), oracle), 1e-15);
  EXPECT_LE(distance(g(x), oracle), 1e-6);
}

TEST(Hartogs, PolynomialIsItsOwnExtension) {
  Rng rng(13);
  const auto j = sample_unit_imaginary<8>(rng);
  const auto f = F::lift(random_polynomial<8>(rng, 2, 3, 4));
  const auto g = hartogs_extend(f, PolydiscDomain<8>::unit(2, j), 0.5, kDefault);
  for (int s = 0; s < 3; ++s) {
    const auto x = random_slice_point<8>(rng, 2, j, 0.6);
    EXPECT_LE(distance(g(x), f(x)), 1e-8);
  }
}

TEST(Hartogs, OneVariableContourMissesThePole) {
  const auto j = U::basis(2);
  const auto f = F::lift(S::from_closure(
      1,
      [](const ComplexPoint& z) {
        const auto s = 1.0 / z[0];
        return OC{O::real(s.real()), O::real(s.imag())};
      },
      Smoothness::Analytic));
  const auto x = SlicePoint<8>::make({0.0}, {0.7}, j);
  const auto g = scaled_contour_integral(f, PolydiscDomain<8>::unit(1, j), kHartogsContourScale, x, kDefault);
  EXPECT_GT(distance(g, f(x)), 0.5);
  // Trapezoidal error (0.7 / 0.95)^M on top of the exact value 0.
  EXPECT_LE(norm(g), 1e-7);
}

TEST(Hartogs, OneVariableRejected) {
  try {
    hartogs_extend(F::lift(P::constant(1, O::real(1.0))), PolydiscDomain<8>::unit(1, U::basis(1)), 0.5, kDefault);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HartogsRequiresSeveralVariables);
  }
}

TEST(Hartogs, HoleFractionValidated) {
  const auto f = F::lift(P::constant(2, O::real(1.0)));
  EXPECT_THROW(hartogs_extend(f, PolydiscDomain<8>::unit(2, U::basis(1)), 0.9, kDefault), Error);
  EXPECT_THROW(hartogs_extend(f, PolydiscDomain<8>::unit(2, U::basis(1)), 0.0, kDefault), Error);
}

TEST(Quaternion, BoundaryReproduction) {
  Rng rng(14);
  const auto j = sample_unit_imaginary<4>(rng);
  const auto f = SliceFunction<4>::lift(random_polynomial<4>(rng, 2, 3, 5));
  const auto x = random_slice_point<4>(rng, 2, j, 0.5);
  EXPECT_LE(distance(bm_boundary_integral(f, PolydiscDomain<4>::unit(2, j), x, kDefault), f(x)), 1e-8);
}
