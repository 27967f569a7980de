#pragma once

// Bochner-Martinelli integrals of slice functions over polydiscs in a slice
// plane C_J^n. All kernel values live in C_J and act on f by left
// multiplication. With the boundary oriented so that constants reproduce,
// the kernel pulled back to face k = {|xi_k - c_k| = r_k} is
//   (n-1)! / (2 pi^n) * r_k e^{i theta} conj(xi_k - x_k) / |xi - x|^{2n} dtheta dA,
// and the volume term is
//   (n-1)! / pi^n * sum_l conj(xi_l - x_l) / |xi - x|^{2n} df/dxbar_l dV,
// so that f(x) = boundary - volume.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "hyperslice/parallel.hpp"
#include "hyperslice/quadrature.hpp"
#include "hyperslice/slice.hpp"

namespace hyperslice {

struct QuadratureSpec {
  /// Trapezoidal nodes per circle (and per polar angle).
  std::size_t angular_nodes = 64;
  /// Gauss-Legendre nodes per radial panel.
  std::size_t radial_nodes = 32;
  /// Number of dyadic radial panels toward the evaluation point in the volume term.
  std::size_t volume_refinement = 3;

  void validate() const {
    if (angular_nodes < 8) throw Error(ErrorCode::InvalidQuadrature, "angular_nodes must be at least 8");
    if (radial_nodes < 4) throw Error(ErrorCode::InvalidQuadrature, "radial_nodes must be at least 4");
    if (volume_refinement < 1) throw Error(ErrorCode::InvalidQuadrature, "volume_refinement must be at least 1");
  }
};

/// Product of discs |z_k - c_k| < r_k with real centers, placed in C_J^n.
template <std::size_t Dim>
struct PolydiscDomain {
  std::vector<double> centers;
  std::vector<double> radii;
  ImaginaryUnit<Dim> j;

  static PolydiscDomain make(const std::vector<ComplexScalar>& centers, std::vector<double> radii,
                             const ImaginaryUnit<Dim>& j) {
    if (centers.empty() || centers.size() != radii.size()) {
      throw Error(ErrorCode::InvalidDomain, "centers and radii must have the same nonzero length");
    }
    PolydiscDomain d{{}, std::move(radii), j};
    for (const auto& c : centers) {
      if (c.imag() != 0.0) throw Error(ErrorCode::InvalidDomain, "polydisc centers must be real");
      d.centers.push_back(c.real());
    }
    for (double r : d.radii) {
      if (!(r > 0.0)) throw Error(ErrorCode::InvalidDomain, "polydisc radii must be positive");
    }
    return d;
  }

  static PolydiscDomain unit(std::size_t n, const ImaginaryUnit<Dim>& j) {
    return make(std::vector<ComplexScalar>(n, 0.0), std::vector<double>(n, 1.0), j);
  }

  std::size_t arity() const { return radii.size(); }

  /// Concentric polydisc with every radius multiplied by s.
  PolydiscDomain scaled(double s) const {
    PolydiscDomain d = *this;
    for (double& r : d.radii) r *= s;
    return d;
  }

  bool contains(const ComplexPoint& z) const {
    for (std::size_t k = 0; k < arity(); ++k) {
      if (std::abs(z[k] - centers[k]) >= radii[k]) return false;
    }
    return true;
  }
};

inline constexpr double kBoundaryMargin = 0.05;

namespace detail {

/// Coordinates z of x in the domain's slice (x = phi_J(z)).
template <std::size_t Dim>
ComplexPoint slice_coordinates(const PolydiscDomain<Dim>& dom, const SlicePoint<Dim>& x) {
  if (x.arity() != dom.arity()) throw Error(ErrorCode::ArityMismatch, "point arity differs from domain arity");
  double orientation = 1.0;
  if (!x.is_real) {
    if (distance(x.j.value(), dom.j.value()) <= 1e-10) {
      orientation = 1.0;
    } else if (distance(x.j.value(), -dom.j.value()) <= 1e-10) {
      orientation = -1.0;
    } else {
      throw Error(ErrorCode::SliceMismatch, "point does not lie in the domain's slice plane");
    }
  }
  ComplexPoint z(x.arity());
  for (std::size_t k = 0; k < x.arity(); ++k) z[k] = {x.alpha[k], orientation * x.beta[k]};
  return z;
}

template <std::size_t Dim>
void require_interior(const PolydiscDomain<Dim>& dom, const ComplexPoint& z) {
  for (std::size_t k = 0; k < dom.arity(); ++k) {
    const double gap = dom.radii[k] - std::abs(z[k] - dom.centers[k]);
    if (gap < kBoundaryMargin * dom.radii[k]) {
      throw Error(ErrorCode::PointTooCloseToBoundary, "evaluation point is closer than 5% of a radius to the boundary");
    }
  }
}

inline double int_pow(double base, std::size_t exponent) {
  double out = 1.0;
  for (std::size_t k = 0; k < exponent; ++k) out *= base;
  return out;
}

inline double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

/// Both accumulation routes for one integral: directly in the algebra, and per
/// complex component F^k.
template <std::size_t Dim>
struct DualAccumulator {
  Hypercomplex<Dim> direct{};
  std::array<ComplexScalar, Dim> components{};

  DualAccumulator& operator+=(const DualAccumulator& o) {
    direct += o.direct;
    for (std::size_t k = 0; k < Dim; ++k) components[k] += o.components[k];
    return *this;
  }

  /// Adds phi_J(kappa) (F1 + J F2) and kappa F^k for every k.
  void add(ComplexScalar kappa, const Complexified<Dim>& value, const Hypercomplex<Dim>& j) {
    const auto kappa_j = Hypercomplex<Dim>::real(kappa.real()) + kappa.imag() * j;
    direct += kappa_j * (value.re + j * value.im);
    for (std::size_t k = 0; k < Dim; ++k) components[k] += kappa * ComplexScalar{value.re[k], value.im[k]};
  }

  /// sum_k phi_J(components[k]) e_k.
  Hypercomplex<Dim> assemble(const Hypercomplex<Dim>& j) const {
    Hypercomplex<Dim> re{}, im{};
    for (std::size_t k = 0; k < Dim; ++k) {
      re[k] = components[k].real();
      im[k] = components[k].imag();
    }
    return re + j * im;
  }
};

}  // namespace detail

/// An integral computed along both routes.
template <std::size_t Dim>
struct IntegralValue {
  Hypercomplex<Dim> direct{};
  Hypercomplex<Dim> componentwise{};
  std::size_t nodes = 0;

  double route_discrepancy() const { return distance(direct, componentwise); }
};

/// int over the boundary of D_J of omega_x(xi) f(xi), by faces. Face k is
/// parameterized by the angle on circle k (trapezoidal) and polar coordinates
/// around the centers of the other discs (Gauss-Legendre radially).
template <std::size_t Dim>
IntegralValue<Dim> bm_boundary_integral_routes(const SliceFunction<Dim>& f, const PolydiscDomain<Dim>& dom,
                                               const SlicePoint<Dim>& x, const QuadratureSpec& q) {
  q.validate();
  if (f.arity() != dom.arity()) throw Error(ErrorCode::ArityMismatch, "function arity differs from domain arity");
  const auto z = detail::slice_coordinates(dom, x);
  detail::require_interior(dom, z);

  const std::size_t n = dom.arity();
  const std::size_t M = q.angular_nodes;
  const auto angles = periodic_trapezoid(M);
  const auto radial = gauss_legendre(q.radial_nodes);
  const std::size_t R = radial.size();
  const std::size_t per_disc = M * R;

  std::vector<std::complex<double>> unit_circle(M);
  for (std::size_t a = 0; a < M; ++a) unit_circle[a] = std::polar(1.0, angles.nodes[a]);

  std::size_t per_face = M;
  for (std::size_t l = 1; l < n; ++l) per_face *= per_disc;
  const std::size_t total = n * per_face;

  const double constant = detail::factorial(n - 1) / (2.0 * std::pow(std::numbers::pi, static_cast<double>(n)));
  const auto& J = dom.j.value();
  const auto& F = f.stem();

  auto body = [&](std::size_t index, detail::DualAccumulator<Dim>& acc) {
    const std::size_t face = index / per_face;
    std::size_t rest = index % per_face;
    thread_local ComplexPoint xi;
    xi.resize(n);
    double weight = constant;

    const std::size_t a = rest % M;
    rest /= M;
    const auto e_theta = unit_circle[a];
    xi[face] = dom.centers[face] + dom.radii[face] * e_theta;
    weight *= angles.weights[a];
    for (std::size_t l = 0; l < n; ++l) {
      if (l == face) continue;
      const std::size_t local = rest % per_disc;
      rest /= per_disc;
      const std::size_t ia = local % M, ir = local / M;
      const double rho = dom.radii[l] * radial.nodes[ir];
      xi[l] = dom.centers[l] + rho * unit_circle[ia];
      weight *= angles.weights[ia] * dom.radii[l] * radial.weights[ir] * rho;
    }

    double dist2 = 0.0;
    for (std::size_t l = 0; l < n; ++l) dist2 += std::norm(xi[l] - z[l]);
    const auto kappa =
        weight * dom.radii[face] * e_theta * std::conj(xi[face] - z[face]) / detail::int_pow(dist2, n);
    acc.add(kappa, F(xi), J);
  };

  const auto acc = deterministic_sum(total, detail::DualAccumulator<Dim>{}, body);
  return {acc.direct, acc.assemble(J), total};
}

template <std::size_t Dim>
Hypercomplex<Dim> bm_boundary_integral(const SliceFunction<Dim>& f, const PolydiscDomain<Dim>& dom,
                                       const SlicePoint<Dim>& x, const QuadratureSpec& q) {
  return bm_boundary_integral_routes(f, dom, x, q).direct;
}

/// int over D_J of the kernel against the slice derivatives df/dxbar_l, in polar
/// coordinates centered at x. The box of radial variables is split into n
/// pyramids (rho_m = s P_m, rho_l = s t_l P_l), which cancels the
/// |xi - x|^{1-2n} singularity; s uses `volume_refinement` dyadic panels.
template <std::size_t Dim>
IntegralValue<Dim> bm_volume_integral_routes(const SliceFunction<Dim>& f, const PolydiscDomain<Dim>& dom,
                                             const SlicePoint<Dim>& x, const QuadratureSpec& q) {
  q.validate();
  if (f.arity() != dom.arity()) throw Error(ErrorCode::ArityMismatch, "function arity differs from domain arity");
  const auto& F = f.stem();
  if (F.smoothness() == Smoothness::C0) {
    throw Error(ErrorCode::MissingDerivative, "volume term needs a C1 stem function");
  }
  const auto z = detail::slice_coordinates(dom, x);
  detail::require_interior(dom, z);

  const std::size_t n = dom.arity();
  const std::size_t M = q.angular_nodes;
  const auto angles = periodic_trapezoid(M);
  const auto s_rule = graded_gauss_legendre(q.radial_nodes, q.volume_refinement);
  const auto t_rule = gauss_legendre(q.radial_nodes);
  const std::size_t S = s_rule.size(), T = t_rule.size();

  std::vector<std::complex<double>> unit_circle(M);
  for (std::size_t a = 0; a < M; ++a) unit_circle[a] = std::polar(1.0, angles.nodes[a]);

  // Distance from z_l to the circle l along direction e^{i phi}.
  std::vector<std::vector<double>> reach(n, std::vector<double>(M));
  for (std::size_t l = 0; l < n; ++l) {
    const auto d = z[l] - dom.centers[l];
    const double r = dom.radii[l];
    for (std::size_t a = 0; a < M; ++a) {
      const double proj = std::real(d * std::conj(unit_circle[a]));
      reach[l][a] = -proj + std::sqrt(proj * proj + r * r - std::norm(d));
    }
  }

  std::size_t angle_count = 1, t_count = 1;
  for (std::size_t l = 0; l < n; ++l) angle_count *= M;
  for (std::size_t l = 1; l < n; ++l) t_count *= T;
  const std::size_t per_pyramid = angle_count * S * t_count;
  const std::size_t total = n * per_pyramid;

  const double constant = detail::factorial(n - 1) / std::pow(std::numbers::pi, static_cast<double>(n));
  const auto& J = dom.j.value();

  auto body = [&](std::size_t index, detail::DualAccumulator<Dim>& acc) {
    const std::size_t pyramid = index / per_pyramid;
    std::size_t rest = index % per_pyramid;
    const std::size_t is = rest % S;
    rest /= S;
    thread_local std::vector<std::size_t> angle;
    thread_local ComplexPoint xi;
    thread_local std::vector<std::complex<double>> offset;
    angle.resize(n);
    xi.resize(n);
    offset.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
      angle[l] = rest % M;
      rest /= M;
    }
    const double s = s_rule.nodes[is];
    double weight = constant * s_rule.weights[is] * detail::int_pow(s, n - 1);

    double dist2 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      const double P = reach[l][angle[l]];
      double rho;
      if (l == pyramid) {
        rho = s * P;
      } else {
        const std::size_t it = rest % T;
        rest /= T;
        rho = s * t_rule.nodes[it] * P;
        weight *= t_rule.weights[it];
      }
      weight *= P * angles.weights[angle[l]] * rho;
      offset[l] = rho * unit_circle[angle[l]];
      xi[l] = z[l] + offset[l];
      dist2 += rho * rho;
    }
    const double scale = weight / detail::int_pow(dist2, n);
    for (std::size_t l = 0; l < n; ++l) {
      acc.add(scale * std::conj(offset[l]), wirtinger(F, xi, l).dzbar, J);
    }
  };

  const auto acc = deterministic_sum(total, detail::DualAccumulator<Dim>{}, body);
  return {acc.direct, acc.assemble(J), total};
}

template <std::size_t Dim>
Hypercomplex<Dim> bm_volume_integral(const SliceFunction<Dim>& f, const PolydiscDomain<Dim>& dom,
                                     const SlicePoint<Dim>& x, const QuadratureSpec& q) {
  return bm_volume_integral_routes(f, dom, x, q).direct;
}

/// boundary - volume, skipping the volume term for known-holomorphic stems.
template <std::size_t Dim>
Hypercomplex<Dim> bm_reproduce(const SliceFunction<Dim>& f, const PolydiscDomain<Dim>& dom,
                               const SlicePoint<Dim>& x, const QuadratureSpec& q) {
  auto value = bm_boundary_integral(f, dom, x, q);
  if (!f.stem().known_holomorphic()) value -= bm_volume_integral(f, dom, x, q);
  return value;
}

/// f at q = alpha + beta I from data on the boundary of D_J only: the
/// integrals at x = alpha + beta J and its mirror are combined as
///   1/2 (B_x + B_xbar) - (I/2)(J (B_x - B_xbar)).
template <std::size_t Dim>
Hypercomplex<Dim> off_slice_evaluate(const SliceFunction<Dim>& f, const PolydiscDomain<Dim>& dom,
                                     const SlicePoint<Dim>& q_point, const QuadratureSpec& q) {
  const auto on_slice = SlicePoint<Dim>::make(q_point.alpha, q_point.beta, dom.j);
  if (q_point.is_real) return bm_reproduce(f, dom, on_slice, q);
  const auto at_x = bm_reproduce(f, dom, on_slice, q);
  const auto at_mirror = bm_reproduce(f, dom, on_slice.mirror(), q);
  // on_slice may have flipped (beta, J); the values are f(alpha +- beta dom.j) for q's beta.
  return representation(at_x, at_mirror, q_point.j, dom.j);
}

/// Boundary integral over the concentric polydisc scaled by `contour_scale`.
template <std::size_t Dim>
Hypercomplex<Dim> scaled_contour_integral(const SliceFunction<Dim>& f, const PolydiscDomain<Dim>& dom,
                                          double contour_scale, const SlicePoint<Dim>& x,
                                          const QuadratureSpec& q) {
  return bm_boundary_integral(f, dom.scaled(contour_scale), x, q);
}

inline constexpr double kHartogsContourScale = 0.95;

/// Extension of a function known only near the boundary of the polydisc
/// (slice regular on D minus a concentric hole) to the whole polydisc.
template <std::size_t Dim>
class HartogsExtension {
 public:
  HartogsExtension(SliceFunction<Dim> f, PolydiscDomain<Dim> dom, double hole_radius_fraction, QuadratureSpec q)
      : f_(std::move(f)), dom_(std::move(dom)), hole_(hole_radius_fraction), q_(q) {
    if (dom_.arity() < 2) {
      throw Error(ErrorCode::HartogsRequiresSeveralVariables, "Hartogs extension needs n >= 2");
    }
    if (!(hole_ > 0.0 && hole_ < 0.8)) {
      throw Error(ErrorCode::InvalidDomain, "hole radius fraction must lie in (0, 0.8)");
    }
    q_.validate();
  }

  Hypercomplex<Dim> operator()(const SlicePoint<Dim>& x) const {
    return scaled_contour_integral(f_, dom_, kHartogsContourScale, x, q_);
  }

  /// The removed compact set K: the concentric polydisc scaled by the hole fraction.
  PolydiscDomain<Dim> hole() const { return dom_.scaled(hole_); }

 private:
  SliceFunction<Dim> f_;
  PolydiscDomain<Dim> dom_;
  double hole_;
  QuadratureSpec q_;
};

template <std::size_t Dim>
HartogsExtension<Dim> hartogs_extend(SliceFunction<Dim> f, PolydiscDomain<Dim> dom, double hole_radius_fraction,
                                     const QuadratureSpec& q) {
  return HartogsExtension<Dim>(std::move(f), std::move(dom), hole_radius_fraction, q);
}

struct BMReport {
  std::vector<double> reproduced;
  std::vector<double> reference;
  double abs_error = 0.0;
  std::size_t nodes_used = 0;
  double wall_ms = 0.0;
};

/// Reproduction of f(x) by boundary (minus volume, when f is not known
/// holomorphic) compared with the direct lift.
template <std::size_t Dim>
BMReport bm_report(const SliceFunction<Dim>& f, const PolydiscDomain<Dim>& dom, const SlicePoint<Dim>& x,
                   const QuadratureSpec& q) {
  const auto start = std::chrono::steady_clock::now();
  auto boundary = bm_boundary_integral_routes(f, dom, x, q);
  auto value = boundary.direct;
  std::size_t nodes = boundary.nodes;
  if (!f.stem().known_holomorphic()) {
    const auto volume = bm_volume_integral_routes(f, dom, x, q);
    value -= volume.direct;
    nodes += volume.nodes;
  }
  const auto reference = f(x);
  BMReport r;
  r.reproduced.assign(value.coeffs().begin(), value.coeffs().end());
  r.reference.assign(reference.coeffs().begin(), reference.coeffs().end());
  r.abs_error = distance(value, reference);
  r.nodes_used = nodes;
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace hyperslice
