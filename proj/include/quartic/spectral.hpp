#pragma once

#include <optional>
#include <vector>

#include "quartic/potential.hpp"

namespace quartic::spectral {

struct SolverOptions {
  // Relative tolerance of the ODE integrator; the absolute tolerance is
  // tol * 1e-2 relative to the running state magnitude.
  double tol = 1e-12;
  // Integration starts where |P(x) - lambda| >= wkb_factor * (1 + |lambda|).
  double wkb_factor = 1e2;
  // Newton stops when |dlambda| <= newton_tol * (1 + |lambda|).
  double newton_tol = 1e-10;
  int newton_max_iter = 50;
};

class BoundaryRayError : public Error {
 public:
  using Error::Error;
};

// Index j of the Stokes sector |arg z - 2 pi j / q| < pi / q, q = d + 2.
int stokes_sector_of(double direction, int degree);

// Overflow-safe solution value: the true pair is (y, dy) * exp(log_scale).
struct ScaledSolution {
  cplx x{};
  cplx y{};
  cplx dy{};
  double log_scale = 0.0;
};

// Start point of the inward integration.
double wkb_start(const PolynomialPotential& pot, cplx lambda, double wkb_factor = 1e4);

// Solution subdominant as x -> +inf with WKB data y = amplitude * (P - lambda)^{-1/4}
// at x_start, integrated to x_end.
ScaledSolution integrate_subdominant(const PolynomialPotential& pot, cplx lambda, double x_start,
                                     double x_end, double tol, cplx amplitude = 1.0);

// Value mantissa * exp(exponent). A zero mantissa is an exact numerical zero.
struct DeterminantValue {
  cplx mantissa{};
  double exponent = 0.0;
  Parity parity = Parity::even;

  cplx value() const;
  double log_abs() const;
};

// The determinant together with its first two lambda-derivatives, all
// sharing the exponent of `value`.
struct DeterminantJet {
  DeterminantValue value;
  cplx d1{};
  cplx d2{};

  // |F / F'|, the Newton distance to the nearest zero.
  double newton_distance() const;
  // |2 F' / F''|: estimated distance from a zero to the next zero of the
  // same determinant.
  double neighbor_distance() const;
};

// Even parity: y'(0), odd parity: y(0), for the subdominant solution
// normalized as x^{-d/4} exp(-x^{d/2+1}/(d/2+1) - ...) at +inf.
DeterminantValue spectral_determinant(const PolynomialPotential& pot, cplx lambda, Parity parity,
                                      const SolverOptions& opt = {});

// order 1 computes F'; order 2 also F''.
DeterminantJet determinant_jet(const PolynomialPotential& pot, cplx lambda, Parity parity,
                               const SolverOptions& opt = {}, int order = 1);

// Prufer angle phi(lambda) of the subdominant solution at 0 for real
// problems: nondecreasing in lambda, and floor(2 phi / pi) counts the
// eigenvalues below lambda. Level n sits at phi = (n + 1) pi / 2.
double pruefer_phase(const PolynomialPotential& pot, double lambda, const SolverOptions& opt = {});

struct Eigenvalue {
  int index = 0;
  Parity parity = Parity::even;
  cplx value{};
  double residual = 0.0;
};

// Newton iteration on the parity determinant.
Eigenvalue newton_eigenvalue(const PolynomialPotential& pot, cplx guess, Parity parity,
                             const SolverOptions& opt = {});

// Eigenvalues 0..n_max of a real even potential, bracketed by the Prufer
// count and polished by Newton.
std::vector<Eigenvalue> real_spectrum(const PolynomialPotential& pot, int n_max,
                                      const SolverOptions& opt = {});

// Eigenvalues 0..n_max. Real potentials are solved directly; otherwise
// labels are transported from the anchor alpha_a = Re(alpha) if Re(alpha) > 0,
// else alpha_a = 1, along the straight segment alpha_a -> alpha.
std::vector<Eigenvalue> eigenvalues_at(const PolynomialPotential& pot, int n_max,
                                       const SolverOptions& opt = {});

// The real anchor used by eigenvalues_at for a complex quartic parameter.
double anchor_alpha(cplx alpha);

// Parity whose determinant vanishes at lambda; throws if neither does
// within accept_tol * (1 + |lambda|).
Parity classify_eigenvalue(const PolynomialPotential& pot, cplx lambda, const SolverOptions& opt = {},
                           double accept_tol = 1e-7);

// Winding number of the parity determinant around the circle.
int count_eigenvalues_in_disk(const PolynomialPotential& pot, cplx center, double radius, Parity parity,
                              const SolverOptions& opt = {});

class ContourError : public Error {
 public:
  using Error::Error;
};

// Limits w_0..w_{q-1} of f = y / y1 along sector-center rays, where y is
// the eigenfunction and y1 the opposite-parity Cauchy solution (y1(0) = 1,
// y1'(0) = 0 or y1(0) = 0, y1'(0) = 1). The eigenfunction is normalized by
// y(0) = 1 (even) or y'(0) = 1 (odd), so f is real for real problems.
struct AsymptoticValue {
  cplx value{};
  bool infinite = false;
};

struct AsymptoticValueSet {
  std::vector<AsymptoticValue> raw;  // w_0 .. w_{q-1}
  Parity parity = Parity::even;      // parity of the eigenfunction
  cplx normalization{1.0};           // c with c * w_2 = 1, when finite and nonzero
  bool normalized = false;

  // c * w_j.
  AsymptoticValue normalized_value(int j) const;
  // Nonzero values c_1..c_4 = w_1, w_2, w_4, w_5 (raw) of the quartic case.
  cplx c(int nu) const;
};

class RayLimitError : public Error {
 public:
  using Error::Error;
};

AsymptoticValueSet asymptotic_values(const PolynomialPotential& pot, cplx lambda,
                                     const SolverOptions& opt = {});

class SampleError : public Error {
 public:
  using Error::Error;
};

// max over samples of |S_f(x) + 2 (P(x) - lambda)|, with S_f from finite
// differences of f = y / y1. `post_scale` multiplies f before differencing.
double schwarzian_residual(const PolynomialPotential& pot, cplx lambda, const std::vector<double>& xs,
                           const SolverOptions& opt = {}, cplx post_scale = 1.0);

// Sign changes of the n-th eigenfunction of x^4 + alpha x^2 on a real grid.
int real_zero_count(double alpha, int n, const SolverOptions& opt = {});

struct ThresholdReport {
  std::optional<int> threshold;  // smallest N, empty when none exists
  std::vector<cplx> samples;
  int worst_index = -1;          // largest n violating the ordering
};

// Smallest N <= n_max with |mu_{n+1}| > |mu_n| for N <= n < n_max at every
// sampled alpha with |alpha| <= R (boundary circle plus interior grid).
ThresholdReport modulus_ordering_threshold(double radius, int n_max, int boundary_samples, int interior_samples,
                                    const SolverOptions& opt = {}, double angle_offset = 0.0);

}  // namespace quartic::spectral
