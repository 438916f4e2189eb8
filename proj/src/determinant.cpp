#include <cmath>
#include <numbers>

#include "quartic/asymptotics.hpp"
#include "quartic/ode.hpp"
#include "quartic/spectral.hpp"
#include "subdominant.hpp"

namespace quartic::spectral {

int stokes_sector_of(double direction, int degree) {
  if (degree < 2 || degree % 2 != 0) throw std::invalid_argument("degree must be even and >= 2");
  const int q = degree + 2;
  const double width = 2.0 * std::numbers::pi / q;
  // Position in units of the sector width, centered sectors at integers.
  const double u = direction / width;
  const double frac = u - std::floor(u);
  if (std::abs(frac - 0.5) < 1e-12) {
    throw BoundaryRayError("direction " + std::to_string(direction) + " lies on a Stokes sector boundary");
  }
  long j = std::lround(u);
  j %= q;
  if (j < 0) j += q;
  return static_cast<int>(j);
}

double wkb_start(const PolynomialPotential& pot, cplx lambda, double wkb_factor) {
  const int d = pot.degree();
  const double lower =
      2.0 * std::max({1.0, std::pow(std::abs(lambda), 1.0 / d), pot.coefficient_radius()});
  const double threshold = wkb_factor * (1.0 + std::abs(lambda));
  auto ok = [&](double x) { return std::abs(pot(x) - lambda) >= threshold; };
  if (ok(lower)) return lower;
  double hi = lower;
  double lo = lower;
  while (!ok(hi)) {
    lo = hi;
    hi *= 1.25;
  }
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

cplx DeterminantValue::value() const { return mantissa * std::exp(exponent); }

double DeterminantValue::log_abs() const {
  const double m = std::abs(mantissa);
  return m == 0.0 ? -INFINITY : std::log(m) + exponent;
}

double DeterminantJet::newton_distance() const {
  const double a = std::abs(d1);
  return a == 0.0 ? INFINITY : std::abs(value.mantissa) / a;
}

double DeterminantJet::neighbor_distance() const {
  const double a = std::abs(d2);
  return a == 0.0 ? INFINITY : 2.0 * std::abs(d1) / a;
}

ScaledSolution integrate_subdominant(const PolynomialPotential& pot, cplx lambda, double x_start,
                                     double x_end, double tol, cplx amplitude) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(x_start > 0.0) || x_end < 0.0) throw std::invalid_argument("require x_start > 0 and x_end >= 0");
  detail::check_wkb_validity(pot, lambda, x_start);
  auto run = detail::integrate_subdominant_state<2>(pot, lambda, x_start, x_end, tol, amplitude);
  return {x_end, run.state[0], run.state[1], run.log_scale};
}

DeterminantJet determinant_jet(const PolynomialPotential& pot, cplx lambda, Parity parity,
                               const SolverOptions& opt, int order) {
  if (!pot.is_even()) throw std::invalid_argument("parity determinants require an even potential");
  const double xs = detail::start_point(pot, lambda, opt);
  const int idx = parity == Parity::even ? 1 : 0;
  DeterminantJet jet;
  jet.value.parity = parity;
  detail::Normalized norm;
  if (order >= 2) {
    auto run = detail::integrate_subdominant_state<6>(pot, lambda, xs, 0.0, opt.tol, 1.0);
    norm = detail::canonical(run, lambda, pot, xs);
    jet.value.mantissa = run.state[idx] * norm.phase;
    jet.d1 = run.state[2 + idx] * norm.phase;
    jet.d2 = run.state[4 + idx] * norm.phase;
  } else if (order == 1) {
    auto run = detail::integrate_subdominant_state<4>(pot, lambda, xs, 0.0, opt.tol, 1.0);
    norm = detail::canonical(run, lambda, pot, xs);
    jet.value.mantissa = run.state[idx] * norm.phase;
    jet.d1 = run.state[2 + idx] * norm.phase;
  } else {
    auto run = detail::integrate_subdominant_state<2>(pot, lambda, xs, 0.0, opt.tol, 1.0);
    norm = detail::canonical(run, lambda, pot, xs);
    jet.value.mantissa = run.state[idx] * norm.phase;
  }
  jet.value.exponent = norm.exponent;
  return jet;
}

DeterminantValue spectral_determinant(const PolynomialPotential& pot, cplx lambda, Parity parity,
                                      const SolverOptions& opt) {
  return determinant_jet(pot, lambda, parity, opt, 0).value;
}

double pruefer_phase(const PolynomialPotential& pot, double lambda, const SolverOptions& opt) {
  if (!pot.is_real() || !pot.is_even()) throw std::invalid_argument("Prufer phase needs a real even potential");
  const double xs = detail::start_point(pot, lambda, opt);
  // theta = atan2(y, y'); the subdominant solution starts with y > 0 > y',
  // so theta(x_start) is in (pi/2, pi) and decreases as x moves inward.
  auto run = detail::integrate_subdominant_state<2>(pot, lambda, xs, 0.0, opt.tol, 1.0, true);
  return std::numbers::pi - run.theta;
}

}  // namespace quartic::spectral
