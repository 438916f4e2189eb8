#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "newton.hpp"
#include "quartic/spectral.hpp"
#include "quartic/tracking.hpp"

namespace quartic::spectral {
namespace detail {

Polished polish(const PolynomialPotential& pot, cplx guess, Parity parity, const SolverOptions& opt,
                int max_iter) {
  Polished p;
  p.lambda = guess;
  for (int it = 1; it <= max_iter; ++it) {
    const DeterminantJet j = determinant_jet(pot, p.lambda, parity, opt, 2);
    const cplx f = j.value.mantissa;
    p.neighbor = j.neighbor_distance();
    p.iterations = it;
    if (f == 0.0) {
      p.residual = 0.0;
      p.converged = true;
      return p;
    }
    const cplx den = 2.0 * j.d1 * j.d1 - f * j.d2;
    const cplx step = den != 0.0 ? 2.0 * f * j.d1 / den : (j.d1 != 0.0 ? f / j.d1 : cplx(INFINITY));
    if (!std::isfinite(std::abs(step))) return p;
    p.lambda -= step;
    if (pot.is_real() && std::abs(guess.imag()) == 0.0) p.lambda = p.lambda.real();
    p.residual = std::abs(step) / (1.0 + std::abs(p.lambda));
    if (p.residual <= opt.newton_tol) {
      p.converged = true;
      return p;
    }
  }
  return p;
}

}  // namespace detail

Eigenvalue newton_eigenvalue(const PolynomialPotential& pot, cplx guess, Parity parity, const SolverOptions& opt) {
  const auto p = detail::polish(pot, guess, parity, opt, opt.newton_max_iter);
  if (!p.converged) {
    throw ConvergenceError("Newton did not converge from lambda = (" + std::to_string(guess.real()) + ", " +
                           std::to_string(guess.imag()) + ")");
  }
  return {0, parity, p.lambda, p.residual};
}

namespace {

double potential_minimum(const PolynomialPotential& pot) {
  // Lower bound for min over real x of a real monic potential.
  if (pot.degree() == 4) {
    const double a = pot.alpha().real();
    return a < 0.0 ? -a * a / 4.0 : 0.0;
  }
  double lo = 0.0;
  const double r = 2.0 * std::max(1.0, pot.coefficient_radius());
  for (int i = 0; i <= 2000; ++i) lo = std::min(lo, pot(r * i / 2000.0).real());
  return lo - 1.0;
}

}  // namespace

std::vector<Eigenvalue> real_spectrum(const PolynomialPotential& pot, int n_max, const SolverOptions& opt) {
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  if (!pot.is_real() || !pot.is_even()) throw std::invalid_argument("real_spectrum needs a real even potential");
  constexpr double half_pi = std::numbers::pi / 2.0;
  auto phase = [&](double lam) { return pruefer_phase(pot, lam, opt) / half_pi; };

  std::vector<Eigenvalue> out;
  double lo = potential_minimum(pot) - 1.0;
  double phase_lo = phase(lo);
  double width = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    const double target = n + 1.0;
    double hi = lo + width;
    double phase_hi = phase(hi);
    while (phase_hi < target) {
      lo = hi;
      phase_lo = phase_hi;
      width *= 2.0;
      hi = lo + width;
      phase_hi = phase(hi);
    }
    (void)phase_lo;
    boost::math::tools::eps_tolerance<double> tol(30);
    std::uintmax_t iters = 100;
    auto [a, b] = boost::math::tools::toms748_solve([&](double l) { return phase(l) - target; }, lo, hi,
                                                    phase_lo - target, phase_hi - target, tol, iters);
    const Parity par = n % 2 == 0 ? Parity::even : Parity::odd;
    Eigenvalue ev = newton_eigenvalue(pot, 0.5 * (a + b), par, opt);
    ev.index = n;
    ev.value = ev.value.real();
    if (std::abs(ev.value.real() - 0.5 * (a + b)) > 1e-6 * (1.0 + std::abs(ev.value))) {
      throw ConvergenceError("Newton polish left the Prufer bracket at level " + std::to_string(n));
    }
    out.push_back(ev);
    // Next bracket starts just above this level.
    width = std::max(0.25 * (ev.value.real() - lo), 0.25);
    lo = ev.value.real() + 1e-9 * (1.0 + std::abs(ev.value));
    phase_lo = phase(lo);
  }
  return out;
}

double anchor_alpha(cplx alpha) { return alpha.real() > 0.0 ? alpha.real() : 1.0; }

std::vector<Eigenvalue> eigenvalues_at(const PolynomialPotential& pot, int n_max, const SolverOptions& opt) {
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  if (pot.is_real()) return real_spectrum(pot, n_max, opt);
  if (pot.degree() != 4 || !pot.is_even()) {
    throw std::invalid_argument("complex parameters are supported for the quartic family only");
  }
  const cplx alpha = pot.alpha();
  const double a0 = anchor_alpha(alpha);
  // One extra level of each parity guards the top of the tracked set.
  const int n_track = n_max + 2;
  const auto base = real_spectrum(PolynomialPotential::quartic(a0), n_track, opt);
  std::vector<tracking::Branch> start;
  for (const auto& e : base) start.push_back({e.parity, e.value});
  auto path = [&](double t) { return a0 + t * (alpha - a0); };
  const auto res = tracking::track(path, start, opt, {}, false);
  if (res.status != tracking::Status::completed) {
    throw ConvergenceError("label transport from alpha = " + std::to_string(a0) + " failed: " + res.message);
  }
  const auto& last = res.samples.back();
  std::vector<Eigenvalue> out;
  for (int n = 0; n <= n_max; ++n) {
    out.push_back({n, base[static_cast<std::size_t>(n)].parity, last.lambda[static_cast<std::size_t>(n)],
                   last.residual[static_cast<std::size_t>(n)]});
  }
  return out;
}

Parity classify_eigenvalue(const PolynomialPotential& pot, cplx lambda, const SolverOptions& opt, double accept_tol) {
  const double de = determinant_jet(pot, lambda, Parity::even, opt, 1).newton_distance();
  const double d_o = determinant_jet(pot, lambda, Parity::odd, opt, 1).newton_distance();
  const double scale = 1.0 + std::abs(lambda);
  if (std::min(de, d_o) > accept_tol * scale) {
    throw ConvergenceError("lambda is not an eigenvalue of either parity");
  }
  return de <= d_o ? Parity::even : Parity::odd;
}

int count_eigenvalues_in_disk(const PolynomialPotential& pot, cplx center, double radius, Parity parity,
                              const SolverOptions& opt) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  struct Node {
    double s;      // angle
    cplx logd;     // F'/F * dlambda/ds
    cplx mant;
  };
  auto eval = [&](double s) {
    const cplx e = std::polar(1.0, s);
    const DeterminantJet j = determinant_jet(pot, center + radius * e, parity, opt, 1);
    if (j.newton_distance() < 1e-6 * radius) {
      throw ContourError("determinant has a zero on or near the contour; perturb the radius");
    }
    return Node{s, j.d1 / j.value.mantissa * cplx(0.0, radius) * e, j.value.mantissa};
  };
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<Node> pts;
  const int n0 = 32;
  for (int i = 0; i < n0; ++i) pts.push_back(eval(two_pi * i / n0));
  double total = 0.0;
  // Walk the arcs, splitting any arc whose argument increment is not
  // consistent with the endpoint log-derivatives.
  std::vector<std::pair<Node, Node>> stack;
  for (int i = n0 - 1; i >= 0; --i) {
    Node b = pts[static_cast<std::size_t>((i + 1) % n0)];
    if (i + 1 == n0) b.s = two_pi;
    stack.push_back({pts[static_cast<std::size_t>(i)], b});
  }
  int evals = n0;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const double ds = b.s - a.s;
    const double darg = std::arg(b.mant / a.mant);
    const double pred = 0.5 * (a.logd.imag() + b.logd.imag()) * ds;
    if (std::abs(darg) < 0.5 && std::abs(darg - pred) < 0.05) {
      total += darg;
      continue;
    }
    if (ds < 1e-9 || ++evals > 20000) throw ContourError("argument principle failed to resolve the contour");
    const Node m = eval(0.5 * (a.s + b.s));
    stack.push_back({m, b});
    stack.push_back({a, m});
  }
  const double w = total / two_pi;
  const double r = std::round(w);
  if (std::abs(w - r) > 1e-3) throw ContourError("winding number is not an integer");
  return static_cast<int>(r);
}

}  // namespace quartic::spectral
