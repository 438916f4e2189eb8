#include "quartic/scaling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "quartic/ode.hpp"

namespace quartic::scaling {
namespace {

bool on_cut(cplx z) { return z.imag() == 0.0 && z.real() <= 0.0; }

}  // namespace

TwoParameterPoint rescale_problem(const TwoParameterPoint& p, cplx t) {
  if (t == 0.0) throw std::invalid_argument("rescaling parameter t must be nonzero");
  const cplx t2 = t * t;
  return {t2 * t2 * p.alpha, t2 * t2 * t2 * p.beta, p.lambda_multiplier * t2};
}

AlphaForm beta_to_alpha(cplx beta) {
  if (beta == 0.0) throw std::invalid_argument("beta must be nonzero");
  if (on_cut(beta)) throw std::invalid_argument("beta lies on the branch cut (-inf, 0]");
  const cplx l = std::log(beta);
  return {std::exp(-2.0 / 3.0 * l), std::exp(l / 3.0)};
}

cplx alpha_to_beta(cplx alpha) {
  if (alpha == 0.0) throw std::invalid_argument("alpha must be nonzero");
  if (on_cut(alpha)) throw std::invalid_argument("alpha lies on the branch cut (-inf, 0]");
  return std::exp(-1.5 * std::log(alpha));
}

std::vector<double> beta_form_spectrum(double beta, int n_max, double tol) {
  if (!(beta > 0.0)) throw std::invalid_argument("the direct solver needs real beta > 0");
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  auto Q = [beta](double x, double lambda) { return beta * x * x * x * x + x * x - lambda; };

  // Prufer phase at 0 of the solution decaying at +inf, in units of pi/2.
  auto phase = [&](double lambda) {
    const double need = 1e4 * (1.0 + std::abs(lambda));
    double xs = 2.0 * std::max({1.0, std::pow(std::abs(lambda) / beta, 0.25), 1.0 / std::sqrt(beta)});
    while (Q(xs, lambda) < need) xs *= 1.05;
    const double q = Q(xs, lambda);
    const double dq = 4.0 * beta * xs * xs * xs + 2.0 * xs;
    ode::Vec<2> y{1.0, -std::sqrt(q) - dq / (4.0 * q)};
    double log_scale = 0.0;
    double theta = std::atan2(y[0].real(), y[1].real());
    auto rhs = [&](cplx z, const ode::Vec<2>& v) {
      return ode::Vec<2>{v[1], (beta * z * z * z * z + z * z - lambda) * v[0]};
    };
    auto obs = [&theta](cplx, const ode::Vec<2>& v, double) {
      const double t = std::atan2(v[0].real(), v[1].real());
      theta += std::remainder(t - theta, 2.0 * std::numbers::pi);
    };
    ode::Options o;
    o.rtol = tol;
    ode::integrate_segment<2>(rhs, xs, 0.0, y, log_scale, o, obs);
    return (std::numbers::pi - theta) / (std::numbers::pi / 2.0);
  };

  std::vector<double> out;
  double lo = 0.0;  // beta x^4 + x^2 >= 0
  double width = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    const double target = n + 1.0;
    double hi = lo + width;
    while (phase(hi) < target) {
      lo = hi;
      width *= 2.0;
      hi = lo + width;
    }
    boost::math::tools::eps_tolerance<double> eps(std::numeric_limits<double>::digits - 3);
    std::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve([&](double l) { return phase(l) - target; }, lo, hi, eps, iters);
    const double lam = 0.5 * (a + b);
    out.push_back(lam);
    width = std::max(0.25 * (lam - lo), 0.25);
    lo = lam;
  }
  return out;
}

}  // namespace quartic::scaling
