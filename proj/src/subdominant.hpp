#pragma once

// Internal: inward integration of the subdominant solution and its
// lambda-variations.

#include <cmath>
#include <numbers>

#include "quartic/asymptotics.hpp"
#include "quartic/ode.hpp"
#include "quartic/spectral.hpp"

namespace quartic::spectral::detail {

template <std::size_t N>
struct SubdominantRun {
  ode::Vec<N> state{};
  double log_scale = 0.0;
  cplx amplitude{};   // (P - lambda)^{-1/4} at x_start
  Jet log_amp{};      // G(x_start)
  double theta = 0.0; // unwrapped Prufer angle at x_end (real problems)
};

inline void check_wkb_validity(const PolynomialPotential& pot, cplx lambda, double x_start) {
  const cplx q = pot(x_start) - lambda;
  if (std::abs(q) < 1e2 * (1.0 + std::abs(lambda)) || q.real() <= 0.0) {
    throw IntegrationError("WKB validity check failed at x_start = " + std::to_string(x_start));
  }
}

// Start point: the heuristic of wkb_start, pushed outward until the
// asymptotic series for g and G is accurate to well below tol.
inline double start_point(const PolynomialPotential& pot, cplx lambda, const SolverOptions& opt) {
  double xs = wkb_start(pot, lambda, opt.wkb_factor);
  SubdominantSeries series(pot, lambda);
  for (int it = 0; it < 60; ++it) {
    double eg = 0.0, eG = 0.0;
    const Jet g = series.log_derivative(xs, &eg);
    series.log_amplitude(xs, &eG);
    if (eG <= 1e-2 * opt.tol && eg <= 1e-2 * opt.tol * std::abs(g.v)) return xs;
    xs *= 1.1;
  }
  return xs;
}

// State layout: (y, y') then (y_l, y_l') then (y_ll, y_ll') for N = 2, 4, 6,
// where _l denotes d/dlambda.
template <std::size_t N>
SubdominantRun<N> integrate_subdominant_state(const PolynomialPotential& pot, cplx lambda, double x_start,
                                              double x_end, double tol, cplx amplitude,
                                              bool track_theta = false) {
  static_assert(N == 2 || N == 4 || N == 6);
  SubdominantSeries series(pot, lambda);
  const Jet g = series.log_derivative(x_start);
  const Jet G = series.log_amplitude(x_start);

  SubdominantRun<N> run;
  const cplx q = pot(x_start) - lambda;
  // Principal branch; q has positive real part at x_start.
  run.amplitude = 1.0 / std::sqrt(std::sqrt(q));
  run.log_amp = G;
  const cplx a = amplitude * run.amplitude;
  run.state[0] = a;
  run.state[1] = g.v * a;
  if constexpr (N >= 4) {
    run.state[2] = G.d1 * a;
    run.state[3] = (g.d1 + g.v * G.d1) * a;
  }
  if constexpr (N >= 6) {
    run.state[4] = (G.d2 + G.d1 * G.d1) * a;
    run.state[5] = (g.d2 + 2.0 * g.d1 * G.d1 + g.v * (G.d2 + G.d1 * G.d1)) * a;
  }

  auto rhs = [&pot, lambda](cplx z, const ode::Vec<N>& s) {
    const cplx w = pot(z) - lambda;
    ode::Vec<N> d;
    d[0] = s[1];
    d[1] = w * s[0];
    if constexpr (N >= 4) {
      d[2] = s[3];
      d[3] = w * s[2] - s[0];
    }
    if constexpr (N >= 6) {
      d[4] = s[5];
      d[5] = w * s[4] - 2.0 * s[2];
    }
    return d;
  };

  ode::Options o;
  o.rtol = tol;
  if (track_theta) {
    double theta = std::atan2(run.state[0].real(), run.state[1].real());
    auto observer = [&theta](cplx, const ode::Vec<N>& s, double) {
      const double t = std::atan2(s[0].real(), s[1].real());
      theta += std::remainder(t - theta, 2.0 * std::numbers::pi);
    };
    ode::integrate_segment<N>(rhs, x_start, x_end, run.state, run.log_scale, o, observer);
    run.theta = theta;
  } else {
    ode::integrate_segment<N>(rhs, x_start, x_end, run.state, run.log_scale, o);
  }
  return run;
}

struct Normalized {
  cplx phase{1.0};
  double exponent = 0.0;
};

// Factor mapping the WKB-normalized run onto the canonical subdominant
// solution exp(G): exp(G(x_s)) / amplitude, split into modulus and phase.
template <std::size_t N>
Normalized canonical(const SubdominantRun<N>& run, cplx, const PolynomialPotential&, double) {
  const cplx log_factor = run.log_amp.v - std::log(run.amplitude);
  return {std::exp(cplx(0.0, log_factor.imag())), log_factor.real() + run.log_scale};
}

}  // namespace quartic::spectral::detail
