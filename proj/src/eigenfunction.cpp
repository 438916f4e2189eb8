#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "quartic/ode.hpp"
#include "quartic/spectral.hpp"
#include "subdominant.hpp"

namespace quartic::spectral {
namespace {

using Pair = ode::Vec<4>;  // (y, y', y1, y1')

// Cauchy data at 0 of the eigenfunction (parity p) and of y1 (opposite).
Pair cauchy_pair(Parity p) {
  if (p == Parity::even) return {1.0, 0.0, 0.0, 1.0};
  return {0.0, 1.0, 1.0, 0.0};
}

auto pair_rhs(const PolynomialPotential& pot, cplx lambda) {
  return [&pot, lambda](cplx z, const Pair& s) {
    const cplx w = pot(z) - lambda;
    return Pair{s[1], w * s[0], s[3], w * s[2]};
  };
}

ode::Options pair_options(double tol) {
  ode::Options o;
  o.rtol = tol;
  o.scale_components = 4;
  return o;
}

double chordal(cplx a, cplx b, cplx c, cplx d) {
  const double n1 = std::hypot(std::abs(a), std::abs(b));
  const double n2 = std::hypot(std::abs(c), std::abs(d));
  return std::abs(a * d - b * c) / (n1 * n2);
}

}  // namespace

AsymptoticValue AsymptoticValueSet::normalized_value(int j) const {
  const auto& w = raw.at(static_cast<std::size_t>(j));
  if (w.infinite || !normalized) return w;
  return {normalization * w.value, false};
}

cplx AsymptoticValueSet::c(int nu) const {
  static constexpr int idx[] = {1, 2, 4, 5};
  if (nu < 1 || nu > 4 || raw.size() != 6) throw std::out_of_range("c_nu is defined for nu = 1..4 of the quartic");
  const auto& w = raw[static_cast<std::size_t>(idx[nu - 1])];
  if (w.infinite) throw std::domain_error("asymptotic value is infinite");
  return w.value;
}

AsymptoticValueSet asymptotic_values(const PolynomialPotential& pot, cplx lambda, const SolverOptions& opt) {
  const Parity parity = classify_eigenvalue(pot, lambda, opt);
  const int q = pot.degree() + 2;
  const auto rhs = pair_rhs(pot, lambda);
  const auto o = pair_options(opt.tol);
  const double r0 =
      2.0 * std::max({1.0, std::pow(std::abs(lambda), 1.0 / pot.degree()), pot.coefficient_radius()});
  constexpr double dr = 0.5;
  const int max_checkpoints = 60;

  AsymptoticValueSet out;
  out.parity = parity;
  for (int j = 0; j < q; ++j) {
    const cplx dir = std::polar(1.0, 2.0 * std::numbers::pi * j / q);
    Pair s = cauchy_pair(parity);
    double log_scale = 0.0;
    ode::integrate_segment<4>(rhs, 0.0, r0 * dir, s, log_scale, o);
    cplx pa = s[0], pb = s[2];
    int stable = 0;
    bool done = false;
    for (int k = 1; k <= max_checkpoints && !done; ++k) {
      const double r = r0 + k * dr;
      ode::integrate_segment<4>(rhs, (r - dr) * dir, r * dir, s, log_scale, o);
      const double move = chordal(pa, pb, s[0], s[2]);
      pa = s[0];
      pb = s[2];
      stable = move < 1e2 * opt.tol ? stable + 1 : 0;
      done = stable >= 2;
    }
    if (!done) {
      throw RayLimitError("ray limit in sector " + std::to_string(j) + " did not converge");
    }
    AsymptoticValue w;
    if (std::abs(pb) <= 1e-12 * std::abs(pa)) {
      w.infinite = true;
    } else {
      w.value = pa / pb;
    }
    out.raw.push_back(w);
  }
  const auto& w2 = out.raw[2];
  if (!w2.infinite && std::abs(w2.value) > 1e-8) {
    out.normalization = 1.0 / w2.value;
    out.normalized = true;
  }
  return out;
}

double schwarzian_residual(const PolynomialPotential& pot, cplx lambda, const std::vector<double>& xs,
                           const SolverOptions& opt, cplx post_scale) {
  if (post_scale == 0.0) throw std::invalid_argument("post_scale must be nonzero");
  const Parity parity = classify_eigenvalue(pot, lambda, opt);
  const auto rhs = pair_rhs(pot, lambda);
  const auto o = pair_options(std::min(opt.tol, 1e-13));
  // Central stencils on offsets -4..4.
  static constexpr double d1[] = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0,
                                  4.0 / 5,   -1.0 / 5,   4.0 / 105, -1.0 / 280};
  static constexpr double d2[] = {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72,
                                  8.0 / 5,    -1.0 / 5,  8.0 / 315, -1.0 / 560};
  static constexpr double d3[] = {-7.0 / 240, 3.0 / 10,   -169.0 / 120, 61.0 / 30, 0.0,
                                  -61.0 / 30, 169.0 / 120, -3.0 / 10,   7.0 / 240};
  double worst = 0.0;
  for (double x : xs) {
    Pair s = cauchy_pair(parity);
    double ls = 0.0;
    ode::integrate_segment<4>(rhs, 0.0, x, s, ls, o);
    // f = y / y1 has its poles at the zeros of y1, 1/f at the zeros of y.
    const double pole = s[3] == 0.0 ? INFINITY : std::abs(s[2] / s[3]);
    if (pole < 1e-3) {
      throw SampleError("sample x = " + std::to_string(x) + " is too close to a pole of f");
    }
    const double zero = s[1] == 0.0 ? INFINITY : std::abs(s[0] / s[1]);
    // S_f = S_{1/f}; difference whichever is farther from its poles.
    const bool invert = zero > pole;
    const double h = 0.006 * std::min(1.0, std::max(pole, zero));
    cplx f[9];
    double ls_k = 0.0;
    Pair sk = cauchy_pair(parity);
    ode::integrate_segment<4>(rhs, 0.0, x - 4.0 * h, sk, ls_k, o);
    for (int k = 0; k < 9; ++k) {
      if (k > 0) ode::integrate_segment<4>(rhs, x + (k - 5) * h, x + (k - 4) * h, sk, ls_k, o);
      const cplx fk = post_scale * sk[0] / sk[2];
      f[k] = invert ? 1.0 / fk : fk;
    }
    cplx f1 = 0.0, f2 = 0.0, f3 = 0.0;
    for (int k = 0; k < 9; ++k) {
      f1 += d1[k] * f[k];
      f2 += d2[k] * f[k];
      f3 += d3[k] * f[k];
    }
    f1 /= h;
    f2 /= h * h;
    f3 /= h * h * h;
    const cplx r = f2 / f1;
    const cplx sf = f3 / f1 - 1.5 * r * r;
    worst = std::max(worst, std::abs(sf + 2.0 * (pot(x) - lambda)));
  }
  return worst;
}

int real_zero_count(double alpha, int n, const SolverOptions& opt) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (n > 200) throw std::invalid_argument("n exceeds the supported maximum of 200");
  const auto pot = PolynomialPotential::quartic(alpha);
  const auto spec = real_spectrum(pot, n, opt);
  const double lambda = spec.back().value.real();
  const Parity parity = spec.back().parity;

  // Outermost classical turning point, then a margin into the forbidden zone.
  const double disc = alpha * alpha + 4.0 * std::max(lambda, 0.0);
  const double turn = std::sqrt(std::max(0.0, (-alpha + std::sqrt(disc)) / 2.0));
  const double x_end = 1.5 * turn + 1.0;
  const double xs = std::max(detail::start_point(pot, lambda, opt), x_end);

  // Cells of width h centered on 0, +-h, ...; nodes at (k + 1/2) h.
  const int cells = 32 * (n + 1);
  const double h = x_end / (cells + 0.5);
  auto run = detail::integrate_subdominant_state<2>(pot, lambda, xs, (cells + 0.5) * h, opt.tol, 1.0);
  ode::Vec<2> s = run.state;
  double ls = run.log_scale;
  const auto rhs = [&pot, lambda](cplx z, const ode::Vec<2>& v) {
    return ode::Vec<2>{v[1], (pot(z) - lambda) * v[0]};
  };
  ode::Options o;
  o.rtol = opt.tol;

  // Walks one cell inward, splitting it while the Prufer angle turns by
  // pi or more inside it (two zeros could hide between the nodes).
  int changes = 0;
  auto angle = [](const ode::Vec<2>& v) { return std::atan2(v[0].real(), v[1].real()); };
  std::function<void(double, double, int)> walk = [&](double a, double b, int depth) {
    const ode::Vec<2> keep = s;
    const double keep_ls = ls;
    double theta = angle(s);
    const double theta0 = theta;
    auto obs = [&theta, &angle](cplx, const ode::Vec<2>& v, double) {
      const double t = angle(v);
      theta += std::remainder(t - theta, 2.0 * std::numbers::pi);
    };
    ode::integrate_segment<2>(rhs, a, b, s, ls, o, obs);
    if (std::abs(theta - theta0) >= std::numbers::pi) {
      if (depth >= 20) throw ConvergenceError("zero-count grid could not resolve a cell");
      s = keep;
      ls = keep_ls;
      const double mid = 0.5 * (a + b);
      walk(a, mid, depth + 1);
      walk(mid, b, depth + 1);
      return;
    }
    if ((keep[0].real() < 0.0) != (s[0].real() < 0.0) && keep[0].real() != 0.0 && s[0].real() != 0.0) ++changes;
  };
  for (int k = cells; k >= 1; --k) walk((k + 0.5) * h, (k - 0.5) * h, 0);
  // The central cell spans (-h/2, h/2); its sign change is fixed by parity.
  return 2 * changes + (parity == Parity::odd ? 1 : 0);
}

ThresholdReport modulus_ordering_threshold(double radius, int n_max, int boundary_samples, int interior_samples,
                                    const SolverOptions& opt, double angle_offset) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (n_max < 1 || boundary_samples < 1 || interior_samples < 0) throw std::invalid_argument("bad sample counts");
  ThresholdReport rep;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < boundary_samples; ++i) {
    rep.samples.push_back(std::polar(radius, angle_offset + two_pi * i / boundary_samples));
  }
  // Sunflower layout inside the disk.
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < interior_samples; ++i) {
    const double r = 0.9 * radius * std::sqrt((i + 0.5) / interior_samples);
    rep.samples.push_back(std::polar(r, angle_offset + golden * i));
  }
  int worst = -1;
  for (const cplx a : rep.samples) {
    std::vector<Eigenvalue> ev;
    try {
      ev = eigenvalues_at(PolynomialPotential::quartic(a), n_max + 2, opt);
    } catch (const Error& e) {
      throw SampleError("eigenvalue computation failed at alpha = (" + std::to_string(a.real()) + ", " +
                        std::to_string(a.imag()) + "): " + e.what());
    }
    std::vector<double> mod;
    for (const auto& e : ev) mod.push_back(std::abs(e.value));
    std::sort(mod.begin(), mod.end());
    for (int n = 0; n < n_max; ++n) {
      if (!(mod[static_cast<std::size_t>(n + 1)] > mod[static_cast<std::size_t>(n)])) worst = std::max(worst, n);
    }
  }
  rep.worst_index = worst;
  if (worst + 1 < n_max) rep.threshold = worst + 1;
  return rep;
}

}  // namespace quartic::spectral
