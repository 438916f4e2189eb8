#include "quartic/tracking.hpp"

#include <algorithm>
#include <cmath>

#include "newton.hpp"

namespace quartic::tracking {
namespace {

using spectral::detail::Polished;
using spectral::detail::polish;

struct State {
  std::vector<cplx> lambda;
  std::vector<double> residual;
  std::vector<double> neighbor;  // F''-based estimate of the next zero
};

// Distance from branch i to the closest other zero of its determinant.
double gap(const std::vector<Branch>& br, const State& s, std::size_t i) {
  double g = s.neighbor[i];
  for (std::size_t j = 0; j < br.size(); ++j) {
    if (j != i && br[j].parity == br[i].parity) g = std::min(g, std::abs(s.lambda[i] - s.lambda[j]));
  }
  return g;
}

double min_relative_gap(const std::vector<Branch>& br, const State& s) {
  double m = INFINITY;
  for (std::size_t i = 0; i < br.size(); ++i) m = std::min(m, gap(br, s, i) / (1.0 + std::abs(s.lambda[i])));
  return m;
}

// dlambda/dalpha = -F_alpha / F_lambda, F_alpha by central differences.
cplx tangent(cplx alpha, cplx dir, cplx lambda, Parity parity, const spectral::SolverOptions& opt) {
  const double h = 1e-6 * (1.0 + std::abs(alpha));
  const cplx u = std::abs(dir) > 0.0 ? dir / std::abs(dir) : cplx(1.0);
  const auto j0 = spectral::determinant_jet(PolynomialPotential::quartic(alpha), lambda, parity, opt, 1);
  const auto fp = spectral::spectral_determinant(PolynomialPotential::quartic(alpha + h * u), lambda, parity, opt);
  const auto fm = spectral::spectral_determinant(PolynomialPotential::quartic(alpha - h * u), lambda, parity, opt);
  const cplx diff = fp.mantissa * std::exp(fp.exponent - j0.value.exponent) -
                    fm.mantissa * std::exp(fm.exponent - j0.value.exponent);
  if (j0.d1 == 0.0) return 0.0;
  return -(diff / (2.0 * h)) / j0.d1 * u;
}

// Polynomial extrapolation through the last accepted samples.
cplx extrapolate(const std::vector<double>& ts, const std::vector<cplx>& ls, double t) {
  cplx out = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    cplx w = 1.0;
    for (std::size_t j = 0; j < ts.size(); ++j) {
      if (j != i) w *= (t - ts[j]) / (ts[i] - ts[j]);
    }
    out += w * ls[i];
  }
  return out;
}

}  // namespace

Result track(const std::function<cplx(double)>& alpha, const std::vector<Branch>& start,
             const spectral::SolverOptions& opt, const Controls& ctl, bool keep_samples) {
  const std::size_t m = start.size();
  Result res;
  State cur{std::vector<cplx>(m), std::vector<double>(m), std::vector<double>(m)};
  const cplx a0 = alpha(0.0);
  const auto pot0 = PolynomialPotential::quartic(a0);
  for (std::size_t i = 0; i < m; ++i) {
    const Polished p = polish(pot0, start[i].lambda, start[i].parity, opt, opt.newton_max_iter);
    if (!p.converged || std::abs(p.lambda - start[i].lambda) > 1e-6 * (1.0 + std::abs(start[i].lambda))) {
      throw std::invalid_argument("start value " + std::to_string(i) + " is not an eigenvalue at the path start");
    }
    cur.lambda[i] = p.lambda;
    cur.residual[i] = p.residual;
    cur.neighbor[i] = p.neighbor;
  }
  auto make_sample = [&](double t, cplx a) {
    return Sample{t, a, cur.lambda, cur.residual, min_relative_gap(start, cur)};
  };
  res.samples.push_back(make_sample(0.0, a0));
  if (res.samples.back().min_gap < ctl.gap_floor) {
    res.status = Status::aborted_near_branch;
    res.message = "start values closer than the gap floor";
    return res;
  }

  // Prediction history: initial tangent plus up to three accepted samples.
  std::vector<double> hist_t{0.0};
  std::vector<std::vector<cplx>> hist_l{cur.lambda};
  std::vector<cplx> slope(m);
  {
    const double dt = 1e-6;
    const cplx da = (alpha(dt) - a0) / dt;
    for (std::size_t i = 0; i < m; ++i) slope[i] = tangent(a0, da, cur.lambda[i], start[i].parity, opt) * da;
  }

  double t = 0.0;
  double h = ctl.initial_step;
  while (t < 1.0) {
    h = std::min(h, 1.0 - t);
    const double tn = (1.0 - t - h < 1e-12) ? 1.0 : t + h;
    const cplx an = alpha(tn);
    const auto pot = PolynomialPotential::quartic(an);
    State next = cur;
    bool ok = true;
    bool easy = true;
    std::string why;
    for (std::size_t i = 0; i < m && ok; ++i) {
      cplx pred;
      if (hist_t.size() == 1) {
        pred = cur.lambda[i] + slope[i] * (tn - t);
      } else {
        std::vector<cplx> ls;
        for (const auto& v : hist_l) ls.push_back(v[i]);
        pred = extrapolate(hist_t, ls, tn);
      }
      const double g = gap(start, cur, i);
      Polished p;
      try {
        p = polish(pot, pred, start[i].parity, opt, ctl.corrector_iterations);
      } catch (const Error& e) {
        ok = false;
        why = e.what();
        break;
      }
      if (!p.converged) {
        ok = false;
        why = "corrector did not converge";
        break;
      }
      const double disp = std::abs(p.lambda - pred);
      const double move = std::abs(p.lambda - cur.lambda[i]);
      if (disp > ctl.corrector_fraction * g || move > ctl.step_fraction * g) {
        ok = false;
        why = "corrector displacement too large for the local gap";
        break;
      }
      if (p.iterations > 3 || disp > 0.1 * g) easy = false;
      next.lambda[i] = p.lambda;
      next.residual[i] = p.residual;
      next.neighbor[i] = p.neighbor;
    }
    // Two branches collapsing onto one zero in a single step means one of
    // them jumped.
    for (std::size_t i = 0; i < m && ok; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (start[i].parity != start[j].parity) continue;
        if (std::abs(next.lambda[i] - next.lambda[j]) < 0.5 * std::abs(cur.lambda[i] - cur.lambda[j]) &&
            h > ctl.min_step) {
          ok = false;
          why = "branches " + std::to_string(i) + " and " + std::to_string(j) + " approached too fast";
          break;
        }
      }
    }
    if (!ok) {
      h *= 0.5;
      if (h < ctl.min_step) {
        res.status = Status::step_underflow;
        res.message = "step underflow at t = " + std::to_string(t) + ": " + why;
        if (!keep_samples && res.samples.back().t != t) res.samples.push_back(make_sample(t, alpha(t)));
        return res;
      }
      continue;
    }
    cur = next;
    t = tn;
    hist_t.push_back(t);
    hist_l.push_back(cur.lambda);
    if (hist_t.size() > 3) {
      hist_t.erase(hist_t.begin());
      hist_l.erase(hist_l.begin());
    }
    Sample s = make_sample(t, an);
    const bool below_floor = s.min_gap < ctl.gap_floor;
    if (keep_samples || t >= 1.0 || below_floor) res.samples.push_back(std::move(s));
    if (below_floor) {
      std::size_t worst = 0;
      double wg = INFINITY;
      for (std::size_t i = 0; i < m; ++i) {
        const double g = gap(start, cur, i) / (1.0 + std::abs(cur.lambda[i]));
        if (g < wg) {
          wg = g;
          worst = i;
        }
      }
      res.status = Status::aborted_near_branch;
      res.failing_branch = static_cast<int>(worst);
      res.message = "eigenvalue gap below floor at t = " + std::to_string(t);
      return res;
    }
    if (easy) h = std::min(2.0 * h, ctl.max_step);
  }
  return res;
}

}  // namespace quartic::tracking
