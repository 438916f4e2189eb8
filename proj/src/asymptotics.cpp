#include "quartic/asymptotics.hpp"

#include <cmath>
#include <vector>

namespace quartic {
namespace {

Jet mul(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

Jet scale(const Jet& a, cplx s) { return {a.v * s, a.d1 * s, a.d2 * s}; }

Jet add(const Jet& a, const Jet& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }

// Optimal truncation: sums the series up to its smallest nonzero term, whose
// size is reported in *error.
template <class TermFn>
Jet sum_asymptotic(int count, TermFn term, double* error) {
  std::vector<Jet> terms;
  terms.reserve(static_cast<std::size_t>(count));
  double lead = 0.0;
  double best = INFINITY;
  std::size_t cut = 0;
  int small = 0;
  for (int m = 0; m < count; ++m) {
    const Jet t = term(m);
    terms.push_back(t);
    const double mag = std::abs(t.v) + std::abs(t.d1) + std::abs(t.d2);
    if (mag == 0.0) continue;
    lead = std::max(lead, mag);
    if (mag < best) {
      best = mag;
      cut = terms.size();
    }
    if (mag <= 1e-20 * lead && ++small >= 3) break;
  }
  Jet acc;
  for (std::size_t i = 0; i < cut; ++i) acc = add(acc, terms[i]);
  if (error) *error = std::isfinite(best) ? best : 0.0;
  return acc;
}

}  // namespace

SubdominantSeries::SubdominantSeries(const PolynomialPotential& pot, cplx lambda, int max_terms)
    : half_degree_(pot.degree() / 2) {
  const int d = pot.degree();
  const int e = half_degree_;
  auto q = [&](int n) -> Jet {
    if (n == 0) return {1.0, 0.0, 0.0};
    if (n < d) return {pot.coefficient(d - n), 0.0, 0.0};
    if (n == d) return {pot.coefficient(0) - lambda, -1.0, 0.0};
    return {};
  };
  b_.resize(static_cast<std::size_t>(max_terms));
  b_[0] = {-1.0, 0.0, 0.0};
  for (int n = 1; n < max_terms; ++n) {
    Jet rhs = q(n);
    for (int i = 1; i < n; ++i) rhs = add(rhs, scale(mul(b_[i], b_[n - i]), -1.0));
    if (n >= e + 1) rhs = add(rhs, scale(b_[n - e - 1], -static_cast<double>(2 * e + 1 - n)));
    b_[n] = scale(rhs, 1.0 / (2.0 * b_[0].v));
  }
}

Jet SubdominantSeries::log_derivative(double x, double* error) const {
  const int e = half_degree_;
  return sum_asymptotic(static_cast<int>(b_.size()), [&](int m) {
    return scale(b_[m], std::pow(x, static_cast<double>(e - m)));
  }, error);
}

Jet SubdominantSeries::log_amplitude(double x, double* error) const {
  const int e = half_degree_;
  return sum_asymptotic(static_cast<int>(b_.size()), [&](int m) {
    const int p = e - m + 1;
    if (p == 0) return scale(b_[m], std::log(x));
    return scale(b_[m], std::pow(x, static_cast<double>(p)) / static_cast<double>(p));
  }, error);
}

}  // namespace quartic
