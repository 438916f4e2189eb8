#pragma once

#include <vector>

#include "quartic/potential.hpp"

namespace quartic {

// Value together with its first two derivatives in the spectral parameter.
struct Jet {
  cplx v{}, d1{}, d2{};
};

// Formal solution of the Riccati equation g' + g^2 = P(x) - lambda as
// x -> +inf, g = sum_m b_m x^{d/2 - m} with b_0 = -1. exp(G), G' = g, is the
// solution subdominant on the positive real axis, normalized so that G has
// no constant term (x^{-d/4} exp(-x^{d/2+1}/(d/2+1) - ...)).
class SubdominantSeries {
 public:
  SubdominantSeries(const PolynomialPotential& pot, cplx lambda, int max_terms = 160);

  // Log-derivative g(x) with lambda-derivatives. If error is given it
  // receives the size of the smallest retained term.
  Jet log_derivative(double x, double* error = nullptr) const;
  // Antiderivative G(x) with lambda-derivatives.
  Jet log_amplitude(double x, double* error = nullptr) const;

  const std::vector<Jet>& coefficients() const { return b_; }

 private:
  int half_degree_;
  std::vector<Jet> b_;
};

}  // namespace quartic
