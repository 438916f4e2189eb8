#pragma once

#include <vector>

#include "quartic/types.hpp"

namespace quartic {

// Monic polynomial P(a, z) = z^d + a_{d-1} z^{d-1} + ... + a_1 z of even
// degree d >= 2. There is no constant term; a constant shift is absorbed
// into the spectral parameter.
class PolynomialPotential {
 public:
  // `lower` holds a_1 .. a_{d-1}; its size must be d - 1.
  PolynomialPotential(int degree, std::vector<cplx> lower);

  // z^4 + alpha z^2.
  static PolynomialPotential quartic(cplx alpha);
  // z^2, the harmonic oscillator.
  static PolynomialPotential harmonic();

  int degree() const { return degree_; }
  // a_k for k in [0, d]; a_0 = 0 and a_d = 1.
  cplx coefficient(int k) const;
  cplx alpha() const { return coefficient(2); }

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;

  // Only even powers carry nonzero coefficients.
  bool is_even() const;
  bool is_real() const;
  PolynomialPotential conj() const;

  // max_k |a_k|^{1/(d-k)}, the radius beyond which z^d dominates.
  double coefficient_radius() const;

 private:
  int degree_;
  std::vector<cplx> coeffs_;  // a_0 .. a_d
};

}  // namespace quartic
