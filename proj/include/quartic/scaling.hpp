#pragma once

#include <vector>

#include "quartic/types.hpp"

namespace quartic::scaling {

// The operator -d^2/dx^2 + beta x^4 + alpha x^2 together with the factor
// carried by its eigenvalues through rescalings.
struct TwoParameterPoint {
  cplx alpha{};
  cplx beta{1.0};
  cplx lambda_multiplier{1.0};
};

// w(x) = y(t x): (alpha, beta) -> (t^4 alpha, t^6 beta), multiplier * t^2.
TwoParameterPoint rescale_problem(const TwoParameterPoint& p, cplx t);

struct AlphaForm {
  cplx alpha{};
  cplx lambda_factor{};
};

// alpha = beta^{-2/3}, lambda_factor = beta^{1/3} (principal branches), so
// that lambda_n(1, beta) = lambda_factor * lambda_n(alpha, 1). beta on the
// cut (-inf, 0] is rejected.
AlphaForm beta_to_alpha(cplx beta);

// beta = alpha^{-3/2}, principal branch; alpha on (-inf, 0] is rejected.
cplx alpha_to_beta(cplx alpha);

// Eigenvalues 0..n_max of -y'' + (beta x^4 + x^2) y = lambda y for real
// beta > 0, by direct shooting with a leading-order WKB start and Prufer
// phase counting.
std::vector<double> beta_form_spectrum(double beta, int n_max, double tol = 1e-12);

}  // namespace quartic::scaling
