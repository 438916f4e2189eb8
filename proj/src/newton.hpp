#pragma once

#include "quartic/spectral.hpp"

namespace quartic::spectral::detail {

struct Polished {
  cplx lambda{};
  double residual = 0.0;   // last |dlambda| / (1 + |lambda|)
  double neighbor = 0.0;   // |2 F' / F''| at the final iterate
  int iterations = 0;
  bool converged = false;
};

// Halley iteration on the parity determinant; F' and F'' come from the
// variational equations.
Polished polish(const PolynomialPotential& pot, cplx guess, Parity parity, const SolverOptions& opt,
                int max_iter);

}  // namespace quartic::spectral::detail
