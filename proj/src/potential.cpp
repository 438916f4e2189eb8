#include "quartic/potential.hpp"

#include <cmath>

namespace quartic {

PolynomialPotential::PolynomialPotential(int degree, std::vector<cplx> lower) : degree_(degree) {
  if (degree < 2 || degree % 2 != 0) {
    throw std::invalid_argument("potential degree must be even and >= 2, got " +
                                std::to_string(degree));
  }
  if (static_cast<int>(lower.size()) != degree - 1) {
    throw std::invalid_argument("expected " + std::to_string(degree - 1) +
                                " lower coefficients, got " + std::to_string(lower.size()));
  }
  coeffs_.assign(static_cast<std::size_t>(degree) + 1, cplx{});
  for (int k = 1; k < degree; ++k) coeffs_[k] = lower[k - 1];
  coeffs_[degree] = 1.0;
}

PolynomialPotential PolynomialPotential::quartic(cplx alpha) {
  return PolynomialPotential(4, {0.0, alpha, 0.0});
}

PolynomialPotential PolynomialPotential::harmonic() { return PolynomialPotential(2, {0.0}); }

cplx PolynomialPotential::coefficient(int k) const {
  if (k < 0 || k > degree_) throw std::out_of_range("coefficient index out of range");
  return coeffs_[k];
}

cplx PolynomialPotential::operator()(cplx z) const {
  cplx acc = coeffs_[degree_];
  for (int k = degree_ - 1; k >= 0; --k) acc = acc * z + coeffs_[k];
  return acc;
}

cplx PolynomialPotential::derivative(cplx z) const {
  cplx acc = static_cast<double>(degree_) * coeffs_[degree_];
  for (int k = degree_ - 1; k >= 1; --k) acc = acc * z + static_cast<double>(k) * coeffs_[k];
  return acc;
}

bool PolynomialPotential::is_even() const {
  for (int k = 1; k < degree_; k += 2)
    if (coeffs_[k] != 0.0) return false;
  return true;
}

bool PolynomialPotential::is_real() const {
  for (const auto& c : coeffs_)
    if (c.imag() != 0.0) return false;
  return true;
}

PolynomialPotential PolynomialPotential::conj() const {
  PolynomialPotential out = *this;
  for (auto& c : out.coeffs_) c = std::conj(c);
  return out;
}

double PolynomialPotential::coefficient_radius() const {
  double r = 0.0;
  for (int k = 1; k < degree_; ++k) {
    double m = std::abs(coeffs_[k]);
    if (m > 0.0) r = std::max(r, std::pow(m, 1.0 / (degree_ - k)));
  }
  return r;
}

}  // namespace quartic
