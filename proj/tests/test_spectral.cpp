#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hermite_oracle.hpp"
#include "quartic/asymptotics.hpp"
#include "quartic/ode.hpp"
#include "quartic/spectral.hpp"
#include "taylor_oracle.hpp"

using namespace quartic;
using namespace quartic::spectral;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Determinant at a point, on a common scale with `exponent`.
cplx scaled(const DeterminantValue& v, double exponent) { return v.mantissa * std::exp(v.exponent - exponent); }

}  // namespace

TEST_CASE("potential basics") {
  const auto p = PolynomialPotential::quartic(cplx(2.0, -1.0));
  CHECK(p.degree() == 4);
  CHECK(p.alpha() == cplx(2.0, -1.0));
  CHECK(p(cplx(1.0, 1.0)) == std::pow(cplx(1.0, 1.0), 4) + cplx(2.0, -1.0) * std::pow(cplx(1.0, 1.0), 2));
  CHECK(p.is_even());
  CHECK_FALSE(p.is_real());
  CHECK(p.conj().alpha() == cplx(2.0, 1.0));
  CHECK_THROWS_AS(PolynomialPotential(3, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(PolynomialPotential(4, {0.0}), std::invalid_argument);
  CHECK_FALSE(PolynomialPotential(4, {1.0, 0.0, 0.0}).is_even());
}

TEST_CASE("stokes sectors") {
  CHECK(stokes_sector_of(0.0, 4) == 0);
  CHECK(stokes_sector_of(std::numbers::pi, 4) == 3);
  CHECK_THROWS_AS(stokes_sector_of(std::numbers::pi / 6.0, 4), BoundaryRayError);
  CHECK(stokes_sector_of(-0.1, 4) == 0);
  CHECK(stokes_sector_of(2.0 * std::numbers::pi / 6.0, 4) == 1);
}

TEST_CASE("adaptive integrator on known solutions") {
  // y'' = -y along a complex segment: cos z.
  auto rhs = [](cplx, const ode::Vec<2>& s) { return ode::Vec<2>{s[1], -s[0]}; };
  ode::Vec<2> s{1.0, 0.0};
  double ls = 0.0;
  ode::Options o;
  o.rtol = 1e-12;
  const cplx z1(2.0, 0.7);
  ode::integrate_segment<2>(rhs, 0.0, z1, s, ls, o);
  CHECK(std::abs(s[0] * std::exp(ls) - std::cos(z1)) < 1e-10);
  // y' = y over a long interval exercises renormalization.
  auto grow = [](cplx, const ode::Vec<1>& v) { return ode::Vec<1>{v[0]}; };
  ode::Vec<1> g{1.0};
  double lg = 0.0;
  ode::integrate_segment<1>(grow, 0.0, 500.0, g, lg, o);
  CHECK(std::abs(std::log(std::abs(g[0])) + lg - 500.0) < 1e-8);
}

TEST_CASE("riccati series solves the asymptotic equation") {
  const auto pot = PolynomialPotential::quartic(cplx(0.5, 0.5));
  const cplx lambda(2.0, -1.0);
  SubdominantSeries s(pot, lambda);
  const double x = 6.0, h = 1e-4;
  const cplx g = s.log_derivative(x).v;
  const cplx dg = (s.log_derivative(x + h).v - s.log_derivative(x - h).v) / (2.0 * h);
  CHECK(std::abs(dg + g * g - (pot(x) - lambda)) < 1e-6 * std::abs(pot(x)));
  const cplx dG = (s.log_amplitude(x + h).v - s.log_amplitude(x - h).v) / (2.0 * h);
  CHECK(std::abs(dG - g) < 1e-6 * std::abs(g));
}

TEST_CASE("integrate_subdominant") {
  const auto pot = PolynomialPotential::quartic(0.0);
  const double xs = wkb_start(pot, 0.0);
  SUBCASE("empty path returns the initial state") {
    const auto r = integrate_subdominant(pot, 0.0, xs, xs, 1e-12);
    CHECK(r.log_scale == 0.0);
    CHECK(std::abs(r.y - 1.0 / std::sqrt(std::sqrt(pot(xs)))) < 1e-15);
  }
  SUBCASE("matches the Taylor-series oracle") {
    const auto start = integrate_subdominant(pot, 0.0, xs, xs, 1e-12);
    const auto r = integrate_subdominant(pot, 0.0, xs, 0.0, 1e-12);
    const auto [ty, tdy] = oracle::taylor_solve(0.0L, 0.0L, xs, oracle::cplxl(start.y), oracle::cplxl(start.dy), 0.0L);
    const cplx y(static_cast<double>(ty.real()), static_cast<double>(ty.imag()));
    const cplx dy(static_cast<double>(tdy.real()), static_cast<double>(tdy.imag()));
    const double norm = std::hypot(std::abs(y), std::abs(dy));
    const cplx sy = r.y * std::exp(r.log_scale), sdy = r.dy * std::exp(r.log_scale);
    CHECK(std::abs(sy - y) / norm < 1e-9);
    CHECK(std::abs(sdy - dy) / norm < 1e-9);
  }
  SUBCASE("linear in the amplitude") {
    const auto a = integrate_subdominant(pot, cplx(1.0, 2.0), xs, 0.3, 1e-12, 1.0);
    const auto b = integrate_subdominant(pot, cplx(1.0, 2.0), xs, 0.3, 1e-12, 2.0);
    CHECK(rel(b.y * std::exp(b.log_scale), 2.0 * a.y * std::exp(a.log_scale)) < 1e-13);
    CHECK(rel(b.dy * std::exp(b.log_scale), 2.0 * a.dy * std::exp(a.log_scale)) < 1e-13);
  }
  SUBCASE("rejects bad arguments") {
    CHECK_THROWS_AS(integrate_subdominant(pot, 0.0, xs, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_subdominant(pot, 0.0, 0.5, 0.0, 1e-12), IntegrationError);
  }
}

TEST_CASE("spectral determinant") {
  const auto pot = PolynomialPotential::quartic(0.0);
  CHECK(std::abs(spectral_determinant(pot, 0.0, Parity::even).mantissa) > 0.0);
  CHECK(std::abs(spectral_determinant(pot, 0.0, Parity::odd).mantissa) > 0.0);
  const auto ref = oracle::hermite_spectrum(0.0, 9);
  const auto e0 = newton_eigenvalue(pot, 1.0, Parity::even);
  CHECK(std::abs(e0.value - ref[0]) < 1e-8);
  CHECK_THROWS_AS(spectral_determinant(PolynomialPotential(4, {1.0, 0.0, 0.0}), 1.0, Parity::even),
                  std::invalid_argument);
}

TEST_CASE("real determinant zeros interlace and match the oracle") {
  for (double alpha : {0.0, 1.0}) {
    const auto pot = PolynomialPotential::quartic(alpha);
    const auto ref = oracle::hermite_spectrum(alpha, 9);
    // Sign changes of each real determinant on a fine grid.
    std::vector<std::pair<double, int>> zeros;
    const double lo = ref[0] - 1.0, hi = ref[8] + 0.5 * (ref[8] - ref[7]);
    const int n = 600;
    for (int p = 0; p < 2; ++p) {
      const Parity par = p == 0 ? Parity::even : Parity::odd;
      double prev = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double l = lo + (hi - lo) * i / n;
        const double v = spectral_determinant(pot, l, par).mantissa.real();
        if (i > 0 && (v < 0.0) != (prev < 0.0)) zeros.push_back({l - 0.5 * (hi - lo) / n, p});
        prev = v;
      }
    }
    std::sort(zeros.begin(), zeros.end());
    REQUIRE(zeros.size() == 9);
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      CHECK(zeros[i].second == static_cast<int>(i % 2));
      CHECK(std::abs(zeros[i].first - ref[i]) < (hi - lo) / n);
    }
  }
}

TEST_CASE("determinant invariants") {
  const auto pot = PolynomialPotential::quartic(cplx(-1.0, 2.0));
  SUBCASE("holomorphic in lambda") {
    for (cplx l : {cplx(0.5, 0.5), cplx(3.0, -1.0), cplx(6.0, 2.0)}) {
      const double h = 1e-4;
      const auto j = determinant_jet(pot, l, Parity::even, {}, 1);
      const double e = j.value.exponent;
      const cplx fx = (scaled(spectral_determinant(pot, l + h, Parity::even), e) -
                       scaled(spectral_determinant(pot, l - h, Parity::even), e)) / (2.0 * h);
      const cplx fy = (scaled(spectral_determinant(pot, l + cplx(0, h), Parity::even), e) -
                       scaled(spectral_determinant(pot, l - cplx(0, h), Parity::even), e)) / (2.0 * h);
      const double scale = std::max(std::abs(j.d1), std::abs(j.value.mantissa));
      CHECK(std::abs(0.5 * (fx + cplx(0, 1) * fy)) < 1e-6 * scale);
      CHECK(std::abs(fx - j.d1) < 1e-6 * scale);
    }
  }
  SUBCASE("conjugation symmetry") {
    const cplx l(2.0, 1.5);
    for (Parity p : {Parity::even, Parity::odd}) {
      const auto a = spectral_determinant(pot, l, p);
      const auto b = spectral_determinant(pot.conj(), std::conj(l), p);
      CHECK(std::abs(a.exponent - b.exponent) < 1e-9);
      CHECK(std::abs(scaled(b, a.exponent) - std::conj(a.mantissa)) < 1e-9 * std::abs(a.mantissa));
    }
  }
}

TEST_CASE("parity completeness of oracle eigenvalues") {
  for (double alpha : {0.0, 1.0, -1.0}) {
    const auto pot = PolynomialPotential::quartic(alpha);
    const auto ref = oracle::hermite_spectrum(alpha, 11);
    for (int n = 0; n <= 10; ++n) {
      const double l = ref[static_cast<std::size_t>(n)];
      const double de = determinant_jet(pot, l, Parity::even).newton_distance();
      const double dodd = determinant_jet(pot, l, Parity::odd).newton_distance();
      const double tol = 1e-8 * (1.0 + l);
      CHECK(((de < tol) != (dodd < tol)));
      CHECK(std::max(de, dodd) > 1e-3);
      CHECK(classify_eigenvalue(pot, l) == (n % 2 == 0 ? Parity::even : Parity::odd));
    }
  }
}

TEST_CASE("eigenvalues_at") {
  SUBCASE("matches the oracle at alpha = 0") {
    const auto ev = eigenvalues_at(PolynomialPotential::quartic(0.0), 5);
    const auto ref = oracle::hermite_spectrum(0.0, 6);
    for (int n : {0, 2, 4}) {
      CHECK(ev[static_cast<std::size_t>(n)].parity == Parity::even);
      CHECK(std::abs(ev[static_cast<std::size_t>(n)].value - ref[static_cast<std::size_t>(n)]) < 1e-8);
    }
  }
  SUBCASE("conjugate parameter gives conjugate eigenvalues") {
    const cplx a(-1.0, 2.0);
    const auto x = eigenvalues_at(PolynomialPotential::quartic(a), 4);
    const auto y = eigenvalues_at(PolynomialPotential::quartic(std::conj(a)), 4);
    for (const auto& e : x) {
      double best = INFINITY;
      for (const auto& f : y) best = std::min(best, std::abs(f.value - std::conj(e.value)));
      CHECK(best < 1e-9 * (1.0 + std::abs(e.value)));
    }
  }
  SUBCASE("complex alpha agrees with the Taylor shooting oracle") {
    for (cplx a : {cplx(1.0, 1.0), cplx(-2.0, 1.0)}) {
      for (const auto& e : eigenvalues_at(PolynomialPotential::quartic(a), 3)) {
        const cplx t = oracle::taylor_eigenvalue(a, e.value, e.parity == Parity::even ? 0 : 1);
        CHECK(std::abs(t - e.value) < 1e-8 * (1.0 + std::abs(t)));
      }
    }
  }
  SUBCASE("harmonic limit at large alpha") {
    const auto ev = eigenvalues_at(PolynomialPotential::quartic(100.0), 3);
    for (int n = 0; n <= 3; ++n) {
      const double h = (2 * n + 1) * 10.0;
      CHECK(std::abs(ev[static_cast<std::size_t>(n)].value.real() - h) / h < 0.02);
    }
  }
  SUBCASE("degree two") {
    const auto ev = eigenvalues_at(PolynomialPotential::harmonic(), 4);
    for (int n = 0; n <= 4; ++n) CHECK(std::abs(ev[static_cast<std::size_t>(n)].value - double(2 * n + 1)) < 1e-9);
  }
  SUBCASE("anchor convention") {
    CHECK(anchor_alpha(cplx(2.5, 1.0)) == 2.5);
    CHECK(anchor_alpha(cplx(-2.0, 1.0)) == 1.0);
  }
}

TEST_CASE("eigenvalue counting in disks") {
  const auto pot = PolynomialPotential::quartic(0.0);
  const auto ref = oracle::hermite_spectrum(0.0, 3);
  CHECK(count_eigenvalues_in_disk(pot, 0.0, 0.5, Parity::even) == 0);
  CHECK(count_eigenvalues_in_disk(pot, ref[0], 0.5 * (ref[1] - ref[0]), Parity::even) == 1);
  CHECK(count_eigenvalues_in_disk(pot, ref[2], 0.5 * (ref[2] - ref[1]), Parity::odd) == 0);
  CHECK(count_eigenvalues_in_disk(pot, 0.5 * (ref[0] + ref[2]), 0.5 * (ref[2] - ref[0]) + 0.5, Parity::even) == 2);
}

TEST_CASE("asymptotic values") {
  const auto pot = PolynomialPotential::quartic(1.0);
  const auto ev = real_spectrum(pot, 3);
  for (const auto& e : ev) {
    const auto w = asymptotic_values(pot, e.value);
    REQUIRE(w.raw.size() == 6);
    CHECK(w.parity == e.parity);
    CHECK_FALSE(w.raw[0].infinite);
    CHECK_FALSE(w.raw[3].infinite);
    CHECK(std::abs(w.raw[0].value) < 1e-8);
    CHECK(std::abs(w.raw[3].value) < 1e-8);
    CHECK(std::abs(w.c(2) + std::conj(w.c(1))) < 1e-8 * std::max(1.0, std::abs(w.c(1))));
  }
  SUBCASE("reproducible across tolerances") {
    const auto p0 = PolynomialPotential::quartic(0.0);
    const double l0 = real_spectrum(p0, 0)[0].value.real();
    SolverOptions a, b;
    a.tol = 1e-10;
    b.tol = 1e-12;
    CHECK(std::abs(asymptotic_values(p0, l0, a).c(1) - asymptotic_values(p0, l0, b).c(1)) < 1e-6);
  }
  SUBCASE("non-eigenvalue is rejected") { CHECK_THROWS_AS(asymptotic_values(pot, 2.0), ConvergenceError); }
}

TEST_CASE("schwarzian residual") {
  std::vector<double> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(0.2 + 1.3 * i / 9.0);
  const auto pot = PolynomialPotential::quartic(1.0);
  const auto ev = real_spectrum(pot, 1);
  const double r = schwarzian_residual(pot, ev[0].value, xs);
  CHECK(r < 1e-6);
  CHECK(std::abs(schwarzian_residual(pot, ev[0].value, xs, {}, cplx(3.0, -2.0)) - r) < 1e-6);
  // f = y / y1 has a pole at 0 for the even level.
  CHECK_THROWS_AS(schwarzian_residual(pot, ev[0].value, {0.0}), SampleError);
  CHECK_THROWS_AS(schwarzian_residual(pot, ev[0].value, xs, {}, 0.0), std::invalid_argument);
}

TEST_CASE("real zero counts") {
  CHECK(real_zero_count(0.0, 0) == 0);
  CHECK(real_zero_count(1.0, 3) == 3);
  CHECK(real_zero_count(-2.0, 5) == 5);
  CHECK(real_zero_count(-6.0, 4) == 4);
  CHECK_THROWS_AS(real_zero_count(0.0, -1), std::invalid_argument);
}

TEST_CASE("modulus ordering threshold") {
  const auto small = modulus_ordering_threshold(0.1, 8, 8, 4);
  REQUIRE(small.threshold.has_value());
  CHECK(*small.threshold == 0);
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    const auto ev = real_spectrum(PolynomialPotential::quartic(a), 8);
    for (std::size_t n = 0; n + 1 < ev.size(); ++n) CHECK(std::abs(ev[n + 1].value) > std::abs(ev[n].value));
  }
  CHECK_THROWS_AS(modulus_ordering_threshold(-1.0, 8, 8, 4), std::invalid_argument);
}
