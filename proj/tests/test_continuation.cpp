#include <cmath>
#include <numbers>

#include "doctest.h"
#include "quartic/continuation.hpp"
#include "quartic/spectral.hpp"

using namespace quartic;
using namespace quartic::continuation;

namespace {

cplx lambda_at(cplx alpha, int n) {
  return spectral::eigenvalues_at(PolynomialPotential::quartic(alpha), n)[static_cast<std::size_t>(n)].value;
}

// One scan shared by the branch-point cases.
const ScanReport& scan() {
  static const ScanReport r = find_branch_points({-6.0, 0.0, -6.0, 6.0}, Parity::even, 4, 12);
  return r;
}

const BranchPoint* upper_point() {
  for (const auto& p : scan().points) {
    if (p.alpha.imag() > 0 && p.indices == std::pair{0, 2}) return &p;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("path geometry") {
  const auto p = PathSpec::polyline({0.0, 1.0, cplx(1.0, 1.0)});
  CHECK(p.length() == doctest::Approx(2.0));
  CHECK(std::abs(p.at(0.75) - cplx(1.0, 0.5)) < 1e-15);
  CHECK_FALSE(p.closed());
  CHECK(std::abs(p.reversed().at(0.25) - p.at(0.75)) < 1e-15);
  const auto c = PathSpec::circle(1.0, 0.5, 2, std::numbers::pi);
  CHECK(c.closed());
  CHECK(std::abs(c.start() - 0.5) < 1e-15);
  CHECK(std::abs(c.at(0.25) - 1.5) < 1e-15);
  CHECK(c.reversed().turns == -2);
  CHECK_THROWS_AS(PathSpec::polyline({1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(PathSpec::circle(0.0, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(PathSpec::circle(0.0, 1.0, 0).validate(), std::invalid_argument);
}

TEST_CASE("tracking along simple paths") {
  const cplx a0(1.0, 0.0), a1(1.0, 1.0);
  const cplx l0 = lambda_at(a0, 2);

  SUBCASE("constant path") {
    const auto t = continue_eigenvalue({PathSpec::polyline({a0, a0})}, l0, Parity::even);
    CHECK(t.status == TraceStatus::completed);
    for (const auto& s : t.samples) CHECK(std::abs(s.lambda - l0) < 1e-10);
  }
  SUBCASE("path and its reversal") {
    const auto seg = PathSpec::polyline({a0, a1});
    const auto t = continue_eigenvalue({seg, seg.reversed()}, l0, Parity::even);
    REQUIRE(t.status == TraceStatus::completed);
    CHECK(std::abs(t.samples.back().lambda - l0) < 1e-9);
    CHECK(t.samples.back().t == doctest::Approx(1.0));
    // The midpoint agrees with a direct computation at 1 + i.
    const auto direct = lambda_at(a1, 2);
    bool found = false;
    for (const auto& s : t.samples) {
      if (std::abs(s.t - 0.5) < 1e-12) {
        CHECK(std::abs(s.lambda - direct) < 1e-8);
        found = true;
      }
    }
    CHECK(found);
    for (const auto& s : t.samples) CHECK(s.residual < 1e-8);
  }
  SUBCASE("conjugate path gives the conjugate trace") {
    const auto t = continue_eigenvalue({PathSpec::polyline({a0, a1})}, l0, Parity::even);
    const auto u = continue_eigenvalue({PathSpec::polyline({a0, std::conj(a1)})}, l0, Parity::even);
    CHECK(std::abs(t.samples.back().lambda - std::conj(u.samples.back().lambda)) < 1e-9);
  }
  SUBCASE("small circle returns to the start") {
    const auto t = continue_eigenvalue({PathSpec::circle(a0, 0.5, 1, std::numbers::pi)}, lambda_at(0.5, 1),
                                       Parity::odd);
    REQUIRE(t.status == TraceStatus::completed);
    CHECK(std::abs(t.samples.back().lambda - t.samples.front().lambda) < 1e-9);
  }
  SUBCASE("bad start") {
    CHECK_THROWS_AS(continue_eigenvalue({PathSpec::polyline({a0, a1})}, l0 + 0.3, Parity::even),
                    std::invalid_argument);
  }
}

TEST_CASE("contractible loops act trivially") {
  const Route loop{PathSpec::circle(cplx(2.0, 0.0), 0.5)};
  const auto m = loop_permutation(loop, 2.5, 3, Parity::even);
  CHECK(m.complete);
  CHECK(m.is_identity());
  CHECK(m.labels == std::vector<int>{0, 2});
  const Route back{PathSpec::circle(cplx(2.0, 0.0), 0.5).reversed()};
  CHECK(follow(m, loop_permutation(back, 2.5, 3, Parity::even)).is_identity());
}

TEST_CASE("branch scan on the real axis is empty") {
  const auto r = find_branch_points({0.5, 3.0, -0.2, 0.2}, Parity::even, 4, 8);
  CHECK(r.points.empty());
}

TEST_CASE("square-root branch point of the even levels") {
  const auto& r = scan();
  REQUIRE_FALSE(r.points.empty());
  const BranchPoint* bp = upper_point();
  REQUIRE(bp != nullptr);
  CHECK(bp->residual_f < 1e-8 * (1.0 + std::abs(bp->lambda)));
  CHECK(bp->residual_df < 1e-8 * (1.0 + std::abs(bp->lambda)));
  CHECK(bp->alpha.real() < 0.0);

  // Points come in conjugate pairs.
  for (const auto& p : r.points) {
    bool paired = false;
    for (const auto& q : r.points) paired |= std::abs(q.alpha - std::conj(p.alpha)) < 1e-6;
    CHECK(paired);
  }

  // A double eigenvalue: the disk around lambda* holds two even eigenvalues.
  CHECK(spectral::count_eigenvalues_in_disk(PolynomialPotential::quartic(bp->alpha), bp->lambda, 0.05,
                                            Parity::even) == 2);

  CHECK(ramification_order(*bp, 4) == 2);

  const PathSpec once = local_loop(*bp, 1);
  const cplx base = once.start();
  const auto m1 = loop_permutation({once}, base, 4, Parity::even);
  REQUIRE(m1.complete);
  CHECK(m1.mapping.at(0) == 2);
  CHECK(m1.mapping.at(2) == 0);
  CHECK(m1.mapping.at(4) == 4);
  CHECK(m1.cycle_of(0) == std::vector<int>{0, 2});

  // Following the loop twice equals the double loop, and both are trivial.
  CHECK(follow(m1, m1).is_identity());
  const auto m2 = loop_permutation({local_loop(*bp, 2)}, base, 4, Parity::even);
  CHECK(m2.is_identity());

  // Odd levels are not involved.
  const auto odd = loop_permutation({once}, base, 4, Parity::odd);
  CHECK(odd.is_identity());

  // Reversing the loop inverts the permutation; a homotopic larger circle agrees.
  const auto inv = loop_permutation({once.reversed()}, base, 4, Parity::even);
  CHECK(follow(m1, inv).is_identity());
  const auto wide = PathSpec::circle(bp->alpha, 1.5 * once.radius, 1, once.start_angle);
  const auto mw = loop_permutation({wide}, base, 4, Parity::even);
  CHECK(mw.mapping == m1.mapping);

  const auto sep = parity_separation_check({{once}}, base, 4);
  CHECK(sep.separated);
}

TEST_CASE("conjugate branch point") {
  const BranchPoint* bp = upper_point();
  REQUIRE(bp != nullptr);
  const BranchPoint* low = nullptr;
  for (const auto& p : scan().points) {
    if (std::abs(p.alpha - std::conj(bp->alpha)) < 1e-6) low = &p;
  }
  REQUIRE(low != nullptr);
  CHECK(std::abs(low->lambda - std::conj(bp->lambda)) < 1e-6);
  const PathSpec loop = local_loop(*low, 1);
  const auto m = loop_permutation({loop}, loop.start(), 4, Parity::even);
  REQUIRE(m.complete);
  CHECK(m.cycle_of(0) == std::vector<int>{0, 2});
}
