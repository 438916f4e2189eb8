#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "hermite_oracle.hpp"
#include "quartic/continuation.hpp"
#include "quartic/scaling.hpp"
#include "quartic/spectral.hpp"
#include "quartic/trees.hpp"

namespace acceptance {
namespace {

using namespace quartic;
namespace sp = quartic::spectral;
namespace tr = quartic::trees;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Check {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      why << msg;
    }
  }
};

Outcome scaling_identity() {
  double worst = 0.0;
  for (double beta : {0.5, 2.0, 5.0}) {
    const auto direct = scaling::beta_form_spectrum(beta, 6);
    const auto af = scaling::beta_to_alpha(beta);
    const auto alpha_form = sp::real_spectrum(PolynomialPotential::quartic(af.alpha.real()), 6);
    for (int n = 0; n <= 6; ++n) {
      const double lhs = direct[static_cast<std::size_t>(n)];
      const double rhs = af.lambda_factor.real() * alpha_form[static_cast<std::size_t>(n)].value.real();
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }
  }
  return {1, "", worst <= 1e-8, "max relative deviation " + fmt("%.2e", worst) + " (tol 1e-8)"};
}

Outcome oracle_equivalence() {
  double worst = 0.0, conv = 0.0;
  for (double alpha : {0.0, 1.0, -1.0}) {
    const auto ref = oracle::hermite_spectrum(alpha, 11, 240);
    conv = std::max(conv, oracle::hermite_convergence(alpha, 11, 240));
    const auto ev = sp::real_spectrum(PolynomialPotential::quartic(alpha), 10);
    for (int n = 0; n <= 10; ++n) {
      const double a = ref[static_cast<std::size_t>(n)];
      worst = std::max(worst, std::abs(ev[static_cast<std::size_t>(n)].value.real() - a) / std::max(1.0, std::abs(a)));
    }
  }
  Check c;
  c.require(conv <= 1e-9, "oracle not converged in the basis size");
  c.require(worst <= 1e-8, "deviation above tolerance");
  return {2, "", c.ok, "max deviation " + fmt("%.2e", worst) + " (tol 1e-8), oracle basis 240 stable to " +
                           fmt("%.1e", conv) + (c.ok ? "" : "; " + c.why.str())};
}

Outcome zero_count() {
  Check c;
  for (double alpha : {-2.0, 0.0, 1.0}) {
    for (int n = 0; n <= 8; ++n) {
      const int z = sp::real_zero_count(alpha, n);
      c.require(z == n, "alpha " + fmt("%g", alpha) + ", n " + std::to_string(n) + ": counted " + std::to_string(z));
    }
  }
  return {3, "", c.ok, c.ok ? "27 of 27 counts equal n" : c.why.str()};
}

Outcome schwarzian() {
  std::vector<double> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(0.2 + 1.3 * i / 9.0);
  double worst = 0.0;
  for (double alpha : {0.0, 1.0}) {
    const auto pot = PolynomialPotential::quartic(alpha);
    const auto ev = sp::real_spectrum(pot, 1);
    for (int n = 0; n <= 1; ++n) worst = std::max(worst, sp::schwarzian_residual(pot, ev[static_cast<std::size_t>(n)].value, xs));
  }
  return {4, "", worst < 1e-6, "max residual " + fmt("%.2e", worst) + " over 10 points (tol 1e-6)"};
}

Outcome ramification() {
  Check c;
  std::ostringstream d;
  const auto scan = continuation::find_branch_points({-6.0, 0.0, -6.0, 6.0}, Parity::even, 4, 12);
  const continuation::BranchPoint* bp = nullptr;
  for (const auto& p : scan.points) {
    if (p.residual_f <= 1e-8 && p.residual_df <= 1e-8 && p.order == 2) {
      bp = &p;
      break;
    }
  }
  c.require(bp != nullptr, "no even branch point of order 2 with residuals <= 1e-8");
  if (bp) {
    d << "alpha* = " << fmt("%.8f", bp->alpha.real()) << fmt("%+.8fi", bp->alpha.imag()) << ", levels (" << bp->indices.first
      << "," << bp->indices.second << "), residuals " << fmt("%.1e", std::max(bp->residual_f, bp->residual_df));
    const continuation::Route once{continuation::local_loop(*bp, 1)};
    const continuation::Route twice{continuation::local_loop(*bp, 2)};
    const cplx base = once.front().start();
    const auto p1 = continuation::loop_permutation(once, base, 4, Parity::even);
    const auto p2 = continuation::loop_permutation(twice, base, 4, Parity::even);
    c.require(p1.complete, "single loop: " + p1.failure);
    c.require(p2.complete, "double loop: " + p2.failure);
    if (p1.complete) {
      int two = 0, moved = 0;
      for (const auto& [k, v] : p1.mapping) {
        if (k != v) ++moved;
        if (p1.cycle_of(k).size() == 2) ++two;
      }
      c.require(moved == 2 && two == 2, "single loop is not a single 2-cycle");
    }
    if (p2.complete) c.require(p2.is_identity(), "double loop is not the identity");
    const auto sep = continuation::parity_separation_check({once}, base, 4);
    for (const auto& e : sep.loops) c.require(e.complete, "parity check: " + e.failure);
    c.require(sep.separated, "a loop mixes parities");
    d << "; single loop 2-cycle, double loop identity, parities separated";
  }
  return {5, "", c.ok, c.ok ? d.str() : c.why.str()};
}

Outcome threshold(const Settings& s) {
  Check c;
  const auto a = sp::modulus_ordering_threshold(2.0, 20, 16, 9);
  c.require(a.threshold.has_value(), "no finite N with 16 + 9 samples");
  std::string detail = "N = " + (a.threshold ? std::to_string(*a.threshold) : std::string("none"));
  if (s.tier == Tier::full) {
    std::mt19937_64 rng(s.seed);
    const double offset = std::uniform_real_distribution<double>(0.0, std::numbers::pi / 16.0)(rng);
    const auto b = sp::modulus_ordering_threshold(2.0, 20, 32, 18, {}, offset);
    c.require(b.threshold.has_value(), "no finite N with 32 + 18 samples");
    c.require(!a.threshold || !b.threshold || *b.threshold == *a.threshold, "N changes under sample doubling");
    detail += ", doubled samples N = " + (b.threshold ? std::to_string(*b.threshold) : std::string("none"));
  } else {
    detail += " (doubling skipped in the quick tier)";
  }
  return {6, "", c.ok, c.ok ? detail : c.why.str()};
}

Outcome combinatorics() {
  constexpr int B = 12;
  Check c;
  const tr::Move fwd[] = {tr::Move::s0, tr::Move::sinf};
  std::vector<tr::TreeState> all;
  for (auto f : {tr::Fiber::over_i, tr::Fiber::over_minus_i}) {
    const auto s = tr::bounded_states(f, B);
    all.insert(all.end(), s.begin(), s.end());
  }
  // Bijections between fibers.
  for (tr::Move m : fwd) {
    std::map<tr::TreeState, tr::TreeState> image;
    for (const auto& x : all) {
      const auto y = tr::act(m, x);
      c.require(tr::fiber_of(y.family) != tr::fiber_of(x.family), "move stays in its fiber at " + tr::to_string(x));
      c.require(image.emplace(y, x).second, "move not injective at " + tr::to_string(y));
      const auto back = tr::act(m == tr::Move::s0 ? tr::Move::s0_inv : tr::Move::sinf_inv, y);
      c.require(back == x, "inverse row mismatch at " + tr::to_string(x));
    }
    for (const auto& y : all) {
      if (tr::size_of(y) <= B - 2) c.require(image.count(y) == 1, "no preimage of " + tr::to_string(y));
    }
  }
  // Conjugation identity.
  for (const auto& x : all) {
    const auto y = tr::act(tr::Move::sinf, tr::conjugate(tr::act(tr::Move::s0, tr::conjugate(x))));
    c.require(y == x, "conjugation identity fails at " + tr::to_string(x));
  }
  const auto over_i = tr::bounded_states(tr::Fiber::over_i, B);
  // Group relation and origin-class conservation.
  const auto rel = tr::relation_word();
  const tr::Move moves[] = {tr::Move::s0, tr::Move::s0_inv, tr::Move::sinf, tr::Move::sinf_inv};
  for (const auto& x : over_i) {
    c.require(tr::act_word(rel, x) == x, "q0 q1 qinf q-1 moves " + tr::to_string(x));
    for (auto m1 : moves) {
      for (auto m2 : moves) {
        const auto y = tr::act(m2, tr::act(m1, x));
        c.require(tr::origin_class(y) == tr::origin_class(x), "origin class changes at " + tr::to_string(x));
      }
    }
  }
  // Two orbits.
  const auto o1 = tr::orbit({tr::Family::A, 0, 0}, B);
  const auto o2 = tr::orbit({tr::Family::D, 0, 1}, B);
  std::size_t common = 0;
  for (const auto& s : o1) common += o2.count(s);
  std::set<tr::TreeState> uni(o1.begin(), o1.end());
  uni.insert(o2.begin(), o2.end());
  const std::set<tr::TreeState> expected(over_i.begin(), over_i.end());
  c.require(common == 0, "orbits intersect");
  c.require(uni == expected, "orbits do not cover the bounded over-i set");
  // Completion items.
  for (int k = 0; k <= B; ++k) {
    std::vector<tr::Move> w(static_cast<std::size_t>(2 * k), tr::Move::s0);
    c.require(tr::act_word(w, {tr::Family::A, 0, 0}) == tr::TreeState{tr::Family::A, k, 0},
              "(s0)^2k A_0 != A_k for k = " + std::to_string(k));
    for (int l = 1; 2 * l <= B; ++l) {
      std::vector<tr::Move> u;
      for (int i = 0; i < l; ++i) u.insert(u.end(), {tr::Move::s0, tr::Move::sinf});
      c.require(tr::act_word(u, {tr::Family::A, k, 0}) == tr::TreeState{tr::Family::D, k, 2 * l},
                "(s0 sinf)^l A_k != D_k,2l");
    }
  }
  std::ostringstream d;
  d << all.size() << " bounded states; orbit sizes " << o1.size() << " + " << o2.size() << " = " << expected.size();
  return {7, "", c.ok, c.ok ? d.str() : c.why.str()};
}

Outcome braid() {
  using tr::Letter;
  constexpr int L = 8;
  Letter word[L];
  Letter a[3 * L], b[9 * L];
  long long count = 0, bad = 0;
  const std::pair<tr::Move, tr::Move> pairs[] = {{tr::Move::s0, tr::Move::s0_inv},
                                                 {tr::Move::s0_inv, tr::Move::s0},
                                                 {tr::Move::sinf, tr::Move::sinf_inv},
                                                 {tr::Move::sinf_inv, tr::Move::sinf}};
  auto check = [&](int n) {
    ++count;
    for (const auto& [f, g] : pairs) {
      const std::size_t na = tr::braid_rewrite(f, word, static_cast<std::size_t>(n), a);
      const std::size_t nb = tr::braid_rewrite(g, a, na, b);
      if (nb != static_cast<std::size_t>(n) || !std::equal(word, word + n, b)) ++bad;
    }
  };
  // Depth-first enumeration of freely reduced words.
  auto rec = [&](auto&& self, int n) -> void {
    check(n);
    if (n == L) return;
    for (Letter x : {1, -1, 2, -2, 3, -3, 4, -4}) {
      if (n > 0 && word[n - 1] == -x) continue;
      word[n] = x;
      self(self, n + 1);
    }
  };
  rec(rec, 0);
  const bool ok = bad == 0 && count == 7686401;
  return {8, "", ok, std::to_string(count) + " reduced words, " + std::to_string(bad) + " failures"};
}

Outcome asymptotic_cross_check() {
  Check c;
  double worst = 0.0;
  const auto pot = PolynomialPotential::quartic(1.0);
  const auto ev = sp::real_spectrum(pot, 4);
  for (const auto& e : ev) {
    const auto av = sp::asymptotic_values(pot, e.value);
    const cplx c1 = av.c(1), c2 = av.c(2);
    const double dev = std::abs(c2 + std::conj(c1)) / std::max(1.0, std::abs(c1));
    worst = std::max(worst, dev);
    const bool pole = tr::origin_class(tr::level_to_tree(e.index)) == tr::OriginClass::pole_at_origin;
    c.require(pole == (av.parity == Parity::even),
              "level " + std::to_string(e.index) + ": tree class disagrees with the observed parity");
  }
  c.require(worst <= 1e-6, "c2 + conj(c1) deviation above 1e-6");
  return {9, "", c.ok, "max |c2 + conj(c1)| " + fmt("%.2e", worst) + " (tol 1e-6); origin classes match parities" +
                           (c.ok ? "" : "; " + c.why.str())};
}

const char* const kTitles[] = {
    "",
    "scaling identity",
    "Hermite oracle equivalence",
    "real zero count",
    "Schwarzian residual",
    "ramification and parity separation",
    "eventual modulus ordering",
    "tree combinatorics (B = 12)",
    "braid rewrites",
    "asymptotic values and origin class",
};

// Runtime limits in seconds; 0 means none.
constexpr double kLimits[] = {0, 120, 0, 0, 0, 600, 0, 10, 0, 0};

}  // namespace

int criterion_count() { return 9; }

std::string criterion_title(int id) { return kTitles[id]; }

Outcome run_criterion(int id, const Settings& s) {
  if (id < 1 || id > criterion_count()) throw std::out_of_range("no such criterion");
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    switch (id) {
      case 1: o = scaling_identity(); break;
      case 2: o = oracle_equivalence(); break;
      case 3: o = zero_count(); break;
      case 4: o = schwarzian(); break;
      case 5: o = ramification(); break;
      case 6: o = threshold(s); break;
      case 7: o = combinatorics(); break;
      case 8: o = braid(); break;
      case 9: o = asymptotic_cross_check(); break;
    }
  } catch (const std::exception& e) {
    o = {id, "", false, std::string("exception: ") + e.what()};
  }
  o.id = id;
  o.title = kTitles[id];
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (kLimits[id] > 0 && o.seconds > kLimits[id]) {
    o.pass = false;
    o.detail += "; runtime " + fmt("%.1f", o.seconds) + " s exceeds " + fmt("%.0f", kLimits[id]) + " s";
  }
  return o;
}

std::vector<Outcome> run_all(const Settings& s, const std::vector<int>& ids, const std::function<void(const Outcome&)>& report) {
  std::vector<int> todo = ids;
  if (todo.empty()) {
    for (int i = 1; i <= criterion_count(); ++i) todo.push_back(i);
  }
  std::vector<Outcome> out;
  for (int id : todo) {
    out.push_back(run_criterion(id, s));
    if (report) report(out.back());
  }
  return out;
}

std::string format_line(const Outcome& o) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%s] %d. %-38s %7.1f s  ", o.pass ? "PASS" : "FAIL", o.id, o.title.c_str(), o.seconds);
  return buf + o.detail;
}

}  // namespace acceptance
