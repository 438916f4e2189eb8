#include "quartic/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "newton.hpp"

namespace quartic::continuation {
namespace {

using spectral::SolverOptions;

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Transport {
  tracking::Status status = tracking::Status::completed;
  std::string message;
  std::vector<std::vector<cplx>> lambda;  // per sample
  std::vector<std::vector<double>> residual;
  std::vector<double> t;
  std::vector<cplx> alpha;
  std::vector<cplx> last;  // values at the last good sample
};

// Runs the lockstep tracker piece by piece along a route.
Transport transport(const Route& route, const std::vector<tracking::Branch>& start, const SolverOptions& opt,
                    const tracking::Controls& ctl, bool keep) {
  Transport out;
  std::vector<tracking::Branch> cur = start;
  for (std::size_t i = 0; i < cur.size(); ++i) out.last.push_back(cur[i].lambda);
  for (std::size_t p = 0; p < route.size(); ++p) {
    const PathSpec& piece = route[p];
    const auto res = tracking::track([&piece](double t) { return piece.at(t); }, cur, opt, ctl, keep);
    for (const auto& s : res.samples) {
      if (p > 0 && s.t == 0.0 && !out.t.empty()) continue;  // shared junction
      out.t.push_back(static_cast<double>(p) + s.t);
      out.alpha.push_back(s.alpha);
      out.lambda.push_back(s.lambda);
      out.residual.push_back(s.residual);
    }
    if (!res.samples.empty()) out.last = res.samples.back().lambda;
    if (res.status != tracking::Status::completed) {
      out.status = res.status;
      out.message = "piece " + std::to_string(p) + ": " + res.message;
      return out;
    }
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i].lambda = out.last[i];
  }
  return out;
}

std::vector<tracking::Branch> branches_of(const std::vector<spectral::Eigenvalue>& ev) {
  std::vector<tracking::Branch> b;
  for (const auto& e : ev) b.push_back({e.parity, e.value});
  return b;
}

// Index of the base eigenvalue closest to lambda among those accepted by
// `allowed`; -1 when none lies within the matching tolerance.
template <class Pred>
int match(const std::vector<spectral::Eigenvalue>& base, cplx lambda, Pred allowed) {
  int best = -1;
  double bd = INFINITY;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (!allowed(base[i])) continue;
    const double d = std::abs(base[i].value - lambda);
    if (d < bd) {
      bd = d;
      best = static_cast<int>(i);
    }
  }
  if (best >= 0 && bd > 1e-6 * (1.0 + std::abs(lambda))) return -1;
  return best;
}

Route lasso(const Route& loop, cplx base) {
  Route r;
  const cplx s = loop.front().start();
  if (std::abs(s - base) > 0.0) r.push_back(PathSpec::polyline({base, s}));
  r.insert(r.end(), loop.begin(), loop.end());
  const cplx e = loop.back().end();
  if (std::abs(e - base) > 0.0) r.push_back(PathSpec::polyline({e, base}));
  return r;
}

void validate_route(const Route& route) {
  if (route.empty()) throw std::invalid_argument("route has no pieces");
  for (const auto& p : route) p.validate();
  for (std::size_t i = 1; i < route.size(); ++i) {
    if (std::abs(route[i].start() - route[i - 1].end()) > 1e-12 * (1.0 + std::abs(route[i].start()))) {
      throw std::invalid_argument("route pieces are not contiguous");
    }
  }
}

}  // namespace

// ---- PathSpec ---------------------------------------------------------------

PathSpec PathSpec::polyline(std::vector<cplx> points) {
  PathSpec p;
  p.kind = Kind::polyline;
  p.points = std::move(points);
  p.validate();
  return p;
}

PathSpec PathSpec::circle(cplx center, double radius, int turns, double start_angle) {
  PathSpec p;
  p.kind = Kind::circle;
  p.center = center;
  p.radius = radius;
  p.turns = turns;
  p.start_angle = start_angle;
  p.validate();
  return p;
}

void PathSpec::validate() const {
  if (kind == Kind::polyline) {
    if (points.size() < 2) throw std::invalid_argument("polyline needs at least two points");
  } else {
    if (!(radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
    if (turns == 0) throw std::invalid_argument("circle turns must be nonzero");
  }
}

double PathSpec::length() const {
  if (kind == Kind::circle) return two_pi * radius * std::abs(turns);
  double l = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) l += std::abs(points[i] - points[i - 1]);
  return l;
}

cplx PathSpec::at(double t) const {
  if (kind == Kind::circle) return center + std::polar(radius, start_angle + two_pi * turns * t);
  const double total = length();
  if (total == 0.0) return points.front();
  double target = std::clamp(t, 0.0, 1.0) * total;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double seg = std::abs(points[i] - points[i - 1]);
    if (target <= seg || i + 1 == points.size()) {
      return seg == 0.0 ? points[i] : points[i - 1] + (points[i] - points[i - 1]) * std::min(1.0, target / seg);
    }
    target -= seg;
  }
  return points.back();
}

bool PathSpec::closed() const {
  if (kind == Kind::circle) return true;
  return std::abs(points.front() - points.back()) <= 1e-12 * (1.0 + std::abs(points.front()));
}

PathSpec PathSpec::reversed() const {
  PathSpec p = *this;
  if (kind == Kind::circle) {
    p.start_angle = start_angle + two_pi * turns;
    p.turns = -turns;
  } else {
    std::reverse(p.points.begin(), p.points.end());
  }
  return p;
}

// ---- traces -----------------------------------------------------------------

ContinuationTrace continue_eigenvalue(const Route& route, cplx lambda_start, Parity parity, const SolverOptions& opt,
                                      const tracking::Controls& ctl) {
  validate_route(route);
  const auto pot = PolynomialPotential::quartic(route.front().start());
  const double nd = spectral::determinant_jet(pot, lambda_start, parity, opt, 1).newton_distance();
  if (nd > 1e-6 * (1.0 + std::abs(lambda_start))) {
    throw std::invalid_argument("start value is not an eigenvalue of the given parity");
  }
  const auto tr = transport(route, {{parity, lambda_start}}, opt, ctl, true);
  ContinuationTrace trace;
  trace.parity = parity;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    trace.samples.push_back({tr.t[i] / static_cast<double>(route.size()), tr.alpha[i], tr.lambda[i][0],
                             tr.residual[i][0]});
  }
  trace.message = tr.message;
  if (tr.status == tracking::Status::step_underflow) throw ContinuationError(tr.message, trace);
  if (tr.status == tracking::Status::aborted_near_branch) trace.status = TraceStatus::aborted_near_branch;
  return trace;
}

// ---- monodromy --------------------------------------------------------------

bool MonodromyPermutation::is_identity() const {
  return std::all_of(mapping.begin(), mapping.end(), [](const auto& kv) { return kv.first == kv.second; });
}

std::vector<int> MonodromyPermutation::cycle_of(int label) const {
  std::vector<int> c{label};
  int x = mapping.at(label);
  while (x != label) {
    c.push_back(x);
    x = mapping.at(x);
  }
  return c;
}

MonodromyPermutation follow(const MonodromyPermutation& a, const MonodromyPermutation& b) {
  MonodromyPermutation r;
  r.parity = a.parity;
  r.labels = a.labels;
  r.loop = a.loop;
  r.loop.insert(r.loop.end(), b.loop.begin(), b.loop.end());
  r.complete = a.complete && b.complete;
  for (const auto& [k, v] : a.mapping) {
    const auto it = b.mapping.find(v);
    if (it == b.mapping.end()) {
      r.complete = false;
      r.failure = "composition leaves the label set";
      continue;
    }
    r.mapping[k] = it->second;
  }
  return r;
}

MonodromyPermutation loop_permutation(const Route& loop, cplx alpha_base, int n_max, Parity parity,
                                      const SolverOptions& opt, const tracking::Controls& ctl) {
  validate_route(loop);
  if (std::abs(loop.front().start() - loop.back().end()) > 1e-9 * (1.0 + std::abs(loop.front().start()))) {
    throw std::invalid_argument("loop is not closed");
  }
  MonodromyPermutation perm;
  perm.parity = parity;
  perm.loop = loop;
  const auto base = spectral::eigenvalues_at(PolynomialPotential::quartic(alpha_base), n_max + 2, opt);
  std::vector<spectral::Eigenvalue> tracked;
  for (const auto& e : base) {
    if (e.parity == parity) tracked.push_back(e);
  }
  for (const auto& e : tracked) {
    if (e.index <= n_max) perm.labels.push_back(e.index);
  }
  const auto tr = transport(lasso(loop, alpha_base), branches_of(tracked), opt, ctl, false);
  if (tr.status != tracking::Status::completed) {
    perm.failure = "tracking aborted: " + tr.message;
    return perm;
  }
  perm.complete = true;
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    const int m = match(base, tr.last[i], [&](const spectral::Eigenvalue& e) { return e.parity == parity; });
    const int from = tracked[i].index;
    const int to = m < 0 ? -1 : base[static_cast<std::size_t>(m)].index;
    if (from > n_max) {
      if (to >= 0 && to <= n_max) {
        perm.complete = false;
        perm.failure = "an untracked level entered the label set";
      }
      continue;
    }
    if (to < 0 || to > n_max) {
      perm.complete = false;
      perm.failure = "label " + std::to_string(from) + " left the tracked label set";
      continue;
    }
    perm.mapping[from] = to;
  }
  std::set<int> image;
  for (const auto& kv : perm.mapping) image.insert(kv.second);
  if (image.size() != perm.mapping.size()) {
    perm.complete = false;
    perm.failure = "endpoint matching is not a bijection";
  }
  return perm;
}

SeparationReport parity_separation_check(const std::vector<Route>& loops, cplx alpha_base, int n_max,
                                         const SolverOptions& opt) {
  SeparationReport rep;
  const auto base = spectral::eigenvalues_at(PolynomialPotential::quartic(alpha_base), n_max + 2, opt);
  for (const auto& loop : loops) {
    validate_route(loop);
    SeparationReport::Entry entry;
    const auto tr = transport(lasso(loop, alpha_base), branches_of(base), opt, {}, false);
    if (tr.status != tracking::Status::completed) {
      entry.failure = "tracking aborted: " + tr.message;
      rep.loops.push_back(entry);
      continue;
    }
    entry.complete = true;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (base[i].index > n_max) continue;
      const int m = match(base, tr.last[i], [](const spectral::Eigenvalue&) { return true; });
      if (m < 0) {
        entry.complete = false;
        entry.failure = "label " + std::to_string(base[i].index) + " has no matching base eigenvalue";
        continue;
      }
      const auto& to = base[static_cast<std::size_t>(m)];
      if (to.parity != base[i].parity) entry.mixed = true;
      (base[i].parity == Parity::even ? entry.even : entry.odd)[base[i].index] = to.index;
    }
    if (entry.mixed) rep.separated = false;
    rep.loops.push_back(entry);
  }
  return rep;
}

// ---- branch points ----------------------------------------------------------

namespace {

struct Jet2 {
  cplx f, fl, fll;
  double exponent;
};

Jet2 jet_at(cplx alpha, cplx lambda, Parity parity, const SolverOptions& opt, int order) {
  const auto j = spectral::determinant_jet(PolynomialPotential::quartic(alpha), lambda, parity, opt, order);
  return {j.value.mantissa, j.d1, j.d2, j.value.exponent};
}

struct Polish2 {
  cplx alpha, lambda;
  double res_f = INFINITY, res_df = INFINITY;
  bool converged = false;
};

// F, F_lambda, F_lambda_lambda and the alpha-derivatives of F and
// F_lambda (central differences), all on the scale of exp(exponent).
struct Local {
  Jet2 j;
  cplx fa, fla;
};

Local local_derivatives(cplx alpha, cplx lambda, Parity parity, const SolverOptions& opt) {
  const Jet2 j0 = jet_at(alpha, lambda, parity, opt, 2);
  const double h = 1e-6 * (1.0 + std::abs(alpha));
  const Jet2 jp = jet_at(alpha + h, lambda, parity, opt, 1);
  const Jet2 jm = jet_at(alpha - h, lambda, parity, opt, 1);
  const double sp = std::exp(jp.exponent - j0.exponent), sm = std::exp(jm.exponent - j0.exponent);
  return {j0, (jp.f * sp - jm.f * sm) / (2.0 * h), (jp.fl * sp - jm.fl * sm) / (2.0 * h)};
}

// Newton on (F, F_lambda) = 0 in (alpha, lambda), steps in alpha capped
// at max_step.
Polish2 polish_double_root(cplx alpha, cplx lambda, Parity parity, const SolverOptions& opt, double max_step) {
  Polish2 p{alpha, lambda};
  for (int it = 0; it < 40; ++it) {
    const Local d = local_derivatives(p.alpha, p.lambda, parity, opt);
    const Jet2& j0 = d.j;
    const cplx det = d.fa * j0.fll - j0.fl * d.fla;
    if (det == 0.0) return p;
    cplx da = -(j0.f * j0.fll - j0.fl * j0.fl) / det;
    cplx dl = -(d.fa * j0.fl - d.fla * j0.f) / det;
    const double s = std::abs(da);
    if (s > max_step) {
      da *= max_step / s;
      dl *= max_step / s;
    }
    p.alpha += da;
    p.lambda += dl;
    if (!std::isfinite(std::abs(p.alpha)) || !std::isfinite(std::abs(p.lambda))) return p;
    if (std::abs(da) <= 1e-13 * (1.0 + std::abs(p.alpha)) && std::abs(dl) <= 1e-12 * (1.0 + std::abs(p.lambda))) {
      const Jet2 j = jet_at(p.alpha, p.lambda, parity, opt, 1);
      p.res_f = std::abs(j.f) * std::exp(j.exponent);
      p.res_df = std::abs(j.fl) * std::exp(j.exponent);
      p.converged = true;
      return p;
    }
  }
  return p;
}

double loop_radius(const BranchPoint& bp) { return 1e-2 * (1.0 + std::abs(bp.alpha)); }

// The two roots near lambda* at alpha* + r e^{i start}.
std::pair<cplx, cplx> local_pair(const BranchPoint& bp, cplx at, const SolverOptions& opt) {
  const auto pot = PolynomialPotential::quartic(at);
  // F ~ F_alpha (alpha - alpha*) + F_ll / 2 (lambda - lambda*)^2.
  const Local m = local_derivatives(bp.alpha, bp.lambda, bp.parity, opt);
  const cplx d = std::sqrt(-2.0 * m.fa * (at - bp.alpha) / m.j.fll);
  const auto a = spectral::detail::polish(pot, bp.lambda + d, bp.parity, opt, opt.newton_max_iter);
  const auto b = spectral::detail::polish(pot, bp.lambda - d, bp.parity, opt, opt.newton_max_iter);
  if (!a.converged || !b.converged || std::abs(a.lambda - b.lambda) < 0.1 * std::abs(d)) {
    throw ConvergenceError("could not resolve the two roots near the branch point");
  }
  return {a.lambda, b.lambda};
}

}  // namespace

PathSpec local_loop(const BranchPoint& bp, int turns) { return PathSpec::circle(bp.alpha, loop_radius(bp), turns); }

int ramification_order(const BranchPoint& bp, int n_max, const SolverOptions& opt) {
  const PathSpec one = local_loop(bp, 1);
  const auto [l0, l1] = local_pair(bp, one.start(), opt);
  const std::vector<tracking::Branch> start{{bp.parity, l0}, {bp.parity, l1}};
  auto run = [&](int turns) {
    const auto tr = transport({local_loop(bp, turns)}, start, opt, {}, false);
    if (tr.status != tracking::Status::completed) throw ConvergenceError("local loop aborted: " + tr.message);
    std::vector<int> image;
    for (const cplx v : tr.last) {
      const double d0 = std::abs(v - l0), d1 = std::abs(v - l1);
      const double tol = 1e-6 * (1.0 + std::abs(v));
      image.push_back(d0 <= tol ? 0 : (d1 <= tol ? 1 : -1));
    }
    return image;
  };
  const auto once = run(1);
  if (once[0] < 0 || once[1] < 0) throw ConvergenceError("local loop endpoints do not match the start roots");
  int k = 1;
  for (int x = once[0]; x != 0; x = once[static_cast<std::size_t>(x)]) {
    if (++k > std::max(2, n_max)) throw ConvergenceError("cycle not closed within n_max traversals");
  }
  if (k < 2) throw ConvergenceError("local loop does not permute the merging roots");
  const auto back = run(k);
  if (back[0] != 0 || back[1] != 1) throw ConvergenceError("k-fold local loop is not the identity");
  return k;
}

ScanReport find_branch_points(const Box& box, Parity parity, int n_max, int grid, const SolverOptions& opt) {
  if (grid < 8) throw std::invalid_argument("grid must be at least 8");
  if (!(box.re_min < box.re_max) || !(box.im_min < box.im_max) || !std::isfinite(box.re_min + box.re_max +
                                                                                    box.im_min + box.im_max)) {
    throw std::invalid_argument("box must be bounded and nondegenerate");
  }
  ScanReport rep;
  const int n = grid;
  const double dx = (box.re_max - box.re_min) / n;
  const double dy = (box.im_max - box.im_min) / n;
  auto node = [&](int i, int r) { return cplx(box.re_min + i * dx, box.im_min + r * dy); };

  // Tracked levels: index <= n_max of this parity plus one guard level.
  const double x_ref = std::max(1.0, box.re_max);
  std::vector<tracking::Branch> ref;
  {
    const auto ev = spectral::real_spectrum(PolynomialPotential::quartic(x_ref), n_max + 2, opt);
    for (const auto& e : ev) {
      if (e.parity == parity) ref.push_back({e.parity, e.value});
    }
  }
  const std::size_t m = ref.size();
  std::vector<int> level;
  for (int i = parity == Parity::even ? 0 : 1; static_cast<std::size_t>(level.size()) < m; i += 2) level.push_back(i);

  struct Seed {
    cplx alpha, lambda;
    int a, b;
  };
  std::vector<Seed> seeds;
  auto closest_pair = [&](const std::vector<cplx>& v, cplx at) {
    Seed s{at, 0.0, 0, 1};
    double best = INFINITY;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        const double d = std::abs(v[i] - v[j]);
        if (d < best) {
          best = d;
          s = {at, 0.5 * (v[i] + v[j]), level[i], level[j]};
        }
      }
    }
    return s;
  };
  auto with_values = [&](const std::vector<cplx>& v) {
    std::vector<tracking::Branch> b = ref;
    for (std::size_t i = 0; i < m; ++i) b[i].lambda = v[i];
    return b;
  };

  // values[r][i]: tracked eigenvalues at node (i, r), empty if unreached.
  std::vector<std::vector<std::vector<cplx>>> values(n + 1, std::vector<std::vector<cplx>>(n + 1));
  // Reference column Re(alpha) = x_ref, reached from the real axis.
  std::vector<std::vector<cplx>> column(n + 1);
  {
    auto vertical = [&](int r0, int step) {
      std::vector<cplx> cur;
      for (const auto& b : ref) cur.push_back(b.lambda);
      cplx from = x_ref;
      for (int r = r0; r >= 0 && r <= n; r += step) {
        const cplx to(x_ref, box.im_min + r * dy);
        const auto tr = transport({PathSpec::polyline({from, to})}, with_values(cur), opt, {}, false);
        if (tr.status != tracking::Status::completed) {
          rep.log.push_back("reference column aborted: " + tr.message);
          return;
        }
        cur = tr.last;
        column[static_cast<std::size_t>(r)] = cur;
        from = to;
      }
    };
    // Rows at or above Im = 0 go up from the axis, the others go down.
    const int r_up = std::clamp(static_cast<int>(std::ceil(-box.im_min / dy - 1e-9)), 0, n + 1);
    vertical(r_up, 1);
    vertical(r_up - 1, -1);
  }

  for (int r = 0; r <= n; ++r) {
    if (column[static_cast<std::size_t>(r)].empty()) continue;
    std::vector<cplx> cur = column[static_cast<std::size_t>(r)];
    cplx from(x_ref, box.im_min + r * dy);
    for (int i = n; i >= 0; --i) {
      const cplx to = node(i, r);
      const cplx up(0.0, 0.5 * dy);
      const std::vector<Route> tries = {
          {PathSpec::polyline({from, to})},
          {PathSpec::polyline({from, from + up, to + up, to})},
          {PathSpec::polyline({from, from - up, to - up, to})},
      };
      bool ok = false;
      for (std::size_t k = 0; k < tries.size() && !ok; ++k) {
        if (std::abs(from - to) == 0.0 && k > 0) break;
        const auto tr = transport(tries[k], with_values(cur), opt, {}, false);
        if (tr.status == tracking::Status::completed) {
          cur = tr.last;
          ok = true;
        } else if (k == 0 && !tr.alpha.empty()) {
          seeds.push_back(closest_pair(tr.last, tr.alpha.back()));
        }
      }
      if (!ok) {
        rep.log.push_back("node (" + std::to_string(i) + ", " + std::to_string(r) + ") unreachable");
        continue;
      }
      values[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = cur;
      from = to;
    }
  }

  // Normalized minimal gap field.
  std::vector<std::vector<double>> field(n + 1, std::vector<double>(n + 1, INFINITY));
  for (int r = 0; r <= n; ++r) {
    for (int i = 0; i <= n; ++i) {
      const auto& v = values[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
      if (v.size() < 2) continue;
      double mn = INFINITY, mean = 0.0;
      for (std::size_t a = 0; a < v.size(); ++a) {
        double nn = INFINITY;
        for (std::size_t b = 0; b < v.size(); ++b) {
          if (a != b) nn = std::min(nn, std::abs(v[a] - v[b]));
        }
        mn = std::min(mn, nn);
        mean += nn;
      }
      mean /= static_cast<double>(v.size());
      field[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = mn / mean;
    }
  }
  for (int r = 0; r <= n; ++r) {
    for (int i = 0; i <= n; ++i) {
      const double f = field[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
      if (!std::isfinite(f)) continue;
      bool local_min = true;
      for (int a = -1; a <= 1 && local_min; ++a) {
        for (int b = -1; b <= 1; ++b) {
          const int rr = r + a, ii = i + b;
          if ((a == 0 && b == 0) || rr < 0 || rr > n || ii < 0 || ii > n) continue;
          if (field[static_cast<std::size_t>(rr)][static_cast<std::size_t>(ii)] < f) {
            local_min = false;
            break;
          }
        }
      }
      if (f < 0.05 || local_min) {
        seeds.push_back(closest_pair(values[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)], node(i, r)));
      }
    }
  }
  rep.seeds = static_cast<int>(seeds.size());

  const double slack = 1e-9 * (1.0 + std::abs(cplx(box.re_max, box.im_max)));
  for (const auto& s : seeds) {
    Polish2 p;
    try {
      p = polish_double_root(s.alpha, s.lambda, parity, opt, 0.5 * std::hypot(dx, dy));
    } catch (const Error& e) {
      ++rep.discarded;
      rep.log.push_back(std::string("seed discarded: ") + e.what());
      continue;
    }
    if (!p.converged) {
      ++rep.discarded;
      rep.log.push_back("seed discarded: Newton did not converge");
      continue;
    }
    if (p.alpha.real() < box.re_min - slack || p.alpha.real() > box.re_max + slack ||
        p.alpha.imag() < box.im_min - slack || p.alpha.imag() > box.im_max + slack) {
      ++rep.discarded;
      rep.log.push_back("seed converged outside the box");
      continue;
    }
    const bool dup = std::any_of(rep.points.begin(), rep.points.end(), [&](const BranchPoint& q) {
      return std::abs(q.alpha - p.alpha) <= 1e-6 * (1.0 + std::abs(p.alpha));
    });
    if (dup) continue;
    BranchPoint bp;
    bp.alpha = p.alpha;
    bp.lambda = p.lambda;
    bp.parity = parity;
    bp.indices = {std::min(s.a, s.b), std::max(s.a, s.b)};
    bp.residual_f = p.res_f;
    bp.residual_df = p.res_df;
    try {
      bp.order = ramification_order(bp, n_max, opt);
    } catch (const Error& e) {
      ++rep.discarded;
      rep.log.push_back(std::string("order not confirmed: ") + e.what());
      continue;
    }
    rep.points.push_back(bp);
  }
  std::sort(rep.points.begin(), rep.points.end(), [](const BranchPoint& a, const BranchPoint& b) {
    return std::abs(a.lambda) != std::abs(b.lambda) ? std::abs(a.lambda) < std::abs(b.lambda)
                                                    : a.alpha.imag() < b.alpha.imag();
  });
  return rep;
}

}  // namespace quartic::continuation
