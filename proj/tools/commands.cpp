#include "commands.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "acceptance.hpp"
#include "quartic/scaling.hpp"
#include "quartic/trees.hpp"

namespace cli {
namespace {

namespace sp = quartic::spectral;
namespace cn = quartic::continuation;
namespace tr = quartic::trees;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string num(cplx z) {
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0.0 ? " - " : " + ") + num(std::abs(z.imag())) + "i";
}

json permutation_json(const cn::MonodromyPermutation& p) {
  json mapping = json::array();
  json cycles = json::array();
  std::set<int> done;
  for (const auto& [k, v] : p.mapping) {
    mapping.push_back(json{{"from", k}, {"to", v}});
  }
  if (p.complete) {
    for (const auto& [k, v] : p.mapping) {
      if (done.count(k)) continue;
      const auto c = p.cycle_of(k);
      done.insert(c.begin(), c.end());
      if (c.size() > 1) cycles.push_back(c);
    }
  }
  return json{{"parity", std::string(quartic::to_string(p.parity))},
              {"labels", p.labels},
              {"complete", p.complete},
              {"identity", p.complete && p.is_identity()},
              {"mapping", mapping},
              {"cycles", cycles},
              {"failure", p.failure}};
}

json state_list(const std::set<tr::TreeState>& s) {
  json out = json::array();
  for (const auto& x : s) out.push_back(tr::to_string(x));
  return out;
}

}  // namespace

CommandResult spectrum(cplx alpha, int n_max, bool asymptotic, const SolverOptions& opt) {
  if (n_max < 0) throw InputError("--n-max must be nonnegative");
  const auto pot = quartic::PolynomialPotential::quartic(alpha);
  const auto ev = sp::eigenvalues_at(pot, n_max, opt);
  CommandResult r;
  json list = json::array();
  std::ostringstream s;
  s << "eigenvalues of x^4 + (" << num(alpha) << ") x^2\n";
  for (const auto& e : ev) {
    list.push_back(json{{"index", e.index},
                        {"parity", std::string(quartic::to_string(e.parity))},
                        {"lambda", to_json(e.value)},
                        {"residual", e.residual}});
    s << "  " << e.index << "  " << quartic::to_string(e.parity) << "  " << num(e.value) << "\n";
  }
  r.payload = json{{"alpha", to_json(alpha)}, {"n_max", n_max}, {"eigenvalues", list}};
  if (asymptotic) {
    json av = json::array();
    for (const auto& e : ev) {
      const auto set = sp::asymptotic_values(pot, e.value, opt);
      json w = json::array();
      for (const auto& x : set.raw) w.push_back(to_json(x));
      json c = json::array();
      for (int nu = 1; nu <= 4; ++nu) c.push_back(to_json(set.c(nu)));
      av.push_back(json{{"index", e.index}, {"values", w}, {"c", c}});
    }
    r.payload["asymptotic_values"] = av;
  }
  r.summary = s.str();
  return r;
}

CommandResult continue_path(const cn::Route& route, cplx lambda, std::optional<quartic::Parity> parity,
                            const std::string& csv, const SolverOptions& opt) {
  const auto pot = quartic::PolynomialPotential::quartic(route.front().start());
  const quartic::Parity p = parity ? *parity : sp::classify_eigenvalue(pot, lambda, opt);
  CommandResult r;
  json route_json = json::array();
  for (const auto& piece : route) route_json.push_back(to_json(piece));
  auto finish = [&](const cn::ContinuationTrace& trace) {
    r.payload = json{{"route", route_json}, {"trace", to_json(trace)}};
    if (!csv.empty()) {
      write_trace_csv(trace, csv);
      r.payload["csv"] = csv;
    }
    std::ostringstream s;
    const auto& last = trace.samples.back();
    s << quartic::to_string(p) << " eigenvalue " << num(lambda) << " continued over " << trace.samples.size()
      << " samples to " << num(last.lambda) << " at alpha = " << num(last.alpha) << "\n";
    if (!trace.message.empty()) s << "  " << trace.message << "\n";
    r.summary = s.str();
  };
  try {
    const auto trace = cn::continue_eigenvalue(route, lambda, p, opt);
    finish(trace);
    r.success = trace.status == cn::TraceStatus::completed;
  } catch (const cn::ContinuationError& e) {
    finish(e.partial());
    r.payload["trace"]["status"] = "step_underflow";
    r.success = false;
  }
  return r;
}

CommandResult monodromy(const cn::Route& loop, std::optional<cplx> base, int n_max, const std::string& parity,
                        const SolverOptions& opt) {
  if (n_max < 0) throw InputError("--n-max must be nonnegative");
  std::vector<quartic::Parity> which;
  if (parity == "both") {
    which = {quartic::Parity::even, quartic::Parity::odd};
  } else {
    which = {parse_parity(parity)};
  }
  const cplx b = base ? *base : loop.front().start();
  CommandResult r;
  json perms = json::array();
  std::ostringstream s;
  for (auto p : which) {
    const auto perm = cn::loop_permutation(loop, b, n_max, p, opt);
    perms.push_back(permutation_json(perm));
    s << quartic::to_string(p) << ": ";
    if (!perm.complete) {
      s << "incomplete (" << perm.failure << ")\n";
      r.success = false;
      continue;
    }
    for (const auto& [k, v] : perm.mapping) s << k << "->" << v << " ";
    s << (perm.is_identity() ? "(identity)" : "") << "\n";
  }
  r.payload = json{{"base", to_json(b)}, {"n_max", n_max}, {"permutations", perms}};
  r.summary = s.str();
  return r;
}

CommandResult branch_scan(const cn::Box& box, int grid, quartic::Parity parity, int n_max, const SolverOptions& opt) {
  if (n_max < 1) throw InputError("--n-max must be at least 1");
  const auto rep = cn::find_branch_points(box, parity, n_max, grid, opt);
  CommandResult r;
  json pts = json::array();
  std::ostringstream s;
  s << rep.points.size() << " branch point(s) from " << rep.seeds << " seed(s)\n";
  for (const auto& b : rep.points) {
    pts.push_back(json{{"alpha", to_json(b.alpha)},
                       {"lambda", to_json(b.lambda)},
                       {"parity", std::string(quartic::to_string(b.parity))},
                       {"indices", {b.indices.first, b.indices.second}},
                       {"order", b.order},
                       {"residual_f", b.residual_f},
                       {"residual_df", b.residual_df}});
    s << "  alpha = " << num(b.alpha) << "  lambda = " << num(b.lambda) << "  levels " << b.indices.first << ","
      << b.indices.second << "  order " << b.order << "\n";
  }
  r.payload = json{{"box", {{"re_min", box.re_min}, {"re_max", box.re_max}, {"im_min", box.im_min}, {"im_max", box.im_max}}},
                   {"grid", grid},
                   {"parity", std::string(quartic::to_string(parity))},
                   {"n_max", n_max},
                   {"points", pts},
                   {"seeds", rep.seeds},
                   {"discarded", rep.discarded},
                   {"log", rep.log}};
  r.summary = s.str();
  return r;
}

CommandResult scale(std::optional<cplx> beta, std::optional<cplx> alpha, std::optional<int> n_max, double tol) {
  if (beta.has_value() == alpha.has_value()) throw InputError("give exactly one of --beta and --alpha");
  CommandResult r;
  std::ostringstream s;
  try {
    if (beta) {
      const auto f = quartic::scaling::beta_to_alpha(*beta);
      r.payload = json{{"beta", to_json(*beta)}, {"alpha", to_json(f.alpha)}, {"lambda_factor", to_json(f.lambda_factor)}};
      s << "beta = " << num(*beta) << "  ->  alpha = " << num(f.alpha) << ", lambda factor = " << num(f.lambda_factor)
        << "\n";
      if (n_max) {
        if (*n_max < 0) throw InputError("--n-max must be nonnegative");
        if (beta->imag() != 0.0) throw InputError("--n-max needs a real positive beta");
        const auto direct = quartic::scaling::beta_form_spectrum(beta->real(), *n_max, tol);
        SolverOptions opt;
        opt.tol = tol;
        const auto af = sp::real_spectrum(quartic::PolynomialPotential::quartic(f.alpha.real()), *n_max, opt);
        json rows = json::array();
        for (int n = 0; n <= *n_max; ++n) {
          const double d = direct[static_cast<std::size_t>(n)];
          const double a = f.lambda_factor.real() * af[static_cast<std::size_t>(n)].value.real();
          rows.push_back(json{{"index", n}, {"beta_form", d}, {"alpha_form_scaled", a}, {"relative_difference", std::abs(d - a) / std::abs(d)}});
          s << "  " << n << "  " << num(d) << "  " << num(a) << "\n";
        }
        r.payload["eigenvalues"] = rows;
      }
    } else {
      const cplx b = quartic::scaling::alpha_to_beta(*alpha);
      r.payload = json{{"alpha", to_json(*alpha)}, {"beta", to_json(b)}};
      s << "alpha = " << num(*alpha) << "  ->  beta = " << num(b) << "\n";
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  r.summary = s.str();
  return r;
}

CommandResult trees_act(const std::string& word, const std::string& state) {
  tr::TreeState x;
  std::vector<tr::Move> w;
  try {
    x = tr::parse_state(state);
    w = tr::parse_word(word);
  } catch (const tr::ParseError& e) {
    throw InputError(e.what());
  }
  json path = json::array({tr::to_string(x)});
  json moves = json::array();
  for (auto m : w) {
    x = tr::act(m, x);
    path.push_back(tr::to_string(x));
    moves.push_back(std::string(tr::to_string(m)));
  }
  CommandResult r;
  r.payload = json{{"state", path.front()},
                   {"word", moves},
                   {"result", tr::to_string(x)},
                   {"fiber", std::string(tr::to_string(tr::fiber_of(x.family)))},
                   {"trajectory", path}};
  r.summary = tr::to_string(x) + "\n";
  return r;
}

CommandResult trees_orbit(const std::string& start, int bound) {
  if (bound < 0) throw InputError("--bound must be nonnegative");
  tr::TreeState x;
  try {
    x = tr::parse_state(start);
  } catch (const tr::ParseError& e) {
    throw InputError(e.what());
  }
  if (tr::fiber_of(x.family) != tr::Fiber::over_i) throw InputError("orbit start must be a state over i");
  const auto o = tr::orbit(x, bound);
  CommandResult r;
  r.payload = json{{"start", tr::to_string(x)}, {"bound", bound}, {"size", o.size()}, {"states", state_list(o)}};
  r.summary = "orbit of " + tr::to_string(x) + " with bound " + std::to_string(bound) + ": " + std::to_string(o.size()) +
              " states\n";
  return r;
}

CommandResult verify(bool quick, const std::vector<int>& criteria, std::uint64_t seed) {
  for (int id : criteria) {
    if (id < 1 || id > acceptance::criterion_count()) throw InputError("no criterion " + std::to_string(id));
  }
  acceptance::Settings set;
  set.tier = quick ? acceptance::Tier::quick : acceptance::Tier::full;
  set.seed = seed;
  CommandResult r;
  json rows = json::array();
  int failed = 0;
  acceptance::run_all(set, criteria, [&](const acceptance::Outcome& o) {
    std::printf("%s\n", acceptance::format_line(o).c_str());
    std::fflush(stdout);
    rows.push_back(json{{"id", o.id}, {"title", o.title}, {"pass", o.pass}, {"detail", o.detail}, {"seconds", o.seconds}});
    if (!o.pass) ++failed;
  });
  r.payload = json{{"tier", quick ? "quick" : "full"}, {"results", rows}, {"passed", static_cast<int>(rows.size()) - failed}, {"failed", failed}};
  r.summary = std::to_string(rows.size() - static_cast<std::size_t>(failed)) + " passed, " + std::to_string(failed) + " failed\n";
  r.success = failed == 0;
  return r;
}

}  // namespace cli
