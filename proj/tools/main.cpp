#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "quartic/trees.hpp"

namespace {

using cli::json;

std::string error_category(const std::exception& e) {
  namespace sp = quartic::spectral;
  if (dynamic_cast<const quartic::continuation::ContinuationError*>(&e)) return "continuation";
  if (dynamic_cast<const sp::ContourError*>(&e)) return "contour";
  if (dynamic_cast<const sp::RayLimitError*>(&e)) return "ray_limit";
  if (dynamic_cast<const sp::SampleError*>(&e)) return "sample";
  if (dynamic_cast<const sp::BoundaryRayError*>(&e)) return "boundary_ray";
  if (dynamic_cast<const quartic::trees::OutOfTableError*>(&e)) return "out_of_table";
  if (dynamic_cast<const quartic::IntegrationError*>(&e)) return "integration";
  if (dynamic_cast<const quartic::ConvergenceError*>(&e)) return "convergence";
  return "computation";
}

struct Global {
  std::string out_dir;
  std::string output;
  std::uint64_t seed = 0;
  quartic::spectral::SolverOptions opt;
  bool quiet = false;
};

json tolerances(const Global& g) {
  return json{{"tol", g.opt.tol}, {"wkb_factor", g.opt.wkb_factor}, {"newton_tol", g.opt.newton_tol}};
}

int emit(const Global& g, const std::string& name, const json& params, const std::string& started,
         const cli::CommandResult* result, const std::string& category, const std::string& message) {
  json doc;
  doc["schema_version"] = cli::kSchemaVersion;
  doc["command"] = json{{"name", name}, {"parameters", params}, {"tolerances", tolerances(g)}, {"seed", g.seed}};
  const bool ok = result && result->success && category.empty();
  doc["status"] = ok ? "ok" : "error";
  if (result) doc["payload"] = result->payload;
  if (!ok) doc["error"] = json{{"category", category.empty() ? "computation" : category}, {"message", message}};
  doc["provenance"] = json{{"generator", "quartic 1.0"},
                           {"solver", tolerances(g)},
                           {"started_at", started},
                           {"finished_at", cli::utc_timestamp()}};
  const auto dir = cli::output_directory(g.out_dir);
  const std::filesystem::path file = g.output.empty() ? dir / (name + ".json") : std::filesystem::path(g.output);
  std::error_code ec;
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path(), ec);
  std::ofstream out(file);
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", file.string().c_str());
    return 1;
  }
  out << doc.dump(2) << "\n";
  if (result && !g.quiet) std::fputs(result->summary.c_str(), stdout);
  if (!ok) std::fprintf(stderr, "error (%s): %s\n", category.empty() ? "computation" : category.c_str(), message.c_str());
  if (!g.quiet) std::printf("wrote %s\n", file.string().c_str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, continuation and monodromy of -y'' + (x^4 + alpha x^2) y = lambda y"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--out-dir", g.out_dir,
                 std::string("Output directory (default: $") + cli::kOutDirVariable + ", else the working directory)");
  app.add_option("--output", g.output, "Output file (default: <out-dir>/<command>.json)");
  app.add_option("--seed", g.seed, "Seed for randomized sample placement");
  app.add_option("--tol", g.opt.tol, "Relative ODE tolerance")->check(CLI::PositiveNumber);
  app.add_option("--wkb-factor", g.opt.wkb_factor, "Start-point factor of the inward integration")
      ->check(CLI::PositiveNumber);
  app.add_option("--newton-tol", g.opt.newton_tol, "Relative Newton tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", g.quiet, "Suppress the summary");
  app.fallthrough();

  std::string alpha = "0", beta, lambda, path, loop, base, box = "-6,0,-6,6", parity = "", word, state, start, csv;
  int n_max = 5, grid = 12, bound = 12;
  bool asymptotic = false, quick = false, full = false;
  std::vector<int> criteria;

  auto* c_spec = app.add_subcommand("spectrum", "Eigenvalues 0..n_max at alpha");
  c_spec->add_option("--alpha", alpha, "Complex alpha, e.g. 1, -1+2i, 1,2 or {\"re\":1,\"im\":2}");
  c_spec->add_option("--n-max", n_max, "Largest index");
  c_spec->add_flag("--asymptotic", asymptotic, "Also report the asymptotic values of each eigenfunction ratio");

  auto* c_cont = app.add_subcommand("continue", "Continue one eigenvalue along a path in the alpha-plane");
  c_cont->add_option("--path", path, "Path JSON (inline or file): a piece or an array of pieces")->required();
  c_cont->add_option("--lambda", lambda, "Eigenvalue at the path start")->required();
  c_cont->add_option("--parity", parity, "even or odd (default: detected)");
  c_cont->add_option("--csv", csv, "Also write the trace as CSV");

  auto* c_mono = app.add_subcommand("monodromy", "Permutation of eigenvalue labels around a closed loop");
  c_mono->add_option("--loop", loop, "Closed loop JSON (inline or file)")->required();
  c_mono->add_option("--base", base, "Base point (default: loop start)");
  c_mono->add_option("--n-max", n_max, "Largest tracked label");
  c_mono->add_option("--parity", parity, "even, odd or both (default both)");

  auto* c_scan = app.add_subcommand("branch-scan", "Locate branch points in a box");
  c_scan->add_option("--box", box, "re_min,re_max,im_min,im_max");
  c_scan->add_option("--grid", grid, "Grid cells per side (>= 8)");
  c_scan->add_option("--parity", parity, "even or odd (default even)");
  c_scan->add_option("--n-max", n_max, "Largest index of the scanned parity");

  auto* c_scale = app.add_subcommand("scale", "Convert between the beta form and the alpha form");
  c_scale->add_option("--beta", beta, "Coefficient of x^4 with unit x^2 coefficient");
  c_scale->add_option("--alpha", alpha, "Coefficient of x^2 with unit x^4 coefficient");
  auto* scale_n = c_scale->add_option("--n-max", n_max, "Compare both forms' eigenvalues up to this index");

  auto* c_act = app.add_subcommand("trees-act", "Apply a word in s0, s0i, si, sii to a tree state");
  c_act->add_option("--word", word, "Moves applied left to right")->required();
  c_act->add_option("--state", state, "State, e.g. A[1] or D[0,2]")->required();

  auto* c_orbit = app.add_subcommand("trees-orbit", "Orbit of a state over i under the loop generators");
  c_orbit->add_option("--start", start, "Start state over i")->required();
  c_orbit->add_option("--bound", bound, "Size bound");

  auto* c_verify = app.add_subcommand("verify", "Run the acceptance suite");
  c_verify->add_flag("--quick", quick, "Quick tier (under 2 minutes)");
  c_verify->add_flag("--full", full, "Full tier (under 30 minutes, the default)");
  c_verify->add_option("--criteria", criteria, "Subset of criteria 1..9")->delimiter(',');
  c_verify->get_option("--quick")->excludes("--full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string started = cli::utc_timestamp();
  std::string name;
  json params = json::object();
  std::optional<cli::CommandResult> result;
  try {
    if (c_spec->parsed()) {
      name = "spectrum";
      const cli::cplx a = cli::parse_complex(alpha);
      params = json{{"alpha", cli::to_json(a)}, {"n_max", n_max}, {"asymptotic", asymptotic}};
      result = cli::spectrum(a, n_max, asymptotic, g.opt);
    } else if (c_cont->parsed()) {
      name = "continue";
      const auto route = cli::route_from_json(cli::load_json_argument(path));
      const cli::cplx l = cli::parse_complex(lambda);
      std::optional<quartic::Parity> p;
      if (!parity.empty()) p = cli::parse_parity(parity);
      params = json{{"lambda", cli::to_json(l)}, {"parity", parity.empty() ? "auto" : parity}, {"pieces", route.size()}};
      result = cli::continue_path(route, l, p, csv, g.opt);
    } else if (c_mono->parsed()) {
      name = "monodromy";
      const auto route = cli::route_from_json(cli::load_json_argument(loop));
      std::optional<cli::cplx> b;
      if (!base.empty()) b = cli::parse_complex(base);
      const std::string which = parity.empty() ? "both" : parity;
      params = json{{"n_max", n_max}, {"parity", which}, {"pieces", route.size()}};
      result = cli::monodromy(route, b, n_max, which, g.opt);
    } else if (c_scan->parsed()) {
      name = "branch-scan";
      std::vector<double> v;
      std::stringstream ss(box);
      for (std::string tok; std::getline(ss, tok, ',');) {
        try {
          v.push_back(std::stod(tok));
        } catch (const std::exception&) {
          throw cli::InputError("bad --box value '" + tok + "'");
        }
      }
      if (v.size() != 4) throw cli::InputError("--box needs re_min,re_max,im_min,im_max");
      const quartic::Parity p = parity.empty() ? quartic::Parity::even : cli::parse_parity(parity);
      params = json{{"box", v}, {"grid", grid}, {"parity", std::string(quartic::to_string(p))}, {"n_max", n_max}};
      try {
        result = cli::branch_scan({v[0], v[1], v[2], v[3]}, grid, p, n_max, g.opt);
      } catch (const std::invalid_argument& e) {
        throw cli::InputError(e.what());
      }
    } else if (c_scale->parsed()) {
      name = "scale";
      std::optional<cli::cplx> b, a;
      if (!beta.empty()) b = cli::parse_complex(beta);
      if (c_scale->get_option("--alpha")->count() > 0) a = cli::parse_complex(alpha);
      std::optional<int> n;
      if (scale_n->count() > 0) n = n_max;
      params = json::object();
      if (b) params["beta"] = cli::to_json(*b);
      if (a) params["alpha"] = cli::to_json(*a);
      if (n) params["n_max"] = *n;
      result = cli::scale(b, a, n, g.opt.tol);
    } else if (c_act->parsed()) {
      name = "trees-act";
      params = json{{"word", word}, {"state", state}};
      result = cli::trees_act(word, state);
    } else if (c_orbit->parsed()) {
      name = "trees-orbit";
      params = json{{"start", start}, {"bound", bound}};
      result = cli::trees_orbit(start, bound);
    } else if (c_verify->parsed()) {
      name = "verify";
      params = json{{"tier", quick ? "quick" : "full"}, {"criteria", criteria}};
      result = cli::verify(quick, criteria, g.seed);
    }
  } catch (const cli::InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const quartic::continuation::ContinuationError& e) {
    return emit(g, name, params, started, nullptr, error_category(e), e.what());
  } catch (const std::exception& e) {
    return emit(g, name, params, started, nullptr, error_category(e), e.what());
  }
  return emit(g, name, params, started, &*result, "", result->success ? "" : "computation did not complete");
}
