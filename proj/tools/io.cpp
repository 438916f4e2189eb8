#include "io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

namespace cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Parses a leading real number; advances `s`.
bool take_number(std::string_view& s, double& v) {
  const char* b = s.data();
  if (!s.empty() && s.front() == '+') ++b;
  const auto [p, ec] = std::from_chars(b, s.data() + s.size(), v);
  if (ec != std::errc()) return false;
  s.remove_prefix(static_cast<std::size_t>(p - s.data()));
  return true;
}

double finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
  return v;
}

}  // namespace

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const quartic::spectral::AsymptoticValue& w) {
  if (w.infinite) return json{{"inf", true}};
  return to_json(w.value);
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return finite(j.get<double>(), "number");
  if (j.is_object() && j.contains("re") && j.contains("im") && j["re"].is_number() && j["im"].is_number()) {
    return {finite(j["re"].get<double>(), "re"), finite(j["im"].get<double>(), "im")};
  }
  throw InputError("expected a complex number {\"re\": x, \"im\": y}, got " + j.dump());
}

cplx parse_complex(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw InputError("empty complex number");
  if (s.front() == '{') {
    try {
      return complex_from_json(json::parse(s));
    } catch (const json::exception& e) {
      throw InputError(std::string("bad complex number: ") + e.what());
    }
  }
  const std::string orig(s);
  if (const auto comma = s.find(','); comma != std::string_view::npos) {
    std::string_view a = trim(s.substr(0, comma)), b = trim(s.substr(comma + 1));
    double re = 0, im = 0;
    if (!take_number(a, re) || !a.empty() || !take_number(b, im) || !b.empty()) {
      throw InputError("bad complex number '" + orig + "'");
    }
    return {finite(re, "re"), finite(im, "im")};
  }
  // a, bi, a+bi, a-bi, i, -i, a+i.
  auto imag_unit = [&](std::string_view& t, double& v) {
    if (t == "i" || t == "+i") {
      v = 1.0;
      return true;
    }
    if (t == "-i") {
      v = -1.0;
      return true;
    }
    if (!take_number(t, v) || t != "i") return false;
    return true;
  };
  double re = 0.0, im = 0.0;
  std::string_view t = s;
  if (imag_unit(t, im)) return {0.0, finite(im, "im")};
  t = s;
  if (!take_number(t, re)) throw InputError("bad complex number '" + orig + "'");
  if (t.empty()) return finite(re, "re");
  if (t.front() != '+' && t.front() != '-') throw InputError("bad complex number '" + orig + "'");
  if (!imag_unit(t, im)) throw InputError("bad complex number '" + orig + "'");
  return {finite(re, "re"), finite(im, "im")};
}

quartic::Parity parse_parity(std::string_view text) {
  if (text == "even") return quartic::Parity::even;
  if (text == "odd") return quartic::Parity::odd;
  throw InputError("parity must be 'even' or 'odd'");
}

quartic::continuation::PathSpec path_from_json(const json& j) {
  using quartic::continuation::PathSpec;
  if (!j.is_object() || !j.contains("kind")) throw InputError("path piece needs a \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "polyline") {
      std::vector<cplx> pts;
      for (const auto& p : j.at("points")) pts.push_back(complex_from_json(p));
      return PathSpec::polyline(std::move(pts));
    }
    if (kind == "circle") {
      return PathSpec::circle(complex_from_json(j.at("center")), j.at("radius").get<double>(),
                              j.value("turns", 1), j.value("start_angle", 0.0));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bad path piece: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad path piece: ") + e.what());
  }
  throw InputError("unknown path kind '" + kind + "'");
}

json to_json(const quartic::continuation::PathSpec& p) {
  using quartic::continuation::PathSpec;
  if (p.kind == PathSpec::Kind::circle) {
    return json{{"kind", "circle"},
                {"center", to_json(p.center)},
                {"radius", p.radius},
                {"turns", p.turns},
                {"start_angle", p.start_angle}};
  }
  json pts = json::array();
  for (cplx z : p.points) pts.push_back(to_json(z));
  return json{{"kind", "polyline"}, {"points", pts}};
}

quartic::continuation::Route route_from_json(const json& j) {
  quartic::continuation::Route r;
  if (j.is_array()) {
    for (const auto& p : j) r.push_back(path_from_json(p));
  } else {
    r.push_back(path_from_json(j));
  }
  if (r.empty()) throw InputError("route has no pieces");
  return r;
}

json load_json_argument(const std::string& text) {
  std::string body = text;
  std::error_code ec;
  if (!text.empty() && text.front() != '{' && text.front() != '[' && std::filesystem::is_regular_file(text, ec)) {
    std::ifstream in(text);
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad JSON argument: ") + e.what());
  }
}

json to_json(const quartic::continuation::ContinuationTrace& trace) {
  json samples = json::array();
  for (const auto& s : trace.samples) {
    samples.push_back(json{{"t", s.t}, {"alpha", to_json(s.alpha)}, {"lambda", to_json(s.lambda)}, {"residual", s.residual}});
  }
  const bool done = trace.status == quartic::continuation::TraceStatus::completed;
  return json{{"parity", std::string(quartic::to_string(trace.parity))},
              {"status", done ? "completed" : "aborted_near_branch"},
              {"message", trace.message},
              {"samples", samples}};
}

void write_trace_csv(const quartic::continuation::ContinuationTrace& trace, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out.precision(17);
  out << "t,re_alpha,im_alpha,re_lambda,im_lambda,residual\n";
  for (const auto& s : trace.samples) {
    out << s.t << ',' << s.alpha.real() << ',' << s.alpha.imag() << ',' << s.lambda.real() << ',' << s.lambda.imag()
        << ',' << s.residual << '\n';
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path output_directory(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirVariable); env && *env) return env;
  return std::filesystem::current_path();
}

}  // namespace cli
