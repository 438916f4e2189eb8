#include "quartic/trees.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <stdexcept>

namespace quartic::trees {
namespace {

using F = Family;

TreeState st(F f, int k, int l = 0) { return {f, k, l}; }

[[noreturn]] void no_row(Move m, const TreeState& s) {
  throw OutOfTableError(std::string(to_string(m)) + " has no row for " + to_string(s));
}

TreeState s0(const TreeState& s) {
  const int k = s.k, l = s.l;
  switch (s.family) {
    case F::A: return st(F::Q, k, 0);
    case F::D: return st(F::Q, k, l);
    case F::E: return st(F::Eprime, k, l);
    case F::Dbar: return l == 1 ? st(F::O, k) : st(F::Qbar, k, l - 2);
    case F::Ebar: return st(F::Ebarprime, k, l);
    case F::Q: return l == 0 ? st(F::A, k + 1) : st(F::D, k + 1, l);
    case F::Eprime:
      if (k >= 2) return st(F::E, k - 1, l);
      return l == 0 ? st(F::A, 0) : st(F::D, 0, l);
    case F::Qbar: return st(F::Dbar, k, l + 2);
    case F::O: return st(F::Dbar, k, 1);
    case F::Ebarprime: return st(F::Ebar, k, l);
  }
  no_row(Move::s0, s);
}

TreeState s0_inv(const TreeState& s) {
  const int k = s.k, l = s.l;
  switch (s.family) {
    case F::Q: return l == 0 ? st(F::A, k) : st(F::D, k, l);
    case F::Eprime: return st(F::E, k, l);
    case F::Qbar: return st(F::Dbar, k, l + 2);
    case F::O: return st(F::Dbar, k, 1);
    case F::Ebarprime: return st(F::Ebar, k, l);
    case F::A: return k >= 1 ? st(F::Q, k - 1, 0) : st(F::Eprime, 1, 0);
    case F::D: return k >= 1 ? st(F::Q, k - 1, l) : st(F::Eprime, 1, l);
    case F::E: return st(F::Eprime, k + 1, l);
    case F::Dbar: return l == 1 ? st(F::O, k) : st(F::Qbar, k, l - 2);
    case F::Ebar: return st(F::Ebarprime, k, l);
  }
  no_row(Move::s0_inv, s);
}

TreeState sinf(const TreeState& s) {
  const int k = s.k, l = s.l;
  switch (s.family) {
    case F::A: return k == 0 ? st(F::Ebarprime, 1, 0) : st(F::Qbar, k - 1, 0);
    case F::D: return l == 1 ? st(F::O, k) : st(F::Q, k, l - 2);
    case F::E: return st(F::Eprime, k, l);
    case F::Dbar: return k == 0 ? st(F::Ebarprime, 1, l) : st(F::Qbar, k - 1, l);
    case F::Ebar: return st(F::Ebarprime, k + 1, l);
    case F::Qbar: return l == 0 ? st(F::A, k) : st(F::Dbar, k, l);
    case F::Q: return st(F::D, k, l + 2);
    case F::Eprime: return st(F::E, k, l);
    case F::Ebarprime: return st(F::Ebar, k, l);
    case F::O: return st(F::D, k, 1);
  }
  no_row(Move::sinf, s);
}

TreeState sinf_inv(const TreeState& s) {
  const int k = s.k, l = s.l;
  switch (s.family) {
    case F::Qbar: return l == 0 ? st(F::A, k + 1) : st(F::Dbar, k + 1, l);
    case F::Ebarprime:
      if (k >= 2) return st(F::Ebar, k - 1, l);
      return l == 0 ? st(F::A, 0) : st(F::Dbar, 0, l);
    case F::Q: return st(F::D, k, l + 2);
    case F::O: return st(F::D, k, 1);
    case F::Eprime: return st(F::E, k, l);
    case F::A: return st(F::Qbar, k, 0);
    case F::Dbar: return st(F::Qbar, k, l);
    case F::D: return l == 1 ? st(F::O, k) : st(F::Q, k, l - 2);
    case F::E: return st(F::Eprime, k, l);
    case F::Ebar: return st(F::Ebarprime, k, l);
  }
  no_row(Move::sinf_inv, s);
}

struct FamilyInfo {
  F family;
  std::string_view name;
  bool two;    // carries l
  int k_min;
  int l_min;
};

constexpr FamilyInfo kFamilies[] = {
    {F::A, "A", false, 0, 0},         {F::D, "D", true, 0, 1},
    {F::Dbar, "Dbar", true, 0, 1},    {F::E, "E", true, 1, 0},
    {F::Ebar, "Ebar", true, 1, 0},    {F::Eprime, "Ep", true, 1, 0},
    {F::Ebarprime, "Ebarp", true, 1, 0}, {F::O, "O", false, 0, 0},
    {F::Q, "Q", true, 0, 0},          {F::Qbar, "Qbar", true, 0, 0},
};

const FamilyInfo& info(F f) {
  for (const auto& i : kFamilies) {
    if (i.family == f) return i;
  }
  throw std::invalid_argument("unknown family");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("bad integer '" + std::string(s) + "' in " + std::string(what));
  return v;
}

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ',') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

// Image of one generator letter (positive) under each move.
struct Image {
  Letter data[3];
  int size;
};

Image image(Move m, Letter g) {
  switch (m) {
    case Move::s0:
      if (g == g_i) return {{static_cast<Letter>(-g_1), g_i, g_1}, 3};
      if (g == g_mi) return {{static_cast<Letter>(-g_m1), g_mi, g_m1}, 3};
      break;
    case Move::s0_inv:
      if (g == g_i) return {{g_1, g_i, static_cast<Letter>(-g_1)}, 3};
      if (g == g_mi) return {{g_m1, g_mi, static_cast<Letter>(-g_m1)}, 3};
      break;
    case Move::sinf:
      if (g == g_1) return {{static_cast<Letter>(-g_mi), g_1, g_mi}, 3};
      if (g == g_m1) return {{static_cast<Letter>(-g_i), g_m1, g_i}, 3};
      break;
    case Move::sinf_inv:
      if (g == g_1) return {{g_mi, g_1, static_cast<Letter>(-g_mi)}, 3};
      if (g == g_m1) return {{g_i, g_m1, static_cast<Letter>(-g_i)}, 3};
      break;
  }
  return {{g, 0, 0}, 1};
}

// Pushes a letter onto a freely reduced word, cancelling against its end.
inline void push(Letter* out, std::size_t& n, Letter x) {
  if (n > 0 && out[n - 1] == -x) {
    --n;
  } else {
    out[n++] = x;
  }
}

constexpr std::string_view kLetterNames[] = {"gi", "g1", "g-i", "g-1"};

}  // namespace

Fiber fiber_of(Family f) {
  switch (f) {
    case F::A:
    case F::D:
    case F::Dbar:
    case F::E:
    case F::Ebar: return Fiber::over_i;
    default: return Fiber::over_minus_i;
  }
}

bool has_l(Family f) { return info(f).two; }

int size_of(const TreeState& s) { return std::max(s.k, s.l); }

std::optional<std::string> validate(const TreeState& s) {
  const auto& fi = info(s.family);
  if (s.k < fi.k_min) return std::string(fi.name) + " requires k >= " + std::to_string(fi.k_min);
  if (fi.two && s.l < fi.l_min) return std::string(fi.name) + " requires l >= " + std::to_string(fi.l_min);
  if (!fi.two && s.l != 0) return std::string(fi.name) + " carries no second index";
  return std::nullopt;
}

TreeState act(Move m, const TreeState& s) {
  if (auto v = validate(s)) throw std::invalid_argument("invalid tree state: " + *v);
  TreeState out;
  switch (m) {
    case Move::s0: out = s0(s); break;
    case Move::s0_inv: out = s0_inv(s); break;
    case Move::sinf: out = sinf(s); break;
    case Move::sinf_inv: out = sinf_inv(s); break;
  }
  if (validate(out)) no_row(m, s);
  return out;
}

TreeState act_word(const std::vector<Move>& word, TreeState s) {
  for (Move m : word) s = act(m, s);
  return s;
}

TreeState conjugate(const TreeState& s) {
  TreeState out = s;
  switch (s.family) {
    case F::D: out.family = F::Dbar; break;
    case F::Dbar: out.family = F::D; break;
    case F::E: out.family = F::Ebar; break;
    case F::Ebar: out.family = F::E; break;
    case F::Eprime: out.family = F::Ebarprime; break;
    case F::Ebarprime: out.family = F::Eprime; break;
    case F::Q: out.family = F::Qbar; break;
    case F::Qbar: out.family = F::Q; break;
    default: break;
  }
  return out;
}

std::vector<Move> loop_word(Loop q, bool inverse) {
  std::vector<Move> w;
  switch (q) {
    case Loop::q0: w = {Move::s0, Move::s0}; break;
    case Loop::qinf: w = {Move::sinf, Move::sinf}; break;
    case Loop::qm1: w = {Move::sinf_inv, Move::s0_inv}; break;
    case Loop::q1: w = {Move::s0_inv, Move::sinf_inv}; break;
  }
  if (inverse) {
    std::reverse(w.begin(), w.end());
    for (auto& m : w) {
      switch (m) {
        case Move::s0: m = Move::s0_inv; break;
        case Move::s0_inv: m = Move::s0; break;
        case Move::sinf: m = Move::sinf_inv; break;
        case Move::sinf_inv: m = Move::sinf; break;
      }
    }
  }
  return w;
}

std::vector<Move> relation_word() {
  std::vector<Move> w;
  for (Loop q : {Loop::q0, Loop::q1, Loop::qinf, Loop::qm1}) {
    const auto p = loop_word(q);
    w.insert(w.end(), p.begin(), p.end());
  }
  return w;
}

std::vector<TreeState> bounded_states(Fiber f, int bound) {
  std::vector<TreeState> out;
  for (const auto& fi : kFamilies) {
    if (fiber_of(fi.family) != f) continue;
    for (int k = fi.k_min; k <= bound; ++k) {
      if (!fi.two) {
        out.push_back(st(fi.family, k));
        continue;
      }
      for (int l = fi.l_min; l <= bound; ++l) out.push_back(st(fi.family, k, l));
    }
  }
  return out;
}

std::set<TreeState> orbit(const TreeState& start, int bound) {
  if (auto v = validate(start)) throw std::invalid_argument("invalid tree state: " + *v);
  if (fiber_of(start.family) != Fiber::over_i) throw std::invalid_argument("orbit start must lie over i");
  if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
  const int explore = bound + 4;
  std::vector<std::vector<Move>> gens;
  for (Loop q : {Loop::q0, Loop::q1, Loop::qinf, Loop::qm1}) {
    gens.push_back(loop_word(q, false));
    gens.push_back(loop_word(q, true));
  }
  std::set<TreeState> seen{start};
  std::deque<TreeState> queue{start};
  while (!queue.empty()) {
    const TreeState s = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      const TreeState t = act_word(g, s);
      if (size_of(t) > explore || seen.count(t)) continue;
      seen.insert(t);
      queue.push_back(t);
    }
  }
  std::set<TreeState> out;
  for (const auto& s : seen) {
    if (size_of(s) <= bound) out.insert(s);
  }
  return out;
}

OriginClass origin_class(const TreeState& s) {
  if (auto v = validate(s)) throw std::invalid_argument("invalid tree state: " + *v);
  switch (s.family) {
    case F::A: return OriginClass::pole_at_origin;
    case F::O: return OriginClass::zero_at_origin;
    case F::D:
    case F::Dbar:
    case F::E:
    case F::Ebar: return s.l % 2 == 0 ? OriginClass::pole_at_origin : OriginClass::zero_at_origin;
    default: throw std::domain_error("origin class is defined only over i, not for " + to_string(s));
  }
}

TreeState level_to_tree(int n) {
  if (n < 0) throw std::invalid_argument("level must be nonnegative");
  return n % 2 == 0 ? st(F::A, n / 2) : st(F::O, n / 2);
}

std::string to_string(const TreeState& s) {
  const auto& fi = info(s.family);
  std::string out(fi.name);
  out += '[' + std::to_string(s.k);
  if (fi.two) out += ',' + std::to_string(s.l);
  return out + ']';
}

std::string_view to_string(Move m) {
  switch (m) {
    case Move::s0: return "s0";
    case Move::s0_inv: return "s0i";
    case Move::sinf: return "si";
    case Move::sinf_inv: return "sii";
  }
  return "?";
}

std::string_view to_string(OriginClass c) {
  return c == OriginClass::pole_at_origin ? "pole_at_origin" : "zero_at_origin";
}

std::string_view to_string(Fiber f) { return f == Fiber::over_i ? "over_i" : "over_minus_i"; }

TreeState parse_state(std::string_view text) {
  text = trim(text);
  const auto open = text.find('[');
  if (open == std::string_view::npos || text.back() != ']') {
    throw ParseError("tree state must look like Name[k] or Name[k,l]: '" + std::string(text) + "'");
  }
  const auto name = trim(text.substr(0, open));
  const auto args = text.substr(open + 1, text.size() - open - 2);
  for (const auto& fi : kFamilies) {
    if (fi.name != name) continue;
    TreeState s{fi.family, 0, 0};
    const auto comma = args.find(',');
    if (fi.two) {
      if (comma == std::string_view::npos) throw ParseError(std::string(name) + " needs two indices");
      s.k = parse_int(args.substr(0, comma), text);
      s.l = parse_int(args.substr(comma + 1), text);
    } else {
      if (comma != std::string_view::npos) throw ParseError(std::string(name) + " takes one index");
      s.k = parse_int(args, text);
    }
    if (auto v = validate(s)) throw ParseError("invalid tree state: " + *v);
    return s;
  }
  throw ParseError("unknown family '" + std::string(name) + "'");
}

std::vector<Move> parse_word(std::string_view text) {
  std::vector<Move> w;
  for (auto tok : split_ws(text)) {
    if (tok == "s0") {
      w.push_back(Move::s0);
    } else if (tok == "s0i") {
      w.push_back(Move::s0_inv);
    } else if (tok == "si") {
      w.push_back(Move::sinf);
    } else if (tok == "sii") {
      w.push_back(Move::sinf_inv);
    } else {
      throw ParseError("unknown move '" + std::string(tok) + "' (expected s0, s0i, si, sii)");
    }
  }
  return w;
}

// ---- free group ------------------------------------------------------------

FreeWord reduce(FreeWord w) {
  std::size_t n = 0;
  for (Letter x : w.letters) push(w.letters.data(), n, x);
  w.letters.resize(n);
  return w;
}

bool is_reduced(const FreeWord& w) {
  for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
    if (w.letters[i] == -w.letters[i + 1]) return false;
  }
  return true;
}

std::size_t braid_rewrite(Move m, const Letter* in, std::size_t n, Letter* out) {
  std::size_t len = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Letter x = in[i];
    const Letter g = x > 0 ? x : static_cast<Letter>(-x);
    if (g < 1 || g > 4) throw std::invalid_argument("letter out of range");
    const Image im = image(m, g);
    if (x > 0) {
      for (int j = 0; j < im.size; ++j) push(out, len, im.data[j]);
    } else {
      for (int j = im.size - 1; j >= 0; --j) push(out, len, static_cast<Letter>(-im.data[j]));
    }
  }
  return len;
}

FreeWord braid_rewrite(Move m, const FreeWord& w) {
  FreeWord out;
  out.letters.resize(3 * w.letters.size());
  out.letters.resize(braid_rewrite(m, w.letters.data(), w.letters.size(), out.letters.data()));
  return out;
}

std::string to_string(const FreeWord& w) {
  std::string out;
  for (Letter x : w.letters) {
    if (!out.empty()) out += ' ';
    out += kLetterNames[std::abs(x) - 1];
    if (x < 0) out += "^-1";
  }
  return out.empty() ? "1" : out;
}

FreeWord parse_free_word(std::string_view text) {
  FreeWord w;
  text = trim(text);
  if (text == "1" || text.empty()) return w;
  for (auto tok : split_ws(text)) {
    bool inv = false;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      inv = true;
      tok.remove_suffix(3);
    }
    Letter g = 0;
    for (int i = 0; i < 4; ++i) {
      if (tok == kLetterNames[i]) g = static_cast<Letter>(i + 1);
    }
    if (g == 0) throw ParseError("unknown loop '" + std::string(tok) + "' (expected gi, g1, g-i, g-1)");
    w.letters.push_back(inv ? static_cast<Letter>(-g) : g);
  }
  return w;
}

}  // namespace quartic::trees
