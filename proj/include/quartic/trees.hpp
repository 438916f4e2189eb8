#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "quartic/types.hpp"

namespace quartic::trees {

enum class Family { A, D, Dbar, E, Ebar, Eprime, Ebarprime, O, Q, Qbar };

enum class Fiber { over_i, over_minus_i };

// (family, k, l); l is unused (kept 0) for A and O.
struct TreeState {
  Family family = Family::A;
  int k = 0;
  int l = 0;

  auto operator<=>(const TreeState&) const = default;
};

enum class Move { s0, s0_inv, sinf, sinf_inv };

enum class OriginClass { pole_at_origin, zero_at_origin };

class OutOfTableError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

Fiber fiber_of(Family f);
bool has_l(Family f);
// max(k, l), the size used for bounds.
int size_of(const TreeState& s);

// Empty when the parameters are admissible, otherwise a description.
std::optional<std::string> validate(const TreeState& s);

// One table move; inverses by table reversal. Throws std::invalid_argument
// on an invalid state and OutOfTableError when no row applies.
TreeState act(Move m, const TreeState& s);
// Left-to-right application.
TreeState act_word(const std::vector<Move>& word, TreeState s);

// Swaps barred and unbarred families; fixes A and O.
TreeState conjugate(const TreeState& s);

// The generators q_0 = s0 s0, q_inf = sinf sinf, q_-1 = (s0 sinf)^-1,
// q_1 = (sinf s0)^-1 of the loop group at c = i, and their product.
enum class Loop { q0, q1, qinf, qm1 };
std::vector<Move> loop_word(Loop q, bool inverse = false);
std::vector<Move> relation_word();  // q0 q1 qinf qm1

// All valid states of a fiber with size <= bound.
std::vector<TreeState> bounded_states(Fiber f, int bound);

// Closure of an over_i state under the q generators and their inverses,
// explored with headroom bound + 4, restricted to size <= bound.
std::set<TreeState> orbit(const TreeState& start, int bound);

// Throws std::domain_error for Q, Qbar, Eprime and Ebarprime.
OriginClass origin_class(const TreeState& s);

// n = 2k -> A_k, n = 2k + 1 -> O_k.
TreeState level_to_tree(int n);

std::string to_string(const TreeState& s);
std::string_view to_string(Move m);
std::string_view to_string(OriginClass c);
std::string_view to_string(Fiber f);
TreeState parse_state(std::string_view text);
std::vector<Move> parse_word(std::string_view text);

// ---- free group on the loops around i, 1, -i, -1 ---------------------------

// Letters +-1..+-4 for g_i, g_1, g_-i, g_-1; negative means inverse.
using Letter = std::int8_t;
inline constexpr Letter g_i = 1, g_1 = 2, g_mi = 3, g_m1 = 4;

struct FreeWord {
  std::vector<Letter> letters;
  bool operator==(const FreeWord&) const = default;
};

FreeWord reduce(FreeWord w);
bool is_reduced(const FreeWord& w);
// Generator-wise substitution of the braid move followed by free reduction.
FreeWord braid_rewrite(Move m, const FreeWord& w);
// Allocation-free variant: writes the reduced image of in[0..n) to out
// (capacity >= 3 n) and returns its length.
std::size_t braid_rewrite(Move m, const Letter* in, std::size_t n, Letter* out);

std::string to_string(const FreeWord& w);
FreeWord parse_free_word(std::string_view text);

}  // namespace quartic::trees
