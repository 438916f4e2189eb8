#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quartic/spectral.hpp"
#include "quartic/tracking.hpp"

namespace quartic::continuation {

// A path in the alpha-plane, parametrized by t in [0, 1]: polylines by arc
// length, circles by angle (start_angle + 2 pi turns t).
struct PathSpec {
  enum class Kind { polyline, circle };
  Kind kind = Kind::polyline;
  std::vector<cplx> points;
  cplx center{};
  double radius = 0.0;
  int turns = 1;
  double start_angle = 0.0;

  static PathSpec polyline(std::vector<cplx> points);
  static PathSpec circle(cplx center, double radius, int turns = 1, double start_angle = 0.0);

  // Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
  cplx at(double t) const;
  cplx start() const { return at(0.0); }
  cplx end() const { return at(1.0); }
  bool closed() const;
  double length() const;
  PathSpec reversed() const;
};

// A path traversed piece by piece; products of loops are routes.
using Route = std::vector<PathSpec>;

struct TraceSample {
  double t = 0.0;  // in [0, 1] over the whole route; piece i of m covers [i/m, (i+1)/m]
  cplx alpha{};
  cplx lambda{};
  double residual = 0.0;
};

enum class TraceStatus { completed, aborted_near_branch };

struct ContinuationTrace {
  Parity parity = Parity::even;
  std::vector<TraceSample> samples;
  TraceStatus status = TraceStatus::completed;
  std::string message;
};

// Step underflow; carries the trace up to the last good sample.
class ContinuationError : public ConvergenceError {
 public:
  ContinuationError(const std::string& what, ContinuationTrace partial)
      : ConvergenceError(what), partial_(std::move(partial)) {}
  const ContinuationTrace& partial() const { return partial_; }

 private:
  ContinuationTrace partial_;
};

ContinuationTrace continue_eigenvalue(const Route& route, cplx lambda_start, Parity parity,
                                      const spectral::SolverOptions& opt = {},
                                      const tracking::Controls& ctl = {});

struct MonodromyPermutation {
  Parity parity = Parity::even;
  std::vector<int> labels;     // tracked anchor labels
  std::map<int, int> mapping;  // label -> label after one traversal
  Route loop;
  bool complete = false;
  std::string failure;

  bool is_identity() const;
  // Cycle of the permutation containing `label`.
  std::vector<int> cycle_of(int label) const;
};

// (a then b) as a permutation: b o a.
MonodromyPermutation follow(const MonodromyPermutation& a, const MonodromyPermutation& b);

// Permutation of the labels n <= n_max of the given parity at alpha_base
// induced by the lasso base -> loop start, loop, loop start -> base. Labels
// are those of eigenvalues_at(alpha_base).
MonodromyPermutation loop_permutation(const Route& loop, cplx alpha_base, int n_max, Parity parity,
                                      const spectral::SolverOptions& opt = {},
                                      const tracking::Controls& ctl = {});

struct BranchPoint {
  cplx alpha{};
  cplx lambda{};
  Parity parity = Parity::even;
  std::pair<int, int> indices{-1, -1};
  int order = 0;
  double residual_f = 0.0;   // |F|
  double residual_df = 0.0;  // |dF/dlambda|
};

struct Box {
  double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;
};

struct ScanReport {
  std::vector<BranchPoint> points;
  int seeds = 0;
  int discarded = 0;
  std::vector<std::string> log;
};

// Grid scan for near-collisions of eigenvalues of one parity with index
// <= n_max, two-variable Newton polish on (F, dF/dlambda) = 0, merge and
// order confirmation.
ScanReport find_branch_points(const Box& box, Parity parity, int n_max, int grid,
                              const spectral::SolverOptions& opt = {});

// Local loop around the point: cycle length k of the merged pair, with the
// k-fold loop checked to be the identity. Throws ConvergenceError when the
// cycle does not close within n_max traversals.
int ramification_order(const BranchPoint& bp, int n_max, const spectral::SolverOptions& opt = {});

// Small circle loop used by ramification_order.
PathSpec local_loop(const BranchPoint& bp, int turns = 1);

struct SeparationReport {
  struct Entry {
    std::map<int, int> even;
    std::map<int, int> odd;
    bool mixed = false;
    bool complete = false;
    std::string failure;
  };
  std::vector<Entry> loops;
  bool separated = true;
};

// Tracks all labels 0..n_max along each loop and matches the endpoints
// against every base eigenvalue regardless of parity.
SeparationReport parity_separation_check(const std::vector<Route>& loops, cplx alpha_base, int n_max,
                                         const spectral::SolverOptions& opt = {});

}  // namespace quartic::continuation
