#pragma once

#include <functional>
#include <string>
#include <vector>

#include "quartic/spectral.hpp"

namespace quartic::tracking {

// Step and safety controls of the predictor-corrector tracker. Gap floor and
// step limits are relative to (1 + |lambda|) and to the unit parameter
// interval respectively.
struct Controls {
  double gap_floor = 1e-4;
  double corrector_fraction = 0.25;  // max corrector displacement / gap
  double step_fraction = 0.5;        // max |lambda step| / gap
  double initial_step = 1.0 / 64.0;
  double min_step = 1e-8;
  double max_step = 0.25;
  int corrector_iterations = 8;
};

struct Branch {
  Parity parity = Parity::even;
  cplx lambda{};
};

struct Sample {
  double t = 0.0;
  cplx alpha{};
  std::vector<cplx> lambda;
  std::vector<double> residual;
  double min_gap = 0.0;  // smallest relative gap over the tracked branches
};

enum class Status { completed, aborted_near_branch, step_underflow };

struct Result {
  std::vector<Sample> samples;  // first and last always kept
  Status status = Status::completed;
  int failing_branch = -1;
  std::string message;
};

// alpha(t) on [0, 1]. Tracks every branch in lockstep along the quartic
// family z^4 + alpha(t) z^2. Starting values are polished first; they
// must be eigenvalues of the given parities at alpha(0).
Result track(const std::function<cplx(double)>& alpha, const std::vector<Branch>& start,
             const spectral::SolverOptions& opt = {}, const Controls& ctl = {}, bool keep_samples = true);

}  // namespace quartic::tracking
