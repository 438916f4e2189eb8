#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "io.hpp"
#include "quartic/continuation.hpp"

namespace cli {

struct CommandResult {
  json payload = json::object();
  std::string summary;
  bool success = true;
};

using quartic::spectral::SolverOptions;

CommandResult spectrum(cplx alpha, int n_max, bool asymptotic, const SolverOptions& opt);
CommandResult continue_path(const quartic::continuation::Route& route, cplx lambda,
                            std::optional<quartic::Parity> parity, const std::string& csv, const SolverOptions& opt);
// parity: "even", "odd" or "both".
CommandResult monodromy(const quartic::continuation::Route& loop, std::optional<cplx> base, int n_max,
                        const std::string& parity, const SolverOptions& opt);
CommandResult branch_scan(const quartic::continuation::Box& box, int grid, quartic::Parity parity, int n_max,
                          const SolverOptions& opt);
CommandResult scale(std::optional<cplx> beta, std::optional<cplx> alpha, std::optional<int> n_max, double tol);
CommandResult trees_act(const std::string& word, const std::string& state);
CommandResult trees_orbit(const std::string& start, int bound);
CommandResult verify(bool quick, const std::vector<int>& criteria, std::uint64_t seed);

}  // namespace cli
