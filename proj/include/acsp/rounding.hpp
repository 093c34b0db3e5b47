#pragma once

// Iterative LP rounding: solve the relaxation, fix the arcs that maximize a
// strategy-specific key to x = 1, repeat until x is integral, then read a walk
// off the chosen arcs.

#include <optional>
#include <span>
#include <string>

#include "acsp/graph.hpp"
#include "acsp/transform.hpp"

namespace acsp {

enum class RoundingStrategy { kX, kF, kFOverX };

const char* to_string(RoundingStrategy strategy);

enum class RoundingStatus { kSuccess, kInfeasibleInstance, kLpInfeasible, kExtractionFailed };

const char* to_string(RoundingStatus status);

struct RoundingResult {
  RoundingStatus status = RoundingStatus::kSuccess;
  std::optional<Solution> solution;
  int iterations = 0;          // fixing rounds
  int tie_fallbacks = 0;       // rounds where only one tied arc could be fixed
  double lp_objective = 0.0;   // objective of the last relaxation solved
  std::string diagnostic;

  bool ok() const { return status == RoundingStatus::kSuccess; }
};

inline constexpr double kRoundingTol = 1e-6;

RoundingResult iterative_round(const Instance& instance, RoundingStrategy strategy, double tol = kRoundingTol);

struct ExtractResult {
  std::optional<Walk> walk;
  std::string diagnostic;
};

// Eulerian source-to-sink trail over the chosen arcs (indices into d.arcs,
// repeats allowed), mapped back to a walk, cropped and de-duplicated.
ExtractResult extract_walk(const Instance& instance, const DirectedInstance& d, std::span<const int> chosen_arcs);

}  // namespace acsp
