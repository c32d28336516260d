#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "kanon/anonymity.hpp"
#include "kanon/plan.hpp"

namespace kanon {

enum class Algo { Auto, Exact21, Any, Greedy, Expander };

std::string_view algo_name(Algo algo) noexcept;
std::optional<Algo> parse_algo(std::string_view name) noexcept;

struct AnonymizeOptions {
  Mode mode = Mode::Weak;
  Algo algo = Algo::Auto;
  std::uint64_t seed = 0;
  bool linear = false;  // strong exact21: greedy matching instead of maximum
};

struct AnonymizeResult {
  EdgePlan plan;
  std::string algorithm;  // concrete algorithm that ran, e.g. "strong_greedy_kl"
};

// Picks and runs one anonymizer. Auto means exact21 for (2,1), the greedy
// heuristic for ell = 1, and the expander (weak) or ell-group greedy (strong)
// otherwise. Throws Incompatible when the algorithm cannot target (k, ell, mode).
AnonymizeResult anonymize(const Graph& g, const AnonParams& p, const AnonymizeOptions& options = {});

}  // namespace kanon
