#include "kanon/anonymize.hpp"

#include <array>
#include <string>
#include <utility>

#include "kanon/approx_kl.hpp"
#include "kanon/errors.hpp"
#include "kanon/exact21.hpp"
#include "kanon/greedy_k1.hpp"

namespace kanon {

namespace {

constexpr std::array<std::pair<Algo, std::string_view>, 5> kNames{{
    {Algo::Auto, "auto"},
    {Algo::Exact21, "exact21"},
    {Algo::Any, "any"},
    {Algo::Greedy, "greedy"},
    {Algo::Expander, "expander"},
}};

[[noreturn]] void incompatible(Algo a, const AnonParams& p, Mode m, const char* why) {
  throw Error(Errc::Incompatible, std::string(algo_name(a)) + " cannot target (" +
                                      std::to_string(p.k) + "," + std::to_string(p.ell) + ") " +
                                      std::string(mode_name(m)) + ": " + why);
}

}  // namespace

std::string_view algo_name(Algo algo) noexcept {
  for (const auto& [a, name] : kNames)
    if (a == algo) return name;
  return "?";
}

std::optional<Algo> parse_algo(std::string_view name) noexcept {
  for (const auto& [a, n] : kNames)
    if (n == name) return a;
  return std::nullopt;
}

AnonymizeResult anonymize(const Graph& g, const AnonParams& p, const AnonymizeOptions& o) {
  p.validate();
  const bool weak = o.mode == Mode::Weak;
  Algo algo = o.algo;
  if (algo == Algo::Auto) {
    if (p.k == 2 && p.ell == 1) algo = Algo::Exact21;
    else if (p.ell == 1) algo = Algo::Greedy;
    else algo = weak ? Algo::Expander : Algo::Greedy;
  }
  switch (algo) {
    case Algo::Exact21:
      if (p.k != 2 || p.ell != 1) incompatible(algo, p, o.mode, "needs k=2, ell=1");
      if (weak) return {anonymize_weak_21(g, o.seed), "weak_21"};
      if (o.linear) return {anonymize_strong_21(g, MatchingMode::Linear, o.seed), "strong_21_linear"};
      return {anonymize_strong_21(g, MatchingMode::Exact, o.seed), "strong_21"};
    case Algo::Any:
      if (p.ell != 1) incompatible(algo, p, o.mode, "needs ell=1");
      if (weak) return {weak_any(g, p.k, o.seed), "weak_any"};
      return {strong_any(g, p.k, o.seed), "strong_any"};
    case Algo::Greedy:
      if (p.ell == 1) {
        if (weak) return {weak_greedy(g, p.k, o.seed), "weak_greedy"};
        return {strong_greedy(g, p.k), "strong_greedy"};
      }
      if (weak) incompatible(algo, p, o.mode, "weak mode with ell>1 uses the expander");
      return {strong_greedy_kl(g, p.k, p.ell), "strong_greedy_kl"};
    case Algo::Expander:
      if (!weak) incompatible(algo, p, o.mode, "the expander only targets weak anonymity");
      return {weak_expander(g, p.k, p.ell, o.seed), "weak_expander"};
    case Algo::Auto:
      break;
  }
  throw Error(Errc::BadParams, "unknown algorithm");
}

}  // namespace kanon
