#pragma once

#include <cstdint>

#include "mathrules/algebra/expand.hpp"
#include "mathrules/evaluate.hpp"
#include "mathrules/rng.hpp"

namespace mathrules {

/// Substitution-oracle configuration. Ten exact evaluations over a small
/// integer pool; draws that hit a singular point (zero denominator, 0^-n)
/// are resampled up to max_resamples.
struct EquivConfig {
  int trials = 10;
  std::int64_t pool_lo = -20;
  std::int64_t pool_hi = 20;
  int max_resamples = 200;
  std::uint64_t seed = 0x6d617468ULL;
};

/// True iff a and b denote the same value. Structural canonical comparison
/// first, then exact evaluation at random rational points.
inline bool equivalent(const Expr& a, const Expr& b, const EquivConfig& cfg = {}) {
  if (canonical_key(a) == canonical_key(b)) return true;

  std::vector<std::string> names;
  a.collect_names(names);
  b.collect_names(names);

  Rng rng(cfg.seed);
  int successes = 0, resamples = 0;
  while (successes < cfg.trials) {
    Assignment sigma;
    for (const auto& n : names) sigma[n] = Rational(rng.uniform(cfg.pool_lo, cfg.pool_hi));
    try {
      if (evaluate(a, sigma) != evaluate(b, sigma)) return false;
      ++successes;
    } catch (const Error& err) {
      if (err.code() != errc::division_by_zero && err.code() != errc::zero_to_negative_power)
        throw;
      if (++resamples > cfg.max_resamples)
        raise(errc::inconclusive_equivalence,
              "exhausted resamples on singular points (" + std::to_string(resamples) + ")");
    }
  }
  return true;
}

}  // namespace mathrules
