#ifndef FFLAB_SHIU_HPP
#define FFLAB_SHIU_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "fflab/counting.hpp"
#include "fflab/interval.hpp"

namespace fflab {

/// A nonnegative multiplicative function given by its values on prime powers, together
/// with its declared class constants: g(P^l) <= a1^l and g(F) <= a2 * 2^{delta deg F}
/// on the enumerated range.
struct MultiplicativeRule {
  enum class Kind { kOne, kPowOmega, kCustom };

  std::string name;
  Kind kind = Kind::kOne;
  double y = 1.0;  // g = y^Omega for kPowOmega
  std::function<double(const Poly&, int)> prime_power;  // (P, l) -> g(P^l) for kCustom
  double declared_a1 = 1.0;
  double declared_delta = 0.0;

  double value(const Poly& prime, int ell) const;
  /// g(F) as the product over the factorization.
  double eval(const Factorization& fac) const;
};

/// g identically 1.
MultiplicativeRule rule_one();
/// g = y^Omega for y > 0 (covers 2^{-Omega} and exp(Omega / log log N)).
MultiplicativeRule rule_pow_omega(double y);
/// Parses "one" or "pow:<y>".
MultiplicativeRule rule_from_name(const std::string& name);

/// Verifies the declared class constants on the enumerated range: g(P^l) <= a1^l for
/// every prime of degree <= max_deg and l <= max_ell, and g(F) <= a2 2^{delta deg F}
/// for every monic F of degree <= max_deg.
bool rule_in_class(const MultiplicativeRule& rule, const StatsCache& cache, int max_deg,
                   int max_ell, double a2 = 1.0);

/// Exact sum of g over the interval members (enumeration plus factorization; the
/// y^Omega family runs off the per-degree stats tables instead). Deterministic for
/// every thread count.
double interval_mult_sum(const MultiplicativeRule& rule, const Interval& iv,
                         const StatsCache& cache, int threads = 1,
                         std::uint64_t budget = kDefaultBudget);

struct ShiuBound {
  double value;     // (q^{h+1}/N) exp(sum_{deg P <= N} g(P)/q^{deg P})
  bool applicable;  // h in (beta N, N-1]
};
/// The comparison scale of the multiplicative-sum bound; callers track the ratio
/// exact_sum / value since the absolute constant is not explicit.
ShiuBound shiu_bound(const MultiplicativeRule& rule, const StatsCache& cache, int N, int h,
                     double beta = 0.25);

struct HardyRamanujanCount {
  std::uint64_t count;  // members with Omega(F) > (1+epsilon) log N
  double fraction;      // count / q^{h+1}
  double threshold;     // (1+epsilon) log N
  bool applicable;      // N/4 <= h <= N-1
};
HardyRamanujanCount hardy_ramanujan_count(const Interval& iv, double epsilon,
                                          const StatsCache& cache);

}  // namespace fflab

#endif
