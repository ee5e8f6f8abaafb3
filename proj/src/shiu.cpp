#include "fflab/shiu.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fflab/parallel.hpp"

namespace fflab {

double MultiplicativeRule::value(const Poly& prime, int ell) const {
  switch (kind) {
    case Kind::kOne: return 1.0;
    case Kind::kPowOmega: return std::pow(y, ell);
    case Kind::kCustom: return prime_power(prime, ell);
  }
  return 1.0;
}

double MultiplicativeRule::eval(const Factorization& fac) const {
  double g = 1.0;
  for (const auto& pp : fac.factors) g *= value(pp.prime, pp.exp);
  return g;
}

MultiplicativeRule rule_one() {
  MultiplicativeRule r;
  r.name = "one";
  r.kind = MultiplicativeRule::Kind::kOne;
  r.declared_a1 = 1.0;
  r.declared_delta = 0.0;
  return r;
}

MultiplicativeRule rule_pow_omega(double y) {
  if (!(y > 0.0)) throw std::invalid_argument("pow-omega rule needs y > 0");
  MultiplicativeRule r;
  r.name = "pow:" + std::to_string(y);
  r.kind = MultiplicativeRule::Kind::kPowOmega;
  r.y = y;
  r.declared_a1 = std::max(y, 1.0);
  r.declared_delta = std::max(0.0, std::log2(y));
  return r;
}

MultiplicativeRule rule_from_name(const std::string& name) {
  if (name == "one") return rule_one();
  if (name.rfind("pow:", 0) == 0) return rule_pow_omega(std::stod(name.substr(4)));
  throw std::invalid_argument("unknown multiplicative rule: " + name);
}

bool rule_in_class(const MultiplicativeRule& rule, const StatsCache& cache, int max_deg,
                   int max_ell, double a2) {
  const double slack = 1.0 + 1e-9;
  for (int d = 1; d <= max_deg; ++d) {
    for (const Poly& p : cache.sieve().primes_of_degree(d)) {
      for (int ell = 1; ell <= max_ell; ++ell) {
        if (rule.value(p, ell) > std::pow(rule.declared_a1, ell) * slack) return false;
      }
    }
  }
  for (int n = 1; n <= max_deg; ++n) {
    const DegreeStats& st = cache.at(n);
    const SieveTable& sieve = cache.sieve();
    double cap = a2 * std::pow(2.0, rule.declared_delta * n) * slack;
    for (std::uint64_t r = 0; r < st.big_omega.size(); ++r) {
      double g = rule.eval(sieve.factor(Poly::monic_from_rank(cache.field(), n, r)));
      if (g > cap) return false;
    }
  }
  return true;
}

double interval_mult_sum(const MultiplicativeRule& rule, const Interval& iv,
                         const StatsCache& cache, int threads, std::uint64_t budget) {
  const int N = iv.degree();
  if (N < 1) throw std::invalid_argument("interval sum needs degree >= 1");
  std::uint64_t n = iv.size();
  if (n >= budget) throw budget_error("interval too large to enumerate");
  const std::uint64_t begin = iv.rank_begin();

  constexpr std::uint64_t kChunk = kParallelChunk;
  std::vector<double> partial((n + kChunk - 1) / kChunk, 0.0);

  if (rule.kind == MultiplicativeRule::Kind::kCustom) {
    const SieveTable& sieve = cache.sieve();
    parallel_chunks(n, threads, [&](std::uint64_t lo, std::uint64_t hi) {
      double s = 0.0;
      for (std::uint64_t r = lo; r < hi; ++r) {
        s += rule.eval(sieve.factor(Poly::monic_from_rank(iv.field(), N, begin + r)));
      }
      partial[lo / kChunk] = s;
    });
  } else {
    // g depends only on Omega here, so the stats table carries everything needed.
    const DegreeStats& st = cache.at(N);
    const double y = rule.kind == MultiplicativeRule::Kind::kOne ? 1.0 : rule.y;
    std::vector<double> pow_table(static_cast<std::size_t>(N) + 1, 1.0);
    for (int i = 1; i <= N; ++i) pow_table[i] = pow_table[i - 1] * y;
    parallel_chunks(n, threads, [&](std::uint64_t lo, std::uint64_t hi) {
      double s = 0.0;
      for (std::uint64_t r = lo; r < hi; ++r) s += pow_table[st.big_omega[begin + r]];
      partial[lo / kChunk] = s;
    });
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

ShiuBound shiu_bound(const MultiplicativeRule& rule, const StatsCache& cache, int N, int h,
                     double beta) {
  if (N < 1 || h < 0 || h > N - 1) throw std::invalid_argument("shiu bound needs 0 <= h <= N-1");
  if (!(beta > 0.0 && beta < 0.5)) throw std::invalid_argument("beta must lie in (0, 1/2)");
  const Field& f = cache.field();
  double prime_sum = 0.0;
  if (rule.kind == MultiplicativeRule::Kind::kCustom) {
    for (int d = 1; d <= N; ++d) {
      for (const Poly& p : cache.sieve().primes_of_degree(d)) {
        prime_sum += rule.value(p, 1) / std::pow(static_cast<double>(f.q()), d);
      }
    }
  } else {
    const double gp = rule.kind == MultiplicativeRule::Kind::kOne ? 1.0 : rule.y;
    for (int d = 1; d <= N; ++d) {
      prime_sum += gp * static_cast<double>(pi_q(f, d)) /
                   std::pow(static_cast<double>(f.q()), d);
    }
  }
  ShiuBound out;
  out.value = std::pow(static_cast<double>(f.q()), h + 1) / N * std::exp(prime_sum);
  out.applicable = (static_cast<double>(h) > beta * N);
  return out;
}

HardyRamanujanCount hardy_ramanujan_count(const Interval& iv, double epsilon,
                                          const StatsCache& cache) {
  const int N = iv.degree();
  if (N < 1) throw std::invalid_argument("count needs degree >= 1");
  const DegreeStats& st = cache.at(N);
  const double threshold = (1.0 + epsilon) * std::log(static_cast<double>(N));
  const std::uint64_t begin = iv.rank_begin();
  std::uint64_t count = 0;
  for (std::uint64_t r = begin; r < begin + iv.size(); ++r) {
    if (static_cast<double>(st.big_omega[r]) > threshold) ++count;
  }
  HardyRamanujanCount out;
  out.count = count;
  out.fraction = static_cast<double>(count) / static_cast<double>(iv.size());
  out.threshold = threshold;
  out.applicable = (4 * iv.radius() >= N && iv.radius() <= N - 1);
  return out;
}

}  // namespace fflab
