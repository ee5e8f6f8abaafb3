#ifndef FFLAB_SIEVE_HPP
#define FFLAB_SIEVE_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "fflab/budget.hpp"
#include "fflab/poly.hpp"

namespace fflab {

/// One (prime, exponent) pair of a factorization.
struct PrimePower {
  Poly prime;
  int exp;
};

/// Factorization into powers of distinct monic irreducibles, sorted by the canonical
/// degree-respecting order. Multiplying everything back reproduces the input exactly.
struct Factorization {
  std::vector<PrimePower> factors;

  int big_omega() const {
    int s = 0;
    for (const auto& pp : factors) s += pp.exp;
    return s;
  }
  int small_omega() const { return static_cast<int>(factors.size()); }
  /// Largest / smallest degree among the prime factors (0 when empty).
  int p_plus() const;
  int p_minus() const;
};

/// Immutable table of all monic irreducibles of degree <= max_degree over one field,
/// together with per-degree smallest-prime-factor maps over the rank space of monic
/// polynomials. Built once, then read-only; share via shared_ptr across threads.
class SieveTable {
 public:
  /// Builds (or reuses) a table covering degrees up to at least max_degree.
  /// Enumerates q^max_degree ranks per degree, so the budget guard applies.
  static std::shared_ptr<const SieveTable> ensure(const Field& f, int max_degree,
                                                  std::uint64_t budget = kDefaultBudget);

  const Field& field() const { return *field_; }
  int max_degree() const { return max_degree_; }

  /// Irreducibles of exactly degree d, sorted by the canonical order.
  const std::vector<Poly>& primes_of_degree(int d) const { return primes_by_deg_.at(d); }
  /// All irreducibles of degree <= d, sorted by the canonical order.
  std::vector<Poly> primes_up_to(int d) const;
  /// Count of monic irreducibles of degree d from the sieve.
  std::uint64_t prime_count(int d) const { return primes_by_deg_.at(d).size(); }

  /// True iff the monic polynomial of degree >= 1 is irreducible.
  bool is_irreducible(const Poly& f) const;

  /// Exact factorization by repeated smallest-prime-factor lookups. Requires a monic
  /// input of degree in [1, max_degree]; throws std::invalid_argument otherwise
  /// ("table too shallow" when the degree exceeds the table).
  Factorization factor(const Poly& f) const;

  /// Id (into all_primes) of the canonically smallest prime factor of the rank-th monic
  /// polynomial of degree d; an irreducible is its own smallest prime factor.
  std::int32_t spf_id(int d, std::uint64_t rank) const { return spf_by_deg_[d][rank]; }
  /// Id of the first (canonically least) prime of degree d; a degree-d polynomial is
  /// irreducible iff its spf_id is >= this.
  std::int32_t first_prime_id(int d) const { return first_id_[d]; }
  bool is_irreducible_rank(int d, std::uint64_t rank) const {
    return spf_by_deg_[d][rank] >= first_id_[d];
  }
  const std::vector<Poly>& all_primes() const { return all_primes_; }

 private:
  SieveTable() = default;
  void build(const Field& f, int max_degree, std::uint64_t budget);

  const Field* field_ = nullptr;
  int max_degree_ = 0;
  std::vector<std::vector<Poly>> primes_by_deg_;       // [d] -> sorted irreducibles
  std::vector<Poly> all_primes_;                       // concatenated in canonical order
  std::vector<std::int32_t> first_id_;                 // [d] -> id of least degree-d prime
  std::vector<std::vector<std::int32_t>> spf_by_deg_;  // [d][rank] -> smallest-factor id
};

/// Exact count of monic irreducibles of degree N from the divisor-sum formula
/// pi_q(N) = (1/N) sum_{d|N} mu(d) q^{N/d}.
std::uint64_t pi_q(const Field& f, int N);

/// Standalone irreducibility test by trial division (monic input, degree >= 1).
bool is_irreducible(const Poly& f);

/// Convenience factorization that builds/reuses a sieve table of sufficient depth.
Factorization factor(const Poly& f);

/// Omega, omega, max/min factor degree and the canonically largest prime factor.
struct ArithStats {
  int big_omega;
  int small_omega;
  int p_plus;
  int p_minus;
  Poly max_prime;
};
ArithStats arith_stats(const Poly& f, const SieveTable& sieve,
                       TieBreak tb = TieBreak::kLowCoeffFirst);

/// Euler totient |(F_q[t]/(F))^x| from the factorization; totient(1) == 1.
std::uint64_t totient(const Poly& f, const SieveTable& sieve);

}  // namespace fflab

#endif
