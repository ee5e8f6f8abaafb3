#ifndef FFLAB_COUNTING_HPP
#define FFLAB_COUNTING_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "fflab/interval.hpp"
#include "fflab/poly.hpp"
#include "fflab/sieve.hpp"

namespace fflab {

/// Per-rank arithmetic statistics of all monic polynomials of one degree. Values are
/// computed once through the smallest-prime-factor chain and then shared read-only.
struct DegreeStats {
  int degree = 0;
  std::vector<std::uint8_t> p_plus;       // largest factor degree
  std::vector<std::uint8_t> p_minus;      // smallest factor degree
  std::vector<std::uint8_t> big_omega;    // factors with multiplicity
  std::vector<std::uint8_t> small_omega;  // distinct factors
  std::vector<std::int32_t> max_prime;    // id of the canonically largest prime factor
};

/// Lazy per-degree cache of DegreeStats for one field, backed by a shared sieve table.
class StatsCache {
 public:
  StatsCache(const Field& f, int max_degree, std::uint64_t budget = kDefaultBudget);

  const Field& field() const { return *field_; }
  int max_degree() const { return max_degree_; }
  const SieveTable& sieve() const { return *sieve_; }
  std::shared_ptr<const SieveTable> sieve_ptr() const { return sieve_; }
  const DegreeStats& at(int degree) const;

 private:
  const Field* field_;
  int max_degree_;
  std::shared_ptr<const SieveTable> sieve_;
  std::vector<DegreeStats> stats_;  // index = degree, built eagerly for 1..max_degree
};

/// Exact table of smooth and rough counts over full degrees:
/// psi(n, d) = #{F monic, deg F = n, P+(F) <= d} and
/// phi(n, z) = #{F monic, deg F = n, P-(F) > z}, with psi(0, .) = phi(0, .) = 1.
class SmoothRoughTable {
 public:
  SmoothRoughTable(const StatsCache& cache, int max_n);

  int max_n() const { return max_n_; }
  std::uint64_t psi(int n, int d) const;
  std::uint64_t phi(int n, int z) const;

 private:
  int max_n_;
  std::vector<std::vector<std::uint64_t>> psi_;  // [n][d], d in [0, max_n]
  std::vector<std::vector<std::uint64_t>> phi_;  // [n][z], z in [0, max_n]
};

/// Smooth / rough counts of an explicit finite set by factorization.
std::uint64_t psi_set(const std::vector<Poly>& set, int d, const SieveTable& sieve);
std::uint64_t phi_set(const std::vector<Poly>& set, int z, const SieveTable& sieve);

/// psi(N, d) through the prime-count recurrence
///   N * psi(N, d) = sum_{k <= d} sum_{m k <= N} psi(N - m k, d) k pi_q(k),
/// memoized over N. Exact; agrees with enumeration everywhere both are defined.
std::uint64_t psi_recurrence(const Field& f, int N, int d);

struct HildebrandCheck {
  std::uint64_t lhs;  // smooth count inside the interval
  std::uint64_t rhs;  // psi(h+1, d)
  bool holds;
};
/// Smooth count in I(A, h) versus the full-degree count at degree h+1.
HildebrandCheck check_hildebrand(const StatsCache& cache, int h, int d, const Poly& A);

struct ChebyshevCheck {
  std::uint64_t count;      // rough count inside the interval
  std::uint64_t bound_num;  // bound = q^{h+2} / (z (q-1)), held exactly
  std::uint64_t bound_den;
  bool holds;
  bool applicable;  // z within [1, (h+1)/2]
};
/// Rough count in I(A, h) against q^{h+1} / (z (1 - 1/q)). Out-of-range z is reported
/// as not applicable with the count still returned.
ChebyshevCheck check_chebyshev(const StatsCache& cache, int h, int z, const Poly& A);

struct RoughBoundsCheck {
  std::uint64_t count;  // phi(N, z)
  std::uint64_t lower_num, lower_den;
  std::uint64_t upper_num, upper_den;
  bool holds;
  bool applicable;  // z within [1, N/2]
};
/// phi(N, z) inside the window [q^N/(10z+5), q^N/(z(1-1/q))].
RoughBoundsCheck rough_bounds_check(const StatsCache& cache, int N, int z);

struct RankinCheck {
  std::uint64_t lhs;  // sum_{1 <= n <= N} psi(n, d)
  double rhs;         // q^N exp(-2N/3d + 4 log d + 4)
  bool holds;
  bool applicable;  // the bound is stated for d <= N
};
/// Cumulative smooth counts against the exponential bound. The bound is evaluated in
/// binary64; comparisons allow one part in 1e12 of rounding slack. d beyond N is
/// still computed but flagged not applicable.
RankinCheck rankin_bound_check(const StatsCache& cache, int N, int d);

}  // namespace fflab

#endif
