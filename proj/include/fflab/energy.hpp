#ifndef FFLAB_ENERGY_HPP
#define FFLAB_ENERGY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fflab/counting.hpp"
#include "fflab/interval.hpp"
#include "fflab/poly.hpp"

namespace fflab {

enum class Family { kInterval, kKprimeP, kKprimeS, kKprimeD, kShiftedPrime, kRough, kCustom };

std::string family_name(Family f);
/// Parses the CLI spelling (interval, kprime-P, kprime-S, kprime-D, shifted-prime,
/// rough, custom); throws std::invalid_argument on anything else.
Family family_from_name(const std::string& name);

/// A deduplicated set of monic polynomials of one common degree, tagged with the family
/// that built it. Construction outside a theorem's parameter regime is allowed for
/// exploration and only sets the warning flag.
struct PolySet {
  const Field* field = nullptr;
  int N = 0;
  Family tag = Family::kCustom;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<Poly> members;
  bool regime_warning = false;

  std::uint64_t size() const { return members.size(); }
};

PolySet build_interval_set(const Poly& center, int h, std::uint64_t budget = kDefaultBudget);
/// Variants: P counts factors with multiplicity, S additionally requires squarefree,
/// D counts distinct factors.
PolySet build_kprime(const StatsCache& cache, int N, int k, char variant);
PolySet build_shifted_primes(const StatsCache& cache, int N, const Poly& shift);
PolySet build_rough(const StatsCache& cache, int N, int z);
PolySet make_custom_set(const Field& field, std::vector<Poly> members);

/// Multiplicative-energy counts of a set: ordered quadruples with F1*F2 == G1*G2.
/// The diagonal (multiset {F1,F2} equal to {G1,G2}) always contributes 2|S|^2 - |S|.
struct EnergyReport {
  std::uint64_t set_size = 0;
  std::uint64_t total = 0;
  std::uint64_t diagonal = 0;
  std::uint64_t off_diagonal = 0;

  /// total / |S|^2, the exact fourth moment of the normalized random sum.
  double m4() const {
    return static_cast<double>(total) / (static_cast<double>(set_size) * set_size);
  }
};

/// Exact energy through multiplicities of the |S|^2 pairwise products. Pair products are
/// packed into exact integer keys (the full coefficient vector), so no collisions are
/// possible. Deterministic for every thread count.
EnergyReport mult_energy(const PolySet& set, int threads = 1,
                         std::uint64_t budget = kDefaultBudget);

/// Closed-form off-diagonal count for the full degree-N slice:
/// (N-1) q^{2N} - N q^{2N-1} + q^N.
std::uint64_t offdiag_MN_formula(const Field& f, int N);

struct IntervalEnergyCheck {
  std::uint64_t off_diagonal;
  std::uint64_t bound;  // 0 below half the degree
  bool holds;
};
/// Off-diagonal energy of an interval against 2(h - floor(N/2) + 1) q^{3h-N+3}, which
/// collapses to zero when h < N/2.
IntervalEnergyCheck check_short_interval_energy(const Interval& iv, int threads = 1,
                                                std::uint64_t budget = kDefaultBudget);

/// Independent off-diagonal recount through the gcd parametrization F1 = GA, G1 = GB,
/// F2 = HB, G2 = HA with gcd(A,B) = 1: counts multiplier pairs G != H per coprime
/// signature (A,B).
std::uint64_t gcd_parametrized_offdiag(const PolySet& set, int threads = 1,
                                       std::uint64_t budget = kDefaultBudget);

/// q^N exp(-sqrt(N log q)/3), the size floor of the limit theorem.
double size_floor(const Field& f, int N);
bool size_condition_satisfied(const PolySet& set);

}  // namespace fflab

#endif
