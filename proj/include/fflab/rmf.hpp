#ifndef FFLAB_RMF_HPP
#define FFLAB_RMF_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fflab/counting.hpp"
#include "fflab/energy.hpp"
#include "fflab/interval.hpp"

namespace fflab {

/// One realization of a random completely multiplicative function with unit-modulus
/// values on irreducibles. The value at P is a pure function of (seed, canonical
/// serialization of P): a keyed PRF drives a 53-bit uniform angle, so evaluation order
/// and thread layout can never change a value.
class RmfAssignment {
 public:
  explicit RmfAssignment(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

  /// Unit-modulus value attached to a monic irreducible.
  std::complex<double> value_of(const Poly& prime) const;
  /// Same, keyed directly by the canonical serialization.
  std::complex<double> value_of_key(const std::string& serialized) const;

 private:
  std::uint64_t seed_;
};

/// f(F) as the product of prime values over the factorization; f(1) = 1.
std::complex<double> eval_f(const RmfAssignment& a, const Poly& f, const SieveTable& sieve);

/// Z = |S|^{-1/2} sum of f over the set; throws on an empty set.
std::complex<double> z_statistic(const RmfAssignment& a, const PolySet& set,
                                 const SieveTable& sieve);

/// Partition of a set by the canonically largest prime factor of each member.
struct MartingaleBlocks {
  /// Blocks in increasing prime order; second holds member indices into the set.
  std::vector<std::pair<Poly, std::vector<std::uint32_t>>> blocks;

  std::uint64_t total_members() const;
  std::uint64_t max_block() const;
};
MartingaleBlocks martingale_blocks(const PolySet& set, const StatsCache& cache,
                                   TieBreak tb = TieBreak::kLowCoeffFirst);

struct FiltrationStat {
  std::uint64_t max_block_in_interval;  // max_P |S_P intersect I|
  double reference_scale;               // q^{h+1} exp(-sqrt((h+1) log q)/2)
  double ratio;                         // the implied constant is unknown; recorded only
};
FiltrationStat filtration_stat(const PolySet& set, const Interval& iv,
                               const StatsCache& cache);

struct EcfPoint {
  double t1, t2;
  double emp_re, emp_im;  // empirical characteristic function at (t1, t2)
  double target;          // exp(-t^2/2) with t^2 = (t1^2 + t2^2)/2
};

struct CltReport {
  std::uint64_t set_size = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double m2_hat = 0, se_m2 = 0;
  double m4_hat = 0, se_m4 = 0;
  std::uint64_t energy_total = 0;  // exact fourth-moment numerator
  double m4_exact = 0;             // energy_total / |S|^2
  double ks_re = 0, ks_im = 0;     // KS distances of sqrt(2) Re Z and sqrt(2) Im Z
  double ks_threshold_99 = 0;      // 1.628 / sqrt(trials)
  std::vector<EcfPoint> ecf;
  double block_second_moments = 0;  // sum_P |S_P| / |S|, exactly 1
  bool m2_gate = false;             // |m2_hat - 1| <= 4 se
  bool m4_gate = false;             // |m4_hat - m4_exact| <= 4 se
  bool ks_gate = false;             // both KS distances under the 99% critical value
  std::vector<std::pair<double, double>> trial_z;  // per-trial (Re Z, Im Z)
};

/// Monte Carlo moments of Z over independent assignments seeded seed, seed+1, ...,
/// checked against the exact fourth moment from the energy count. Requires
/// trials >= 100. Byte-identical output for every thread count.
CltReport monte_carlo(const PolySet& set, std::uint64_t trials, std::uint64_t seed,
                      const StatsCache& cache, int threads = 1,
                      std::uint64_t budget = kDefaultBudget);

/// The three finiteness ratios of the limit-theorem conditions, reported as data.
struct ConditionReport {
  std::uint64_t size_a = 0;           // |A|
  std::uint64_t size_s = 0;           // |S|
  double excluded_ratio = 0;          // |A \ S| / |A|
  std::uint64_t off_diagonal = 0;     // off-diagonal energy of S
  double off_diagonal_ratio = 0;      // off-diagonal / |A|^2
  std::uint64_t max_block = 0;        // max_P |S_P|
  double max_block_ratio = 0;         // max_block / |A|
  double floor = 0;                   // q^N exp(-sqrt(N log q)/3)
  bool size_condition = false;        // |A| >= floor
};
/// Requires subset to be contained in set (throws otherwise).
ConditionReport theorem_conditions_report(const PolySet& set, const PolySet& subset,
                                          const StatsCache& cache, int threads = 1);

/// Standard normal CDF via erf.
double std_normal_cdf(double x);
/// Two-sided KS distance of a sample against the standard normal.
double ks_distance_normal(std::vector<double> sample);

}  // namespace fflab

#endif
