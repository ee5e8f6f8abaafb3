#include "fflab/rmf.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

#include "fflab/parallel.hpp"

namespace fflab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// SipHash-2-4, the keyed 64-bit PRF of Aumasson and Bernstein.
std::uint64_t rotl(std::uint64_t x, int b) { return (x << b) | (x >> (64 - b)); }

std::uint64_t siphash24(std::uint64_t k0, std::uint64_t k1, const void* data, std::size_t len) {
  std::uint64_t v0 = 0x736f6d6570736575ull ^ k0;
  std::uint64_t v1 = 0x646f72616e646f6dull ^ k1;
  std::uint64_t v2 = 0x6c7967656e657261ull ^ k0;
  std::uint64_t v3 = 0x7465646279746573ull ^ k1;

  auto round = [&]() {
    v0 += v1;
    v1 = rotl(v1, 13);
    v1 ^= v0;
    v0 = rotl(v0, 32);
    v2 += v3;
    v3 = rotl(v3, 16);
    v3 ^= v2;
    v0 += v3;
    v3 = rotl(v3, 21);
    v3 ^= v0;
    v2 += v1;
    v1 = rotl(v1, 17);
    v1 ^= v2;
    v2 = rotl(v2, 32);
  };

  const auto* in = static_cast<const unsigned char*>(data);
  const std::size_t blocks = len / 8;
  for (std::size_t i = 0; i < blocks; ++i) {
    std::uint64_t m;
    std::memcpy(&m, in + 8 * i, 8);
    v3 ^= m;
    round();
    round();
    v0 ^= m;
  }
  std::uint64_t last = static_cast<std::uint64_t>(len & 0xff) << 56;
  for (std::size_t i = 8 * blocks; i < len; ++i) {
    last |= static_cast<std::uint64_t>(in[i]) << (8 * (i - 8 * blocks));
  }
  v3 ^= last;
  round();
  round();
  v0 ^= last;
  v2 ^= 0xff;
  round();
  round();
  round();
  round();
  return v0 ^ v1 ^ v2 ^ v3;
}

std::complex<double> angle_from_hash(std::uint64_t h) {
  // 53-bit uniform in [0,1) mapped to [0, 2pi); unit modulus by construction.
  double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return {std::cos(kTwoPi * u), std::sin(kTwoPi * u)};
}

std::complex<double> pow_unit(std::complex<double> v, int e) {
  std::complex<double> r{1.0, 0.0};
  for (int i = 0; i < e; ++i) r *= v;
  return r;
}

// Factor layout shared by the Monte Carlo fast paths.
struct PreparedSet {
  std::vector<std::string> prime_keys;  // canonical serializations of distinct primes
  std::vector<std::vector<std::pair<std::uint32_t, int>>> member_factors;
};

PreparedSet prepare_set(const PolySet& set, const SieveTable& sieve) {
  PreparedSet prep;
  std::map<std::int32_t, std::uint32_t> prime_index;  // sieve prime id -> dense index
  prep.member_factors.reserve(set.members.size());
  for (const Poly& m : set.members) {
    std::vector<std::pair<std::uint32_t, int>> entry;
    if (m.degree() >= 1) {
      for (const auto& pp : sieve.factor(m).factors) {
        std::int32_t id = sieve.spf_id(pp.prime.degree(), pp.prime.rank());
        auto [it, inserted] = prime_index.try_emplace(id, prime_index.size());
        if (inserted) prep.prime_keys.push_back(pp.prime.serialize());
        entry.emplace_back(it->second, pp.exp);
      }
    }
    prep.member_factors.push_back(std::move(entry));
  }
  return prep;
}

}  // namespace

std::complex<double> RmfAssignment::value_of_key(const std::string& serialized) const {
  std::uint64_t h = siphash24(seed_, splitmix64(seed_), serialized.data(), serialized.size());
  return angle_from_hash(h);
}

std::complex<double> RmfAssignment::value_of(const Poly& prime) const {
  return value_of_key(prime.serialize());
}

std::complex<double> eval_f(const RmfAssignment& a, const Poly& f, const SieveTable& sieve) {
  if (!f.is_monic()) throw std::invalid_argument("eval needs a monic polynomial");
  if (f.degree() == 0) return {1.0, 0.0};
  std::complex<double> v{1.0, 0.0};
  for (const auto& pp : sieve.factor(f).factors) {
    v *= pow_unit(a.value_of(pp.prime), pp.exp);
  }
  return v;
}

std::complex<double> z_statistic(const RmfAssignment& a, const PolySet& set,
                                 const SieveTable& sieve) {
  if (set.members.empty()) throw std::invalid_argument("z statistic of an empty set");
  std::complex<double> sum{0.0, 0.0};
  for (const Poly& m : set.members) sum += eval_f(a, m, sieve);
  return sum / std::sqrt(static_cast<double>(set.members.size()));
}

MartingaleBlocks martingale_blocks(const PolySet& set, const StatsCache& cache, TieBreak tb) {
  const SieveTable& sieve = cache.sieve();
  std::map<std::string, std::pair<Poly, std::vector<std::uint32_t>>> by_key;
  for (std::uint32_t i = 0; i < set.members.size(); ++i) {
    const Poly& m = set.members[i];
    if (m.degree() < 1) throw std::invalid_argument("blocks need members of degree >= 1");
    // The stats table already carries the canonical top prime; the alternative
    // tie-break recomputes it from the factorization.
    Poly top = (tb == TieBreak::kLowCoeffFirst && m.degree() <= cache.max_degree())
                   ? sieve.all_primes()[cache.at(m.degree()).max_prime[m.rank()]]
                   : arith_stats(m, sieve, tb).max_prime;
    auto it = by_key.find(top.serialize());
    if (it == by_key.end()) {
      it = by_key.emplace(top.serialize(), std::make_pair(top, std::vector<std::uint32_t>{}))
               .first;
    }
    it->second.second.push_back(i);
  }
  MartingaleBlocks out;
  out.blocks.reserve(by_key.size());
  for (auto& [key, block] : by_key) {
    (void)key;
    out.blocks.emplace_back(std::move(block.first), std::move(block.second));
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [tb](const auto& a, const auto& b) { return prime_less(a.first, b.first, tb); });
  return out;
}

std::uint64_t MartingaleBlocks::total_members() const {
  std::uint64_t n = 0;
  for (const auto& b : blocks) n += b.second.size();
  return n;
}

std::uint64_t MartingaleBlocks::max_block() const {
  std::uint64_t m = 0;
  for (const auto& b : blocks) m = std::max<std::uint64_t>(m, b.second.size());
  return m;
}

FiltrationStat filtration_stat(const PolySet& set, const Interval& iv,
                               const StatsCache& cache) {
  MartingaleBlocks blocks = martingale_blocks(set, cache);
  std::uint64_t best = 0;
  for (const auto& [prime, idxs] : blocks.blocks) {
    (void)prime;
    std::uint64_t inside = 0;
    for (std::uint32_t i : idxs) {
      if (iv.contains(set.members[i])) ++inside;
    }
    best = std::max(best, inside);
  }
  double lnq = std::log(static_cast<double>(iv.field().q()));
  double scale = std::pow(static_cast<double>(iv.field().q()), iv.radius() + 1) *
                 std::exp(-0.5 * std::sqrt((iv.radius() + 1) * lnq));
  return {best, scale, scale > 0 ? static_cast<double>(best) / scale : 0.0};
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_distance_normal(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double cdf = std_normal_cdf(sample[i]);
    ks = std::max(ks, std::max((i + 1) / n - cdf, cdf - i / n));
  }
  return ks;
}

CltReport monte_carlo(const PolySet& set, std::uint64_t trials, std::uint64_t seed,
                      const StatsCache& cache, int threads, std::uint64_t budget) {
  if (trials < 100) throw std::invalid_argument("need at least 100 trials");
  if (set.members.empty()) throw std::invalid_argument("empty set");

  CltReport rep;
  rep.set_size = set.size();
  rep.trials = trials;
  rep.seed = seed;

  EnergyReport energy = mult_energy(set, threads, budget);
  rep.energy_total = energy.total;
  rep.m4_exact = energy.m4();

  const PreparedSet prep = prepare_set(set, cache.sieve());
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(set.size()));

  rep.trial_z.assign(trials, {0.0, 0.0});
  parallel_chunks(trials, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::complex<double>> values(prep.prime_keys.size());
    for (std::uint64_t t = lo; t < hi; ++t) {
      RmfAssignment a(seed + t);
      for (std::size_t p = 0; p < prep.prime_keys.size(); ++p) {
        values[p] = a.value_of_key(prep.prime_keys[p]);
      }
      std::complex<double> sum{0.0, 0.0};
      for (const auto& factors : prep.member_factors) {
        std::complex<double> v{1.0, 0.0};
        for (const auto& [pi, e] : factors) v *= pow_unit(values[pi], e);
        sum += v;
      }
      sum *= inv_sqrt;
      rep.trial_z[t] = {sum.real(), sum.imag()};
    }
  });

  // All reductions below run over the per-trial array in index order: the layout is
  // identical for every thread count, so the doubles are too.
  double sum2 = 0, sum4 = 0, sum8 = 0;
  for (const auto& [re, im] : rep.trial_z) {
    double a2 = re * re + im * im;
    sum2 += a2;
    sum4 += a2 * a2;
    sum8 += a2 * a2 * a2 * a2;
  }
  const double tn = static_cast<double>(trials);
  rep.m2_hat = sum2 / tn;
  rep.m4_hat = sum4 / tn;
  // Sample standard errors of the means of |Z|^2 and |Z|^4.
  double var2 = (sum4 / tn - rep.m2_hat * rep.m2_hat) * tn / (tn - 1);
  double var4 = (sum8 / tn - rep.m4_hat * rep.m4_hat) * tn / (tn - 1);
  rep.se_m2 = std::sqrt(std::max(0.0, var2) / tn);
  rep.se_m4 = std::sqrt(std::max(0.0, var4) / tn);
  rep.m2_gate = std::abs(rep.m2_hat - 1.0) <= 4.0 * rep.se_m2 + 1e-12;
  rep.m4_gate = std::abs(rep.m4_hat - rep.m4_exact) <= 4.0 * rep.se_m4 + 1e-12;

  static const double kGrid[4][2] = {{1, 0}, {0, 1}, {1, 1}, {2, 0}};
  for (const auto& g : kGrid) {
    double t1 = g[0], t2 = g[1];
    double sre = 0, sim = 0;
    for (const auto& [re, im] : rep.trial_z) {
      double phase = t1 * re + t2 * im;
      sre += std::cos(phase);
      sim += std::sin(phase);
    }
    double tsq = (t1 * t1 + t2 * t2) / 2.0;
    rep.ecf.push_back({t1, t2, sre / tn, sim / tn, std::exp(-tsq / 2.0)});
  }

  std::vector<double> re_scaled, im_scaled;
  re_scaled.reserve(trials);
  im_scaled.reserve(trials);
  const double sqrt2 = std::sqrt(2.0);
  for (const auto& [re, im] : rep.trial_z) {
    re_scaled.push_back(sqrt2 * re);
    im_scaled.push_back(sqrt2 * im);
  }
  rep.ks_re = ks_distance_normal(std::move(re_scaled));
  rep.ks_im = ks_distance_normal(std::move(im_scaled));
  rep.ks_threshold_99 = 1.628 / std::sqrt(tn);
  rep.ks_gate = rep.ks_re < rep.ks_threshold_99 && rep.ks_im < rep.ks_threshold_99;

  MartingaleBlocks blocks = martingale_blocks(set, cache);
  rep.block_second_moments =
      static_cast<double>(blocks.total_members()) / static_cast<double>(set.size());
  return rep;
}

ConditionReport theorem_conditions_report(const PolySet& set, const PolySet& subset,
                                          const StatsCache& cache, int threads) {
  // Subset containment check on serialized ranks.
  std::vector<std::uint64_t> ranks;
  ranks.reserve(set.members.size());
  for (const Poly& m : set.members) ranks.push_back(m.rank());
  std::sort(ranks.begin(), ranks.end());
  for (const Poly& m : subset.members) {
    if (!std::binary_search(ranks.begin(), ranks.end(), m.rank()) ||
        subset.N != set.N || *subset.field != *set.field) {
      throw std::invalid_argument("subset is not contained in the set");
    }
  }

  ConditionReport rep;
  rep.size_a = set.size();
  rep.size_s = subset.size();
  rep.excluded_ratio =
      static_cast<double>(set.size() - subset.size()) / static_cast<double>(set.size());
  rep.off_diagonal = mult_energy(subset, threads).off_diagonal;
  rep.off_diagonal_ratio = static_cast<double>(rep.off_diagonal) /
                           (static_cast<double>(set.size()) * static_cast<double>(set.size()));
  rep.max_block = martingale_blocks(subset, cache).max_block();
  rep.max_block_ratio = static_cast<double>(rep.max_block) / static_cast<double>(set.size());
  rep.floor = size_floor(*set.field, set.N);
  rep.size_condition = static_cast<double>(set.size()) >= rep.floor;
  return rep;
}

}  // namespace fflab
