#include "fflab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fflab/parallel.hpp"

namespace fflab {

namespace {

int bits_per_coeff(std::uint64_t q) {
  int b = 0;
  std::uint64_t v = q - 1;
  while (v > 0) {
    ++b;
    v >>= 1;
  }
  return std::max(b, 1);
}

using Key128 = unsigned __int128;

// Multiplies two coefficient vectors and packs the product's coefficients into one
// exact integer key. Width must satisfy (deg(a)+deg(b)+1)*bits <= 128.
Key128 product_key(const std::vector<elem_t>& a, const std::vector<elem_t>& b,
                   const Field& f, int bits, std::vector<elem_t>& scratch) {
  scratch.assign(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      scratch[i + j] = f.add(scratch[i + j], f.mul(a[i], b[j]));
    }
  }
  Key128 key = 0;
  for (std::size_t i = scratch.size(); i-- > 0;) {
    key = (key << bits) | scratch[i];
  }
  return key;
}

void validate_set(const PolySet& set) {
  if (set.field == nullptr) throw std::invalid_argument("set has no field");
  for (const Poly& m : set.members) {
    if (!m.is_monic() || m.degree() != set.N) {
      throw std::invalid_argument("set member is not monic of the common degree");
    }
  }
}

bool kprime_regime_warn(int N, int k) {
  return k < 1 || static_cast<double>(k) > std::log(std::max(N, 2)) + 1.0;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::kInterval: return "interval";
    case Family::kKprimeP: return "kprime-P";
    case Family::kKprimeS: return "kprime-S";
    case Family::kKprimeD: return "kprime-D";
    case Family::kShiftedPrime: return "shifted-prime";
    case Family::kRough: return "rough";
    case Family::kCustom: return "custom";
  }
  return "custom";
}

Family family_from_name(const std::string& name) {
  if (name == "interval") return Family::kInterval;
  if (name == "kprime-P") return Family::kKprimeP;
  if (name == "kprime-S") return Family::kKprimeS;
  if (name == "kprime-D") return Family::kKprimeD;
  if (name == "shifted-prime") return Family::kShiftedPrime;
  if (name == "rough") return Family::kRough;
  if (name == "custom") return Family::kCustom;
  throw std::invalid_argument("unknown family: " + name);
}

PolySet build_interval_set(const Poly& center, int h, std::uint64_t budget) {
  Interval iv(center, h);
  PolySet set;
  set.field = &center.field();
  set.N = center.degree();
  set.tag = Family::kInterval;
  set.params = {{"h", std::to_string(h)}, {"center", center.serialize()}};
  set.members = iv.members(budget);
  set.regime_warning = !(set.N >= 3 && h >= 1 && h <= set.N - 2);
  return set;
}

PolySet build_kprime(const StatsCache& cache, int N, int k, char variant) {
  if (variant != 'P' && variant != 'S' && variant != 'D') {
    throw std::invalid_argument("kprime variant must be P, S or D");
  }
  if (N < 1 || k < 0) throw std::invalid_argument("kprime needs N >= 1, k >= 0");
  const DegreeStats& st = cache.at(N);
  PolySet set;
  set.field = &cache.field();
  set.N = N;
  set.tag = variant == 'P' ? Family::kKprimeP
                           : (variant == 'S' ? Family::kKprimeS : Family::kKprimeD);
  set.params = {{"k", std::to_string(k)}, {"variant", std::string(1, variant)}};
  for (std::uint64_t r = 0; r < st.big_omega.size(); ++r) {
    bool keep = false;
    switch (variant) {
      case 'P': keep = st.big_omega[r] == k; break;
      case 'S': keep = st.big_omega[r] == k && st.small_omega[r] == k; break;
      case 'D': keep = st.small_omega[r] == k; break;
    }
    if (keep) set.members.push_back(Poly::monic_from_rank(cache.field(), N, r));
  }
  set.regime_warning = kprime_regime_warn(N, k);
  return set;
}

PolySet build_shifted_primes(const StatsCache& cache, int N, const Poly& shift) {
  if (shift.degree() >= N) {
    throw std::invalid_argument("shift degree must be at most N-1");
  }
  if (shift.field() != cache.field()) throw std::invalid_argument("field mismatch");
  PolySet set;
  set.field = &cache.field();
  set.N = N;
  set.tag = Family::kShiftedPrime;
  set.params = {{"shift", shift.serialize()}};
  for (const Poly& p : cache.sieve().primes_of_degree(N)) {
    set.members.push_back(p + shift);
  }
  set.regime_warning = cache.field().q() < 3;  // the theorem excludes q = 2
  return set;
}

PolySet build_rough(const StatsCache& cache, int N, int z) {
  if (N < 1 || z < 0) throw std::invalid_argument("rough needs N >= 1, z >= 0");
  const DegreeStats& st = cache.at(N);
  PolySet set;
  set.field = &cache.field();
  set.N = N;
  set.tag = Family::kRough;
  set.params = {{"z", std::to_string(z)}};
  for (std::uint64_t r = 0; r < st.p_minus.size(); ++r) {
    if (st.p_minus[r] > z) set.members.push_back(Poly::monic_from_rank(cache.field(), N, r));
  }
  set.regime_warning = !(z * z >= N && z <= N - 1);
  return set;
}

PolySet make_custom_set(const Field& field, std::vector<Poly> members) {
  PolySet set;
  set.field = &field;
  set.members = std::move(members);
  set.tag = Family::kCustom;
  if (!set.members.empty()) set.N = set.members.front().degree();
  std::sort(set.members.begin(), set.members.end(),
            [](const Poly& a, const Poly& b) { return a.rank() < b.rank(); });
  set.members.erase(std::unique(set.members.begin(), set.members.end()), set.members.end());
  validate_set(set);
  return set;
}

EnergyReport mult_energy(const PolySet& set, int threads, std::uint64_t budget) {
  validate_set(set);
  const std::uint64_t n = set.size();
  EnergyReport rep;
  rep.set_size = n;
  if (n == 0) return rep;

  const Field& f = *set.field;
  const int bits = bits_per_coeff(f.q());
  if ((2 * set.N + 1) * bits > 128) {
    throw budget_error("product keys would exceed 128 bits");
  }
  const std::uint64_t pair_count = n * (n - 1) / 2;
  if (pair_count + n >= budget) throw budget_error("energy pair budget exceeded");

  // Keys of all unordered products F_i F_j with i < j, plus the n squares separately.
  std::vector<Key128> keys(pair_count);
  std::vector<Key128> squares(n);
  std::vector<std::uint64_t> row_offset(n, 0);
  for (std::uint64_t i = 1; i < n; ++i) {
    row_offset[i] = row_offset[i - 1] + (n - i);
  }
  parallel_chunks(n, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<elem_t> scratch;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const auto& ci = set.members[i].coeffs();
      squares[i] = product_key(ci, ci, f, bits, scratch);
      std::uint64_t out = row_offset[i];
      for (std::uint64_t j = i + 1; j < n; ++j) {
        keys[out++] = product_key(ci, set.members[j].coeffs(), f, bits, scratch);
      }
    }
  });

  std::sort(keys.begin(), keys.end());
  std::sort(squares.begin(), squares.end());

  // Ordered multiplicity of a product v is 2*(pairs i<j) + (1 if v is a square).
  std::uint64_t total = 0;
  std::uint64_t squares_consumed = 0;
  std::size_t i = 0;
  while (i < keys.size()) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    std::uint64_t u = j - i;
    std::uint64_t m = 2 * u;
    if (std::binary_search(squares.begin(), squares.end(), keys[i])) {
      m += 1;
      ++squares_consumed;
    }
    total += m * m;
    i = j;
  }
  total += n - squares_consumed;  // squares that match no cross product: multiplicity 1

  rep.total = total;
  rep.diagonal = 2 * n * n - n;
  if (rep.total < rep.diagonal) {
    throw std::logic_error("energy fell below the diagonal count");
  }
  rep.off_diagonal = rep.total - rep.diagonal;
  return rep;
}

std::uint64_t offdiag_MN_formula(const Field& f, int N) {
  if (N < 1) throw std::invalid_argument("offdiag formula needs N >= 1");
  const __int128 q2n = static_cast<__int128>(checked_pow(f.q(), 2 * N));
  const __int128 q2n1 = static_cast<__int128>(checked_pow(f.q(), 2 * N - 1));
  const __int128 qn = static_cast<__int128>(checked_pow(f.q(), N));
  __int128 v = static_cast<__int128>(N - 1) * q2n - static_cast<__int128>(N) * q2n1 + qn;
  if (v < 0) throw std::logic_error("off-diagonal formula negative");
  return static_cast<std::uint64_t>(v);
}

IntervalEnergyCheck check_short_interval_energy(const Interval& iv, int threads,
                                                std::uint64_t budget) {
  const int N = iv.degree();
  const int h = iv.radius();
  if (h < 1 || h > N - 1) throw std::invalid_argument("interval energy needs 1 <= h <= N-1");
  PolySet set;
  set.field = &iv.field();
  set.N = N;
  set.tag = Family::kInterval;
  set.members = iv.members(budget);
  EnergyReport rep = mult_energy(set, threads, budget);

  IntervalEnergyCheck out;
  out.off_diagonal = rep.off_diagonal;
  if (2 * h < N) {
    out.bound = 0;
    out.holds = (rep.off_diagonal == 0);
  } else {
    __int128 b = static_cast<__int128>(2 * (h - N / 2 + 1)) *
                 static_cast<__int128>(checked_pow(iv.field().q(), 3 * h - N + 3));
    out.bound = static_cast<std::uint64_t>(b);
    out.holds = rep.off_diagonal <= out.bound;
  }
  return out;
}

namespace {

// Scratch-buffer arithmetic for the gcd recount hot loop: coefficient arrays indexed by
// degree, no allocation per pair.

int mod_in_place(const Field& f, std::vector<elem_t>& a, int da, const std::vector<elem_t>& b,
                 int db) {
  elem_t lead_inv = f.inv(b[db]);
  while (da >= db) {
    elem_t top = a[da];
    if (top != 0) {
      elem_t factor = f.mul(top, lead_inv);
      for (int j = 0; j < db; ++j) {
        a[da - db + j] = f.sub(a[da - db + j], f.mul(factor, b[j]));
      }
    }
    --da;
    while (da >= 0 && a[da] == 0) --da;
  }
  return da;
}

// Monic gcd of two loaded buffers; the result lands in a with its degree returned.
int gcd_in_place(const Field& f, std::vector<elem_t>& a, int da, std::vector<elem_t>& b,
                 int db) {
  while (db >= 0) {
    da = mod_in_place(f, a, da, b, db);
    std::swap(a, b);
    std::swap(da, db);
  }
  if (da >= 0 && a[da] != 1) {
    elem_t s = f.inv(a[da]);
    for (int i = 0; i <= da; ++i) a[i] = f.mul(a[i], s);
  }
  return da;
}

// Exact division x / g for monic g; writes the quotient rank (low coefficients as base-q
// digits) and returns it. rem is scratch.
std::uint64_t exact_quotient_rank(const Field& f, const std::vector<elem_t>& x, int dx,
                                  const std::vector<elem_t>& g, int dg,
                                  std::vector<elem_t>& rem) {
  rem.assign(x.begin(), x.begin() + dx + 1);
  std::uint64_t rank = 0;
  for (int i = dx; i >= dg; --i) {
    elem_t factor = rem[i];  // quotient coefficient of t^{i-dg}
    if (factor != 0) {
      for (int j = 0; j < dg; ++j) {
        rem[i - dg + j] = f.sub(rem[i - dg + j], f.mul(factor, g[j]));
      }
    }
    rem[i] = factor;  // the monic top term cancels; reuse the slot for the quotient
  }
  for (int j = 0; j < dg; ++j) {
    if (rem[j] != 0) throw std::logic_error("gcd does not divide its argument");
  }
  // Quotient coefficients now occupy rem[dg .. dx] (degree 0 .. dx-dg); fold the
  // non-leading ones into a rank.
  for (int i = dx - 1; i >= dg; --i) rank = rank * f.q() + rem[i];
  return rank;
}

}  // namespace

std::uint64_t gcd_parametrized_offdiag(const PolySet& set, int threads,
                                       std::uint64_t budget) {
  validate_set(set);
  const std::uint64_t n = set.size();
  if (n < 2) return 0;
  if (n * (n - 1) >= budget) throw budget_error("gcd recount budget exceeded");
  if (set.N * bits_per_coeff(set.field->q()) > 60) {
    throw budget_error("cofactor ranks would exceed the 60-bit signature packing");
  }
  const Field& f = *set.field;

  // Signature of an ordered pair (X, Y), X != Y: the coprime cofactors (A, B) with
  // X = G A, Y = G B, G = gcd(X, Y). Each multiplier G with both products in the set
  // contributes one pair per signature; off-diagonal quadruples pick ordered pairs of
  // distinct multipliers G != H of one signature. Coprime pairs have the unique
  // multiplier G = 1 (members share one degree), so they never contribute; a sentinel
  // key excludes them from the run counting.
  const Key128 kSkip = ~Key128{0};
  const std::uint64_t pairs = n * (n - 1) / 2;
  std::vector<Key128> sig(2 * pairs);
  std::vector<std::uint64_t> row_offset(n, 0);
  for (std::uint64_t i = 1; i < n; ++i) row_offset[i] = row_offset[i - 1] + (n - i);

  parallel_chunks(n, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<elem_t> ga, gb, rem;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const auto& xi = set.members[i].coeffs();
      for (std::uint64_t j = i + 1; j < n; ++j) {
        std::uint64_t out = 2 * (row_offset[i] + (j - i - 1));
        const auto& yj = set.members[j].coeffs();
        ga.assign(xi.begin(), xi.end());
        gb.assign(yj.begin(), yj.end());
        int dg = gcd_in_place(f, ga, static_cast<int>(xi.size()) - 1, gb,
                              static_cast<int>(yj.size()) - 1);
        if (dg == 0) {
          sig[out] = kSkip;
          sig[out + 1] = kSkip;
          continue;
        }
        int da = set.N - dg;
        std::uint64_t rank_a = exact_quotient_rank(f, xi, set.N, ga, dg, rem);
        std::uint64_t rank_b = exact_quotient_rank(f, yj, set.N, ga, dg, rem);
        sig[out] = (static_cast<Key128>(da) << 120) | (static_cast<Key128>(rank_a) << 60) |
                   static_cast<Key128>(rank_b);
        sig[out + 1] = (static_cast<Key128>(da) << 120) |
                       (static_cast<Key128>(rank_b) << 60) | static_cast<Key128>(rank_a);
      }
    }
  });

  std::sort(sig.begin(), sig.end());
  std::uint64_t quadruples = 0;
  std::size_t i = 0;
  while (i < sig.size() && sig[i] != kSkip) {
    std::size_t j = i;
    while (j < sig.size() && sig[j] == sig[i]) ++j;
    std::uint64_t m = j - i;
    quadruples += m * (m - 1);
    i = j;
  }
  return quadruples;
}

double size_floor(const Field& f, int N) {
  double lnq = std::log(static_cast<double>(f.q()));
  return std::pow(static_cast<double>(f.q()), N) * std::exp(-std::sqrt(N * lnq) / 3.0);
}

bool size_condition_satisfied(const PolySet& set) {
  return static_cast<double>(set.size()) >= size_floor(*set.field, set.N);
}

}  // namespace fflab
