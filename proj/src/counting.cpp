#include "fflab/counting.hpp"

#include <cmath>
#include <stdexcept>

namespace fflab {

namespace {

DegreeStats build_degree_stats(const Field& f, int degree, const SieveTable& sieve,
                               const std::vector<DegreeStats>& lower,
                               std::uint64_t budget) {
  DegreeStats st;
  st.degree = degree;
  std::uint64_t count = budgeted_pow(f.q(), degree, budget);
  st.p_plus.resize(count);
  st.p_minus.resize(count);
  st.big_omega.resize(count);
  st.small_omega.resize(count);
  st.max_prime.resize(count);

  for (std::uint64_t r = 0; r < count; ++r) {
    std::int32_t id = sieve.spf_id(degree, r);
    if (sieve.is_irreducible_rank(degree, r)) {
      st.p_plus[r] = st.p_minus[r] = static_cast<std::uint8_t>(degree);
      st.big_omega[r] = st.small_omega[r] = 1;
      st.max_prime[r] = id;
      continue;
    }
    // Composite: peel the smallest prime factor and extend the quotient's stats.
    const Poly& p = sieve.all_primes()[id];
    const Poly self = Poly::monic_from_rank(f, degree, r);
    const Poly quot = Poly::divmod(self, p).first;
    int qd = quot.degree();
    const DegreeStats& sub = lower[qd];
    std::uint64_t qr = quot.rank();
    bool p_divides_quot = (sieve.spf_id(qd, qr) == id);
    st.p_minus[r] = static_cast<std::uint8_t>(p.degree());
    st.p_plus[r] = std::max<std::uint8_t>(static_cast<std::uint8_t>(p.degree()), sub.p_plus[qr]);
    st.big_omega[r] = static_cast<std::uint8_t>(sub.big_omega[qr] + 1);
    st.small_omega[r] = static_cast<std::uint8_t>(sub.small_omega[qr] + (p_divides_quot ? 0 : 1));
    st.max_prime[r] = std::max(id, sub.max_prime[qr]);
  }
  return st;
}

}  // namespace

StatsCache::StatsCache(const Field& f, int max_degree, std::uint64_t budget)
    : field_(&f), max_degree_(max_degree) {
  sieve_ = SieveTable::ensure(f, std::max(1, max_degree), budget);
  stats_.resize(static_cast<std::size_t>(max_degree) + 1);
  for (int d = 1; d <= max_degree; ++d) {
    stats_[d] = build_degree_stats(f, d, *sieve_, stats_, budget);
  }
}

const DegreeStats& StatsCache::at(int degree) const {
  if (degree < 1 || degree > max_degree_) {
    throw std::invalid_argument("degree outside the stats cache");
  }
  return stats_[degree];
}

SmoothRoughTable::SmoothRoughTable(const StatsCache& cache, int max_n) : max_n_(max_n) {
  psi_.assign(max_n + 1, std::vector<std::uint64_t>(max_n + 1, 0));
  phi_.assign(max_n + 1, std::vector<std::uint64_t>(max_n + 1, 0));
  for (int d = 0; d <= max_n; ++d) psi_[0][d] = 1;
  for (int z = 0; z <= max_n; ++z) phi_[0][z] = 1;
  for (int n = 1; n <= max_n; ++n) {
    const DegreeStats& st = cache.at(n);
    for (std::size_t r = 0; r < st.p_plus.size(); ++r) {
      for (int d = st.p_plus[r]; d <= max_n; ++d) psi_[n][d]++;
      for (int z = 0; z < st.p_minus[r] && z <= max_n; ++z) phi_[n][z]++;
    }
  }
}

std::uint64_t SmoothRoughTable::psi(int n, int d) const {
  if (n < 0 || n > max_n_) throw std::invalid_argument("psi: n out of table");
  if (d < 0) return n == 0 ? 1 : 0;
  return psi_[n][std::min(d, max_n_)];
}

std::uint64_t SmoothRoughTable::phi(int n, int z) const {
  if (n < 0 || n > max_n_) throw std::invalid_argument("phi: n out of table");
  if (z < 0) throw std::invalid_argument("phi: z must be >= 0");
  if (z > max_n_) return n == 0 ? 1 : 0;  // factor degrees never exceed n <= max_n
  return phi_[n][z];
}

std::uint64_t psi_set(const std::vector<Poly>& set, int d, const SieveTable& sieve) {
  std::uint64_t c = 0;
  for (const Poly& f : set) {
    int pp = f.degree() == 0 ? 0 : sieve.factor(f).p_plus();
    if (pp <= d) ++c;
  }
  return c;
}

std::uint64_t phi_set(const std::vector<Poly>& set, int z, const SieveTable& sieve) {
  std::uint64_t c = 0;
  for (const Poly& f : set) {
    if (f.degree() == 0) {
      ++c;  // F = 1 has no prime factor below any threshold
      continue;
    }
    if (sieve.factor(f).p_minus() > z) ++c;
  }
  return c;
}

std::uint64_t psi_recurrence(const Field& f, int N, int d) {
  if (N < 0 || d < 0) throw std::invalid_argument("psi_recurrence needs N, d >= 0");
  if (N == 0) return 1;
  if (d == 0) return 0;
  std::vector<std::uint64_t> memo(static_cast<std::size_t>(N) + 1, 0);
  memo[0] = 1;
  std::vector<std::uint64_t> prime_counts(std::min(N, d) + 1, 0);
  for (int k = 1; k <= std::min(N, d); ++k) prime_counts[k] = pi_q(f, k);
  for (int n = 1; n <= N; ++n) {
    __int128 sum = 0;
    for (int k = 1; k <= std::min(n, d); ++k) {
      for (int m = 1; m * k <= n; ++m) {
        sum += static_cast<__int128>(memo[n - m * k]) * k * prime_counts[k];
      }
    }
    if (sum % n != 0) throw std::logic_error("smooth-count recurrence not divisible by n");
    __int128 value = sum / n;
    if (value > static_cast<__int128>(UINT64_MAX)) {
      throw budget_error("smooth count exceeds 64 bits");
    }
    memo[n] = static_cast<std::uint64_t>(value);
  }
  return memo[N];
}

HildebrandCheck check_hildebrand(const StatsCache& cache, int h, int d, const Poly& A) {
  int N = A.degree();
  if (h < 0 || h > N - 1) throw std::invalid_argument("h out of [0, N-1]");
  if (d < 0) throw std::invalid_argument("d must be >= 0");
  Interval iv(A, h);
  const DegreeStats& st = cache.at(N);
  std::uint64_t lhs = 0;
  std::uint64_t begin = iv.rank_begin();
  for (std::uint64_t r = begin; r < begin + iv.size(); ++r) {
    if (st.p_plus[r] <= d) ++lhs;
  }
  std::uint64_t rhs;
  if (d == 0) {
    rhs = 0;  // no degree-(h+1) polynomial is 0-smooth
  } else {
    const DegreeStats& top = cache.at(h + 1);
    rhs = 0;
    for (std::uint8_t pp : top.p_plus) {
      if (pp <= d) ++rhs;
    }
  }
  return {lhs, rhs, lhs <= rhs};
}

ChebyshevCheck check_chebyshev(const StatsCache& cache, int h, int z, const Poly& A) {
  int N = A.degree();
  if (h < 0 || h > N - 1) throw std::invalid_argument("h out of [0, N-1]");
  if (z < 1) throw std::invalid_argument("z must be >= 1");
  Interval iv(A, h);
  const DegreeStats& st = cache.at(N);
  std::uint64_t count = 0;
  std::uint64_t begin = iv.rank_begin();
  for (std::uint64_t r = begin; r < begin + iv.size(); ++r) {
    if (st.p_minus[r] > z) ++count;
  }
  const std::uint64_t q = cache.field().q();
  std::uint64_t num = checked_pow(q, h + 2);
  std::uint64_t den = static_cast<std::uint64_t>(z) * (q - 1);
  bool applicable = (2 * z <= h + 1);
  // count <= q^{h+2} / (z (q-1)) compared exactly by cross-multiplication.
  bool holds = static_cast<__int128>(count) * den <= static_cast<__int128>(num);
  return {count, num, den, holds, applicable};
}

RoughBoundsCheck rough_bounds_check(const StatsCache& cache, int N, int z) {
  if (N < 1 || z < 1) throw std::invalid_argument("rough_bounds_check needs N, z >= 1");
  const DegreeStats& st = cache.at(N);
  std::uint64_t count = 0;
  for (std::uint8_t pm : st.p_minus) {
    if (pm > z) ++count;
  }
  const std::uint64_t q = cache.field().q();
  std::uint64_t qn = checked_pow(q, N);
  RoughBoundsCheck out;
  out.count = count;
  out.lower_num = qn;
  out.lower_den = 10ull * z + 5;
  out.upper_num = checked_pow(q, N + 1);
  out.upper_den = static_cast<std::uint64_t>(z) * (q - 1);
  out.applicable = (2 * z <= N);
  bool lower_ok =
      static_cast<__int128>(out.lower_num) <= static_cast<__int128>(count) * out.lower_den;
  bool upper_ok =
      static_cast<__int128>(count) * out.upper_den <= static_cast<__int128>(out.upper_num);
  out.holds = lower_ok && upper_ok;
  return out;
}

RankinCheck rankin_bound_check(const StatsCache& cache, int N, int d) {
  if (N < 1 || d < 1) throw std::invalid_argument("rankin check needs N, d >= 1");
  SmoothRoughTable table(cache, N);
  std::uint64_t lhs = 0;
  for (int n = 1; n <= N; ++n) lhs += table.psi(n, std::min(d, N));
  double qn = std::pow(static_cast<double>(cache.field().q()), N);
  double rhs = qn * std::exp(-2.0 * N / (3.0 * d) + 4.0 * std::log(static_cast<double>(d)) + 4.0);
  bool holds = static_cast<double>(lhs) <= rhs * (1.0 + 1e-12);
  return {lhs, rhs, holds, d <= N};
}

}  // namespace fflab
