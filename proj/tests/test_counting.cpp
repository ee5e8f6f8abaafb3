#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fflab/counting.hpp"

using namespace fflab;

TEST_CASE("degree stats agree with direct factorization") {
  for (std::uint64_t q : {2ull, 3ull, 4ull}) {
    const Field& f = Field::get_by_order(q);
    int max_n = q == 2 ? 8 : 5;
    StatsCache cache(f, max_n);
    const SieveTable& sieve = cache.sieve();
    for (int n = 1; n <= max_n; ++n) {
      const DegreeStats& st = cache.at(n);
      std::uint64_t count = checked_pow(q, n);
      for (std::uint64_t r = 0; r < count; ++r) {
        Poly p = Poly::monic_from_rank(f, n, r);
        Factorization fac = sieve.factor(p);
        CHECK(st.p_plus[r] == fac.p_plus());
        CHECK(st.p_minus[r] == fac.p_minus());
        CHECK(st.big_omega[r] == fac.big_omega());
        CHECK(st.small_omega[r] == fac.small_omega());
        // max_prime must identify the canonically largest prime factor.
        const Poly& mp = sieve.all_primes()[st.max_prime[r]];
        bool divides = p.divisible_by(mp);
        CHECK(divides);
        for (const auto& pp : fac.factors) CHECK(!prime_less(mp, pp.prime));
      }
    }
  }
}

TEST_CASE("psi and phi on explicit sets") {
  const Field& f2 = Field::get(2);
  auto sieve = SieveTable::ensure(f2, 4);
  std::vector<Poly> m2;
  for_each_monic(f2, 2, [&](const Poly& p) { m2.push_back(p); });
  CHECK(psi_set(m2, 1, *sieve) == 3);   // t^2, t^2+t, t^2+1
  CHECK(phi_set(m2, 1, *sieve) == 1);   // only t^2+t+1
  CHECK(psi_set(m2, 2, *sieve) == 4);   // d >= max degree counts everything
  std::vector<Poly> withone = m2;
  withone.push_back(Poly::one(f2));
  CHECK(psi_set(withone, 0, *sieve) == 1);  // F = 1 is d-smooth for every d
  CHECK(phi_set(withone, 2, *sieve) == 1);  // and z-rough for every z
}

TEST_CASE("smooth-rough table basics") {
  const Field& f2 = Field::get(2);
  StatsCache cache(f2, 6);
  SmoothRoughTable table(cache, 6);
  CHECK(table.psi(0, 0) == 1);
  CHECK(table.psi(2, 1) == 3);
  CHECK(table.phi(2, 1) == 1);
  CHECK(table.phi(4, 2) == 3);  // the three irreducible quartics
  for (int n = 0; n <= 6; ++n) {
    CHECK(table.psi(n, 6) == checked_pow(2, n));
    // psi nondecreasing in d, phi nonincreasing in z.
    for (int d = 1; d <= 6; ++d) CHECK(table.psi(n, d) >= table.psi(n, d - 1));
    for (int z = 1; z <= 6; ++z) CHECK(table.phi(n, z) <= table.phi(n, z - 1));
  }
}

TEST_CASE("recurrence reproduces psi exhaustively") {
  for (std::uint64_t q : {2ull, 3ull}) {
    const Field& f = Field::get_by_order(q);
    StatsCache cache(f, 8);
    SmoothRoughTable table(cache, 8);
    for (int n = 0; n <= 8; ++n) {
      for (int d = 1; d <= 10; ++d) {
        CHECK(psi_recurrence(f, n, d) == table.psi(n, std::min(d, 8)));
      }
    }
    // d >= N must reproduce the full count.
    CHECK(psi_recurrence(f, 8, 8) == checked_pow(q, 8));
    CHECK(psi_recurrence(f, 8, 12) == checked_pow(q, 8));
  }
}

TEST_CASE("recurrence hand evaluation at q=2, N=2, d=1") {
  CHECK(psi_recurrence(Field::get(2), 2, 1) == 3);
  CHECK(psi_recurrence(Field::get(3), 3, 1) == 10);  // equals the brute count below
  StatsCache cache(Field::get(3), 3);
  SmoothRoughTable table(cache, 3);
  CHECK(table.psi(3, 1) == 10);
}

TEST_CASE("hildebrand inequality fixtures and exhaustive sweep") {
  const Field& f2 = Field::get(2);
  StatsCache cache2(f2, 5);

  // q=2, N=4, h=1, d=1, A=t^4: rhs = psi(2,1) = 3.
  HildebrandCheck fixture = check_hildebrand(cache2, 1, 1, Poly::t_power(f2, 4));
  CHECK(fixture.rhs == 3);
  CHECK(fixture.lhs <= 3);
  CHECK(fixture.holds);

  for (std::uint64_t q : {2ull, 3ull}) {
    const Field& f = Field::get_by_order(q);
    StatsCache cache(f, 5);
    for (int N = 1; N <= 5; ++N) {
      std::uint64_t centers = checked_pow(q, N);
      for (std::uint64_t cr = 0; cr < centers; ++cr) {
        Poly A = Poly::monic_from_rank(f, N, cr);
        for (int h = 0; h <= N - 1; ++h) {
          for (int d = 0; d <= N + 1; ++d) {
            HildebrandCheck c = check_hildebrand(cache, h, d, A);
            CHECK(c.holds);
            if (d >= h + 1) CHECK(c.rhs == checked_pow(q, h + 1));
          }
        }
      }
    }
  }
}

TEST_CASE("partition consistency of smooth counts over disjoint intervals") {
  for (std::uint64_t q : {2ull, 3ull}) {
    const Field& f = Field::get_by_order(q);
    StatsCache cache(f, 5);
    SmoothRoughTable table(cache, 5);
    int N = 5;
    for (int h = 0; h <= N - 1; ++h) {
      std::uint64_t block = checked_pow(q, h + 1);
      for (int d = 0; d <= N; ++d) {
        std::uint64_t total = 0;
        for (std::uint64_t base = 0; base < checked_pow(q, N); base += block) {
          total += check_hildebrand(cache, h, d, Poly::monic_from_rank(f, N, base)).lhs;
        }
        CHECK(total == (d == 0 ? 0 : table.psi(N, std::min(d, 5))));
      }
    }
  }
}

TEST_CASE("chebyshev inequality fixtures and exhaustive sweep") {
  const Field& f2 = Field::get(2);
  StatsCache cache2(f2, 5);

  // q=2, N=4, h=3, z=2, A=t^4: count = phi(M_4, 2) = 3, bound = 16.
  ChebyshevCheck fixture = check_chebyshev(cache2, 3, 2, Poly::t_power(f2, 4));
  CHECK(fixture.count == 3);
  CHECK(fixture.bound_num == 32);
  CHECK(fixture.bound_den == 2);
  CHECK(fixture.holds);
  CHECK(fixture.applicable);

  for (std::uint64_t q : {2ull, 3ull}) {
    const Field& f = Field::get_by_order(q);
    StatsCache cache(f, 5);
    for (int N = 1; N <= 5; ++N) {
      std::uint64_t centers = checked_pow(q, N);
      for (std::uint64_t cr = 0; cr < centers; ++cr) {
        Poly A = Poly::monic_from_rank(f, N, cr);
        for (int h = 0; h <= N - 1; ++h) {
          for (int z = 1; 2 * z <= h + 1; ++z) {
            ChebyshevCheck c = check_chebyshev(cache, h, z, A);
            CHECK(c.applicable);
            CHECK(c.holds);
          }
          // Out-of-range z still returns the count, flagged not applicable.
          ChebyshevCheck na = check_chebyshev(cache, h, h + 2, A);
          CHECK(!na.applicable);
        }
      }
    }
  }
}

TEST_CASE("rough polynomial window") {
  const Field& f2 = Field::get(2);
  StatsCache cache2(f2, 6);
  RoughBoundsCheck c = rough_bounds_check(cache2, 2, 1);
  CHECK(c.count == 1);
  CHECK(c.lower_num == 4);
  CHECK(c.lower_den == 15);
  CHECK(c.upper_num == 8);
  CHECK(c.upper_den == 1);
  CHECK(c.holds);

  const Field& f3 = Field::get(3);
  StatsCache cache3(f3, 6);
  for (int N = 2; N <= 6; ++N) {
    for (int z = 1; 2 * z <= N; ++z) {
      CHECK(rough_bounds_check(cache3, N, z).holds);
      CHECK(rough_bounds_check(cache2, N, z).holds);
    }
  }
}

TEST_CASE("rankin-style cumulative smooth bound") {
  const Field& f2 = Field::get(2);
  StatsCache cache2(f2, 6);
  RankinCheck a = rankin_bound_check(cache2, 6, 2);
  CHECK(a.holds);
  RankinCheck triv = rankin_bound_check(cache2, 6, 6);
  CHECK(triv.holds);

  const Field& f3 = Field::get(3);
  StatsCache cache3(f3, 5);
  CHECK(rankin_bound_check(cache3, 5, 1).holds);
  for (int d = 1; d <= 5; ++d) CHECK(rankin_bound_check(cache3, 5, d).holds);
}

TEST_CASE("totient stays under q^N and the measured lower constant is positive") {
  const Field& f2 = Field::get(2);
  StatsCache cache(f2, 7);
  for (int N = 2; N <= 7; ++N) {
    double min_ratio = 1e300;
    std::uint64_t qn = checked_pow(2, N);
    for_each_monic(f2, N, [&](const Poly& p) {
      std::uint64_t phi = totient(p, cache.sieve());
      CHECK(phi <= qn);
      double ratio = static_cast<double>(phi) * std::log(N) * std::log(N) / qn;
      min_ratio = std::min(min_ratio, ratio);
    });
    CHECK(min_ratio > 0.0);
    MESSAGE("measured totient constant at N=", N, ": ", min_ratio);
  }
}
