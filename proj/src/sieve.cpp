#include "fflab/sieve.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fflab {

int Factorization::p_plus() const {
  int m = 0;
  for (const auto& pp : factors) m = std::max(m, pp.prime.degree());
  return m;
}

int Factorization::p_minus() const {
  int m = 0;
  for (const auto& pp : factors) {
    if (m == 0 || pp.prime.degree() < m) m = pp.prime.degree();
  }
  return m;
}

void SieveTable::build(const Field& f, int max_degree, std::uint64_t budget) {
  field_ = &f;
  max_degree_ = max_degree;
  primes_by_deg_.assign(static_cast<std::size_t>(max_degree) + 1, {});
  spf_by_deg_.assign(static_cast<std::size_t>(max_degree) + 1, {});
  first_id_.assign(static_cast<std::size_t>(max_degree) + 1, 0);

  const std::uint64_t q = f.q();
  for (int d = 1; d <= max_degree; ++d) {
    std::uint64_t count = budgeted_pow(q, d, budget);
    std::vector<std::int32_t>& spf = spf_by_deg_[d];
    spf.assign(count, -1);

    // Strike P*A for primes P of degree <= d/2 in canonical order; the first striker of
    // a rank is its smallest prime factor. Whatever stays unstruck is irreducible
    // (a composite of degree d always has a factor of degree <= d/2).
    for (int pd = 1; 2 * pd <= d; ++pd) {
      const auto& primes = primes_by_deg_[pd];
      for (std::size_t j = 0; j < primes.size(); ++j) {
        std::int32_t id = first_id_[pd] + static_cast<std::int32_t>(j);
        std::uint64_t cof = checked_pow(q, d - pd);
        for (std::uint64_t r = 0; r < cof; ++r) {
          Poly a = Poly::monic_from_rank(f, d - pd, r);
          std::uint64_t target = (primes[j] * a).rank();
          if (spf[target] == -1) spf[target] = id;
        }
      }
    }

    std::vector<Poly> irreducibles;
    for (std::uint64_t r = 0; r < count; ++r) {
      if (spf[r] == -1) irreducibles.push_back(Poly::monic_from_rank(f, d, r));
    }
    std::sort(irreducibles.begin(), irreducibles.end(),
              [](const Poly& a, const Poly& b) { return prime_less(a, b); });
    first_id_[d] = static_cast<std::int32_t>(all_primes_.size());
    primes_by_deg_[d] = irreducibles;
    all_primes_.insert(all_primes_.end(), irreducibles.begin(), irreducibles.end());
    // Every prime is its own smallest factor.
    for (std::size_t j = 0; j < irreducibles.size(); ++j) {
      spf[irreducibles[j].rank()] = first_id_[d] + static_cast<std::int32_t>(j);
    }
  }
}

std::shared_ptr<const SieveTable> SieveTable::ensure(const Field& f, int max_degree,
                                                     std::uint64_t budget) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, int>, std::shared_ptr<const SieveTable>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(f.p(), f.k());
  auto it = registry.find(key);
  if (it != registry.end() && it->second->max_degree() >= max_degree) return it->second;
  auto table = std::shared_ptr<SieveTable>(new SieveTable());
  table->build(f, max_degree, budget);
  registry[key] = table;
  return table;
}

std::vector<Poly> SieveTable::primes_up_to(int d) const {
  std::vector<Poly> out;
  for (int i = 1; i <= d; ++i) {
    out.insert(out.end(), primes_by_deg_.at(i).begin(), primes_by_deg_.at(i).end());
  }
  return out;
}

bool SieveTable::is_irreducible(const Poly& f) const {
  if (!f.is_monic() || f.degree() < 1) {
    throw std::invalid_argument("irreducibility needs a monic polynomial of degree >= 1");
  }
  if (f.degree() > max_degree_) throw std::invalid_argument("sieve table too shallow");
  return is_irreducible_rank(f.degree(), f.rank());
}

Factorization SieveTable::factor(const Poly& f) const {
  if (!f.is_monic() || f.degree() < 1) {
    throw std::invalid_argument("factorization needs a monic polynomial of degree >= 1");
  }
  if (f.degree() > max_degree_) throw std::invalid_argument("sieve table too shallow");

  // Successive smallest-prime-factor extractions produce strictly increasing primes, so
  // the output is already sorted canonically.
  Factorization out;
  Poly rest = f;
  while (rest.degree() >= 1) {
    std::int32_t id = spf_by_deg_[rest.degree()][rest.rank()];
    const Poly& p = all_primes_[id];
    if (p == rest) {
      out.factors.push_back({rest, 1});
      break;
    }
    int e = 0;
    while (true) {
      auto [quot, rem] = Poly::divmod(rest, p);
      if (!rem.is_zero()) break;
      rest = quot;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  return out;
}

std::uint64_t pi_q(const Field& f, int N) {
  if (N < 1) throw std::invalid_argument("pi_q needs N >= 1");
  // Mobius over the integer divisors of N.
  auto mobius = [](int n) {
    int m = 1;
    for (int d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        n /= d;
        if (n % d == 0) return 0;
        m = -m;
      }
    }
    if (n > 1) m = -m;
    return m;
  };
  __int128 sum = 0;
  for (int d = 1; d <= N; ++d) {
    if (N % d != 0) continue;
    int mu = mobius(d);
    if (mu == 0) continue;
    sum += static_cast<__int128>(mu) * static_cast<__int128>(checked_pow(f.q(), N / d));
  }
  if (sum < 0 || sum % N != 0) throw std::logic_error("prime-count formula inconsistency");
  return static_cast<std::uint64_t>(sum / N);
}

bool is_irreducible(const Poly& f) {
  if (!f.is_monic() || f.degree() < 1) {
    throw std::invalid_argument("irreducibility needs a monic polynomial of degree >= 1");
  }
  const Field& field = f.field();
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    std::uint64_t count = checked_pow(field.q(), d);
    for (std::uint64_t r = 0; r < count; ++r) {
      if (f.divisible_by(Poly::monic_from_rank(field, d, r))) return false;
    }
  }
  return true;
}

Factorization factor(const Poly& f) {
  auto sieve = SieveTable::ensure(f.field(), std::max(1, f.degree()));
  return sieve->factor(f);
}

ArithStats arith_stats(const Poly& f, const SieveTable& sieve, TieBreak tb) {
  if (f.degree() < 1) throw std::invalid_argument("arith_stats needs degree >= 1");
  Factorization fac = sieve.factor(f);
  ArithStats st{fac.big_omega(), fac.small_omega(), fac.p_plus(), fac.p_minus(),
                fac.factors.front().prime};
  for (const auto& pp : fac.factors) {
    if (prime_less(st.max_prime, pp.prime, tb)) st.max_prime = pp.prime;
  }
  return st;
}

std::uint64_t totient(const Poly& f, const SieveTable& sieve) {
  if (!f.is_monic()) throw std::invalid_argument("totient needs a monic polynomial");
  if (f.degree() == 0) return 1;
  std::uint64_t phi = 1;
  for (const auto& pp : sieve.factor(f).factors) {
    std::uint64_t np = checked_pow(f.field().q(), pp.prime.degree());
    phi *= np - 1;
    for (int i = 1; i < pp.exp; ++i) phi *= np;
  }
  return phi;
}

}  // namespace fflab
