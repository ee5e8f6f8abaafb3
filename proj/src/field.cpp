#include "fflab/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace fflab {

namespace {

// Arithmetic in F_p[x] on little-endian coefficient vectors, used only to locate the
// canonical modulus. Kept separate from Poly, which works over an already-built Field.

using FpVec = std::vector<elem_t>;

void fp_trim(FpVec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

FpVec fp_mul(const FpVec& a, const FpVec& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<elem_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  fp_trim(r);
  return r;
}

// Remainder of a by monic b.
FpVec fp_mod(FpVec a, const FpVec& b, std::uint64_t p) {
  fp_trim(a);
  while (a.size() >= b.size()) {
    elem_t lead = a.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::uint64_t sub = (std::uint64_t{lead} * b[i]) % p;
      a[i + shift] = static_cast<elem_t>((a[i + shift] + p - sub) % p);
    }
    fp_trim(a);
  }
  return a;
}

// Monic poly of degree d whose low coefficients are the base-p digits of m (c_i = digit i),
// so increasing m walks the candidates in element-index order: the numeric order of the
// index sum c_0 + c_1 p + ... + c_{d-1} p^{d-1}.
FpVec fp_from_index(std::uint64_t m, int d, std::uint64_t p) {
  FpVec c(static_cast<std::size_t>(d) + 1, 0);
  c[d] = 1;
  for (int i = 0; i < d; ++i) {
    c[i] = static_cast<elem_t>(m % p);
    m /= p;
  }
  return c;
}

bool fp_is_irreducible(const FpVec& f, std::uint64_t p) {
  int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  // Trial division by every monic polynomial of degree 1..d/2.
  for (int e = 1; 2 * e <= d; ++e) {
    std::uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
      FpVec g(static_cast<std::size_t>(e) + 1, 0);
      g[e] = 1;
      std::uint64_t t = m;
      for (int i = 0; i < e; ++i) {
        g[i] = static_cast<elem_t>(t % p);
        t /= p;
      }
      if (fp_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FpVec canonical_modulus(std::uint64_t p, int k) {
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (std::uint64_t m = 0; m < count; ++m) {
    FpVec f = fp_from_index(m, k, p);
    if (fp_is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible modulus found");  // unreachable: one always exists
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool factor_prime_power(std::uint64_t q, std::uint64_t& p, int& k) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      k = 0;
      while (q > 1) {
        if (q % d != 0) return false;
        q /= d;
        ++k;
      }
      return true;
    }
  }
  p = q;  // q itself prime
  k = 1;
  return true;
}

Field::Field(std::uint64_t p, int k) : p_(p), k_(k) {
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= p;
  if (k_ > 1) modulus_ = canonical_modulus(p_, k_);

  if (q_ <= kTableLimit) {
    add_table_.resize(q_ * q_);
    mul_table_.resize(q_ * q_);
    neg_table_.resize(q_);
    inv_table_.assign(q_, 0);
    for (std::uint64_t a = 0; a < q_; ++a) {
      neg_table_[a] = neg_raw(static_cast<elem_t>(a));
      for (std::uint64_t b = 0; b < q_; ++b) {
        add_table_[a * q_ + b] = add_raw(static_cast<elem_t>(a), static_cast<elem_t>(b));
        elem_t m = mul_raw(static_cast<elem_t>(a), static_cast<elem_t>(b));
        mul_table_[a * q_ + b] = m;
        if (m == 1) inv_table_[a] = static_cast<elem_t>(b);
      }
    }
  }
}

elem_t Field::add_raw(elem_t a, elem_t b) const {
  if (k_ == 1) return static_cast<elem_t>((std::uint64_t{a} + b) % p_);
  elem_t r = 0;
  std::uint64_t place = 1;
  for (int i = 0; i < k_; ++i) {
    std::uint64_t da = (a / place) % p_;
    std::uint64_t db = (b / place) % p_;
    r += static_cast<elem_t>(((da + db) % p_) * place);
    place *= p_;
  }
  return r;
}

elem_t Field::neg_raw(elem_t a) const {
  if (k_ == 1) return static_cast<elem_t>((p_ - a) % p_);
  elem_t r = 0;
  std::uint64_t place = 1;
  for (int i = 0; i < k_; ++i) {
    std::uint64_t da = (a / place) % p_;
    r += static_cast<elem_t>(((p_ - da) % p_) * place);
    place *= p_;
  }
  return r;
}

elem_t Field::mul_raw(elem_t a, elem_t b) const {
  if (k_ == 1) return static_cast<elem_t>((std::uint64_t{a} * b) % p_);
  // Digits of a and b are coefficients over F_p; multiply and reduce mod the modulus.
  FpVec va(k_), vb(k_);
  std::uint64_t ta = a, tb = b;
  for (int i = 0; i < k_; ++i) {
    va[i] = static_cast<elem_t>(ta % p_);
    vb[i] = static_cast<elem_t>(tb % p_);
    ta /= p_;
    tb /= p_;
  }
  FpVec prod = fp_mul(va, vb, p_);
  FpVec rem = fp_mod(std::move(prod), modulus_, p_);
  elem_t r = 0;
  std::uint64_t place = 1;
  for (std::size_t i = 0; i < rem.size(); ++i) {
    r += static_cast<elem_t>(rem[i] * place);
    place *= p_;
  }
  return r;
}

elem_t Field::add(elem_t a, elem_t b) const {
  if (!add_table_.empty()) return add_table_[std::uint64_t{a} * q_ + b];
  return add_raw(a, b);
}

elem_t Field::neg(elem_t a) const {
  if (!neg_table_.empty()) return neg_table_[a];
  return neg_raw(a);
}

elem_t Field::sub(elem_t a, elem_t b) const { return add(a, neg(b)); }

elem_t Field::mul(elem_t a, elem_t b) const {
  if (!mul_table_.empty()) return mul_table_[std::uint64_t{a} * q_ + b];
  return mul_raw(a, b);
}

elem_t Field::inv(elem_t a) const {
  if (a == 0) throw std::invalid_argument("inverse of zero field element");
  if (!inv_table_.empty()) return inv_table_[a];
  // q is tiny whenever tables are absent only for q > 256; brute-force scan still fine
  // at the 2^16 cap.
  for (std::uint64_t b = 1; b < q_; ++b) {
    if (mul(a, static_cast<elem_t>(b)) == 1) return static_cast<elem_t>(b);
  }
  throw std::logic_error("no inverse found");
}

const Field& Field::get(std::uint64_t p, int k) {
  if (!is_prime_u64(p)) {
    throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
  }
  if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > (std::uint64_t{1} << 16)) {
      throw std::invalid_argument("field order exceeds 2^16");
    }
  }

  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, int>, std::unique_ptr<Field>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[{p, k}];
  if (!slot) slot.reset(new Field(p, k));
  return *slot;
}

const Field& Field::get_by_order(std::uint64_t q) {
  std::uint64_t p = 0;
  int k = 0;
  if (!factor_prime_power(q, p, k)) {
    throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  }
  return get(p, k);
}

}  // namespace fflab
