#ifndef FFLAB_FIELD_HPP
#define FFLAB_FIELD_HPP

#include <cstdint>
#include <vector>

namespace fflab {

/// Index of a field element in [0, q). The encoding is the base-p digit expansion of the
/// coefficients of the element's representative polynomial over F_p: index 0 is the
/// additive identity and index 1 the multiplicative identity.
using elem_t = std::uint32_t;

/// A concrete finite field F_q with q = p^k elements, p prime, q <= 2^16.
///
/// For k > 1 the field is F_p[x]/(m(x)) where m is the canonical modulus: the
/// lexicographically least monic irreducible of degree k over F_p, comparing coefficient
/// tuples from the constant coefficient upward. Instances are immutable and safe to share
/// across threads; obtain them through Field::get so that pointers stay valid for the
/// lifetime of the process.
class Field {
 public:
  /// Returns the unique registered field with q = p^k elements.
  /// Throws std::invalid_argument if p is not prime, k < 1, or p^k > 2^16.
  static const Field& get(std::uint64_t p, int k = 1);

  /// Convenience lookup by q; factors q as p^k (throws if q is not a prime power >= 2).
  static const Field& get_by_order(std::uint64_t q);

  std::uint64_t p() const { return p_; }
  int k() const { return k_; }
  std::uint64_t q() const { return q_; }

  /// Coefficients (over F_p, constant first) of the degree-k defining irreducible.
  /// Empty when k == 1.
  const std::vector<elem_t>& modulus() const { return modulus_; }

  elem_t add(elem_t a, elem_t b) const;
  elem_t sub(elem_t a, elem_t b) const;
  elem_t neg(elem_t a) const;
  elem_t mul(elem_t a, elem_t b) const;
  /// Multiplicative inverse; throws std::invalid_argument on 0.
  elem_t inv(elem_t a) const;

  bool operator==(const Field& other) const { return p_ == other.p_ && k_ == other.k_; }
  bool operator!=(const Field& other) const { return !(*this == other); }

 private:
  Field(std::uint64_t p, int k);

  elem_t add_raw(elem_t a, elem_t b) const;
  elem_t neg_raw(elem_t a) const;
  elem_t mul_raw(elem_t a, elem_t b) const;

  std::uint64_t p_;
  int k_;
  std::uint64_t q_;
  std::vector<elem_t> modulus_;  // empty iff k == 1

  // q x q tables, built when q <= kTableLimit; otherwise arithmetic is done on digits.
  static constexpr std::uint64_t kTableLimit = 256;
  std::vector<elem_t> add_table_;
  std::vector<elem_t> mul_table_;
  std::vector<elem_t> neg_table_;
  std::vector<elem_t> inv_table_;
};

/// True if n >= 2 and n is prime (trial division; n fits the modulus search range).
bool is_prime_u64(std::uint64_t n);

/// Factors q as p^k with p prime; returns false if q is not a prime power >= 2.
bool factor_prime_power(std::uint64_t q, std::uint64_t& p, int& k);

}  // namespace fflab

#endif
