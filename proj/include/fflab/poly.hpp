#ifndef FFLAB_POLY_HPP
#define FFLAB_POLY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fflab/field.hpp"

namespace fflab {

/// A polynomial over a fixed finite field, stored as element indices with coefficient i
/// attached to t^i and no trailing zeros. The zero polynomial has an empty coefficient
/// vector, degree -1 and norm 0. Values are immutable in spirit: every operation returns
/// a fresh polynomial.
class Poly {
 public:
  static Poly zero(const Field& f) { return Poly(f, {}); }
  static Poly one(const Field& f) { return Poly(f, {1}); }
  static Poly constant(const Field& f, elem_t c) { return c == 0 ? zero(f) : Poly(f, {c}); }
  /// t^n for n >= 0.
  static Poly t_power(const Field& f, int n);
  /// From a coefficient vector (low to high); trailing zeros are trimmed.
  static Poly from_coeffs(const Field& f, std::vector<elem_t> coeffs);
  /// The rank-th monic polynomial of the given degree: low coefficients are the base-q
  /// digits of rank, so intervals are contiguous rank blocks. rank in [0, q^deg).
  static Poly monic_from_rank(const Field& f, int deg, std::uint64_t rank);

  const Field& field() const { return *field_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  /// q^deg, 0 for the zero polynomial.
  std::uint64_t norm() const;
  /// Coefficient of t^i (0 beyond the degree).
  elem_t coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : 0;
  }
  const std::vector<elem_t>& coeffs() const { return coeffs_; }
  elem_t leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }

  /// Rank within the monic polynomials of this degree (inverse of monic_from_rank).
  /// Requires a monic polynomial.
  std::uint64_t rank() const;

  Poly operator+(const Poly& rhs) const;
  Poly operator-(const Poly& rhs) const;
  Poly operator*(const Poly& rhs) const;
  Poly operator-() const;

  /// Quotient and remainder with deg(rem) < deg(divisor). Throws on division by zero or
  /// field mismatch.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  /// True iff b divides this exactly.
  bool divisible_by(const Poly& b) const { return divmod(*this, b).second.is_zero(); }

  /// Scales so the leading coefficient is 1 (zero stays zero).
  Poly monic() const;

  bool operator==(const Poly& rhs) const;
  bool operator!=(const Poly& rhs) const { return !(*this == rhs); }

  /// Canonical serialization "q=<q>;[c0,c1,...,cd]" with element indices. This exact
  /// string is the bit-exact contract used for hashing, file output and RNG keying.
  std::string serialize() const;
  /// Parses the serialization format; the field is recovered from q.
  static Poly parse(const std::string& text);
  /// Human-readable form like "t^3 + 2*t + 1".
  std::string pretty() const;

 private:
  Poly(const Field& f, std::vector<elem_t> coeffs) : field_(&f), coeffs_(std::move(coeffs)) {}
  void check_same_field(const Poly& rhs) const;

  const Field* field_;
  std::vector<elem_t> coeffs_;
};

/// Monic greatest common divisor (zero when both inputs are zero).
Poly poly_gcd(Poly a, Poly b);

/// Which tie-break the degree-respecting total order on monic polynomials uses. The
/// canonical order compares coefficient tuples from the constant coefficient upward;
/// the alternative reads them from the top down and exists purely so tests can verify
/// order-independence of results.
enum class TieBreak { kLowCoeffFirst, kHighCoeffFirst };

/// Strict total order on monic polynomials: by degree, then lexicographically on the
/// coefficient tuple per the tie-break.
bool prime_less(const Poly& a, const Poly& b, TieBreak tb = TieBreak::kLowCoeffFirst);

/// Calls fn with every monic polynomial of the given degree in rank order.
void for_each_monic(const Field& f, int deg, const std::function<void(const Poly&)>& fn);

}  // namespace fflab

#endif
