#ifndef FFLAB_INTERVAL_HPP
#define FFLAB_INTERVAL_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "fflab/budget.hpp"
#include "fflab/poly.hpp"

namespace fflab {

/// The set of monic degree-N polynomials agreeing with the center in every coefficient
/// of degree > radius. Radius -1 gives the singleton {center}; radius N-1 gives all of
/// the monic degree-N polynomials. Membership is computed, never materialized, unless a
/// caller explicitly asks for the member stream.
class Interval {
 public:
  /// center must be monic; radius in [-1, deg(center)-1].
  Interval(Poly center, int radius);

  const Poly& center() const { return center_; }
  int radius() const { return radius_; }
  int degree() const { return center_.degree(); }
  const Field& field() const { return center_.field(); }

  /// q^{radius+1}.
  std::uint64_t size() const;

  bool contains(const Poly& g) const;

  /// Members occupy a contiguous block in the rank space of monic degree-N polynomials:
  /// [rank_begin, rank_begin + size).
  std::uint64_t rank_begin() const;

  /// Calls fn for every member in rank order.
  void for_each_member(const std::function<void(const Poly&)>& fn,
                       std::uint64_t budget = kDefaultBudget) const;
  std::vector<Poly> members(std::uint64_t budget = kDefaultBudget) const;

  /// Exact number of monic A with G*A inside this interval, for monic G with
  /// deg G <= N-1. Equals q^{radius - deg G + 1} when deg G <= radius+1 and is 0 or 1
  /// otherwise.
  std::uint64_t divisor_count(const Poly& g) const;

  /// The interval of radius (radius - deg G) whose member set equals {A : G*A inside
  /// this interval}. Only defined for deg G <= radius+1; throws std::invalid_argument
  /// beyond that (the solution set is then no longer an interval).
  Interval quotient(const Poly& g) const;

  bool operator==(const Interval& rhs) const {
    return center_.field() == rhs.center_.field() && degree() == rhs.degree() &&
           radius_ == rhs.radius_ && rank_begin() == rhs.rank_begin();
  }

 private:
  Poly center_;
  int radius_;
};

}  // namespace fflab

#endif
