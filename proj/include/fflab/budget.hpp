#ifndef FFLAB_BUDGET_HPP
#define FFLAB_BUDGET_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fflab {

/// Default cap on the number of polynomials any single operation may materialize.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 30;

/// Thrown when an operation would enumerate or store more polynomials than allowed.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// q^e as uint64, throwing budget_error on overflow.
inline std::uint64_t checked_pow(std::uint64_t q, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (q != 0 && r > UINT64_MAX / q) {
      throw budget_error("power overflow: " + std::to_string(q) + "^" + std::to_string(e));
    }
    r *= q;
  }
  return r;
}

/// q^e, additionally enforcing the enumeration budget.
inline std::uint64_t budgeted_pow(std::uint64_t q, int e, std::uint64_t budget = kDefaultBudget) {
  std::uint64_t r = checked_pow(q, e);
  if (r >= budget) {
    throw budget_error("enumeration budget exceeded: " + std::to_string(q) + "^" +
                       std::to_string(e) + " >= " + std::to_string(budget));
  }
  return r;
}

}  // namespace fflab

#endif
