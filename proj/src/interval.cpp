#include "fflab/interval.hpp"

#include <stdexcept>

namespace fflab {

Interval::Interval(Poly center, int radius) : center_(std::move(center)), radius_(radius) {
  if (!center_.is_monic()) throw std::invalid_argument("interval center must be monic");
  if (radius_ < -1 || radius_ > center_.degree() - 1) {
    throw std::invalid_argument("interval radius out of [-1, N-1]");
  }
}

std::uint64_t Interval::size() const { return checked_pow(field().q(), radius_ + 1); }

bool Interval::contains(const Poly& g) const {
  if (g.field() != field() || !g.is_monic() || g.degree() != degree()) return false;
  for (int i = radius_ + 1; i < degree(); ++i) {
    if (g.coeff(i) != center_.coeff(i)) return false;
  }
  return true;
}

std::uint64_t Interval::rank_begin() const {
  std::uint64_t block = size();
  return (center_.rank() / block) * block;
}

void Interval::for_each_member(const std::function<void(const Poly&)>& fn,
                               std::uint64_t budget) const {
  std::uint64_t n = size();
  if (n >= budget) throw budget_error("interval too large to enumerate");
  std::uint64_t begin = rank_begin();
  for (std::uint64_t i = 0; i < n; ++i) {
    fn(Poly::monic_from_rank(field(), degree(), begin + i));
  }
}

std::vector<Poly> Interval::members(std::uint64_t budget) const {
  std::vector<Poly> out;
  out.reserve(size());
  for_each_member([&](const Poly& p) { out.push_back(p); }, budget);
  return out;
}

std::uint64_t Interval::divisor_count(const Poly& g) const {
  if (!g.is_monic()) throw std::invalid_argument("divisor must be monic");
  int d = g.degree();
  if (d < 0 || d > degree() - 1) {
    throw std::invalid_argument("divisor degree must be in [0, N-1]");
  }
  if (d <= radius_ + 1) return checked_pow(field().q(), radius_ - d + 1);
  // d > radius+1: G*A lands in the interval iff A is the high quotient of the center
  // and the division remainder already fits under the radius.
  auto [quot, rem] = Poly::divmod(center_, g);
  (void)quot;
  return rem.degree() <= radius_ ? 1 : 0;
}

Interval Interval::quotient(const Poly& g) const {
  if (!g.is_monic()) throw std::invalid_argument("divisor must be monic");
  int d = g.degree();
  if (d > radius_ + 1) {
    throw std::invalid_argument("quotient by degree > radius+1 is not an interval");
  }
  Poly quot = Poly::divmod(center_, g).first;
  return Interval(quot, radius_ - d);
}

}  // namespace fflab
