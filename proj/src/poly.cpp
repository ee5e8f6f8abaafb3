#include "fflab/poly.hpp"

#include <sstream>
#include <stdexcept>

#include "fflab/budget.hpp"

namespace fflab {

Poly Poly::t_power(const Field& f, int n) {
  if (n < 0) throw std::invalid_argument("negative exponent");
  std::vector<elem_t> c(static_cast<std::size_t>(n) + 1, 0);
  c[n] = 1;
  return Poly(f, std::move(c));
}

Poly Poly::from_coeffs(const Field& f, std::vector<elem_t> coeffs) {
  for (elem_t c : coeffs) {
    if (c >= f.q()) throw std::invalid_argument("coefficient index out of range");
  }
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return Poly(f, std::move(coeffs));
}

Poly Poly::monic_from_rank(const Field& f, int deg, std::uint64_t rank) {
  if (deg < 0) throw std::invalid_argument("monic polynomial needs degree >= 0");
  std::vector<elem_t> c(static_cast<std::size_t>(deg) + 1, 0);
  c[deg] = 1;
  for (int i = 0; i < deg; ++i) {
    c[i] = static_cast<elem_t>(rank % f.q());
    rank /= f.q();
  }
  if (rank != 0) throw std::invalid_argument("rank exceeds q^deg");
  return Poly(f, std::move(c));
}

std::uint64_t Poly::rank() const {
  if (!is_monic()) throw std::invalid_argument("rank needs a monic polynomial");
  std::uint64_t r = 0;
  for (int i = degree() - 1; i >= 0; --i) r = r * field_->q() + coeffs_[i];
  return r;
}

std::uint64_t Poly::norm() const {
  if (is_zero()) return 0;
  return checked_pow(field_->q(), degree());
}

void Poly::check_same_field(const Poly& rhs) const {
  if (*field_ != *rhs.field_) throw std::invalid_argument("field mismatch");
}

Poly Poly::operator+(const Poly& rhs) const {
  check_same_field(rhs);
  std::vector<elem_t> c(std::max(coeffs_.size(), rhs.coeffs_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = field_->add(coeff(static_cast<int>(i)), rhs.coeff(static_cast<int>(i)));
  while (!c.empty() && c.back() == 0) c.pop_back();
  return Poly(*field_, std::move(c));
}

Poly Poly::operator-() const {
  std::vector<elem_t> c(coeffs_);
  for (auto& x : c) x = field_->neg(x);
  return Poly(*field_, std::move(c));
}

Poly Poly::operator-(const Poly& rhs) const { return *this + (-rhs); }

Poly Poly::operator*(const Poly& rhs) const {
  check_same_field(rhs);
  if (is_zero() || rhs.is_zero()) return zero(*field_);
  std::vector<elem_t> c(coeffs_.size() + rhs.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      c[i + j] = field_->add(c[i + j], field_->mul(coeffs_[i], rhs.coeffs_[j]));
    }
  }
  return Poly(*field_, std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  a.check_same_field(b);
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  const Field& f = a.field();
  if (a.degree() < b.degree()) return {zero(f), a};

  std::vector<elem_t> rem(a.coeffs_);
  std::vector<elem_t> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
  elem_t lead_inv = f.inv(b.leading());
  for (int i = a.degree(); i >= b.degree(); --i) {
    elem_t top = rem[i];
    if (top == 0) continue;
    elem_t factor = f.mul(top, lead_inv);
    quot[i - b.degree()] = factor;
    for (int j = 0; j <= b.degree(); ++j) {
      int idx = i - b.degree() + j;
      rem[idx] = f.sub(rem[idx], f.mul(factor, b.coeffs_[j]));
    }
  }
  while (!rem.empty() && rem.back() == 0) rem.pop_back();
  while (!quot.empty() && quot.back() == 0) quot.pop_back();
  return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
}

Poly Poly::monic() const {
  if (is_zero() || is_monic()) return *this;
  elem_t s = field_->inv(leading());
  std::vector<elem_t> c(coeffs_);
  for (auto& x : c) x = field_->mul(x, s);
  return Poly(*field_, std::move(c));
}

bool Poly::operator==(const Poly& rhs) const {
  return *field_ == *rhs.field_ && coeffs_ == rhs.coeffs_;
}

std::string Poly::serialize() const {
  std::ostringstream os;
  os << "q=" << field_->q() << ";[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i];
  }
  os << ']';
  return os.str();
}

Poly Poly::parse(const std::string& text) {
  auto fail = [&]() { throw std::invalid_argument("bad polynomial literal: " + text); };
  if (text.rfind("q=", 0) != 0) fail();
  std::size_t semi = text.find(';');
  if (semi == std::string::npos) fail();
  std::uint64_t q = 0;
  try {
    q = std::stoull(text.substr(2, semi - 2));
  } catch (const std::exception&) {
    fail();
  }
  const Field& f = Field::get_by_order(q);
  std::size_t open = text.find('[', semi);
  std::size_t close = text.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open) fail();
  std::vector<elem_t> coeffs;
  std::string body = text.substr(open + 1, close - open - 1);
  std::istringstream is(body);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) fail();
    coeffs.push_back(static_cast<elem_t>(std::stoull(tok)));
  }
  return from_coeffs(f, std::move(coeffs));
}

std::string Poly::pretty() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    elem_t c = coeffs_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = Poly::divmod(a, b).second;
    a = b;
    b = r;
  }
  return a.monic();
}

bool prime_less(const Poly& a, const Poly& b, TieBreak tb) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (tb == TieBreak::kLowCoeffFirst) {
    for (int i = 0; i <= a.degree(); ++i) {
      if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    }
  } else {
    for (int i = a.degree(); i >= 0; --i) {
      if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    }
  }
  return false;
}

void for_each_monic(const Field& f, int deg, const std::function<void(const Poly&)>& fn) {
  std::uint64_t count = budgeted_pow(f.q(), deg);
  for (std::uint64_t r = 0; r < count; ++r) fn(Poly::monic_from_rank(f, deg, r));
}

}  // namespace fflab
