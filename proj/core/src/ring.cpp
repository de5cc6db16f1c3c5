#include "tiltlab/ring.hpp"

#include <sstream>

namespace tiltlab {

std::string_view to_string(RingTag tag) {
  switch (tag) {
    case RingTag::Integers:
      return "Integers";
    case RingTag::RationalPolynomials:
      return "RationalPolynomials";
  }
  return "?";
}

RingTag ring_from_string(std::string_view name) {
  if (name == "Integers") return RingTag::Integers;
  if (name == "RationalPolynomials") return RingTag::RationalPolynomials;
  throw std::invalid_argument("unknown ring tag: " + std::string(name));
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(long constant) : coeffs_{Rational(constant)} { trim(); }

Polynomial::Polynomial(Rational constant) : coeffs_{std::move(constant)} { trim(); }

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Polynomial Polynomial::monomial(Rational coefficient, std::size_t degree) {
  std::vector<Rational> c(degree + 1, Rational(0));
  c[degree] = std::move(coefficient);
  return Polynomial(std::move(c));
}

Rational Polynomial::coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

const Rational& Polynomial::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  trim();
  return *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Polynomial remainder = a;
  if (a.degree() < b.degree()) return {Polynomial{}, remainder};
  std::vector<Rational> quotient(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
  const Rational& lead = b.leading();
  while (!remainder.is_zero() && remainder.degree() >= b.degree()) {
    const auto shift = static_cast<std::size_t>(remainder.degree() - b.degree());
    Rational factor = remainder.leading() / lead;
    quotient[shift] = factor;
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) remainder.coeffs_[k + shift] -= factor * b.coeffs_[k];
    remainder.trim();
  }
  return {Polynomial(std::move(quotient)), remainder};
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    if (!first) out << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) out << "-";
    Rational mag = abs(c);
    if (k == 0 || mag != 1) out << mag.get_str();
    if (k >= 1) out << "x";
    if (k >= 2) out << "^" << k;
    first = false;
  }
  return out.str();
}

// ------------------------------------------------------------- IntegerRing

std::pair<Integer, Integer> IntegerRing::divmod(const Integer& a, const Integer& b) {
  // Floor division keeps |r| < |b|, which is all the Euclidean algorithms need.
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return {q, r};
}

bool IntegerRing::divides(const Integer& d, const Integer& a) {
  if (sgn(d) == 0) return sgn(a) == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

Integer IntegerRing::exact_div(const Integer& a, const Integer& d) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return q;
}

// ---------------------------------------------------------- PolynomialRing

bool PolynomialRing::divides(const Polynomial& d, const Polynomial& a) {
  if (d.is_zero()) return a.is_zero();
  return Polynomial::divmod(a, d).second.is_zero();
}

Polynomial PolynomialRing::exact_div(const Polynomial& a, const Polynomial& d) {
  auto [q, r] = Polynomial::divmod(a, d);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

Polynomial PolynomialRing::normalizing_unit(const Polynomial& a) {
  if (a.is_zero()) return one();
  return Polynomial(Rational(1) / a.leading());
}

Polynomial PolynomialRing::unit_inverse(const Polynomial& u) {
  if (u.degree() != 0) throw std::domain_error("not a unit in Q[x]");
  return Polynomial(Rational(1) / u.leading());
}

// ----------------------------------------------------------------- Element

RingTag ring_of(const Element& e) {
  return std::holds_alternative<Integer>(e) ? RingTag::Integers : RingTag::RationalPolynomials;
}

std::string element_to_string(const Element& e) {
  return std::visit(
      [](const auto& v) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Integer>) return v.get_str();
        else return v.to_string();
      },
      e);
}

bool element_is_zero(const Element& e) {
  return std::visit([](const auto& v) { return ring_for<std::decay_t<decltype(v)>>::type::is_zero(v); }, e);
}

bool element_is_unit(const Element& e) {
  return std::visit([](const auto& v) { return ring_for<std::decay_t<decltype(v)>>::type::is_unit(v); }, e);
}

Element element_zero(RingTag ring) {
  if (ring == RingTag::Integers) return Integer(0);
  return Polynomial{};
}

Element element_one(RingTag ring) {
  if (ring == RingTag::Integers) return Integer(1);
  return Polynomial(1L);
}

Element canonical_associate(const Element& e) {
  return std::visit(
      [](const auto& v) -> Element {
        using R = typename ring_for<std::decay_t<decltype(v)>>::type;
        auto out = v;
        out *= R::normalizing_unit(v);
        return out;
      },
      e);
}

}  // namespace tiltlab
