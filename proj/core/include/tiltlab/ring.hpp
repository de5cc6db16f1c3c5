#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace tiltlab {

/// The catalogued Euclidean domains. Every matrix, module and complex carries
/// exactly one of these tags.
enum class RingTag { Integers, RationalPolynomials };

std::string_view to_string(RingTag tag);
RingTag ring_from_string(std::string_view name);

using Integer = mpz_class;
using Rational = mpq_class;

class RingMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnsupportedRing : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Dense univariate polynomial with exact rational coefficients, lowest degree
/// first. The coefficient vector never ends in a zero; the zero polynomial is
/// the empty vector.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long constant);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(Rational constant);
  explicit Polynomial(std::vector<Rational> coefficients);

  static Polynomial monomial(Rational coefficient, std::size_t degree);
  static Polynomial x() { return monomial(Rational(1), 1); }

  /// -1 for the zero polynomial.
  [[nodiscard]] long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] const std::vector<Rational>& coefficients() const { return coeffs_; }
  [[nodiscard]] Rational coefficient(std::size_t k) const;
  [[nodiscard]] const Rational& leading() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

  [[nodiscard]] std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Static ring interface used by the templated algorithms. Each ring provides
/// Euclidean division, a pivot norm and a canonical associate.
struct IntegerRing {
  using value_type = Integer;
  static constexpr RingTag tag = RingTag::Integers;

  static Integer zero() { return 0; }
  static Integer one() { return 1; }
  static bool is_zero(const Integer& a) { return sgn(a) == 0; }
  static bool is_unit(const Integer& a) { return a == 1 || a == -1; }
  /// Strict comparison of Euclidean norms (absolute values).
  static bool norm_less(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
  static std::pair<Integer, Integer> divmod(const Integer& a, const Integer& b);
  static bool divides(const Integer& d, const Integer& a);
  static Integer exact_div(const Integer& a, const Integer& d);
  /// The unit u with u*a canonical (nonnegative).
  static Integer normalizing_unit(const Integer& a) { return sgn(a) < 0 ? Integer(-1) : Integer(1); }
  static Integer unit_inverse(const Integer& u) { return u; }
};

struct PolynomialRing {
  using value_type = Polynomial;
  static constexpr RingTag tag = RingTag::RationalPolynomials;

  static Polynomial zero() { return {}; }
  static Polynomial one() { return Polynomial(1L); }
  static bool is_zero(const Polynomial& a) { return a.is_zero(); }
  static bool is_unit(const Polynomial& a) { return a.degree() == 0; }
  static bool norm_less(const Polynomial& a, const Polynomial& b) { return a.degree() < b.degree(); }
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    return Polynomial::divmod(a, b);
  }
  static bool divides(const Polynomial& d, const Polynomial& a);
  static Polynomial exact_div(const Polynomial& a, const Polynomial& d);
  /// Makes the polynomial monic.
  static Polynomial normalizing_unit(const Polynomial& a);
  static Polynomial unit_inverse(const Polynomial& u);
};

/// A ring element of either catalogued ring.
using Element = std::variant<Integer, Polynomial>;

RingTag ring_of(const Element& e);
std::string element_to_string(const Element& e);
bool element_is_zero(const Element& e);
bool element_is_unit(const Element& e);
Element element_zero(RingTag ring);
Element element_one(RingTag ring);
/// Canonical associate: |a| over the integers, monic over Q[x].
Element canonical_associate(const Element& e);

template <class Ring>
struct ring_for;
template <>
struct ring_for<Integer> {
  using type = IntegerRing;
};
template <>
struct ring_for<Polynomial> {
  using type = PolynomialRing;
};

}  // namespace tiltlab
