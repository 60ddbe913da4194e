#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace lpdiv {

/// Sparse univariate polynomial over F_p: exponent -> nonzero coefficient.
/// Exponents are 64-bit; any operation whose result would overflow throws
/// std::overflow_error.
class SparsePoly {
 public:
  using Terms = std::map<std::uint64_t, std::uint32_t>;

  explicit SparsePoly(std::uint32_t p);
  SparsePoly(std::uint32_t p, std::initializer_list<std::pair<const std::uint64_t, std::uint32_t>> terms);

  static SparsePoly monomial(std::uint32_t p, std::uint64_t exponent, std::uint32_t coeff = 1);

  std::uint32_t characteristic() const { return p_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Throws std::domain_error for the zero polynomial.
  std::uint64_t degree() const;
  std::uint32_t leading_coefficient() const;
  std::uint32_t coefficient(std::uint64_t exponent) const;

  /// Adds c x^e in place.
  void add_term(std::uint64_t exponent, std::uint32_t coeff);
  /// Value at an element of F_p.
  std::uint32_t evaluate(std::uint32_t x) const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator-(const SparsePoly& a);
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  void require_same_field(const SparsePoly& o) const;

  std::uint32_t p_;
  Terms terms_;
};

/// a^p: every exponent multiplied by p (coefficients lie in F_p, so they are fixed).
SparsePoly frobenius(const SparsePoly& a);
SparsePoly pow(const SparsePoly& a, std::uint64_t e);
/// The Artin-Schreier operator u -> u^p - u.
SparsePoly artin_schreier(const SparsePoly& u);

/// Terms "c*x^e" joined by "+" in descending exponent order, e.g.
/// "1*x^12+2*x^4+1*x^0"; the zero polynomial is "0". The characteristic is
/// carried separately (see to_record).
std::string format_sparse(const SparsePoly& a);
/// Parses format_sparse output. Also accepts the shorthand "x^3+x+1" and
/// reduces coefficients mod p. Throws std::invalid_argument on bad input.
SparsePoly parse_sparse(std::string_view text, std::uint32_t p);

/// Line record "p=<p>;<format_sparse text>".
std::string to_record(const SparsePoly& a);
SparsePoly parse_sparse_record(std::string_view line);

}  // namespace lpdiv
