#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpdiv/bigint.hpp"
#include "lpdiv/curves.hpp"

namespace lpdiv {

/// Dense polynomial over the integers, coefficients ascending; never stores
/// trailing zeros.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::initializer_list<BigInt> coeffs) : IntPoly(std::vector<BigInt>(coeffs)) {}
  explicit IntPoly(std::vector<BigInt> coeffs);

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of t^i (zero past the degree).
  BigInt operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
  const BigInt& leading() const { return coeffs_.back(); }

  IntPoly derivative() const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Descending-order text such as "4t^4+4t^3+4t^2+2t+1"; the zero polynomial is "0".
std::string format_poly(const IntPoly& p, char var = 't');
/// Inverse of format_poly; also tolerates spaces ("2t^2 - 2t + 1").
IntPoly parse_int_poly(std::string_view text, char var = 't');

/// L-polynomial of a genus-g curve over F_q: degree 2g, constant term 1.
struct LPolynomial {
  BigInt q;
  unsigned g = 0;
  IntPoly poly;

  friend bool operator==(const LPolynomial&, const LPolynomial&) = default;
};

/// a_{2g-i} = q^(g-i) a_i for 0 <= i <= g, a_0 = 1, degree exactly 2g.
bool satisfies_functional_equation(const LPolynomial& l);

/// Rebuilds L from N_1..N_g via Newton's identities and the functional
/// equation. Extra counts beyond g are checked against the prediction.
/// Throws ConsistencyError on a non-exact division or a mismatch.
LPolynomial lpoly_from_counts(std::span<const BigInt> counts, unsigned g, const BigInt& q);
LPolynomial lpoly_from_counts(const PointCounts& counts);

/// s_0 .. s_upto where s_m is the m-th power sum of the reciprocal roots (s_0 = 2g).
std::vector<BigInt> power_sums(const LPolynomial& l, unsigned upto);

/// N_m = q^m + 1 - s_m.
BigInt predicted_count(const LPolynomial& l, unsigned m);

/// L-polynomial over F_{q^s}: reciprocal roots raised to the s-th power.
LPolynomial base_change(const LPolynomial& l, unsigned s);

struct DivisionResult {
  bool divisible = false;
  IntPoly quotient;
  /// On failure, the coefficient index of the dividend where division broke down.
  std::optional<std::size_t> failing_index;
};

/// Exact division over Z, performed from the constant term upwards.
DivisionResult divides(const IntPoly& divisor, const IntPoly& dividend);
inline DivisionResult divides(const LPolynomial& divisor, const LPolynomial& dividend) {
  return divides(divisor.poly, dividend.poly);
}

/// Primitive gcd over Z (equivalently over Q up to units), positive leading coefficient.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

/// True iff gcd(p, p') is constant. Throws std::invalid_argument on the zero polynomial.
bool squarefree(const IntPoly& p);
inline bool squarefree(const LPolynomial& l) { return squarefree(l.poly); }

struct HasseWeilReport {
  bool ok = true;
  /// Zero-based index into the count sequence (entry m - 1).
  std::optional<std::size_t> first_violation;
};

HasseWeilReport hasse_weil_check(std::span<const BigInt> counts, const BigInt& q, std::uint64_t g);
HasseWeilReport hasse_weil_check(const PointCounts& counts);

/// One-line JSON record {"q":"2","g":1,"coeffs":["1","2","2"]}; coefficients ascending.
std::string to_record(const LPolynomial& l);
LPolynomial parse_lpoly_record(std::string_view line);

}  // namespace lpdiv
