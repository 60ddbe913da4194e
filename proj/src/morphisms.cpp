#include "lpdiv/morphisms.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace lpdiv {

namespace {

constexpr unsigned kMaxExponentBits = 63;

void check_pair(unsigned k, unsigned l) {
  if (l == 0 || k <= l || k % l != 0) {
    throw std::invalid_argument("need l | k and k > l >= 1 (k=" + std::to_string(k) + ", l=" + std::to_string(l) + ")");
  }
  if (k >= kMaxExponentBits) throw std::invalid_argument("k too large for 64-bit exponents");
}

std::uint64_t pow2(unsigned e) { return std::uint64_t{1} << e; }

SparsePoly x_pow(std::uint64_t e) { return SparsePoly::monomial(2, e); }

// a^(2^times) in characteristic 2.
SparsePoly frobenius_times(SparsePoly a, unsigned times) {
  for (unsigned i = 0; i < times; ++i) a = frobenius(a);
  return a;
}

}  // namespace

SparsePoly build_f(unsigned k, unsigned l) {
  check_pair(k, l);
  const unsigned r = k / l;
  SparsePoly f(2);
  for (unsigned j = 0; j < r; ++j) f.add_term(pow2(l * j), 1);
  return f;
}

SparsePoly build_g(unsigned k, unsigned l, GExponent variant) {
  check_pair(k, l);
  const unsigned r = k / l;
  SparsePoly g(2);
  for (unsigned j = 1; j < r; ++j) g.add_term(pow2(l * j), 1);
  for (unsigned j = 1; j < r; ++j) {
    for (unsigned i = 0; i < j; ++i) {
      const std::uint64_t base = pow2(l * i) + pow2(l * j);
      for (unsigned s = 0; s < l; ++s) {
        const unsigned shift = variant == GExponent::Corrected ? s : l;
        if (std::bit_width(base) + shift > 64) throw std::overflow_error("exponent overflow in g");
        g.add_term(base << shift, 1);
      }
    }
  }
  return g;
}

bool verify_covering(unsigned k, unsigned l, GExponent variant) {
  const SparsePoly f = build_f(k, l);
  const SparsePoly g = build_g(k, l, variant);
  // f^(q+1) = f^q * f with f^q = l-fold Frobenius.
  const SparsePoly lhs = frobenius_times(f, l) * f + f;
  const SparsePoly rhs = x_pow(pow2(k) + 1) + x_pow(1) + frobenius(g) + g;
  return (lhs + rhs).is_zero();
}

bool verify_trace_morphism(unsigned n, unsigned k) {
  if (n < 2 || k < 1) throw std::invalid_argument("trace morphism needs n > 1 and k >= 1");
  if (std::uint64_t{n} * k >= kMaxExponentBits) throw std::invalid_argument("n*k too large for 64-bit exponents");
  SparsePoly t(2);
  for (unsigned i = 0; i < n; ++i) t.add_term(pow2(i * k), 1);
  const SparsePoly lhs = frobenius_times(t, k) + t;
  return lhs == x_pow(pow2(n * k)) + x_pow(1);
}

ArtinSchreierImage artin_schreier_image(const SparsePoly& h) {
  const std::uint32_t p = h.characteristic();
  SparsePoly rest = h;
  SparsePoly witness(p);
  while (!rest.is_zero()) {
    const std::uint64_t d = rest.degree();
    if (d == 0 || d % p != 0) return NotInImage{d};
    // c^(1/p) = c for c in F_p.
    const SparsePoly u = SparsePoly::monomial(p, d / p, rest.leading_coefficient());
    witness += u;
    rest -= artin_schreier(u);
  }
  if (artin_schreier(witness) != h) throw std::logic_error("Artin-Schreier witness failed re-verification");
  return InImage{std::move(witness)};
}

SparsePoly obstruction_polynomial(std::uint32_t p) {
  SparsePoly h(p);
  const std::uint64_t pp = p;
  h.add_term(pp * pp + pp, 1);
  h.add_term(2 * pp, 1);
  h.add_term(pp + 1, 1);
  h.add_term(pp, 1);
  return h;
}

std::optional<SparsePoly> involution_search(unsigned k) {
  if (k == 0) throw std::invalid_argument("involution_search needs k >= 1");
  if (k > 40) throw std::invalid_argument("involution_search is limited to k <= 40");
  const SparsePoly target = x_pow(pow2(k)) + x_pow(1);
  const std::uint64_t want = pow2(k) | 1;
  // Squaring a linearised F_2 polynomial moves the coefficient of x^(2^i)
  // to x^(2^(i+1)), so B^2 + B has coefficient bits (mask << 1) ^ mask.
  // Matching bit i of the target forces a_i from a_(i-1).
  std::uint64_t mask = 0;
  for (unsigned i = 0; i < k; ++i) {
    const std::uint64_t prev = i == 0 ? 0 : (mask >> (i - 1)) & 1;
    mask |= (((want >> i) & 1) ^ prev) << i;
  }
  if (((mask << 1) ^ mask) != want) return std::nullopt;
  // B(1) = sum a_i.
  if (std::popcount(mask) & 1) return std::nullopt;
  SparsePoly b(2);
  for (unsigned i = 0; i < k; ++i) {
    if (mask >> i & 1) b.add_term(pow2(i), 1);
  }
  if (frobenius(b) + b == target && b.evaluate(1) == 0) return b;
  return std::nullopt;
}

}  // namespace lpdiv
