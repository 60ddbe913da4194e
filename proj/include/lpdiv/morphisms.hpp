#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "lpdiv/sympoly.hpp"

namespace lpdiv {

/// Which exponent the double sum in g(x) uses: 2^s (consistent with the
/// covering identity) or the literal 2^l, kept to pin the difference.
enum class GExponent { Corrected, Printed };

/// f(x) = sum_{j=0}^{r-1} x^(q^j) with q = 2^l, r = k/l. Requires l | k, k > l >= 1.
SparsePoly build_f(unsigned k, unsigned l);

/// g(x) = sum_{j=1}^{r-1} x^(q^j) + sum_{0<=i<j<=r-1} sum_{s=0}^{l-1} x^(2^s (q^i + q^j)).
SparsePoly build_g(unsigned k, unsigned l, GExponent variant = GExponent::Corrected);

/// True iff f^(q+1) + f = x^(q^r+1) + x + g^2 + g in F_2[x], so that
/// (x, y) -> (f(x), y + g(x)) maps C_k to C_l.
bool verify_covering(unsigned k, unsigned l, GExponent variant = GExponent::Corrected);

/// True iff T = sum_{i<n} x^(2^(ik)) satisfies T^(2^k) + T = x^(2^(nk)) + x,
/// i.e. (x, y) -> (T(x), y) maps A_{nk} to A_k. Requires n > 1, k >= 1.
bool verify_trace_morphism(unsigned n, unsigned k);

struct InImage {
  SparsePoly witness;  // h = witness^p - witness
};
struct NotInImage {
  std::uint64_t stuck_degree;
};
using ArtinSchreierImage = std::variant<InImage, NotInImage>;

/// Decides whether h = g^p - g for some g in F_p[x] by peeling leading terms.
ArtinSchreierImage artin_schreier_image(const SparsePoly& h);

/// x^(p^2+p) + x^(2p) + x^(p+1) + x^p: what (f, g) with f = x + x^p would
/// have to produce for a map C_2^(p) -> C_1^(p).
SparsePoly obstruction_polynomial(std::uint32_t p);

/// Searches linearised B = sum_{i<k} a_i x^(2^i) over F_2 with
/// B^2 + B = x^(2^k) + x and B(1) = 0; returns B when one exists.
std::optional<SparsePoly> involution_search(unsigned k);

}  // namespace lpdiv
