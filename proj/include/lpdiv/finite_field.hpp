#pragma once

#include <array>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpdiv {

/// Largest extension degree supported for characteristic 2 (elements are packed in one word).
inline constexpr unsigned kMaxBinaryDegree = 32;
/// Largest extension degree supported for odd characteristic.
inline constexpr unsigned kMaxOddDegree = 16;
/// Upper bound on p^m for odd characteristic.
inline constexpr std::uint64_t kMaxOddFieldSize = std::uint64_t{1} << 32;
/// Characteristics must fit in 16 bits so coefficient products fit comfortably in 64 bits.
inline constexpr std::uint32_t kMaxCharacteristic = 65521;

/// Raised when a requested field exceeds the documented limits.
class FieldTooLarge : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

bool is_prime(std::uint64_t n);

/// Jacobi symbol (a/n) for odd positive n. Throws std::invalid_argument otherwise.
int jacobi_symbol(std::int64_t a, std::int64_t n);

/// An element of F_{p^m}, stored as the base-p integer encoding of its
/// coefficient vector (coefficient of x^i is digit i). For p = 2 this is
/// exactly the packed bit vector.
struct FieldElement {
  std::uint64_t code = 0;

  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// Coefficient vector for odd-characteristic fast paths. Only the first m entries are used.
using Digits = std::array<std::uint32_t, kMaxOddDegree>;

class FieldCtx;

/// The F_p-linear map a -> a^(p^power) on a fixed field, tabulated once.
class FrobeniusMap {
 public:
  FieldElement apply(FieldElement a) const;

  // Fast paths: packed bits for p = 2, digit vectors for odd p.
  std::uint64_t apply_bits(std::uint64_t a) const {
    std::uint64_t r = 0;
    for (std::size_t b = 0; b < byte_tables_.size(); ++b) {
      r ^= byte_tables_[b][(a >> (8 * b)) & 0xff];
    }
    return r;
  }
  Digits apply_digits(const Digits& a) const;

 private:
  friend class FieldCtx;
  FrobeniusMap(const FieldCtx& ctx, unsigned power);

  const FieldCtx* ctx_;
  std::vector<std::array<std::uint64_t, 256>> byte_tables_;
  std::vector<Digits> images_;  // images_[i] = (x^i)^(p^power)
};

/// Contiguous range of element encodings [first, last), iterated in ascending order.
class ElementRange {
 public:
  class iterator {
   public:
    using value_type = FieldElement;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::forward_iterator_tag;

    iterator() = default;
    explicit iterator(std::uint64_t c) : code_(c) {}
    FieldElement operator*() const { return FieldElement{code_}; }
    iterator& operator++() {
      ++code_;
      return *this;
    }
    iterator operator++(int) {
      auto tmp = *this;
      ++code_;
      return tmp;
    }
    friend bool operator==(iterator, iterator) = default;

   private:
    std::uint64_t code_ = 0;
  };

  ElementRange(std::uint64_t first, std::uint64_t last) : first_(first), last_(last) {}
  iterator begin() const { return iterator{first_}; }
  iterator end() const { return iterator{last_}; }
  std::uint64_t size() const { return last_ - first_; }
  std::uint64_t first() const { return first_; }
  std::uint64_t last() const { return last_; }

 private:
  std::uint64_t first_;
  std::uint64_t last_;
};

/// Splits [0, total) into `parts` contiguous ranges of near-equal size, in order.
std::vector<ElementRange> partition_range(std::uint64_t total, unsigned parts);

/// The finite field F_{p^m} = F_p[x]/(modulus). The modulus is the
/// lexicographically smallest monic irreducible of degree m, comparing
/// coefficients from x^(m-1) down to x^0. Immutable after construction.
class FieldCtx {
 public:
  FieldCtx(std::uint32_t p, unsigned m);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  std::uint64_t size() const { return size_; }
  /// Coefficients of the modulus, ascending, length m + 1 (leading 1 included).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  /// Modulus rendered like "x^3+x+1".
  std::string modulus_string() const;

  FieldElement zero() const { return {}; }
  FieldElement one() const { return FieldElement{1}; }
  /// Residue class of x (equals 0 when m = 1, where the modulus is x).
  FieldElement generator() const;
  /// Element with the given encoding; throws std::out_of_range if code >= size().
  FieldElement element(std::uint64_t code) const;
  FieldElement from_prime(std::uint32_t c) const { return FieldElement{c % p_}; }

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement square(FieldElement a) const { return mul(a, a); }
  /// Throws std::domain_error on zero.
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  /// a^(p^times).
  FieldElement frobenius(FieldElement a, unsigned times = 1) const;
  /// Absolute trace to F_p.
  std::uint32_t trace(FieldElement a) const;

  ElementRange elements() const { return {0, size_}; }
  ElementRange elements(std::uint64_t first, std::uint64_t last) const;

  FrobeniusMap frobenius_map(unsigned power) const { return FrobeniusMap(*this, power); }

  // Packed-bit helpers (p = 2 only).
  std::uint64_t mul_bits(std::uint64_t a, std::uint64_t b) const;
  /// Trace of a packed element as the parity of (a & trace_mask()).
  std::uint64_t trace_mask() const { return trace_mask_; }

  // Digit-vector helpers (any p; intended for odd p).
  Digits digits(FieldElement a) const;
  FieldElement from_digits(const Digits& d) const;
  Digits mul_digits(const Digits& a, const Digits& b) const;
  Digits add_digits(const Digits& a, const Digits& b) const;
  std::uint32_t trace_digits(const Digits& a) const;

 private:
  std::uint32_t p_;
  unsigned m_;
  std::uint64_t size_;
  std::vector<std::uint32_t> modulus_;
  std::uint64_t modulus_tail_bits_ = 0;  // p = 2: modulus without x^m
  std::uint64_t trace_mask_ = 0;
  std::vector<std::uint32_t> basis_traces_;  // Tr(x^i)
  std::vector<std::uint64_t> place_values_;  // p^i
};

namespace detail {
/// Carry-less product of two words of at most 32 significant bits.
std::uint64_t clmul32(std::uint64_t a, std::uint64_t b);
/// True iff the monic polynomial with the given ascending coefficients is irreducible over F_p.
bool is_irreducible(const std::vector<std::uint32_t>& monic, std::uint32_t p);
}  // namespace detail

}  // namespace lpdiv
