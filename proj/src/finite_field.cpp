#include "lpdiv/finite_field.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#if defined(__x86_64__)
#include <immintrin.h>
#endif

namespace lpdiv {

namespace {

using Poly = std::vector<std::uint32_t>;  // dense, ascending, over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // p prime, a != 0: Fermat.
  std::uint64_t r = 1, b = a % p;
  for (std::uint64_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

// a mod b, b nonzero.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = inverse_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * b[i]) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), f, p);
  for (; e; e >>= 1) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

#if defined(__x86_64__)
__attribute__((target("pclmul,sse2"))) std::uint64_t clmul_hw(std::uint64_t a, std::uint64_t b) {
  const __m128i r = _mm_clmulepi64_si128(_mm_cvtsi64_si128(static_cast<long long>(a)),
                                         _mm_cvtsi64_si128(static_cast<long long>(b)), 0);
  return static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
}

const bool kHavePclmul = __builtin_cpu_supports("pclmul");
#else
const bool kHavePclmul = false;
#endif

std::uint64_t clmul_sw(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    r ^= a << std::countr_zero(b);
    b &= b - 1;
  }
  return r;
}

}  // namespace

namespace detail {

std::uint64_t clmul32(std::uint64_t a, std::uint64_t b) {
#if defined(__x86_64__)
  if (kHavePclmul) return clmul_hw(a, b);
#endif
  return clmul_sw(a, b);
}

bool is_irreducible(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
  const std::size_t m = monic.size() - 1;
  if (m == 0) return false;
  // gcd(x^(p^i) - x, f) = 1 for 1 <= i <= m/2.
  Poly h{0, 1};
  for (std::size_t i = 1; i <= m / 2; ++i) {
    h = poly_powmod(h, p, monic, p);
    Poly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(monic, diff, p).size() != 1) return false;
  }
  return true;
}

}  // namespace detail

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<ElementRange> partition_range(std::uint64_t total, unsigned parts) {
  if (parts == 0) throw std::invalid_argument("partition_range: parts must be positive");
  std::vector<ElementRange> out;
  out.reserve(parts);
  const std::uint64_t base = total / parts, extra = total % parts;
  std::uint64_t first = 0;
  for (unsigned i = 0; i < parts; ++i) {
    const std::uint64_t len = base + (i < extra ? 1 : 0);
    out.emplace_back(first, first + len);
    first += len;
  }
  return out;
}

FieldCtx::FieldCtx(std::uint32_t p, unsigned m) : p_(p), m_(m) {
  if (p > kMaxCharacteristic || !is_prime(p)) {
    throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not a supported prime");
  }
  if (m == 0) throw std::invalid_argument("field degree must be at least 1");
  if (p == 2 && m > kMaxBinaryDegree) {
    throw FieldTooLarge("F_2^" + std::to_string(m) + " exceeds the supported degree " +
                        std::to_string(kMaxBinaryDegree));
  }
  size_ = 1;
  for (unsigned i = 0; i < m; ++i) {
    place_values_.push_back(size_);
    if (p != 2 && (m > kMaxOddDegree || size_ > kMaxOddFieldSize / p)) {
      throw FieldTooLarge("F_" + std::to_string(p) + "^" + std::to_string(m) + " exceeds the supported size");
    }
    size_ *= p;
  }

  // Scan tails in ascending base-p order: lexicographic in (c_{m-1}, ..., c_0).
  for (std::uint64_t tail = 0; tail < size_; ++tail) {
    Poly f(m + 1, 0);
    f[m] = 1;
    for (unsigned i = 0; i < m; ++i) f[i] = static_cast<std::uint32_t>((tail / place_values_[i]) % p);
    if (detail::is_irreducible(f, p)) {
      modulus_ = std::move(f);
      break;
    }
  }
  if (modulus_.empty()) throw std::logic_error("no irreducible polynomial found");

  if (p == 2) {
    for (unsigned i = 0; i < m; ++i) {
      if (modulus_[i]) {
        modulus_tail_bits_ |= std::uint64_t{1} << i;
      }
    }
  }

  // Trace of each basis element by the defining sum a + a^p + ... .
  basis_traces_.resize(m);
  for (unsigned i = 0; i < m; ++i) {
    FieldElement xi = pow(generator(), i);
    FieldElement acc = zero(), cur = xi;
    for (unsigned j = 0; j < m; ++j) {
      acc = add(acc, cur);
      cur = pow(cur, p);
    }
    if (acc.code >= p) throw std::logic_error("trace left the prime field");
    basis_traces_[i] = static_cast<std::uint32_t>(acc.code);
    if (p == 2 && acc.code) trace_mask_ |= std::uint64_t{1} << i;
  }
}

std::string FieldCtx::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = modulus_.size(); i-- > 0;) {
    const std::uint32_t c = modulus_[i];
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (c != 1 || i == 0) os << c;
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

FieldElement FieldCtx::generator() const {
  if (m_ == 1) return FieldElement{(p_ - modulus_[0]) % p_};
  return FieldElement{place_values_[1]};
}

FieldElement FieldCtx::element(std::uint64_t code) const {
  if (code >= size_) throw std::out_of_range("element code outside the field");
  return FieldElement{code};
}

ElementRange FieldCtx::elements(std::uint64_t first, std::uint64_t last) const {
  if (first > last || last > size_) throw std::out_of_range("element range outside the field");
  return {first, last};
}

Digits FieldCtx::digits(FieldElement a) const {
  if (m_ > kMaxOddDegree) throw std::logic_error("digit vectors are limited to degree 16");
  Digits d{};
  std::uint64_t c = a.code;
  for (unsigned i = 0; i < m_; ++i) {
    d[i] = static_cast<std::uint32_t>(c % p_);
    c /= p_;
  }
  return d;
}

FieldElement FieldCtx::from_digits(const Digits& d) const {
  std::uint64_t c = 0;
  for (unsigned i = 0; i < m_; ++i) c += d[i] * place_values_[i];
  return FieldElement{c};
}

Digits FieldCtx::add_digits(const Digits& a, const Digits& b) const {
  Digits r{};
  for (unsigned i = 0; i < m_; ++i) {
    const std::uint32_t s = a[i] + b[i];
    r[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

Digits FieldCtx::mul_digits(const Digits& a, const Digits& b) const {
  std::array<std::uint64_t, 2 * kMaxOddDegree> r{};
  for (unsigned i = 0; i < m_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < m_; ++j) r[i + j] += std::uint64_t{a[i]} * b[j];
    if (i % 8 == 7) {
      for (auto& v : r) v %= p_;
    }
  }
  for (auto& v : r) v %= p_;
  for (unsigned i = 2 * m_ - 1; i-- > m_;) {
    const std::uint64_t c = r[i];
    if (c == 0) continue;
    r[i] = 0;
    for (unsigned j = 0; j < m_; ++j) {
      r[i - m_ + j] = (r[i - m_ + j] + (p_ - c) * modulus_[j]) % p_;
    }
  }
  Digits d{};
  for (unsigned i = 0; i < m_; ++i) d[i] = static_cast<std::uint32_t>(r[i]);
  return d;
}

std::uint32_t FieldCtx::trace_digits(const Digits& a) const {
  std::uint64_t s = 0;
  for (unsigned i = 0; i < m_; ++i) s += std::uint64_t{a[i]} * basis_traces_[i];
  return static_cast<std::uint32_t>(s % p_);
}

std::uint64_t FieldCtx::mul_bits(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t r = detail::clmul32(a, b);
  const std::uint64_t low_mask = (std::uint64_t{1} << m_) - 1;
  while (r >> m_) {
    r = (r & low_mask) ^ detail::clmul32(r >> m_, modulus_tail_bits_);
  }
  return r;
}

FieldElement FieldCtx::add(FieldElement a, FieldElement b) const {
  if (p_ == 2) return FieldElement{a.code ^ b.code};
  return from_digits(add_digits(digits(a), digits(b)));
}

FieldElement FieldCtx::neg(FieldElement a) const {
  if (p_ == 2) return a;
  Digits d = digits(a);
  for (unsigned i = 0; i < m_; ++i) d[i] = d[i] ? p_ - d[i] : 0;
  return from_digits(d);
}

FieldElement FieldCtx::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldCtx::mul(FieldElement a, FieldElement b) const {
  if (p_ == 2) return FieldElement{mul_bits(a.code, b.code)};
  return from_digits(mul_digits(digits(a), digits(b)));
}

FieldElement FieldCtx::pow(FieldElement a, std::uint64_t e) const {
  FieldElement r = one();
  for (; e; e >>= 1) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
  }
  return r;
}

FieldElement FieldCtx::inv(FieldElement a) const {
  if (a.code == 0) throw std::domain_error("inverse of zero");
  return pow(a, size_ - 2);
}

FieldElement FieldCtx::frobenius(FieldElement a, unsigned times) const {
  for (unsigned i = 0; i < times % m_; ++i) a = pow(a, p_);
  return a;
}

std::uint32_t FieldCtx::trace(FieldElement a) const {
  if (p_ == 2) return static_cast<std::uint32_t>(std::popcount(a.code & trace_mask_) & 1);
  return trace_digits(digits(a));
}

FrobeniusMap::FrobeniusMap(const FieldCtx& ctx, unsigned power) : ctx_(&ctx) {
  const unsigned m = ctx.degree();
  images_.resize(m);
  std::vector<std::uint64_t> image_codes(m);
  FieldElement xi = ctx.one();
  for (unsigned i = 0; i < m; ++i) {
    const FieldElement img = ctx.frobenius(xi, power);
    image_codes[i] = img.code;
    if (ctx.characteristic() != 2) images_[i] = ctx.digits(img);
    xi = ctx.mul(xi, ctx.generator());
  }
  if (ctx.characteristic() == 2) {
    byte_tables_.resize((m + 7) / 8);
    for (std::size_t b = 0; b < byte_tables_.size(); ++b) {
      auto& table = byte_tables_[b];
      table[0] = 0;
      for (unsigned v = 1; v < 256; ++v) {
        const unsigned bit = 8 * static_cast<unsigned>(b) + static_cast<unsigned>(std::countr_zero(v));
        table[v] = table[v & (v - 1)] ^ (bit < m ? image_codes[bit] : 0);
      }
    }
  }
}

Digits FrobeniusMap::apply_digits(const Digits& a) const {
  const unsigned m = ctx_->degree();
  const std::uint32_t p = ctx_->characteristic();
  std::array<std::uint64_t, kMaxOddDegree> acc{};
  for (unsigned i = 0; i < m; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < m; ++j) acc[j] += std::uint64_t{a[i]} * images_[i][j];
  }
  Digits r{};
  for (unsigned j = 0; j < m; ++j) r[j] = static_cast<std::uint32_t>(acc[j] % p);
  return r;
}

FieldElement FrobeniusMap::apply(FieldElement a) const {
  if (ctx_->characteristic() == 2) return FieldElement{apply_bits(a.code)};
  return ctx_->from_digits(apply_digits(ctx_->digits(a)));
}

}  // namespace lpdiv
