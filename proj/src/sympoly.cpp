#include "lpdiv/sympoly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "lpdiv/finite_field.hpp"

namespace lpdiv {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
  return r;
}

std::uint32_t powmod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  for (; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

SparsePoly::SparsePoly(std::uint32_t p) : p_(p) {
  if (p > kMaxCharacteristic || !is_prime(p)) throw std::invalid_argument("characteristic must be a small prime");
}

SparsePoly::SparsePoly(std::uint32_t p, std::initializer_list<std::pair<const std::uint64_t, std::uint32_t>> terms)
    : SparsePoly(p) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

SparsePoly SparsePoly::monomial(std::uint32_t p, std::uint64_t exponent, std::uint32_t coeff) {
  SparsePoly r(p);
  r.add_term(exponent, coeff);
  return r;
}

std::uint64_t SparsePoly::degree() const {
  if (terms_.empty()) throw std::domain_error("degree of the zero polynomial");
  return terms_.rbegin()->first;
}

std::uint32_t SparsePoly::leading_coefficient() const {
  if (terms_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return terms_.rbegin()->second;
}

std::uint32_t SparsePoly::coefficient(std::uint64_t exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

void SparsePoly::add_term(std::uint64_t exponent, std::uint32_t coeff) {
  coeff %= p_;
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coeff);
  if (inserted) return;
  it->second = static_cast<std::uint32_t>((std::uint64_t{it->second} + coeff) % p_);
  if (it->second == 0) terms_.erase(it);
}

std::uint32_t SparsePoly::evaluate(std::uint32_t x) const {
  std::uint64_t acc = 0;
  for (const auto& [e, c] : terms_) acc = (acc + std::uint64_t{c} * powmod(x, e, p_)) % p_;
  return static_cast<std::uint32_t>(acc);
}

void SparsePoly::require_same_field(const SparsePoly& o) const {
  if (o.p_ != p_) {
    throw std::invalid_argument("characteristic mismatch: " + std::to_string(p_) + " vs " + std::to_string(o.p_));
  }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  require_same_field(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  require_same_field(o);
  for (const auto& [e, c] : o.terms_) add_term(e, p_ - c);
  return *this;
}

SparsePoly operator-(const SparsePoly& a) { return SparsePoly(a.p_) - a; }

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  a.require_same_field(b);
  SparsePoly r(a.p_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      r.add_term(checked_add(ea, eb), static_cast<std::uint32_t>(std::uint64_t{ca} * cb % a.p_));
    }
  }
  return r;
}

SparsePoly frobenius(const SparsePoly& a) {
  SparsePoly r(a.characteristic());
  for (const auto& [e, c] : a.terms()) r.add_term(checked_mul(e, a.characteristic()), c);
  return r;
}

SparsePoly pow(const SparsePoly& a, std::uint64_t e) {
  const std::uint32_t p = a.characteristic();
  if (e == 0) return SparsePoly::monomial(p, 0);
  if (e % p == 0) return frobenius(pow(a, e / p));
  return pow(a, e - 1) * a;
}

SparsePoly artin_schreier(const SparsePoly& u) { return frobenius(u) - u; }

std::string format_sparse(const SparsePoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    if (!first) os << '+';
    first = false;
    os << it->second << "*x^" << it->first;
  }
  return os.str();
}

SparsePoly parse_sparse(std::string_view text, std::uint32_t p) {
  SparsePoly r(p);
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  if (s.empty()) fail("empty text");
  if (s == "0") return r;
  auto read_number = [&](std::size_t& i) {
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) fail("expected a number");
    try {
      return std::stoull(s.substr(start, i - start));
    } catch (const std::out_of_range&) {
      fail("number out of range");
    }
    return 0ull;
  };
  std::size_t i = 0;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (i != 0) {
      fail("expected '+' between terms");
    }
    std::uint64_t coeff = 1;
    bool have_coeff = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coeff = read_number(i) % p;
      have_coeff = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    std::uint64_t exponent = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      exponent = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        exponent = read_number(i);
      }
    } else if (!have_coeff) {
      fail("empty term");
    }
    const auto c = static_cast<std::uint32_t>(coeff % p);
    r.add_term(exponent, negative ? (p - c) % p : c);
  }
  return r;
}

std::string to_record(const SparsePoly& a) { return "p=" + std::to_string(a.characteristic()) + ";" + format_sparse(a); }

SparsePoly parse_sparse_record(std::string_view line) {
  if (line.substr(0, 2) != "p=") throw std::invalid_argument("polynomial record must start with 'p='");
  const auto semi = line.find(';');
  if (semi == std::string_view::npos) throw std::invalid_argument("polynomial record is missing ';'");
  const std::string p_text(line.substr(2, semi - 2));
  std::size_t pos = 0;
  unsigned long p = 0;
  try {
    p = std::stoul(p_text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != p_text.size()) throw std::invalid_argument("bad characteristic in polynomial record");
  return parse_sparse(line.substr(semi + 1), static_cast<std::uint32_t>(p));
}

}  // namespace lpdiv
