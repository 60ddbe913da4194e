#include "lpdiv/lseries.hpp"

#include <cctype>
#include <sstream>

#include <json.hpp>

namespace lpdiv {

namespace {

using boost::multiprecision::pow;

BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
  BigInt q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) {
    throw ConsistencyError(std::string(what) + ": " + num.str() + " is not divisible by " + den.str());
  }
  return q;
}

// Coefficients a_0..a_n from power sums s_1..s_n: m a_m = -sum_{i=1}^m s_i a_{m-i}.
std::vector<BigInt> newton_coeffs(const std::vector<BigInt>& s, unsigned n) {
  std::vector<BigInt> a{1};
  for (unsigned m = 1; m <= n; ++m) {
    BigInt acc = 0;
    for (unsigned i = 1; i <= m; ++i) acc += s[i] * a[m - i];
    a.push_back(exact_div(-acc, m, "Newton division"));
  }
  return a;
}

BigInt content(const IntPoly& p) {
  BigInt c = 0;
  for (const auto& x : p.coeffs()) c = boost::multiprecision::gcd(c, x);
  return c;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  BigInt c = content(p);
  if (p.leading() < 0) c = -c;
  std::vector<BigInt> out;
  for (const auto& x : p.coeffs()) out.push_back(x / c);
  return IntPoly(std::move(out));
}

// lc(b)^e * a mod b for suitable e, without computing the exponent explicitly.
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  while (!a.is_zero() && a.degree() >= b.degree()) {
    const std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
    std::vector<BigInt> sub(shift, BigInt(0));
    for (const auto& c : b.coeffs()) sub.push_back(c * a.leading());
    std::vector<BigInt> scaled;
    for (const auto& c : a.coeffs()) scaled.push_back(c * b.leading());
    a = IntPoly(std::move(scaled)) - IntPoly(std::move(sub));
  }
  return a;
}

}  // namespace

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::derivative() const {
  std::vector<BigInt> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * i);
  return IntPoly(std::move(d));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return IntPoly(std::move(r));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(r));
}

std::string format_poly(const IntPoly& p, char var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    BigInt c = p.coeffs()[i];
    if (c == 0) continue;
    if (c < 0) {
      os << '-';
      c = -c;
    } else if (!first) {
      os << '+';
    }
    first = false;
    if (c != 1 || i == 0) os << c;
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

IntPoly parse_int_poly(std::string_view text, char var) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty polynomial text");
  std::vector<BigInt> coeffs;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected '+' or '-'");
    }
    const std::size_t digits_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    BigInt c = digits_start == i ? BigInt(1) : BigInt(s.substr(digits_start, i - digits_start));
    if (i < s.size() && s[i] == '*') ++i;
    std::size_t exp = 0;
    if (i < s.size() && s[i] == var) {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        const std::size_t e0 = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (e0 == i) fail("missing exponent");
        exp = std::stoul(s.substr(e0, i - e0));
      }
    } else if (digits_start == i) {
      fail("empty term");
    }
    if (coeffs.size() <= exp) coeffs.resize(exp + 1);
    coeffs[exp] += sign * c;
  }
  return IntPoly(std::move(coeffs));
}

bool satisfies_functional_equation(const LPolynomial& l) {
  if (l.poly.degree() != static_cast<int>(2 * l.g) || l.poly[0] != 1) return false;
  for (unsigned i = 0; i <= l.g; ++i) {
    if (l.poly[2 * l.g - i] != pow(l.q, l.g - i) * l.poly[i]) return false;
  }
  return true;
}

LPolynomial lpoly_from_counts(std::span<const BigInt> counts, unsigned g, const BigInt& q) {
  if (counts.size() < std::max(g, 1u)) {
    throw std::invalid_argument("need at least " + std::to_string(std::max(g, 1u)) + " point counts, got " +
                                std::to_string(counts.size()));
  }
  if (auto hw = hasse_weil_check(counts, q, g); !hw.ok) {
    throw ConsistencyError("N_" + std::to_string(*hw.first_violation + 1) + " violates the Hasse-Weil bound");
  }
  std::vector<BigInt> s(g + 1);
  s[0] = 2 * g;
  for (unsigned m = 1; m <= g; ++m) s[m] = pow(q, m) + 1 - counts[m - 1];
  std::vector<BigInt> a = newton_coeffs(s, g);
  a.resize(2 * g + 1);
  for (unsigned i = 0; i < g; ++i) a[2 * g - i] = pow(q, g - i) * a[i];
  LPolynomial l{q, g, IntPoly(std::move(a))};

  for (std::size_t m = g + 1; m <= counts.size(); ++m) {
    const BigInt expected = predicted_count(l, static_cast<unsigned>(m));
    if (expected != counts[m - 1]) {
      throw ConsistencyError("functional-equation inconsistency: N_" + std::to_string(m) + " = " +
                             counts[m - 1].str() + " but the L-polynomial predicts " + expected.str());
    }
  }
  return l;
}

LPolynomial lpoly_from_counts(const PointCounts& counts) {
  if (component_count(counts.spec) != 1) {
    throw std::invalid_argument(curve_label(counts.spec) + " is reducible; its counts do not define one L-polynomial");
  }
  return lpoly_from_counts(counts.counts, static_cast<unsigned>(genus(counts.spec)), BigInt(counts.base_q));
}

std::vector<BigInt> power_sums(const LPolynomial& l, unsigned upto) {
  std::vector<BigInt> s(upto + 1);
  s[0] = 2 * l.g;
  const std::size_t deg = 2 * l.g;
  for (unsigned m = 1; m <= upto; ++m) {
    BigInt v = m <= deg ? BigInt(-BigInt(m) * l.poly[m]) : BigInt(0);
    for (unsigned i = 1; i < m && i <= deg; ++i) v -= l.poly[i] * s[m - i];
    s[m] = v;
  }
  return s;
}

BigInt predicted_count(const LPolynomial& l, unsigned m) {
  if (m == 0) throw std::invalid_argument("predicted_count needs m >= 1");
  return pow(l.q, m) + 1 - power_sums(l, m)[m];
}

LPolynomial base_change(const LPolynomial& l, unsigned s) {
  if (s == 0) throw std::invalid_argument("base_change degree must be positive");
  const unsigned n = 2 * l.g;
  const std::vector<BigInt> all = power_sums(l, n * s);
  std::vector<BigInt> sub(n + 1);
  sub[0] = n;
  for (unsigned m = 1; m <= n; ++m) sub[m] = all[m * s];
  return LPolynomial{pow(l.q, s), l.g, IntPoly(newton_coeffs(sub, n))};
}

DivisionResult divides(const IntPoly& divisor, const IntPoly& dividend) {
  if (divisor.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  if (dividend.is_zero()) return {true, {}, std::nullopt};

  auto valuation = [](const IntPoly& p) {
    std::size_t v = 0;
    while (p.coeffs()[v] == 0) ++v;
    return v;
  };
  const std::size_t vd = valuation(divisor), vn = valuation(dividend);
  if (vn < vd) return {false, {}, vn};

  const auto& d = divisor.coeffs();
  const auto& n = dividend.coeffs();
  const std::size_t dd = d.size() - 1 - vd;  // degree after removing t^vd
  const std::size_t dn = n.size() - 1 - vd;
  if (dn < dd) return {false, {}, n.size() - 1};

  const BigInt& d0 = d[vd];
  const std::size_t dq = dn - dd;
  std::vector<BigInt> q(dq + 1);
  for (std::size_t i = 0; i <= dn; ++i) {
    BigInt r = n[i + vd];
    for (std::size_t j = 1; j <= std::min(i, dd); ++j) {
      if (i - j <= dq) r -= d[j + vd] * q[i - j];
    }
    if (i <= dq) {
      BigInt quot, rem;
      boost::multiprecision::divide_qr(r, d0, quot, rem);
      if (rem != 0) return {false, {}, i + vd};
      q[i] = quot;
    } else if (r != 0) {
      return {false, {}, i + vd};
    }
  }
  return {true, IntPoly(std::move(q)), std::nullopt};
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  IntPoly x = primitive_part(a), y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = primitive_part(pseudo_remainder(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

bool squarefree(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree of the zero polynomial");
  if (p.degree() <= 0) return true;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

HasseWeilReport hasse_weil_check(std::span<const BigInt> counts, const BigInt& q, std::uint64_t g) {
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const BigInt qm = pow(q, static_cast<unsigned>(i + 1));
    const BigInt dev = counts[i] - qm - 1;
    if (dev * dev > BigInt(4) * g * g * qm) return {false, i};
  }
  return {};
}

HasseWeilReport hasse_weil_check(const PointCounts& counts) {
  const unsigned comps = component_count(counts.spec);
  std::vector<BigInt> per_component;
  for (std::size_t i = 0; i < counts.counts.size(); ++i) {
    if (counts.counts[i] % comps != 0) return {false, i};
    per_component.push_back(counts.counts[i] / comps);
  }
  return hasse_weil_check(per_component, BigInt(counts.base_q), genus(counts.spec));
}

std::string to_record(const LPolynomial& l) {
  nlohmann::ordered_json j;
  j["q"] = l.q.str();
  j["g"] = l.g;
  auto coeffs = nlohmann::json::array();
  for (unsigned i = 0; i <= 2 * l.g; ++i) coeffs.push_back(l.poly[i].str());
  j["coeffs"] = std::move(coeffs);
  return j.dump();
}

LPolynomial parse_lpoly_record(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    LPolynomial l;
    l.q = BigInt(j.at("q").get<std::string>());
    l.g = j.at("g").get<unsigned>();
    std::vector<BigInt> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.emplace_back(c.get<std::string>());
    if (coeffs.size() != 2 * l.g + 1) throw std::invalid_argument("expected 2g+1 coefficients");
    l.poly = IntPoly(std::move(coeffs));
    return l;
  } catch (const std::exception& e) {
    throw std::invalid_argument("malformed L-polynomial record: " + std::string(e.what()));
  }
}

}  // namespace lpdiv
