#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lpdiv/bigint.hpp"
#include "lpdiv/finite_field.hpp"

namespace lpdiv {

class CountCache;

/// Curve families:
///   CK   y^2 + y  = x^(2^k+1) + x      over F_2
///   EK   y^2 + xy = x^(2^k+3) + x      over F_2
///   AK   y^2 + y  = x^(2^k) + x        over F_2
///   CKP  y^p - y  = x^(p^k+1) + x      over F_p, p odd
enum class Family { CK, EK, AK, CKP };

std::string_view family_name(Family f);
/// Accepts "ck", "ek", "ak", "ckp" (case-insensitive).
Family parse_family(std::string_view name);

struct CurveSpec {
  Family family = Family::CK;
  unsigned k = 1;
  std::uint32_t p = 2;

  friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

/// Validates parameters: k >= 1; p = 2 for CK/EK/AK, odd prime for CKP.
CurveSpec make_curve(Family family, unsigned k, std::uint32_t p = 2);

/// Short human label, e.g. "C_3", "E_2", "A_1", "C_2^(3)".
std::string curve_label(const CurveSpec& spec);

std::uint64_t genus(const CurveSpec& spec);

/// Degree-1 places at infinity on the smooth model.
unsigned points_at_infinity(const CurveSpec& spec);

/// Number of geometrically irreducible components. A_k factors as
/// (y + B(x))(y + B(x) + 1) with B = x + x^2 + ... + x^(2^(k-1)), so it is
/// two copies of the projective line; every other family is irreducible.
unsigned component_count(const CurveSpec& spec);

inline constexpr std::uint64_t kDefaultMaxFieldSize = std::uint64_t{1} << 26;
inline constexpr std::uint64_t kLargeMaxFieldSize = std::uint64_t{1} << 32;

struct ProgressEvent {
  unsigned m;
  std::uint64_t done;
  std::uint64_t total;
};

struct CountOptions {
  unsigned workers = 1;
  std::uint64_t max_field_size = kDefaultMaxFieldSize;
  /// Progress is reported every `progress_interval` enumerated elements.
  std::uint64_t progress_interval = std::uint64_t{1} << 24;
  std::function<void(const ProgressEvent&)> progress;
};

/// p^m, or throws FieldTooLarge when it exceeds `limit`.
std::uint64_t checked_field_size(std::uint32_t p, unsigned m, std::uint64_t limit);

/// Affine solutions contributed by the x-values whose encodings lie in `range`.
std::uint64_t affine_count(const CurveSpec& spec, const FieldCtx& ctx, ElementRange range);

/// Affine solutions over F_{p^m} by trace-based fiber counting.
std::uint64_t affine_count(const CurveSpec& spec, unsigned m, const CountOptions& options = {});

/// N_m on the smooth projective model: affine count plus points at infinity.
std::uint64_t point_count(const CurveSpec& spec, unsigned m, const CountOptions& options = {});

enum class Provenance { Counted, Cached, Predicted };
std::string_view provenance_name(Provenance p);

struct PointCounts {
  CurveSpec spec;
  std::uint64_t base_q = 2;
  std::vector<BigInt> counts;  // counts[i] = N_{i+1}
  std::vector<Provenance> provenance;
};

/// |N - q^m - 1| <= 2 g q^(m/2), checked exactly by squaring.
bool within_hasse_weil(const BigInt& n, std::uint64_t q, unsigned m, std::uint64_t g);

struct CountEntry {
  std::uint64_t count;
  Provenance provenance;
};

/// N_m read from `cache` when present, counted (and stored) otherwise, then
/// checked against the Hasse-Weil bound; a violation throws ConsistencyError.
CountEntry point_count_entry(const CurveSpec& spec, unsigned m, const CountOptions& options = {},
                             CountCache* cache = nullptr);

/// N_1 .. N_M. Each entry is counted (or read from `cache` if given) and
/// checked against the Hasse-Weil bound; a violation throws ConsistencyError.
PointCounts count_series(const CurveSpec& spec, unsigned max_m, const CountOptions& options = {},
                         CountCache* cache = nullptr);

/// Raised when a closed-form formula is requested outside its hypotheses.
class HypothesisViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// #{x in F_{2^n} : Tr(x^(2^k+1) + x^(2^j+1)) = 0}, by enumeration. Requires 0 <= j < k.
std::uint64_t lmw_zero_count(unsigned n, unsigned k, unsigned j, const CountOptions& options = {});

bool lmw_hypothesis_holds(unsigned n, unsigned k, unsigned j);

/// 2^(n-1) + (2/n) 2^((n-1)/2). Throws HypothesisViolation unless n is odd,
/// j < k and gcd(k+j, n) = gcd(k-j, n) = 1.
std::int64_t lmw_formula(unsigned n, unsigned k, unsigned j);

}  // namespace lpdiv
