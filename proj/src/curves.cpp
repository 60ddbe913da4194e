#include "lpdiv/curves.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <mutex>
#include <numeric>
#include <thread>

#include "lpdiv/count_cache.hpp"

namespace lpdiv {

namespace {

constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 16;

std::uint64_t count_ck_like(const CurveSpec& spec, const FieldCtx& ctx, ElementRange range) {
  const FrobeniusMap frob = ctx.frobenius_map(spec.k);
  const std::uint64_t mask = ctx.trace_mask();
  std::uint64_t n = 0;
  if (spec.family == Family::AK) {
    for (std::uint64_t x = range.first(); x < range.last(); ++x) {
      const std::uint64_t v = frob.apply_bits(x) ^ x;
      n += (std::popcount(v & mask) & 1) ? 0 : 2;
    }
    return n;
  }
  for (std::uint64_t x = range.first(); x < range.last(); ++x) {
    const std::uint64_t v = ctx.mul_bits(frob.apply_bits(x), x) ^ x;
    n += (std::popcount(v & mask) & 1) ? 0 : 2;
  }
  return n;
}

// y^2 + xy = P(x): x = 0 gives y = 0 only; otherwise y = xz turns the fiber
// into z^2 + z = P(x)/x^2 = x^(2^k+1) + 1/x.
std::uint64_t count_ek(const CurveSpec& spec, const FieldCtx& ctx, ElementRange range) {
  const FrobeniusMap frob = ctx.frobenius_map(spec.k);
  const std::uint64_t mask = ctx.trace_mask();
  std::uint64_t n = 0;
  for (std::uint64_t x = range.first(); x < range.last(); ++x) {
    if (x == 0) {
      n += 1;
      continue;
    }
    const std::uint64_t v = ctx.mul_bits(frob.apply_bits(x), x) ^ ctx.inv(FieldElement{x}).code;
    n += (std::popcount(v & mask) & 1) ? 0 : 2;
  }
  return n;
}

std::uint64_t count_ckp(const CurveSpec& spec, const FieldCtx& ctx, ElementRange range) {
  if (range.size() == 0) return 0;
  const FrobeniusMap frob = ctx.frobenius_map(spec.k);
  const unsigned m = ctx.degree();
  const std::uint32_t p = ctx.characteristic();
  Digits x = ctx.digits(FieldElement{range.first()});
  std::uint64_t n = 0;
  for (std::uint64_t i = range.first(); i < range.last(); ++i) {
    const Digits v = ctx.add_digits(ctx.mul_digits(frob.apply_digits(x), x), x);
    if (ctx.trace_digits(v) == 0) n += p;
    for (unsigned d = 0; d < m; ++d) {
      if (++x[d] < p) break;
      x[d] = 0;
    }
  }
  return n;
}

template <typename Kernel>
std::uint64_t run_partitioned(std::uint64_t total, unsigned m, const CountOptions& options, Kernel kernel) {
  const std::uint64_t interval = std::max<std::uint64_t>(options.progress_interval, 1);
  std::atomic<std::uint64_t> done{0};
  std::mutex progress_mutex;

  auto work = [&](ElementRange range) {
    std::uint64_t sum = 0;
    for (std::uint64_t first = range.first(); first < range.last();) {
      const std::uint64_t last = std::min(range.last(), first + std::min(interval, range.last() - first));
      sum += kernel(ElementRange{first, last});
      const std::uint64_t now = done.fetch_add(last - first) + (last - first);
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress(ProgressEvent{m, now, total});
      }
      first = last;
    }
    return sum;
  };

  const unsigned workers = (total < kParallelThreshold) ? 1 : std::max(1u, options.workers);
  const auto parts = partition_range(total, workers);
  if (workers == 1) return work(parts.front());

  std::vector<std::uint64_t> partial(parts.size(), 0);
  {
    std::vector<std::jthread> pool;
    pool.reserve(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      pool.emplace_back([&, i] { partial[i] = work(parts[i]); });
    }
  }
  // Combined in partition order.
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::CK: return "ck";
    case Family::EK: return "ek";
    case Family::AK: return "ak";
    case Family::CKP: return "ckp";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Family f : {Family::CK, Family::EK, Family::AK, Family::CKP}) {
    if (lower == family_name(f)) return f;
  }
  throw std::invalid_argument("unknown curve family '" + std::string(name) + "'");
}

CurveSpec make_curve(Family family, unsigned k, std::uint32_t p) {
  if (k == 0) throw std::invalid_argument("curve parameter k must be positive");
  if (family == Family::CKP) {
    if (p == 2 || !is_prime(p) || p > kMaxCharacteristic) {
      throw std::invalid_argument("ckp requires an odd prime p, got " + std::to_string(p));
    }
    // genus (p-1)p^k/2 must fit comfortably in 64 bits
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (pk > (std::uint64_t{1} << 40) / p) throw std::invalid_argument("ckp parameters too large");
      pk *= p;
    }
  } else {
    if (p != 2) throw std::invalid_argument(std::string(family_name(family)) + " is defined over F_2 only");
    if (k > 40) throw std::invalid_argument("k too large");
  }
  return CurveSpec{family, k, p};
}

std::string curve_label(const CurveSpec& spec) {
  const std::string k = std::to_string(spec.k);
  switch (spec.family) {
    case Family::CK: return "C_" + k;
    case Family::EK: return "E_" + k;
    case Family::AK: return "A_" + k;
    case Family::CKP: return "C_" + k + "^(" + std::to_string(spec.p) + ")";
  }
  return "?";
}

std::uint64_t genus(const CurveSpec& spec) {
  switch (spec.family) {
    case Family::CK: return std::uint64_t{1} << (spec.k - 1);
    case Family::EK: return (std::uint64_t{1} << (spec.k - 1)) + 1;
    case Family::AK: return 0;
    case Family::CKP: return (spec.p - 1) * ipow(spec.p, spec.k) / 2;
  }
  return 0;
}

unsigned points_at_infinity(const CurveSpec& spec) { return spec.family == Family::AK ? 2 : 1; }

unsigned component_count(const CurveSpec& spec) { return spec.family == Family::AK ? 2 : 1; }

std::uint64_t checked_field_size(std::uint32_t p, unsigned m, std::uint64_t limit) {
  if (m == 0) throw std::invalid_argument("extension degree must be positive");
  std::uint64_t size = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (size > limit / p) {
      throw FieldTooLarge("F_" + std::to_string(p) + "^" + std::to_string(m) + " exceeds the field-size limit of " +
                          std::to_string(limit) + " elements");
    }
    size *= p;
  }
  return size;
}

std::uint64_t affine_count(const CurveSpec& spec, const FieldCtx& ctx, ElementRange range) {
  if (ctx.characteristic() != spec.p) throw std::invalid_argument("field characteristic does not match the curve");
  switch (spec.family) {
    case Family::CK:
    case Family::AK: return count_ck_like(spec, ctx, range);
    case Family::EK: return count_ek(spec, ctx, range);
    case Family::CKP: return count_ckp(spec, ctx, range);
  }
  return 0;
}

std::uint64_t affine_count(const CurveSpec& spec, unsigned m, const CountOptions& options) {
  const std::uint64_t size = checked_field_size(spec.p, m, options.max_field_size);
  const FieldCtx ctx(spec.p, m);
  return run_partitioned(size, m, options, [&](ElementRange r) { return affine_count(spec, ctx, r); });
}

std::uint64_t point_count(const CurveSpec& spec, unsigned m, const CountOptions& options) {
  return affine_count(spec, m, options) + points_at_infinity(spec);
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Counted: return "counted";
    case Provenance::Cached: return "cached";
    case Provenance::Predicted: return "predicted";
  }
  return "?";
}

bool within_hasse_weil(const BigInt& n, std::uint64_t q, unsigned m, std::uint64_t g) {
  BigInt qm = boost::multiprecision::pow(BigInt(q), m);
  BigInt dev = n - qm - 1;
  // dev^2 <= 4 g^2 q^m
  return dev * dev <= BigInt(4) * g * g * qm;
}

CountEntry point_count_entry(const CurveSpec& spec, unsigned m, const CountOptions& options, CountCache* cache) {
  checked_field_size(spec.p, m, options.max_field_size);
  CountEntry entry{0, Provenance::Counted};
  std::optional<CacheKey> key;
  if (cache) {
    key = CacheKey{spec.family, spec.k, spec.p, m, FieldCtx(spec.p, m).modulus_string()};
    if (auto hit = cache->lookup(*key)) entry = {*hit, Provenance::Cached};
  }
  if (entry.provenance == Provenance::Counted) {
    entry.count = point_count(spec, m, options);
    if (cache) cache->store(*key, entry.count);
  }
  // Hasse-Weil applies per geometrically irreducible component.
  const std::uint64_t g = genus(spec);
  const unsigned comps = component_count(spec);
  if (entry.count % comps != 0 || !within_hasse_weil(BigInt(entry.count / comps), spec.p, m, g)) {
    throw ConsistencyError(curve_label(spec) + ": N_" + std::to_string(m) + " = " + std::to_string(entry.count) +
                           " violates the Hasse-Weil bound for genus " + std::to_string(g));
  }
  return entry;
}

PointCounts count_series(const CurveSpec& spec, unsigned max_m, const CountOptions& options, CountCache* cache) {
  if (max_m == 0) throw std::invalid_argument("count_series needs at least one extension degree");
  checked_field_size(spec.p, max_m, options.max_field_size);
  PointCounts out{spec, spec.p, {}, {}};
  for (unsigned m = 1; m <= max_m; ++m) {
    const CountEntry e = point_count_entry(spec, m, options, cache);
    out.counts.emplace_back(e.count);
    out.provenance.push_back(e.provenance);
  }
  return out;
}

std::uint64_t lmw_zero_count(unsigned n, unsigned k, unsigned j, const CountOptions& options) {
  if (j >= k) throw std::invalid_argument("lmw_zero_count requires 0 <= j < k");
  const std::uint64_t size = checked_field_size(2, n, options.max_field_size);
  const FieldCtx ctx(2, n);
  const FrobeniusMap fk = ctx.frobenius_map(k), fj = ctx.frobenius_map(j);
  const std::uint64_t mask = ctx.trace_mask();
  return run_partitioned(size, n, options, [&](ElementRange r) {
    std::uint64_t zeros = 0;
    for (std::uint64_t x = r.first(); x < r.last(); ++x) {
      const std::uint64_t v = ctx.mul_bits(fk.apply_bits(x), x) ^ ctx.mul_bits(fj.apply_bits(x), x);
      zeros += (std::popcount(v & mask) & 1) ? 0 : 1;
    }
    return zeros;
  });
}

bool lmw_hypothesis_holds(unsigned n, unsigned k, unsigned j) {
  return n % 2 == 1 && j < k && std::gcd(k + j, n) == 1 && std::gcd(k - j, n) == 1;
}

std::int64_t lmw_formula(unsigned n, unsigned k, unsigned j) {
  if (!lmw_hypothesis_holds(n, k, j)) {
    throw HypothesisViolation("LMW formula needs n odd, j < k and gcd(k+j, n) = gcd(k-j, n) = 1 (n=" +
                              std::to_string(n) + ", k=" + std::to_string(k) + ", j=" + std::to_string(j) + ")");
  }
  if (n > 61) throw std::out_of_range("n too large for a 64-bit result");
  const std::int64_t half = std::int64_t{1} << ((n - 1) / 2);
  return (std::int64_t{1} << (n - 1)) + jacobi_symbol(2, n) * half;
}

}  // namespace lpdiv
