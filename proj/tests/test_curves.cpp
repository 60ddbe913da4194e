#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "lpdiv/count_cache.hpp"
#include "lpdiv/curves.hpp"
#include "oracles.hpp"

using namespace lpdiv;

namespace {

std::vector<BigInt> big(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("lpdiv-test-" + std::to_string(std::random_device{}()) + std::to_string(std::rand()));
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("curve specs and genus") {
  CHECK(genus(make_curve(Family::CK, 3)) == 4);
  CHECK(genus(make_curve(Family::CK, 1)) == 1);
  CHECK(genus(make_curve(Family::EK, 2)) == 3);
  CHECK(genus(make_curve(Family::CKP, 2, 3)) == 9);
  CHECK(genus(make_curve(Family::CKP, 1, 5)) == 10);
  CHECK(genus(make_curve(Family::AK, 4)) == 0);
  CHECK(points_at_infinity(make_curve(Family::EK, 3)) == 1);
  CHECK(curve_label(make_curve(Family::CKP, 2, 3)) == "C_2^(3)");

  CHECK_THROWS_AS(make_curve(Family::CK, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_curve(Family::CK, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_curve(Family::CKP, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_curve(Family::CKP, 1, 9), std::invalid_argument);
  CHECK(parse_family("CKP") == Family::CKP);
  CHECK_THROWS_AS(parse_family("dk"), std::invalid_argument);
}

TEST_CASE("affine and projective counts, small examples") {
  CHECK(affine_count(make_curve(Family::CK, 1), 1) == 4);
  CHECK(affine_count(make_curve(Family::EK, 1), 1) == 3);
  // y^3 - y = x^4 + x over F_3: x in {0, 2} give x^4 + x = 0, three y each.
  CHECK(oracle::pair_count(make_curve(Family::CKP, 1, 3), 1) == 6);
  CHECK(affine_count(make_curve(Family::CKP, 1, 3), 1) == 6);

  CHECK(point_count(make_curve(Family::CK, 1), 1) == 5);
  CHECK(point_count(make_curve(Family::CK, 1), 3) == 5);
  CHECK(point_count(make_curve(Family::EK, 1), 1) == 4);
  CHECK(point_count(make_curve(Family::CKP, 1, 3), 1) == 7);
}

TEST_CASE("trace-based counting agrees with literal (x, y) enumeration") {
  for (Family fam : {Family::CK, Family::EK, Family::AK}) {
    for (unsigned k = 1; k <= 3; ++k) {
      const CurveSpec spec = make_curve(fam, k);
      for (unsigned m = 1; m <= 8; ++m) {
        CAPTURE(curve_label(spec));
        CAPTURE(m);
        CHECK(affine_count(spec, m) == oracle::pair_count(spec, m));
      }
    }
  }
  for (auto [p, k, mmax] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{{3, 1, 5}, {3, 2, 5}, {5, 1, 3}, {7, 1, 2}}) {
    const CurveSpec spec = make_curve(Family::CKP, k, p);
    for (unsigned m = 1; m <= mmax; ++m) {
      CAPTURE(curve_label(spec));
      CAPTURE(m);
      CHECK(affine_count(spec, m) == oracle::pair_count(spec, m));
    }
  }
}

TEST_CASE("A_k splits into two rational lines") {
  for (unsigned k = 1; k <= 4; ++k) {
    const CurveSpec a = make_curve(Family::AK, k);
    CHECK(component_count(a) == 2);
    for (unsigned m = 1; m <= 12; ++m) {
      const std::uint64_t q = std::uint64_t{1} << m;
      CHECK(affine_count(a, m) == 2 * q);
      CHECK(point_count(a, m) == 2 * (q + 1));
    }
  }
}

TEST_CASE("count_series") {
  const auto c2 = count_series(make_curve(Family::CK, 2), 2);
  CHECK(c2.counts == big({5, 9}));
  CHECK(c2.base_q == 2);
  CHECK(c2.provenance == std::vector<Provenance>(2, Provenance::Counted));
  CHECK(count_series(make_curve(Family::EK, 1), 1).counts.size() == 1);

  // Frozen from tests/oracle/lpoly_oracle.py.
  const auto c3 = count_series(make_curve(Family::CK, 3), 8);
  CHECK(c3.counts == big({5, 5, 17, 25, 25, 65, 145, 225}));
  CHECK(count_series(make_curve(Family::EK, 2), 6).counts == big({4, 8, 16, 16, 24, 80}));
  CHECK(count_series(make_curve(Family::CKP, 1, 3), 6).counts == big({7, 13, 28, 109, 217, 676}));
  CHECK(count_series(make_curve(Family::CKP, 2, 3), 9).counts ==
        big({7, 7, 28, 91, 217, 784, 2107, 7291, 19684}));

  CHECK_THROWS_AS(count_series(make_curve(Family::CK, 1), 0), std::invalid_argument);
}

TEST_CASE("Hasse-Weil bound holds for every counted series") {
  CHECK(within_hasse_weil(5, 2, 1, 1));
  CHECK(within_hasse_weil(3, 2, 1, 0));
  CHECK_FALSE(within_hasse_weil(100, 2, 1, 1));
  CHECK_FALSE(within_hasse_weil(4, 2, 1, 0));
  // boundary: |N - q - 1| = 2g sqrt(q) exactly, q = 4, g = 1
  CHECK(within_hasse_weil(9, 4, 1, 1));
  CHECK_FALSE(within_hasse_weil(10, 4, 1, 1));

  for (unsigned k = 1; k <= 4; ++k) {
    for (Family fam : {Family::CK, Family::EK}) {
      const CurveSpec spec = make_curve(fam, k);
      const auto s = count_series(spec, 16);
      for (unsigned m = 1; m <= 16; ++m) CHECK(within_hasse_weil(s.counts[m - 1], 2, m, genus(spec)));
    }
  }
}

TEST_CASE("C_k counts are odd and match C_1 when gcd(k, m) = 1, m odd") {
  const CurveSpec c1 = make_curve(Family::CK, 1);
  for (unsigned k = 1; k <= 5; ++k) {
    const CurveSpec ck = make_curve(Family::CK, k);
    for (unsigned m = 1; m <= 15; ++m) {
      const auto n = point_count(ck, m);
      CHECK(n % 2 == 1);
      if (m % 2 == 1 && std::gcd(k, m) == 1) CHECK(n == point_count(c1, m));
    }
  }
}

TEST_CASE("parallel counting is deterministic and reports progress") {
  const CurveSpec spec = make_curve(Family::CK, 3);
  CountOptions serial;
  CountOptions parallel;
  parallel.workers = 4;
  std::vector<ProgressEvent> events;
  parallel.progress_interval = 1 << 14;
  parallel.progress = [&](const ProgressEvent& e) { events.push_back(e); };
  CHECK(count_series(spec, 18, serial).counts == count_series(spec, 18, parallel).counts);
  REQUIRE_FALSE(events.empty());
  std::uint64_t last_done = 0;
  unsigned last_m = 0;
  for (const auto& e : events) {
    if (e.m != last_m) last_done = 0;
    CHECK(e.done > last_done);
    CHECK(e.done <= e.total);
    last_done = e.done;
    last_m = e.m;
  }
  CHECK(events.back().done == events.back().total);
}

TEST_CASE("field-size limits") {
  const CurveSpec c6 = make_curve(Family::CK, 6);
  CHECK_THROWS_AS(point_count(c6, 27), FieldTooLarge);
  CHECK_THROWS_AS(count_series(c6, 32), FieldTooLarge);
  CountOptions small;
  small.max_field_size = 1 << 10;
  CHECK_NOTHROW(point_count(c6, 10, small));
  CHECK_THROWS_AS(point_count(c6, 11, small), FieldTooLarge);
  CHECK(checked_field_size(3, 9, kDefaultMaxFieldSize) == 19683);
}

TEST_CASE("LMW zero counts and closed form") {
  CHECK(lmw_zero_count(3, 1, 0) == 2);
  CHECK(lmw_zero_count(1, 1, 0) == 2);
  CHECK(lmw_zero_count(5, 1, 0) == 12);
  CHECK(lmw_zero_count(7, 1, 0) == 72);
  CHECK(lmw_zero_count(5, 2, 1) == 12);
  CHECK(lmw_zero_count(7, 3, 1) == 72);
  CHECK(lmw_formula(3, 1, 0) == 2);
  CHECK(lmw_formula(5, 1, 0) == 12);
  CHECK(lmw_formula(7, 1, 0) == 72);

  CHECK_THROWS_AS(lmw_formula(4, 1, 0), HypothesisViolation);
  CHECK_THROWS_AS(lmw_formula(3, 3, 0), HypothesisViolation);
  CHECK_THROWS_AS(lmw_formula(5, 3, 2), HypothesisViolation);  // gcd(k+j, n) = 5
  CHECK_THROWS_AS(lmw_zero_count(5, 1, 1), std::invalid_argument);

  for (unsigned n = 1; n <= 11; n += 2) {
    for (unsigned k = 1; k <= 4; ++k) {
      for (unsigned j = 0; j < k; ++j) {
        if (lmw_hypothesis_holds(n, k, j)) {
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(j);
          CHECK(static_cast<std::int64_t>(lmw_zero_count(n, k, j)) == lmw_formula(n, k, j));
        }
      }
    }
  }
}

TEST_CASE("count cache") {
  TempDir dir;
  const CurveSpec spec = make_curve(Family::CK, 3);

  SUBCASE("records round-trip exactly") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
      const CacheKey key{static_cast<Family>(rng() % 4), static_cast<unsigned>(rng() % 9 + 1),
                         static_cast<std::uint32_t>(rng() % 2 ? 2 : 3), static_cast<unsigned>(rng() % 32 + 1),
                         "x^" + std::to_string(rng() % 40) + "+x+1"};
      const std::uint64_t n = rng();
      const std::string line = format_cache_record(key, n, "2026-10-15T00:00:00Z");
      const auto [back, count] = parse_cache_record(line);
      CHECK_FALSE(key < back);
      CHECK_FALSE(back < key);
      CHECK(count == n);
      CHECK(format_cache_record(back, count, "2026-10-15T00:00:00Z") == line);
    }
    CHECK(format_cache_record({Family::CK, 3, 2, 5, "x^5+x^2+1"}, 25, "2026-10-15T12:00:00Z") ==
          R"({"family":"ck","k":3,"p":2,"m":5,"modulus":"x^5+x^2+1","count":"25","timestamp":"2026-10-15T12:00:00Z"})");
  }

  SUBCASE("warm cache returns identical counts") {
    std::vector<BigInt> cold;
    {
      CountCache cache(dir.path);
      const auto s = count_series(spec, 8, {}, &cache);
      cold = s.counts;
      CHECK(s.provenance == std::vector<Provenance>(8, Provenance::Counted));
      CHECK(cache.size() == 8);
    }
    CountCache reloaded(dir.path);
    CHECK(reloaded.size() == 8);
    const auto warm = count_series(spec, 8, {}, &reloaded);
    CHECK(warm.counts == cold);
    CHECK(warm.provenance == std::vector<Provenance>(8, Provenance::Cached));
    CHECK(reloaded.lookup({Family::CK, 3, 2, 4, FieldCtx(2, 4).modulus_string()}) == 25u);
    CHECK_FALSE(reloaded.lookup({Family::CK, 3, 2, 4, "x^4+x^3+1"}).has_value());
  }

  SUBCASE("a corrupted count is caught by the Hasse-Weil check") {
    {
      CountCache cache(dir.path);
      cache.store({Family::CK, 3, 2, 2, FieldCtx(2, 2).modulus_string()}, 1000);
    }
    CountCache cache(dir.path);
    CHECK_THROWS_AS(count_series(spec, 4, {}, &cache), ConsistencyError);
  }

  SUBCASE("malformed files are rejected") {
    std::filesystem::create_directories(dir.path);
    std::ofstream(dir.path / "counts.jsonl") << "{\"family\":\"ck\",\"k\":1}\n";
    CHECK_THROWS_AS(CountCache{dir.path}, std::runtime_error);
  }
}
