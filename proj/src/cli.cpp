#include "lpdiv/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpdiv/count_cache.hpp"
#include "lpdiv/lseries.hpp"
#include "lpdiv/morphisms.hpp"

namespace lpdiv::cli {

namespace {

using nlohmann::ordered_json;

struct CurveArgs {
  std::string family;
  unsigned k = 0;
  std::uint32_t p = 2;

  CurveSpec spec() const { return make_curve(parse_family(family), k, p); }
};

void add_curve_options(CLI::App* cmd, CurveArgs& args, bool with_k = true) {
  cmd->add_option("--family", args.family, "Curve family: ck, ek, ak or ckp")
      ->required()
      ->check(CLI::IsMember({"ck", "ek", "ak", "ckp"}, CLI::ignore_case));
  if (with_k) cmd->add_option("--k", args.k, "Family parameter k")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--p", args.p, "Characteristic (odd prime, ckp only)")->default_val(2);
}

class Session {
 public:
  Session(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {
    if (cfg.cache_dir) cache_.emplace(*cfg.cache_dir);
    options_.workers = cfg.workers;
    options_.max_field_size = cfg.max_field_size;
    options_.progress = [this](const ProgressEvent& e) {
      if (e.total < options_.progress_interval) return;
      err_ << "progress: m=" << e.m << ' ' << e.done << '/' << e.total << " elements\n";
    };
  }

  bool records() const { return cfg_.format == OutputFormat::Records; }
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }
  const CountOptions& options() const { return options_; }
  CountCache* cache() { return cache_ ? &*cache_ : nullptr; }

  LPolynomial lpoly_for(const CurveSpec& spec, PointCounts* counts_out = nullptr) {
    const auto g = genus(spec);
    PointCounts counts = count_series(spec, static_cast<unsigned>(std::max<std::uint64_t>(g, 1)), options_, cache());
    LPolynomial l = lpoly_from_counts(counts);
    if (!satisfies_functional_equation(l)) {
      throw ConsistencyError(curve_label(spec) + ": reconstructed L-polynomial fails the functional equation");
    }
    if (counts_out) *counts_out = std::move(counts);
    return l;
  }

 private:
  RunConfig cfg_;
  std::ostream& out_;
  std::ostream& err_;
  CountOptions options_;
  std::optional<CountCache> cache_;
};

int cmd_count(Session& s, const CurveArgs& args, unsigned m) {
  const CurveSpec spec = args.spec();
  const CountEntry e = point_count_entry(spec, m, s.options(), s.cache());
  if (s.records()) {
    ordered_json j;
    j["command"] = "count";
    j["curve"] = curve_label(spec);
    j["family"] = family_name(spec.family);
    j["k"] = spec.k;
    j["p"] = spec.p;
    j["m"] = m;
    j["count"] = std::to_string(e.count);
    s.out() << j.dump() << '\n';
  } else {
    s.out() << curve_label(spec) << " over F_" << spec.p << "^" << m << ": N_" << m << " = " << e.count << '\n';
  }
  // Provenance goes to stderr so warm and cold runs print identical results.
  if (s.cache()) s.err() << "N_" << m << ": " << provenance_name(e.provenance) << '\n';
  return kExitOk;
}

int cmd_lpoly(Session& s, const CurveArgs& args) {
  const CurveSpec spec = args.spec();
  PointCounts counts;
  const LPolynomial l = s.lpoly_for(spec, &counts);
  if (s.cache()) {
    const auto cached = std::count(counts.provenance.begin(), counts.provenance.end(), Provenance::Cached);
    s.err() << "counts: " << cached << " of " << counts.counts.size() << " from cache\n";
  }
  if (s.records()) {
    ordered_json j = ordered_json::parse(to_record(l));
    ordered_json rec;
    rec["curve"] = curve_label(spec);
    for (auto& [key, value] : j.items()) rec[key] = value;
    s.out() << rec.dump() << '\n';
    return kExitOk;
  }
  s.out() << "curve " << curve_label(spec) << ", genus " << l.g << ", q = " << l.q << '\n';
  s.out() << "counts:";
  for (std::size_t i = 0; i < counts.counts.size(); ++i) {
    s.out() << " N_" << i + 1 << "=" << counts.counts[i];
  }
  s.out() << "\nL(t) = " << format_poly(l.poly) << '\n';
  return kExitOk;
}

int cmd_conjecture(Session& s, const CurveArgs& args, unsigned kmax) {
  const Family family = parse_family(args.family);
  if (family == Family::AK) throw std::invalid_argument("conjecture applies to ck, ek and ckp");
  if (kmax < 2) throw std::invalid_argument("--kmax must be at least 2");
  const CurveSpec base = make_curve(family, 1, args.p);
  // Validate every field size before spending time counting.
  for (unsigned k = 1; k <= kmax; ++k) {
    const CurveSpec spec = make_curve(family, k, args.p);
    checked_field_size(spec.p, static_cast<unsigned>(std::max<std::uint64_t>(genus(spec), 1)), s.options().max_field_size);
  }
  const LPolynomial lbase = s.lpoly_for(base);
  if (!s.records()) {
    s.out() << "base " << curve_label(base) << ": L(t) = " << format_poly(lbase.poly) << '\n';
    s.out() << std::left << std::setw(4) << "k" << std::setw(12) << "curve" << std::setw(8) << "genus"
            << std::setw(11) << "divisible" << "quotient\n";
  }
  bool all = true;
  for (unsigned k = 2; k <= kmax; ++k) {
    const CurveSpec spec = make_curve(family, k, args.p);
    const LPolynomial l = s.lpoly_for(spec);
    const DivisionResult d = divides(lbase, l);
    all = all && d.divisible;
    if (s.records()) {
      ordered_json j;
      j["command"] = "conjecture";
      j["base"] = curve_label(base);
      j["curve"] = curve_label(spec);
      j["k"] = k;
      j["divisible"] = d.divisible;
      j["quotient"] = d.divisible ? ordered_json(format_poly(d.quotient)) : ordered_json(nullptr);
      if (d.failing_index) j["failing_index"] = *d.failing_index;
      s.out() << j.dump() << '\n';
    } else {
      s.out() << std::left << std::setw(4) << k << std::setw(12) << curve_label(spec) << std::setw(8) << l.g
              << std::setw(11) << (d.divisible ? "yes" : "no")
              << (d.divisible ? format_poly(d.quotient) : "failed at t^" + std::to_string(*d.failing_index)) << '\n';
    }
  }
  return all ? kExitOk : kExitFailed;
}

int cmd_verify_morphism(Session& s, unsigned k, unsigned l) {
  const SparsePoly f = build_f(k, l), g = build_g(k, l);
  const bool holds = verify_covering(k, l);
  if (s.records()) {
    ordered_json j;
    j["command"] = "verify-morphism";
    j["k"] = k;
    j["l"] = l;
    j["f"] = to_record(f);
    j["g"] = to_record(g);
    j["holds"] = holds;
    s.out() << j.dump() << '\n';
  } else {
    s.out() << "map C_" << k << " -> C_" << l << ": (x, y) -> (f(x), y + g(x))\n"
            << "f(x) = " << format_sparse(f) << "\n"
            << "g(x) = " << format_sparse(g) << "\n"
            << "f^(q+1) + f = x^(q^r+1) + x + g^2 + g over F_2: " << (holds ? "identity holds" : "identity FAILS")
            << '\n';
  }
  return holds ? kExitOk : kExitFailed;
}

int cmd_verify_lmw(Session& s, unsigned n, unsigned k, unsigned j) {
  const std::uint64_t count = lmw_zero_count(n, k, j, s.options());
  std::optional<std::int64_t> formula;
  if (lmw_hypothesis_holds(n, k, j)) formula = lmw_formula(n, k, j);
  const bool ok = !formula || static_cast<std::int64_t>(count) == *formula;
  if (s.records()) {
    ordered_json rec;
    rec["command"] = "verify-lmw";
    rec["n"] = n;
    rec["k"] = k;
    rec["j"] = j;
    rec["count"] = count;
    rec["formula"] = formula ? ordered_json(*formula) : ordered_json(nullptr);
    rec["agrees"] = ok;
    s.out() << rec.dump() << '\n';
  } else {
    s.out() << "zeros of Tr(x^(2^" << k << "+1) + x^(2^" << j << "+1)) in F_2^" << n << ": " << count << '\n';
    if (formula) {
      s.out() << "formula 2^(n-1) + (2/n) 2^((n-1)/2) = " << *formula << ": " << (ok ? "agrees" : "DISAGREES")
              << '\n';
    } else {
      s.out() << "formula: not applicable (needs n odd and gcd(k+-j, n) = 1)\n";
    }
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_verify_involution(Session& s, unsigned k) {
  const auto b = involution_search(k);
  const bool expected = (k % 2 == 0) == b.has_value();
  if (s.records()) {
    ordered_json j;
    j["command"] = "verify-involution";
    j["k"] = k;
    j["found"] = b.has_value();
    j["B"] = b ? ordered_json(to_record(*b)) : ordered_json(nullptr);
    s.out() << j.dump() << '\n';
  } else if (b) {
    s.out() << "C_" << k << ": involution (x, y) -> (x + 1, y + B(x)) with B(x) = " << format_sparse(*b) << '\n';
  } else {
    s.out() << "C_" << k << ": no involution (x, y) -> (x + 1, y + B(x)) with linearised B over F_2 exists\n";
  }
  return expected ? kExitOk : kExitFailed;
}

int cmd_verify_as_image(Session& s, std::uint32_t p, const std::optional<std::string>& poly_text) {
  const SparsePoly h = poly_text ? parse_sparse(*poly_text, p) : obstruction_polynomial(p);
  const ArtinSchreierImage result = artin_schreier_image(h);
  const auto* in = std::get_if<InImage>(&result);
  if (s.records()) {
    ordered_json j;
    j["command"] = "verify-as-image";
    j["h"] = to_record(h);
    j["in_image"] = in != nullptr;
    if (in) {
      j["witness"] = to_record(in->witness);
    } else {
      j["stuck_degree"] = std::get<NotInImage>(result).stuck_degree;
    }
    s.out() << j.dump() << '\n';
  } else {
    s.out() << "h(x) = " << format_sparse(h) << " over F_" << p << '\n';
    if (in) {
      s.out() << "in image: h = g^p - g with g(x) = " << format_sparse(in->witness) << '\n';
    } else {
      s.out() << "not in image: peeling stops at degree " << std::get<NotInImage>(result).stuck_degree
              << " (not divisible by p)\n";
    }
  }
  // The default polynomial is solvable exactly in characteristic 2.
  if (!poly_text && (in != nullptr) != (p == 2)) return kExitFailed;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point counts, L-polynomials and divisibility checks for Artin-Schreier curve families"};
  app.name("lpdiv");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "table";
  std::string cache_dir;
  bool allow_large = false;
  app.add_option("--workers", cfg.workers, "Worker threads for enumeration")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cache_dir, std::string("Point-count cache directory (default: $") + kCacheDirEnv + ")");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "records"}));
  app.add_flag("--allow-large", allow_large, "Allow fields up to 2^32 elements (long runtimes)");
  app.fallthrough();

  CurveArgs curve;
  unsigned m = 0, kmax = 0, l = 0, n = 0, j = 0;
  std::optional<std::string> poly_text;

  auto* count = app.add_subcommand("count", "Count N_m for one curve and extension degree");
  add_curve_options(count, curve);
  count->add_option("--m", m, "Extension degree")->required()->check(CLI::PositiveNumber);

  auto* lpoly = app.add_subcommand("lpoly", "Reconstruct the L-polynomial from N_1..N_g");
  add_curve_options(lpoly, curve);

  auto* conj = app.add_subcommand("conjecture", "Check L(X_1) | L(X_k) for k = 2..kmax");
  add_curve_options(conj, curve, false);
  conj->add_option("--kmax", kmax, "Largest k")->required();

  auto* verify = app.add_subcommand("verify", "Symbolic and enumerative verifications");
  verify->require_subcommand(1);
  verify->fallthrough();
  auto* morph = verify->add_subcommand("morphism", "Covering identity for C_k -> C_l");
  morph->add_option("--k", curve.k)->required();
  morph->add_option("--l", l)->required();
  auto* lmw = verify->add_subcommand("lmw", "Zero count of Tr(x^(2^k+1) + x^(2^j+1)) against the closed form");
  lmw->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  lmw->add_option("--k", curve.k)->required();
  lmw->add_option("--j", j)->default_val(0);
  auto* invol = verify->add_subcommand("involution", "Search linearised involutions of C_k");
  invol->add_option("--k", curve.k)->required()->check(CLI::PositiveNumber);
  auto* asimg = verify->add_subcommand("as-image", "Decide whether h = g^p - g over F_p");
  asimg->add_option("--p", curve.p)->required();
  asimg->add_option("--poly", poly_text, "Polynomial such as \"1*x^12+2*x^4\" (default: the obstruction for p)");
  for (auto* sub : {morph, lmw, invol, asimg}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  cfg.format = format == "records" ? OutputFormat::Records : OutputFormat::Table;
  if (!cache_dir.empty()) {
    cfg.cache_dir = cache_dir;
  } else if (const char* env = std::getenv(kCacheDirEnv); env && *env) {
    cfg.cache_dir = env;
  }
  if (allow_large) cfg.max_field_size = kLargeMaxFieldSize;
  std::transform(curve.family.begin(), curve.family.end(), curve.family.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  try {
    Session s(cfg, out, err);
    if (count->parsed()) return cmd_count(s, curve, m);
    if (lpoly->parsed()) return cmd_lpoly(s, curve);
    if (conj->parsed()) return cmd_conjecture(s, curve, kmax);
    if (morph->parsed()) return cmd_verify_morphism(s, curve.k, l);
    if (lmw->parsed()) return cmd_verify_lmw(s, n, curve.k, j);
    if (invol->parsed()) return cmd_verify_involution(s, curve.k);
    if (asimg->parsed()) return cmd_verify_as_image(s, curve.p, poly_text);
    err << "error: no command given\n";
    return kExitUsage;
  } catch (const FieldTooLarge& e) {
    err << "error: " << e.what() << " (use --allow-large to raise the limit to 2^32 elements)\n";
    return kExitUsage;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << '\n';
    return kExitFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}

}  // namespace lpdiv::cli
