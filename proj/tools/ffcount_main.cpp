// ffcount: point counts and zeta functions of curves and small varieties
// over finite fields. One JSON object per result line on stdout; big
// integers are decimal strings. Exit codes: 0 success, 1 engine error,
// 2 usage error.
#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <string>

#include "ffcount/counting.hpp"
#include "ffcount/padic.hpp"
#include "ffcount/schoof.hpp"
#include "ffcount/textio.hpp"
#include "ffcount/zetalab.hpp"

using json = nlohmann::ordered_json;
using namespace ffcount;

namespace {

struct FieldArgs {
  std::string p;
  unsigned d = 1;
  std::string modulus;
};

FieldCtxPtr make_field(const FieldArgs& fa, Rng& rng) {
  Int p(fa.p);
  if (fa.d == 1) return FieldCtx::make(p);
  if (fa.modulus.empty()) return FieldCtx::make(p, fa.d, rng);
  std::vector<Int> m;
  for (const auto& tok : split(fa.modulus, ',')) m.emplace_back(tok);
  return FieldCtx::make(p, fa.d, m);
}

json count_json(const CountResult& r) {
  json j;
  j["q"] = r.q.get_str();
  j["curve"] = r.curve;
  j["method"] = r.method;
  j["n_points"] = r.n_points.get_str();
  j["trace"] = r.trace.get_str();
  j["ms"] = Int((long)r.ms).get_str();
  return j;
}

json zeta_json(const ZetaFn& z) {
  json num = json::array(), den = json::array();
  for (const auto& c : z.num()) num.push_back(c.get_str());
  for (const auto& c : z.den()) den.push_back(c.get_str());
  return json{{"num", num}, {"den", den}};
}

bool agm_shaped(const Curve& E) {
  return E.ctx()->p() == 2 && !E.is_short() && E.a1().is_one() &&
         E.a2().is_zero() && E.a3().is_zero() && E.a4().is_zero() &&
         !E.a6().is_zero();
}

std::string auto_select(const Curve& E) {
  const auto& ctx = E.ctx();
  if (ctx->q() <= (Int(1) << 16)) return "naive";
  if (agm_shaped(E)) return "agm";
  if (ctx->p() > 3) return "schoof";
  return "bsgs";
}

CountResult run_engine(const std::string& alg, const Curve& E, Rng& rng,
                       const Int& guard, const Int& disc, bool trace) {
  if (alg == "naive") return count_naive(E, guard);
  if (alg == "naive-serial") return count_naive_serial(E, guard);
  if (alg == "bsgs") return count_bsgs(E, rng, nullptr, guard);
  if (alg == "schoof")
    return schoof_count(E, true, trace ? &std::cerr : nullptr);
  if (alg == "schoof-serial") return schoof_count(E, false, nullptr);
  if (alg == "agm") return agm_count(E, trace ? &std::cerr : nullptr);
  if (alg == "cm") {
    if (disc <= 0) throw std::invalid_argument("cm engine needs --disc D > 0");
    return count_cm(E, disc, rng);
  }
  throw std::invalid_argument("unknown algorithm: " + alg);
}

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// engines with a hard characteristic precondition are usage errors
void check_admissible(const std::string& alg, const FieldCtxPtr& ctx) {
  if ((alg == "schoof" || alg == "schoof-serial" || alg == "bsgs" ||
       alg == "cm") &&
      ctx->p() <= 3)
    throw UsageError(alg + " requires p > 3");
  if (alg == "agm" && ctx->p() != 2)
    throw UsageError("agm requires p = 2");
}

void apply_thread_cap() {
  if (const char* env = std::getenv("FFCOUNT_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(std::min(n, omp_get_max_threads()));
  }
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();
  CLI::App app{"point counting and zeta functions over finite fields"};
  app.require_subcommand(1);

  FieldArgs fa;
  std::string curve_text, alg = "auto", counts_text, variety_text, a_text;
  unsigned long seed = 0;
  std::string guard_text, disc_text = "0";
  bool trace = false;
  unsigned kext = 1, degree_bound = 0, trials = 3, ell_max = 0;
  std::string alg_list = "naive,bsgs,schoof";

  auto add_field_opts = [&](CLI::App* cmd, bool required_p = true) {
    auto* o = cmd->add_option("--p", fa.p, "field characteristic");
    if (required_p) o->required();
    cmd->add_option("--d", fa.d, "extension degree (default 1)");
    cmd->add_option("--modulus", fa.modulus,
                    "modulus coefficients, lowest first, comma separated");
    cmd->add_option("--seed", seed, "RNG seed (default 0)");
  };

  auto* c_count = app.add_subcommand("count", "count points on a curve");
  add_field_opts(c_count);
  c_count->add_option("--curve", curve_text, "short:a,b or general:a1,..,a6")
      ->required();
  c_count->add_option("--alg", alg, "naive|bsgs|schoof|agm|cm|auto");
  c_count->add_option("--guard", guard_text, "naive enumeration guard");
  c_count->add_option("--disc", disc_text, "CM discriminant D (for --alg cm)");
  c_count->add_flag("--trace", trace, "per-ell / per-iteration trace to stderr");

  auto* c_zeta = app.add_subcommand("zeta", "zeta function of a curve or counts");
  add_field_opts(c_zeta, false);
  c_zeta->add_option("--curve", curve_text, "elliptic curve input");
  c_zeta->add_option("--alg", alg, "counting engine for the curve path");
  c_zeta->add_option("--counts", counts_text,
                     "comma-separated N_1..N_K for reconstruction");
  c_zeta->add_option("--degree-bound", degree_bound,
                     "total degree bound for reconstruction");
  c_zeta->add_option("--guard", guard_text, "naive enumeration guard");
  c_zeta->add_flag("--trace", trace, "engine trace to stderr");

  auto* c_sqrt = app.add_subcommand("sqrtmod", "square root in F_q");
  add_field_opts(c_sqrt);
  c_sqrt->add_option("--a", a_text, "element (ffield text format)")->required();

  auto* c_corn = app.add_subcommand("cornacchia", "solve x^2 + D y^2 = 4q");
  c_corn->add_option("--disc", disc_text, "positive D")->required();
  c_corn->add_option("--q", fa.p, "prime power q")->required();
  c_corn->add_option("--seed", seed, "RNG seed");

  auto* c_brute = app.add_subcommand("bruteforce", "count variety points");
  c_brute->add_option("--variety", variety_text,
                      "\"p,d[,modulus] ; nvars ; poly | poly\"")
      ->required();
  c_brute->add_option("--k", kext, "extension degree to count over");
  c_brute->add_option("--guard", guard_text, "enumeration guard");
  c_brute->add_option("--degree-bound", degree_bound,
                      "also reconstruct Z from N_1..N_{2B+1}");

  auto* c_bench = app.add_subcommand("bench", "time engines on one curve");
  add_field_opts(c_bench);
  c_bench->add_option("--curve", curve_text, "curve (default: seeded random)");
  c_bench->add_option("--alg", alg_list, "comma-separated engine list");
  c_bench->add_option("--trials", trials, "repetitions per engine");
  c_bench->add_option("--guard", guard_text, "naive enumeration guard");
  c_bench->add_option("--ell-max", ell_max,
                      "cap on Schoof's largest ell (0 = automatic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Rng rng(seed);
    Int guard = guard_text.empty() ? kDefaultNaiveGuard : Int(guard_text);

    if (c_count->parsed()) {
      auto ctx = make_field(fa, rng);
      Curve E = parse_curve(ctx, curve_text);
      std::string chosen = alg == "auto" ? auto_select(E) : alg;
      if (alg != "auto") check_admissible(chosen, ctx);
      CountResult r = run_engine(chosen, E, rng, guard, Int(disc_text), trace);
      std::cout << count_json(r).dump() << "\n";
      return 0;
    }

    if (c_zeta->parsed()) {
      if (!counts_text.empty()) {
        CountSeq seq;
        seq.q = 0;
        for (const auto& tok : split(counts_text, ','))
          seq.counts.emplace_back(tok);
        ZetaFn z = counts_to_zeta(seq, degree_bound);
        json j;
        j["zeta"] = zeta_json(z);
        std::cout << j.dump() << "\n";
        return 0;
      }
      if (fa.p.empty() || curve_text.empty())
        throw std::invalid_argument("zeta needs --curve with --p, or --counts");
      auto ctx = make_field(fa, rng);
      Curve E = parse_curve(ctx, curve_text);
      std::string chosen = alg == "auto" ? auto_select(E) : alg;
      if (alg != "auto") check_admissible(chosen, ctx);
      CountResult r = run_engine(chosen, E, rng, guard, Int(disc_text), trace);
      json j = count_json(r);
      j["zeta"] = zeta_json(zeta_elliptic(r.q, r.trace));
      std::cout << j.dump() << "\n";
      return 0;
    }

    if (c_sqrt->parsed()) {
      auto ctx = make_field(fa, rng);
      FieldElement a = parse_element(ctx, a_text);
      FieldElement r = sqrt_mod(a, &rng);
      json j;
      j["q"] = ctx->q().get_str();
      j["a"] = format_element(a);
      j["sqrt"] = format_element(r);
      std::cout << j.dump() << "\n";
      return 0;
    }

    if (c_corn->parsed()) {
      Int D(disc_text), q(fa.p);
      json sols = json::array();
      for (const auto& [x, y] : cornacchia(D, q, &rng))
        sols.push_back(json::array({x.get_str(), y.get_str()}));
      json j;
      j["D"] = D.get_str();
      j["q"] = q.get_str();
      j["solutions"] = sols;
      std::cout << j.dump() << "\n";
      return 0;
    }

    if (c_brute->parsed()) {
      VarietySystem sys = parse_variety(variety_text);
      Int bguard = guard_text.empty() ? kDefaultBruteGuard : Int(guard_text);
      if (degree_bound > 0) {
        CountSeq seq;
        seq.q = sys.ctx->q();
        for (unsigned k = 1; k <= 2 * degree_bound + 1; ++k)
          seq.counts.push_back(brute_force_variety_count(sys, k, bguard));
        json counts = json::array();
        for (const auto& n : seq.counts) counts.push_back(n.get_str());
        json j;
        j["q"] = sys.ctx->q().get_str();
        j["counts"] = counts;
        j["zeta"] = zeta_json(counts_to_zeta(seq, degree_bound));
        std::cout << j.dump() << "\n";
      } else {
        Int n = brute_force_variety_count(sys, kext, bguard);
        json j;
        j["q"] = sys.ctx->q().get_str();
        j["k"] = kext;
        j["count"] = n.get_str();
        std::cout << j.dump() << "\n";
      }
      return 0;
    }

    if (c_bench->parsed()) {
      auto ctx = make_field(fa, rng);
      if (curve_text.empty() && ctx->p() <= 3)
        throw UsageError("bench needs an explicit --curve when p <= 3");
      Curve E = curve_text.empty()
                    ? [&] {
                        for (;;) {
                          try {
                            return Curve::make_short(ctx,
                                                     ctx->random_element(rng),
                                                     ctx->random_element(rng));
                          } catch (const std::invalid_argument&) {
                          }
                        }
                      }()
                    : parse_curve(ctx, curve_text);
      for (const auto& engine : split(alg_list, ',')) {
        std::vector<double> times;
        Int n = -1;
        for (unsigned t = 0; t < trials; ++t) {
          CountResult r = run_engine(engine, E, rng, guard, Int(disc_text),
                                     false);
          times.push_back(r.ms);
          n = r.n_points;
        }
        std::sort(times.begin(), times.end());
        json j;
        j["alg"] = engine;
        j["curve"] = format_curve(E);
        j["q"] = ctx->q().get_str();
        j["n_points"] = n.get_str();
        j["trials"] = trials;
        j["min_ms"] = times.front();
        j["median_ms"] = times[times.size() / 2];
        std::cout << j.dump() << "\n";
      }
      return 0;
    }
  } catch (const UsageError& e) {
    json j;
    j["error"] = e.what();
    std::cerr << j.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json j;
    j["error"] = e.what();
    std::cout << j.dump() << "\n";
    return 1;
  }
  return 2;
}
