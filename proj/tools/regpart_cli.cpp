// regpart: verification campaigns for 3-regular partition parities.
//
//   regpart pclass --limit X [--list]
//   regpart verify --theorem KZ|Yao|Main|Conj4.2|Conj4.3|Conj4.4 --p P [--n-max N] [--long]
//   regpart conjecture-n2 --limit X --interpretation a|c|all
//   regpart series --kind b3|b|b3e|b3o --limit L --out FILE
//   regpart radu --table | --p P [--long] [--no-series]
//
// JSON goes to stdout, diagnostics to stderr. Exit status: 0 clean,
// 1 violation found, 2 usage error or inapplicable input.

#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "regpart/campaign.hpp"
#include "regpart/radu.hpp"
#include "regpart/series.hpp"
#include "regpart/series_cache.hpp"

using namespace regpart;

namespace {

int emit(const CampaignReport& rep, bool csv) {
  if (csv)
    std::cout << rep.to_csv();
  else
    std::cout << rep.to_json().dump(2) << "\n";
  if (rep.status == CampaignStatus::Inapplicable)
    std::cerr << "inapplicable: " << rep.params.value("reason", std::string("unknown")) << "\n";
  return rep.exit_code();
}

int run_series(const std::string& kind, u64 limit, const std::string& out) {
  if (limit == 0) {
    std::cerr << "--limit must be positive\n";
    return 2;
  }
  std::optional<CoefficientSeries> s;
  if (kind == "b3") {
    s = eta_quotient_series(b3_exponents(), limit, CoefficientRing::gf2());
  } else if (kind == "b") {
    s = eta_quotient_series(b_keith_exponents(), limit, CoefficientRing::gf2());
  } else {
    LengthParityPair parts = b3_length_parity(limit);
    s = kind == "b3e" ? std::move(parts.even) : std::move(parts.odd);
  }
  save_series(out, *s);
  u64 odd = 0;
  for (std::size_t i = 0; i < s->size(); ++i) odd += s->parity(i);
  std::cout << nlohmann::json{{"kind", kind}, {"ring", s->ring().name()}, {"length", s->size()},
                              {"odd_coefficients", odd}, {"out", out}}
                   .dump(2)
            << "\n";
  return 0;
}

int run_radu(bool table, std::optional<u64> p, bool long_rows, bool no_series) {
  TableOptions opts;
  opts.long_rows = long_rows;
  opts.series_checks = !no_series;
  std::vector<TableRowResult> rows;
  if (table) {
    rows = reproduce_table(opts);
  } else {
    if (!p) {
      std::cerr << "radu needs --table or --p\n";
      return 2;
    }
    opts.long_rows = true;
    if (*p >= 223 && !long_rows) opts.series_checks = false;
    rows.push_back(compute_table_row(*p, opts));
  }
  bool ok = true;
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    ok = ok && r.ok();
    out.push_back(r.to_json());
  }
  std::cout << nlohmann::json{{"rows", out}, {"status", ok ? "OK" : "MISMATCH"}}.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parity campaigns for 3-regular partitions"};
  app.require_subcommand(1);

  bool csv = false;
  app.add_flag("--csv", csv, "CSV instead of JSON for campaign reports");

  auto* pclass = app.add_subcommand("pclass", "classify primes and estimate densities");
  u64 pclass_limit = 0;
  bool pclass_list = false;
  pclass->add_option("--limit", pclass_limit, "largest prime examined")->required();
  pclass->add_flag("--list", pclass_list, "include every prime record");

  auto* verify = app.add_subcommand("verify", "check a congruence family against the parity series");
  std::string theorem;
  u64 p = 0;
  std::optional<u64> n_max;
  bool long_run = false;
  verify->add_option("--theorem", theorem, "KZ, Yao, Main, Conj4.2, Conj4.3 or Conj4.4")->required();
  verify->add_option("--p", p, "prime")->required();
  verify->add_option("--n-max", n_max, "largest n in each progression");
  verify->add_flag("--long", long_run, "allow series up to 1.2e8 coefficients");

  auto* n2 = app.add_subcommand("conjecture-n2", "compare the N2 formula with direct counts");
  u64 n2_limit = 0;
  std::string interp = "all";
  n2->add_option("--limit", n2_limit, "largest m")->required();
  n2->add_option("--interpretation", interp, "a, c or all")->check(CLI::IsMember({"a", "c", "all"}));

  auto* series = app.add_subcommand("series", "write a parity series to a cache file");
  std::string kind, out;
  u64 series_limit = 0;
  series->add_option("--kind", kind, "b3, b, b3e or b3o")->required()->check(CLI::IsMember({"b3", "b", "b3e", "b3o"}));
  series->add_option("--limit", series_limit, "number of coefficients")->required();
  series->add_option("--out", out, "output file")->required();

  auto* radu = app.add_subcommand("radu", "recompute the finite-check certificate data");
  bool table = false, radu_long = false, no_series = false;
  std::optional<u64> radu_p;
  radu->add_flag("--table", table, "all fourteen rows");
  radu->add_option("--p", radu_p, "a single prime");
  radu->add_flag("--long", radu_long, "include series checks for p >= 223");
  radu->add_flag("--no-series", no_series, "skip the series checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*pclass) return emit(cmd_pclass(pclass_limit, {pclass_list}), csv);
    if (*verify) {
      const auto th = parse_theorem(theorem);
      if (!th) {
        std::cerr << "unknown theorem " << theorem << "\n";
        return 2;
      }
      return emit(cmd_verify(*th, p, {n_max, long_run}), csv);
    }
    if (*n2) {
      std::vector<BInterpretation> which;
      if (interp != "c") which.push_back(BInterpretation::ExponentMod3);
      if (interp != "a") which.push_back(BInterpretation::ExponentMod2);
      return emit(cmd_conjecture_n2(n2_limit, which), csv);
    }
    if (*series) return run_series(kind, series_limit, out);
    if (*radu) return run_radu(table, radu_p, radu_long, no_series);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
