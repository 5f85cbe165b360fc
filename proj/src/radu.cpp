#include "regpart/radu.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

#include "radu_table_data.hpp"
#include "regpart/series_cache.hpp"

namespace regpart {

namespace {

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

BigInt to_big(i128 x) {
  const bool neg = x < 0;
  u128 ux = neg ? static_cast<u128>(-x) : static_cast<u128>(x);
  BigInt out = BigInt(static_cast<u64>(ux >> 64)) << 64;
  out += static_cast<u64>(ux);
  return neg ? BigInt(-out) : out;
}

i64 floor_of(const Rational& q) {
  const BigInt n = boost::multiprecision::numerator(q);
  const BigInt d = boost::multiprecision::denominator(q);
  BigInt f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return f.convert_to<i64>();
}

u64 gamma0_index(u64 N) {
  u64 index = N;
  for (const auto& pp : factorize(N)) index = index / pp.prime * (pp.prime + 1);
  return index;
}

const std::vector<u64>& cached_unit_squares(u64 n) {
  static std::mutex mu;
  static std::map<u64, std::vector<u64>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    if (cache.size() > 8) cache.clear();
    it = cache.emplace(n, unit_squares_mod(n)).first;
  }
  return it->second;
}

std::string condition_name(int i) { return "condition " + std::to_string(i + 1); }

}  // namespace

std::string to_string(const Rational& q) {
  const BigInt n = boost::multiprecision::numerator(q);
  const BigInt d = boost::multiprecision::denominator(q);
  return d == 1 ? n.str() : n.str() + "/" + d.str();
}

u64 RaduInstance::kappa() const {
  const u64 mm = (m % 24) * (m % 24) % 24;
  return std::gcd((25 - mm) % 24, u64{24});
}

u64 RaduInstance::s() const {
  u64 total = 0;
  for (const auto& [d, e] : r.entries()) total += valuation2(d) * static_cast<u64>(e < 0 ? -e : e);
  return total;
}

BigInt RaduInstance::ell() const {
  BigInt out = 1;
  for (const auto& [d, e] : r.entries()) {
    const u64 odd = d >> valuation2(d);
    out *= boost::multiprecision::pow(BigInt(odd), static_cast<unsigned>(e < 0 ? -e : e));
  }
  return out;
}

void RaduInstance::validate() const {
  if (m == 0 || M == 0 || N == 0) throw std::invalid_argument("RaduInstance: m, M, N must be positive");
  if (t >= m) throw std::invalid_argument("RaduInstance: t must lie in [0, m)");
  if (r.level() != M) throw std::invalid_argument("RaduInstance: r must be indexed by the divisors of M");
  if (aux.level() != N) throw std::invalid_argument("RaduInstance: aux must be indexed by the divisors of N");
  if (u < 2) throw std::invalid_argument("RaduInstance: modulus u must be at least 2");
}

RaduInstance b_instance(u64 p, u64 t) {
  RaduInstance inst;
  inst.m = p * p;
  inst.M = 3;
  inst.N = 3 * p;
  inst.t = t;
  inst.r = b_keith_exponents();
  inst.u = 2;
  inst.aux = EtaExponents(inst.N);
  return inst;
}

std::string to_string(ConditionState s) {
  switch (s) {
    case ConditionState::Satisfied: return "satisfied";
    case ConditionState::Failed: return "failed";
    case ConditionState::Vacuous: return "vacuous";
    case ConditionState::Undetermined: return "undetermined";
  }
  return "?";
}

bool DeltaStarReport::member() const {
  return std::all_of(conditions.begin(), conditions.end(), [](ConditionState s) {
    return s == ConditionState::Satisfied || s == ConditionState::Vacuous;
  });
}

nlohmann::json DeltaStarReport::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (int i = 0; i < 6; ++i) j.push_back({{"condition", i + 1}, {"state", to_string(conditions[i])}, {"note", notes[i]}});
  return j;
}

DeltaStarReport delta_star_check(const RaduInstance& inst) {
  inst.validate();
  DeltaStarReport rep;
  const auto set = [&](int i, bool ok, std::string note = {}) {
    rep.conditions[i] = ok ? ConditionState::Satisfied : ConditionState::Failed;
    rep.notes[i] = std::move(note);
  };
  const i128 kappa = inst.kappa();
  const i128 m = inst.m, N = inst.N;

  // 1: every prime dividing m divides N
  {
    bool ok = true;
    std::string note;
    if (inst.m > 1)
      for (const auto& pp : factorize(inst.m))
        if (inst.N % pp.prime != 0) {
          ok = false;
          note = std::to_string(pp.prime) + " divides m but not N";
          break;
        }
    set(0, ok, note);
  }
  // 2: r_delta != 0 implies delta | mN
  bool integral = true;
  {
    std::string note;
    for (const auto& [d, e] : inst.r.entries())
      if (e != 0 && (m * N) % static_cast<i128>(d) != 0) {
        integral = false;
        note = std::to_string(d) + " does not divide mN";
        break;
      }
    set(1, integral, note);
  }
  // 3: kappa N sum r_delta mN/delta = 0 mod 24
  if (!integral) {
    set(2, false, "mN/delta not integral");
  } else {
    i128 sum = 0;
    for (const auto& [d, e] : inst.r.entries()) sum += static_cast<i128>(e) * (m * N / static_cast<i128>(d));
    set(2, (kappa * N * sum) % 24 == 0);
  }
  // 4: kappa N sum r_delta = 0 mod 8
  set(3, (kappa * N * static_cast<i128>(inst.r.exponent_sum())) % 8 == 0);
  // 5: 24m / gcd(kappa (-24t - sum delta r_delta), 24m) divides N
  {
    const i128 arg = kappa * (-24 * static_cast<i128>(inst.t) - static_cast<i128>(inst.r.weighted_sum()));
    const i128 g = gcd128(arg, 24 * m);
    const i128 q = 24 * m / g;
    set(4, N % q == 0, "24m/gcd = " + std::to_string(static_cast<i64>(q)));
  }
  // 6: only constrains even m
  if (inst.m % 2 == 1) {
    rep.conditions[5] = ConditionState::Vacuous;
    rep.notes[5] = "m is odd";
  } else if ((kappa * N) % 4 == 0 && (N * static_cast<i128>(inst.s())) % 8 == 0) {
    set(5, true, "first alternative holds");
  } else {
    rep.conditions[5] = ConditionState::Undetermined;
    rep.notes[5] = "first alternative fails; the second involves an undefined quantity j";
  }
  return rep;
}

std::vector<u64> unit_squares_mod(u64 n) {
  if (n == 0) throw std::invalid_argument("unit_squares_mod: modulus must be positive");
  if (n == 1) return {0};
  std::vector<bool> seen(n, false);
  for (u64 x = 1; x < n; ++x)
    if (std::gcd(x, n) == 1) seen[mulmod(x, x, n)] = true;
  std::vector<u64> out;
  for (u64 x = 0; x < n; ++x)
    if (seen[x]) out.push_back(x);
  return out;
}

std::vector<u64> p_set(u64 m, const EtaExponents& r, u64 t) {
  if (m == 0) throw std::invalid_argument("p_set: m must be positive");
  const i128 w = r.weighted_sum();
  std::set<u64> out;
  for (u64 s : cached_unit_squares(24 * m)) {
    // unit squares mod 24 are all 1, so (s - 1)/24 is integral
    const i128 v = static_cast<i128>(t) * s + static_cast<i128>((s - 1) / 24) * w;
    i128 rmod = v % static_cast<i128>(m);
    if (rmod < 0) rmod += m;
    out.insert(static_cast<u64>(rmod));
  }
  return {out.begin(), out.end()};
}

CosetData coset_data(u64 N) {
  if (N == 0 || !is_squarefree(N)) throw std::invalid_argument("coset_data: N must be squarefree");
  CosetData out;
  for (u64 d : divisors(N)) out.reps.push_back({d, 1, 0, static_cast<i64>(d), 1});
  out.index = gamma0_index(N);
  return out;
}

Slopes slopes(const RaduInstance& inst, const CosetRep& gamma) {
  const i128 m = inst.m, M = inst.M, kappa = inst.kappa();
  const i128 a = gamma.a, c = gamma.c;
  // every term scaled by 24 m M so the minimum is taken over integers
  i128 best = 0;
  u64 best_d = 0;
  for (u64 d = 0; d < inst.m; ++d) {
    i128 total = 0;
    for (const auto& [delta, e] : inst.r.entries()) {
      if (e == 0) continue;
      const i128 g = gcd128(static_cast<i128>(delta) * (a + kappa * static_cast<i128>(d) * c), m * c);
      total += static_cast<i128>(e) * g * g * (M / static_cast<i128>(delta));
    }
    if (d == 0 || total < best) {
      best = total;
      best_d = d;
    }
  }
  Slopes out;
  out.p_mr = Rational(to_big(best), to_big(24 * m * M));
  out.argmin_d = best_d;
  Rational star = 0;
  for (const auto& [delta, e] : inst.aux.entries()) {
    if (e == 0) continue;
    const i128 g = gcd128(static_cast<i128>(delta), c);
    star += Rational(to_big(static_cast<i128>(e) * g * g), BigInt(delta));
  }
  out.p_star = star / 24;
  return out;
}

NuBound nu_bound(const RaduInstance& inst) {
  inst.validate();
  const std::vector<u64> ps = p_set(inst.m, inst.r, inst.t);
  NuBound out;
  out.t_min = ps.front();
  const i64 sum_a = inst.aux.exponent_sum();
  const i64 sum_r = inst.r.exponent_sum();
  const BigInt index = gamma0_index(inst.N);
  Rational nu = Rational(BigInt(sum_a + sum_r) * index - inst.aux.weighted_sum(), BigInt(24));
  nu -= Rational(BigInt(inst.r.weighted_sum()), BigInt(24) * inst.m);
  nu -= Rational(BigInt(out.t_min), BigInt(inst.m));
  out.nu = nu;
  out.floor_nu = floor_of(nu);
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "CERTIFIED";
    case Verdict::Violated: return "VIOLATED";
    case Verdict::Inapplicable: return "INAPPLICABLE";
  }
  return "?";
}

nlohmann::json RaduVerification::to_json() const {
  nlohmann::json j;
  j["verdict"] = to_string(verdict);
  if (!reason.empty()) j["reason"] = reason;
  j["delta_star"] = delta_star.to_json();
  nlohmann::json sl = nlohmann::json::array();
  for (const auto& s : slopes) sl.push_back({{"p_mr", to_string(s.p_mr)}, {"p_star", to_string(s.p_star)}});
  j["slopes"] = sl;
  j["p_set"] = p_set;
  if (nu) j["nu"] = {{"value", to_string(nu->nu)}, {"floor", nu->floor_nu}, {"t_min", nu->t_min}};
  j["series_length"] = series_length;
  j["checked"] = checked;
  if (witness) j["witness"] = {{"t_prime", witness->t_prime}, {"n", witness->n}, {"value", witness->value.str()}};
  return j;
}

RaduVerification verify_instance(const RaduInstance& inst, const CoefficientSeries* series) {
  RaduVerification out;
  inst.validate();
  out.delta_star = delta_star_check(inst);
  if (!out.delta_star.member()) {
    for (int i = 0; i < 6; ++i)
      if (out.delta_star.conditions[i] == ConditionState::Failed ||
          out.delta_star.conditions[i] == ConditionState::Undetermined) {
        out.reason = condition_name(i) + " " + to_string(out.delta_star.conditions[i]);
        if (!out.delta_star.notes[i].empty()) out.reason += ": " + out.delta_star.notes[i];
        break;
      }
    return out;
  }
  if (!is_squarefree(inst.N)) {
    out.reason = "N is not squarefree; coset representatives unavailable";
    return out;
  }
  for (const auto& gamma : coset_data(inst.N).reps) {
    out.slopes.push_back(slopes(inst, gamma));
    if (out.slopes.back().p_mr + out.slopes.back().p_star < 0) {
      out.reason = "negative slope sum at delta = " + std::to_string(gamma.delta);
      return out;
    }
  }
  out.p_set = p_set(inst.m, inst.r, inst.t);
  out.nu = nu_bound(inst);
  if (out.nu->floor_nu < 0) {
    out.verdict = Verdict::Certified;
    return out;
  }
  const u64 terms = static_cast<u64>(out.nu->floor_nu) + 1;
  out.series_length = inst.m * terms;

  CoefficientRing ring = CoefficientRing::exact();
  const bool pow2 = (inst.u & (inst.u - 1)) == 0;
  if (pow2) ring = CoefficientRing::mod_pow2(valuation2(inst.u));
  const auto usable = [&](const CoefficientSeries& s) {
    if (s.size() < out.series_length) return false;
    if (s.ring().kind() == CoefficientRing::Kind::Exact) return true;
    return pow2 && valuation2(inst.u) <= s.ring().bits();
  };
  std::optional<CoefficientSeries> built;
  if (!series || !usable(*series)) {
    built = eta_quotient_series(inst.r, out.series_length, ring);
    series = &*built;
  }
  for (u64 tp : out.p_set) {
    for (u64 n = 0; n < terms; ++n) {
      const std::size_t idx = inst.m * n + tp;
      ++out.checked;
      bool zero;
      if (series->ring().is_modular())
        zero = series->residue(idx) % inst.u == 0;
      else
        zero = series->value(idx) % inst.u == 0;
      if (!zero) {
        out.verdict = Verdict::Violated;
        out.witness = RaduWitness{tp, n, series->value(idx)};
        return out;
      }
    }
  }
  out.verdict = Verdict::Certified;
  return out;
}

nlohmann::json TableRow::to_json() const {
  return {{"p", p}, {"neg_inv24", neg_inv24}, {"floor_p24", floor_p24}, {"A", A}, {"floor_nu", floor_nu}};
}

std::vector<TableRow> radu_table_fixture() {
  const auto doc = nlohmann::json::parse(detail::kRaduTableJson);
  std::vector<TableRow> rows;
  for (const auto& r : doc.at("rows"))
    rows.push_back({r.at("p").get<u64>(), r.at("neg_inv24").get<u64>(), r.at("floor_p24").get<u64>(),
                    r.at("A").get<u64>(), r.at("floor_nu").get<i64>()});
  return rows;
}

bool TableRowResult::ok() const {
  return mismatches.empty() && delta_star_ok && slopes_nonnegative && covers_residues && nu_consistent &&
         (!series_verdict || *series_verdict == Verdict::Certified);
}

nlohmann::json TableRowResult::to_json() const {
  nlohmann::json j = computed.to_json();
  j["delta_star_ok"] = delta_star_ok;
  j["slopes_nonnegative"] = slopes_nonnegative;
  j["covers_residues"] = covers_residues;
  j["nu_consistent"] = nu_consistent;
  j["series_check"] = series_verdict ? to_string(*series_verdict) : "skipped";
  if (expected) j["expected"] = expected->to_json();
  j["mismatches"] = mismatches;
  j["ok"] = ok();
  return j;
}

namespace {

TableRowResult table_row_without_series(u64 p) {
  TableRowResult res;
  TableRow& row = res.computed;
  row.p = p;
  row.neg_inv24 = p - mod_inverse(24, p);
  row.floor_p24 = p / 24;
  const u64 t0 = row.neg_inv24;

  std::set<u64> admissible;
  for (u64 alpha = 0; alpha < p; ++alpha)
    if (alpha != row.floor_p24) admissible.insert(p * alpha + t0);

  const EtaExponents r = b_keith_exponents();
  const std::vector<u64> base = p_set(p * p, r, t0);
  res.covers_residues = false;
  for (u64 A = 1; A < p; ++A) {
    if (A == row.floor_p24) continue;
    std::set<u64> joined(base.begin(), base.end());
    const std::vector<u64> other = p_set(p * p, r, A * p + t0);
    joined.insert(other.begin(), other.end());
    if (joined == admissible) {
      row.A = A;
      res.covers_residues = true;
      break;
    }
  }

  const RaduInstance first = b_instance(p, t0);
  row.floor_nu = nu_bound(first).floor_nu;
  res.delta_star_ok = delta_star_check(first).member();
  if (row.A) {
    const RaduInstance second = b_instance(p, row.A * p + t0);
    res.nu_consistent = nu_bound(second).floor_nu == row.floor_nu;
    res.delta_star_ok = res.delta_star_ok && delta_star_check(second).member();
  }
  for (const auto& gamma : coset_data(first.N).reps) {
    const Slopes s = slopes(first, gamma);
    if (s.p_mr + s.p_star < 0) res.slopes_nonnegative = false;
  }

  for (const auto& fx : radu_table_fixture())
    if (fx.p == p) res.expected = fx;
  if (res.expected) {
    const TableRow& e = *res.expected;
    if (e.neg_inv24 != row.neg_inv24) res.mismatches.push_back("neg_inv24");
    if (e.floor_p24 != row.floor_p24) res.mismatches.push_back("floor_p24");
    if (e.A != row.A) res.mismatches.push_back("A");
    if (e.floor_nu != row.floor_nu) res.mismatches.push_back("floor_nu");
  }
  return res;
}

void run_series_check(TableRowResult& res, const CoefficientSeries& b_series) {
  const TableRow& row = res.computed;
  Verdict v = verify_instance(b_instance(row.p, row.neg_inv24), &b_series).verdict;
  if (v == Verdict::Certified && row.A)
    v = verify_instance(b_instance(row.p, row.A * row.p + row.neg_inv24), &b_series).verdict;
  res.series_verdict = v;
}

std::size_t needed_length(const TableRowResult& res) {
  return res.computed.p * res.computed.p * static_cast<std::size_t>(res.computed.floor_nu + 1);
}

CoefficientSeries b_series_of_length(std::size_t length) {
  if (auto cached = cache_lookup("b", CoefficientRing::gf2(), length)) return std::move(*cached);
  CoefficientSeries s = eta_quotient_series(b_keith_exponents(), length, CoefficientRing::gf2());
  cache_store("b", s);
  return s;
}

bool wants_series(u64 p, const TableOptions& options) {
  return options.series_checks && (p < 223 || options.long_rows);
}

}  // namespace

TableRowResult compute_table_row(u64 p, const TableOptions& options, const CoefficientSeries* b_series) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("compute_table_row: p must be a prime >= 5");
  TableRowResult res = table_row_without_series(p);
  if (wants_series(p, options) && res.covers_residues && res.computed.floor_nu >= 0) {
    const std::size_t length = needed_length(res);
    if (b_series && b_series->size() >= length) {
      run_series_check(res, *b_series);
    } else {
      const CoefficientSeries s = b_series_of_length(length);
      run_series_check(res, s);
    }
  }
  return res;
}

std::vector<TableRowResult> reproduce_table(const TableOptions& options) {
  std::vector<TableRowResult> rows;
  std::size_t length = 0;
  for (const auto& fx : radu_table_fixture()) {
    rows.push_back(table_row_without_series(fx.p));
    if (wants_series(fx.p, options) && rows.back().covers_residues)
      length = std::max(length, needed_length(rows.back()));
  }
  if (length == 0) return rows;
  const CoefficientSeries b_series = b_series_of_length(length);
  for (auto& row : rows)
    if (wants_series(row.computed.p, options) && row.covers_residues) run_series_check(row, b_series);
  return rows;
}

}  // namespace regpart
