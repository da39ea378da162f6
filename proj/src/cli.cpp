#include "polybox/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "polybox/boxcount.hpp"
#include "polybox/detmethod.hpp"
#include "polybox/elliptic.hpp"
#include "polybox/error.hpp"
#include "polybox/text.hpp"

namespace polybox::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- formatting helpers

std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b) {
    const unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string fraction(unsigned __int128 num, unsigned __int128 den) {
  const unsigned __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den == 1) return u128_to_string(num);
  return u128_to_string(num) + "/" + u128_to_string(den);
}

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

json point_json(const Point& p) { return json::array({format_poly(p.x), format_poly(p.y)}); }

// Splits on `sep` outside brackets and parentheses.
std::vector<std::string> split_top(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::int64_t parse_int(const std::string& name, const std::string& text) {
  std::int64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw UsageError("--" + name + " expects an integer, got '" + text + "'");
  }
  return v;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void check_budget(const std::string& what, std::uint64_t required, std::uint64_t budget) {
  if (required > budget) throw BudgetExceeded(what, required, budget);
}

// ---- command context

struct Ctx {
  std::string command;
  Params params;
  FieldPtr k;
  unsigned jobs = 1;

  bool has(const std::string& name) const { return params.count(name) > 0; }

  const std::string& get(const std::string& name) const {
    const auto it = params.find(name);
    if (it == params.end()) throw UsageError(command + " requires --" + name);
    return it->second;
  }

  std::int64_t integer(const std::string& name, std::int64_t lo, std::int64_t hi) const {
    const std::int64_t v = parse_int(name, get(name));
    if (v < lo || v > hi) {
      throw UsageError("--" + name + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
  }

  std::uint64_t seed() const { return static_cast<std::uint64_t>(integer("seed", 0, INT64_MAX)); }
  std::uint64_t budget() const { return static_cast<std::uint64_t>(integer("budget", 1, INT64_MAX)); }
  int n() const { return static_cast<int>(integer("n", 0, 62)); }

  Poly poly(const std::string& name) const {
    const std::string& text = get(name);
    return text == "0" ? Poly(k) : parse_poly(text, k);  // "0" is the default base in every field
  }
  BivarPoly curve() const { return parse_curve(get("curve"), k); }

  // --f, or a seeded random irreducible of degree --f-deg.
  Poly modulus_f() const {
    if (has("f") && has("f-deg")) throw UsageError("give either --f or --f-deg, not both");
    if (has("f")) return poly("f");
    if (has("f-deg")) return random_irreducible(k, static_cast<int>(integer("f-deg", 1, 62)), seed());
    throw UsageError(command + " requires --f or --f-deg");
  }

  // --points "x,y;x,y", or the zeros of --curve in the box of bound --n.
  PointSet points() const {
    if (has("points")) {
      std::vector<Point> pts;
      for (const std::string& item : split_top(get("points"), ';')) {
        const auto xy = split_top(item, ',');
        if (xy.size() != 2) throw UsageError("--points expects 'x,y' pairs separated by ';'");
        pts.push_back({parse_poly(xy[0], k), parse_poly(xy[1], k)});
      }
      return make_point_set(std::move(pts));
    }
    if (!has("curve")) throw UsageError(command + " requires --points or --curve with --n");
    const int bound = n();
    return enumerate_box_points(curve(), Interval(poly("base-x"), bound), Interval(poly("base-y"), bound),
                                {BoxStrategy::kRootFinding, jobs});
  }

  WSet wset() const {
    if (has("d") || has("M")) {
      if (has("omega")) throw UsageError("give either --omega or --d with --M, not both");
      return wset_grid(k, static_cast<int>(integer("d", 0, 64)), static_cast<int>(integer("M", 0, 64)));
    }
    return wset_standard(k, static_cast<int>(integer("omega", 1, 64)));
  }

  json wset_json(const WSet& w) const {
    json forms = json::array();
    for (const auto& f : w.forms) forms.push_back(format_curve(f));
    json j{{"omega", w.omega()}, {"d_w", w.d_w()}, {"forms", forms}};
    if (w.grid) {
      j["kind"] = "grid";
      j["d"] = w.grid->first;
      j["M"] = w.grid->second;
    } else {
      j["kind"] = "standard";
    }
    return j;
  }
};

json points_json(const PointSet& s) {
  json a = json::array();
  for (const Point& p : s) a.push_back(point_json(p));
  return a;
}

// ---- commands

Report run_count_box(Ctx& c) {
  const BivarPoly f = c.curve();
  const int n = c.n();
  const Interval ix(c.poly("base-x"), n), iy(c.poly("base-y"), n);
  const PointSet s = enumerate_box_points(f, ix, iy, {BoxStrategy::kRootFinding, c.jobs});
  Report r;
  r.json = {{"curve", format_curve(f)}, {"n", n}, {"size_I", ix.size()}, {"count", s.size()}, {"points", points_json(s)}};
  r.csv_header = {"x", "y"};
  for (const Point& p : s) r.csv_rows.push_back({format_poly(p.x), format_poly(p.y)});
  return r;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("--n-range expects lo..hi");
  const int lo = static_cast<int>(parse_int("n-range", text.substr(0, dots)));
  const int hi = static_cast<int>(parse_int("n-range", text.substr(dots + 2)));
  if (lo < 0 || hi < lo || hi > 62) throw UsageError("--n-range needs 0 <= lo <= hi <= 62");
  return {lo, hi};
}

Report run_exponent_scan(Ctx& c) {
  const BivarPoly f = c.curve();
  const auto [lo, hi] = parse_range(c.get("n-range"));
  const auto rows = exponent_scan(f, c.poly("base-x"), c.poly("base-y"), lo, hi, {BoxStrategy::kRootFinding, c.jobs});
  Report r;
  json jrows = json::array();
  r.csv_header = {"n", "size_I", "count", "exponent"};
  std::size_t nonempty = 0;
  for (const ScanRow& row : rows) {
    jrows.push_back({{"n", row.n}, {"size_I", row.size_i}, {"count", row.count}, {"exponent", row.exponent}});
    r.csv_rows.push_back({std::to_string(row.n), std::to_string(row.size_i), std::to_string(row.count),
                          shortest(row.exponent)});
    nonempty += row.count > 0;
  }
  r.json = {{"curve", format_curve(f)}, {"rows", jrows}};
  r.json["fitted_slope"] = nonempty >= 2 ? json(fitted_exponent(rows)) : json(nullptr);
  return r;
}

Report run_residue_stats(Ctx& c) {
  const PointSet s = c.points();
  const Poly f = c.modulus_f();
  const ResidueProfile p = residue_stats(s, f);
  const bool cauchy = cauchy_bound_holds(p);
  const bool rho_ok = rho_sums_to_one(p);
  Report r;
  json residues = json::array();
  r.csv_header = {"x", "y", "count"};
  for (const auto& [pt, cnt] : p.counts) {
    residues.push_back({{"point", point_json(pt)}, {"count", cnt}});
    r.csv_rows.push_back({format_poly(pt.x), format_poly(pt.y), std::to_string(cnt)});
  }
  const unsigned __int128 total = p.total;
  r.json = {{"f", format_poly(f)},
            {"norm_f", p.norm_f},
            {"total", p.total},
            {"distinct", p.distinct()},
            {"alpha", fraction(p.distinct(), p.norm_f)},
            {"sum_rho_sq", fraction(p.sum_count_squares(), total * total)},
            {"cauchy_bound", cauchy},
            {"rho_sums_to_one", rho_ok},
            {"pass", cauchy && rho_ok},
            {"residues", residues}};
  r.exit_code = cauchy && rho_ok ? kExitOk : kExitViolation;
  return r;
}

Report run_detlab_ord(Ctx& c) {
  const WSet w = c.wset();
  const PointSet s = c.points();
  const Poly f = c.modulus_f();
  const OrdReport o = verify_ord_inequality(w, s, f, c.budget(), c.jobs);
  json ce = json::array();
  for (const auto& x : o.counterexamples) {
    ce.push_back({{"indices", x.indices}, {"det", format_poly(x.detval)}, {"ord", x.ord}, {"kappa", x.kappa}});
  }
  Report r;
  r.json = {{"wset", c.wset_json(w)},
            {"f", format_poly(f)},
            {"points", points_json(s)},
            {"tuples_total", o.tuples_total},
            {"tuples_admissible", o.tuples_admissible},
            {"sum_ord", o.sum_ord},
            {"sum_kappa", o.sum_kappa},
            {"pass", o.pass},
            {"counterexamples", ce}};
  r.csv_header = {"omega", "d_w", "tuples_total", "tuples_admissible", "sum_ord", "sum_kappa", "pass"};
  r.csv_rows.push_back({std::to_string(o.omega), std::to_string(o.d_w), std::to_string(o.tuples_total),
                        std::to_string(o.tuples_admissible), std::to_string(o.sum_ord), std::to_string(o.sum_kappa),
                        o.pass ? "true" : "false"});
  r.exit_code = o.pass ? kExitOk : kExitViolation;
  return r;
}

Report run_detlab_mean(Ctx& c) {
  const int omega = static_cast<int>(c.integer("omega", 1, 64));
  const PointSet s = c.points();
  const Poly f = c.modulus_f();
  const MeanIdentity m = mean_distinct_identity(s, f, omega, c.budget(), c.jobs);
  Report r;
  const std::string lhs = fraction(m.lhs_num, m.denom), rhs = fraction(m.rhs_num, m.denom);
  r.json = {{"omega", omega}, {"f", format_poly(f)}, {"size_S", s.size()}, {"lhs", lhs}, {"rhs", rhs}, {"pass", m.pass}};
  r.csv_header = {"omega", "size_S", "lhs", "rhs", "pass"};
  r.csv_rows.push_back({std::to_string(omega), std::to_string(s.size()), lhs, rhs, m.pass ? "true" : "false"});
  r.exit_code = m.pass ? kExitOk : kExitViolation;
  return r;
}

Report run_detlab_interpolate(Ctx& c) {
  const int d = static_cast<int>(c.integer("d", 0, 64));
  const PointSet s = c.points();
  const BivarPoly g = interpolate_form(s, d);
  bool vanishes = true;
  for (const Point& p : s) vanishes = vanishes && g.evaluate(p.x, p.y).is_zero();
  Report r;
  r.json = {{"d", d}, {"points", points_json(s)}, {"form", format_curve(g)}, {"vanishes", vanishes}, {"pass", vanishes}};
  r.csv_header = {"i", "j", "coeff"};
  std::vector<std::pair<Monomial, Poly>> terms(g.terms().begin(), g.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [mono, coeff] : terms) {
    r.csv_rows.push_back({std::to_string(mono.i), std::to_string(mono.j), format_poly(coeff)});
  }
  r.exit_code = vanishes ? kExitOk : kExitViolation;
  return r;
}

Report run_detlab_wcurve(Ctx& c) {
  const WSet w = c.wset();
  const PointSet s = c.points();
  const WCurveMax m = max_points_on_wcurve(w, s, c.budget());
  Report r;
  r.json = {{"wset", c.wset_json(w)},
            {"size_S", s.size()},
            {"max_points", m.max_points},
            {"subsets", m.subsets},
            {"exhausted", m.exhausted}};
  r.csv_header = {"omega", "size_S", "max_points", "subsets", "exhausted"};
  r.csv_rows.push_back({std::to_string(w.omega()), std::to_string(s.size()), std::to_string(m.max_points),
                        std::to_string(m.subsets), m.exhausted ? "true" : "false"});
  return r;
}

Interval ec_box(const Ctx& c) { return Interval(c.poly("base-x"), c.n()); }

void check_pair_budget(const Ctx& c, const Interval& i) {
  const unsigned __int128 pairs = static_cast<unsigned __int128>(i.size()) * i.size();
  check_budget("pair enumeration", pairs > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(pairs), c.budget());
}

Report run_ec_nlambda(Ctx& c) {
  const Poly f = c.modulus_f();
  const Poly lambda = c.poly("lambda") % f;
  const Interval i = ec_box(c);
  check_pair_budget(c, i);
  const std::uint64_t count = count_N_lambda(i, lambda, f);
  Report r;
  r.json = {{"f", format_poly(f)}, {"lambda", format_poly(lambda)}, {"n", i.bound()}, {"size_I", i.size()}, {"count", count}};
  r.csv_header = {"lambda", "n", "size_I", "count"};
  r.csv_rows.push_back({format_poly(lambda), std::to_string(i.bound()), std::to_string(i.size()), std::to_string(count)});
  return r;
}

Report run_ec_census(Ctx& c) {
  const Poly f = c.modulus_f();
  const Interval i = ec_box(c);
  check_pair_budget(c, i);
  const std::uint64_t n = count_N(i, f, CensusMethod::kBucketed, c.jobs);
  Report r;
  r.json = {{"f", format_poly(f)}, {"n", i.bound()}, {"size_I", i.size()}, {"norm_f", norm(f)}, {"N", n}};
  r.csv_header = {"n", "size_I", "norm_f", "N"};
  r.csv_rows.push_back({std::to_string(i.bound()), std::to_string(i.size()), std::to_string(norm(f)), std::to_string(n)});
  return r;
}

Report run_ec_scan19(Ctx& c) {
  const Poly f = c.modulus_f();
  const Interval i = ec_box(c);
  check_pair_budget(c, i);
  const Scan19 s = theorem19_scan(i, f, c.has("force"), c.jobs);
  const std::uint64_t q = c.k->order();
  const bool pass = s.ratio_at_most(q * q);
  const std::uint64_t n_one = count_N_lambda(i, Poly::constant(c.k, 1), f);
  Report r;
  json rows = json::array();
  r.csv_header = {"lambda", "count"};
  for (const auto& row : s.rows) {
    rows.push_back({{"lambda", format_poly(row.lambda)}, {"count", row.count}});
    r.csv_rows.push_back({format_poly(row.lambda), std::to_string(row.count)});
  }
  r.json = {{"f", format_poly(f)},
            {"n", i.bound()},
            {"size_I", s.size_i},
            {"norm_f", s.norm_f},
            {"rows", rows},
            {"max_count", s.max_count},
            {"ratio", s.ratio_to_cuberoot},
            {"ratio_bound", q * q},
            {"n_one", n_one},
            {"pass", pass}};
  r.exit_code = pass ? kExitOk : kExitViolation;
  return r;
}

std::vector<int> parse_taus(const std::string& text) {
  std::vector<int> taus;
  for (const std::string& t : split_top(text, ',')) taus.push_back(static_cast<int>(parse_int("taus", t)));
  return taus;
}

Report run_ec_pigeonhole(Ctx& c) {
  const Poly f = c.modulus_f();
  PigeonInstance inst{f, {}, {}};
  json model;
  if (c.has("xs")) {
    if (c.has("lambda")) throw UsageError("give either --xs or --lambda, not both");
    for (const std::string& x : split_top(c.get("xs"), ';')) inst.xs.push_back(parse_poly(x, c.k));
    inst.taus = parse_taus(c.get("taus"));
  } else {
    const Poly lambda = c.poly("lambda") % f;
    const Poly x0 = c.poly("base-x") % f;
    const int n = c.n();
    TauPlan plan = default_tau_plan(f.degree(), n);
    if (c.has("taus")) {
      const auto taus = parse_taus(c.get("taus"));
      if (taus.size() != 5) throw UsageError("--taus needs five exponents with --lambda");
      std::copy(taus.begin(), taus.end(), plan.taus.begin());
    }
    const SmallModel s = small_coeff_model(lambda, x0, f, n, plan);
    inst.xs.assign(s.xs.begin(), s.xs.end());
    inst.taus.assign(s.taus.begin(), s.taus.end());
    json fis = json::array();
    for (const Poly& fi : s.fis) fis.push_back(format_poly(fi));
    model = {{"lambda", format_poly(lambda)}, {"x0", format_poly(x0)}, {"n", n},         {"tau_T", plan.tau_t},
             {"fis", fis},                    {"z_bound", s.z_bound},    {"bounds_hold", s.bounds_hold()}};
  }
  const Poly t = pigeonhole_multiplier(inst);
  const bool ok = pigeonhole_verify(inst, t);
  Report r;
  json comps = json::array();
  r.csv_header = {"i", "X", "tau", "Xt_mod_f", "norm"};
  for (std::size_t i = 0; i < inst.xs.size(); ++i) {
    const Poly rem = (inst.xs[i] * t) % f;
    comps.push_back({{"X", format_poly(inst.xs[i])}, {"tau", inst.taus[i]}, {"residue", format_poly(rem)}, {"norm", norm(rem)}});
    r.csv_rows.push_back({std::to_string(i + 1), format_poly(inst.xs[i]), std::to_string(inst.taus[i]),
                          format_poly(rem), std::to_string(norm(rem))});
  }
  r.json = {{"f", format_poly(f)}, {"t", format_poly(t)}, {"components", comps}, {"verified", ok}, {"pass", ok}};
  if (!model.is_null()) r.json["model"] = model;
  r.exit_code = ok ? kExitOk : kExitViolation;
  return r;
}

Report run_ec_extremal(Ctx& c) {
  const int n = c.n();
  const Interval i(c.k, n);
  const std::uint64_t count = extremal_count(i);
  const std::uint64_t closed = checked_pow(c.k->order(), n / 3 + 1);
  Report r;
  r.json = {{"n", n}, {"size_I", i.size()}, {"count", count}, {"closed_form", closed}, {"pass", count == closed}};
  r.csv_header = {"n", "size_I", "count", "closed_form"};
  r.csv_rows.push_back({std::to_string(n), std::to_string(i.size()), std::to_string(count), std::to_string(closed)});
  r.exit_code = count == closed ? kExitOk : kExitViolation;
  return r;
}

// ---- command table

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<std::string> flags;
  Params defaults;
  std::function<Report(Ctx&)> run;
};

const std::vector<std::string> kFieldFlags = {"q", "ext-k", "modulus", "seed"};

const std::map<std::string, std::string>& flag_help() {
  static const std::map<std::string, std::string> h = {
      {"q", "field order (prime power)"},
      {"ext-k", "build F_{q^k} with an automatic modulus; --q is then the prime"},
      {"modulus", "JSON file {\"modulus\": [...]} with a monic extension modulus over F_q, low to high"},
      {"seed", "seed for random choices (default $POLYBOX_SEED or 0)"},
      {"curve", "plane curve, e.g. 'Y^2-X^3-(T)*X-(1)'"},
      {"base-x", "box base X0 (default 0)"},
      {"base-y", "box base Y0 (default 0)"},
      {"n", "box degree bound"},
      {"n-range", "range of box bounds lo..hi"},
      {"f", "irreducible modulus f"},
      {"f-deg", "degree of a seeded random irreducible f"},
      {"lambda", "residue lambda"},
      {"d", "degree (grid W-set with --M, or interpolation degree)"},
      {"M", "Y-degree of the grid W-set"},
      {"omega", "size of the standard W-set, or tuple length"},
      {"points", "point set 'x,y;x,y;...'"},
      {"xs", "multipliers 'X1;X2;...'"},
      {"taus", "exponents 'tau1,tau2,...'"},
      {"budget", "enumeration budget"},
      {"force", "run outside the theorem range"},
  };
  return h;
}

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> table = {
      {"count-box", "zeros of a curve in a box", {"curve", "base-x", "base-y", "n"}, {{"base-x", "0"}, {"base-y", "0"}},
       run_count_box},
      {"exponent-scan", "box counts and exponents over a range of n", {"curve", "base-x", "base-y", "n-range"},
       {{"base-x", "0"}, {"base-y", "0"}}, run_exponent_scan},
      {"residue-stats", "residue profile of the box points modulo f",
       {"curve", "base-x", "base-y", "n", "points", "f", "f-deg"}, {{"base-x", "0"}, {"base-y", "0"}}, run_residue_stats},
      {"detlab ord", "check f^kappa | W over all tuples",
       {"omega", "d", "M", "points", "curve", "base-x", "base-y", "n", "f", "f-deg", "budget"},
       {{"base-x", "0"}, {"base-y", "0"}, {"budget", std::to_string(kDefaultTupleBudget)}}, run_detlab_ord},
      {"detlab mean-identity", "mean number of distinct residues against its closed form",
       {"omega", "points", "curve", "base-x", "base-y", "n", "f", "f-deg", "budget"},
       {{"base-x", "0"}, {"base-y", "0"}, {"budget", std::to_string(kDefaultTupleBudget)}}, run_detlab_mean},
      {"detlab interpolate", "form of degree <= d through the points", {"d", "points", "curve", "base-x", "base-y", "n"},
       {{"base-x", "0"}, {"base-y", "0"}}, run_detlab_interpolate},
      {"detlab wcurve-max", "most points of S on a W-curve",
       {"omega", "d", "M", "points", "curve", "base-x", "base-y", "n", "budget"},
       {{"base-x", "0"}, {"base-y", "0"}, {"budget", std::to_string(kDefaultSubsetBudget)}}, run_detlab_wcurve},
      {"ec nlambda", "N_lambda over the box", {"lambda", "f", "f-deg", "n", "base-x", "budget"},
       {{"base-x", "0"}, {"budget", "100000000"}}, run_ec_nlambda},
      {"ec census", "pairs of box curves with congruent invariants", {"f", "f-deg", "n", "base-x", "budget"},
       {{"base-x", "0"}, {"budget", "100000000"}}, run_ec_census},
      {"ec scan19", "N_lambda for every realized lambda", {"f", "f-deg", "n", "base-x", "budget", "force"},
       {{"base-x", "0"}, {"budget", "100000000"}}, run_ec_scan19},
      {"ec pigeonhole", "small multiplier t for X_1..X_s, or the small-coefficient model with --lambda",
       {"f", "f-deg", "xs", "taus", "lambda", "base-x", "n"}, {{"base-x", "0"}}, run_ec_pigeonhole},
      {"ec extremal", "x with x^2 and x^3 in the box", {"n"}, {}, run_ec_extremal},
  };
  return table;
}

const CommandSpec& find_command(const std::string& name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw UsageError("unknown command '" + name + "'");
}

FieldPtr resolve_field(const Params& p) {
  const auto q_it = p.find("q");
  if (q_it == p.end()) throw UsageError("--q is required");
  const std::int64_t q = parse_int("q", q_it->second);
  if (q < 2 || q > std::int64_t{Field::kMaxExtensionOrder}) throw UsageError("--q out of range");
  const bool ext = p.count("ext-k") > 0, file = p.count("modulus") > 0;
  if (ext && file) throw UsageError("give either --ext-k or --modulus, not both");
  if (ext || file) {
    if (!is_prime(static_cast<std::uint64_t>(q))) throw UsageError("--ext-k and --modulus need a prime --q");
  }
  const auto p32 = static_cast<std::uint32_t>(q);
  if (ext) {
    const std::int64_t k = parse_int("ext-k", p.at("ext-k"));
    if (k < 1 || k > 16) throw UsageError("--ext-k must lie in [1, 16]");
    return k == 1 ? Field::prime(p32) : Field::extension(p32, static_cast<int>(k));
  }
  if (file) {
    std::ifstream in(p.at("modulus"));
    if (!in) throw UsageError("cannot read modulus file '" + p.at("modulus") + "'");
    json cfg;
    try {
      cfg = json::parse(in);
      return Field::extension(p32, cfg.at("modulus").get<std::vector<Elem>>());
    } catch (const json::exception& e) {
      throw UsageError(std::string("bad modulus file: ") + e.what());
    }
  }
  return Field::of_order(static_cast<std::uint64_t>(q));
}

json field_json(const FieldPtr& k) {
  return {{"q", k->order()}, {"p", k->characteristic()}, {"k", k->degree()}, {"modulus", k->modulus()}};
}

std::string file_stem(const std::string& command) {
  std::string s = command;
  std::replace(s.begin(), s.end(), ' ', '-');
  return s;
}

std::string to_upper_first(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

json error_json(const std::string& kind, const std::string& message, int code) {
  return {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
}

void emit(const Report& r, const std::string& command, const std::string& mode, const std::string& out_dir,
          std::ostream& out) {
  const std::string json_text = r.json.dump(2) + "\n";
  if (!mode.empty() && out_dir.empty()) {
    out << (mode == "csv" ? r.csv() : json_text);
    return;
  }
  const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  std::filesystem::create_directories(dir);
  const std::string stem = file_stem(command) + "-" + manifest_hash(r.json.at("manifest"));
  auto write = [&](const std::string& ext, const std::string& text) {
    const auto path = dir / (stem + ext);
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + path.string());
    out << path.string() << "\n";
  };
  if (mode.empty() || mode == "csv") write(".csv", r.csv());
  if (mode.empty() || mode == "json") write(".json", json_text);
}

}  // namespace

std::string Report::csv() const {
  std::string s;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += ',';
      s += csv_field(cells[i]);
    }
    s += '\n';
  };
  line(csv_header);
  for (const auto& row : csv_rows) line(row);
  return s;
}

std::vector<std::string> command_names() {
  std::vector<std::string> names;
  for (const auto& c : commands()) names.push_back(c.name);
  return names;
}

Report execute(const std::string& command, const Params& params, unsigned jobs) {
  const CommandSpec& spec = find_command(command);
  for (const auto& [key, value] : params) {
    const bool known = std::find(kFieldFlags.begin(), kFieldFlags.end(), key) != kFieldFlags.end() ||
                       std::find(spec.flags.begin(), spec.flags.end(), key) != spec.flags.end();
    if (!known) throw UsageError(command + " does not take --" + key);
  }
  Ctx c;
  c.command = command;
  c.params = params;
  for (const auto& [key, value] : spec.defaults) c.params.emplace(key, value);
  c.params.emplace("seed", "0");
  c.k = resolve_field(c.params);
  c.jobs = std::max(1u, jobs);
  Report r = spec.run(c);
  json manifest = {{"tool", kToolName},
                   {"version", kToolVersion},
                   {"command", command},
                   {"params", c.params},
                   {"field", field_json(c.k)},
                   {"timestamp", utc_timestamp()}};
  r.json = {{"manifest", std::move(manifest)}, {"result", std::move(r.json)}};
  return r;
}

Report replay(const json& manifest_or_report, unsigned jobs) {
  const json& m = manifest_or_report.contains("manifest") ? manifest_or_report.at("manifest") : manifest_or_report;
  Params params;
  std::string command;
  try {
    if (m.at("tool") != kToolName) throw UsageError("manifest was not written by polybox");
    command = m.at("command").get<std::string>();
    params = m.at("params").get<Params>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed manifest: ") + e.what());
  }
  Report r = execute(command, params, jobs);
  if (m.contains("field") && r.json["manifest"]["field"] != m.at("field")) {
    throw DomainError("replayed field differs from the manifest");
  }
  return r;
}

json strip_timestamp(json report) {
  if (report.contains("manifest")) report["manifest"].erase("timestamp");
  report.erase("timestamp");
  return report;
}

std::string manifest_hash(const json& manifest) {
  json m = manifest;
  m.erase("timestamp");
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : m.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact point counting and determinant-method experiments over F_q[T]", "polybox"};
  app.require_subcommand(1);
  std::string mode, out_dir;
  unsigned jobs = 1;

  struct Leaf {
    const CommandSpec* spec;
    CLI::App* app;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    bool force = false;
  };
  std::vector<std::unique_ptr<Leaf>> leaves;
  std::map<std::string, CLI::App*> groups;
  groups["detlab"] = app.add_subcommand("detlab", "determinant-method experiments");
  groups["ec"] = app.add_subcommand("ec", "elliptic-curve counting");
  for (auto& [name, g] : groups) g->require_subcommand(1);

  auto add_output_flags = [&](CLI::App* a) {
    a->add_option("--out", mode, "print one report format to stdout")->check(CLI::IsMember({"csv", "json"}));
    a->add_option("--out-dir", out_dir, "directory for report files");
    a->add_option("--jobs", jobs, "worker threads (never changes output)")->check(CLI::Range(1u, 256u));
  };

  for (const CommandSpec& spec : commands()) {
    auto leaf = std::make_unique<Leaf>();
    leaf->spec = &spec;
    const auto space = spec.name.find(' ');
    CLI::App* parent = space == std::string::npos ? &app : groups.at(spec.name.substr(0, space));
    const std::string leaf_name = space == std::string::npos ? spec.name : spec.name.substr(space + 1);
    leaf->app = parent->add_subcommand(leaf_name, to_upper_first(spec.help));
    std::vector<std::string> flags = kFieldFlags;
    flags.insert(flags.end(), spec.flags.begin(), spec.flags.end());
    for (const std::string& f : flags) {
      if (f == "force") {
        leaf->options[f] = leaf->app->add_flag("--force", leaf->force, flag_help().at(f));
      } else {
        leaf->options[f] = leaf->app->add_option("--" + f, leaf->values[f], flag_help().at(f));
      }
    }
    add_output_flags(leaf->app);
    leaves.push_back(std::move(leaf));
  }
  std::string replay_file;
  CLI::App* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a report or manifest");
  replay_cmd->add_option("manifest", replay_file, "report or manifest JSON file")->required();
  add_output_flags(replay_cmd);

  std::string command;
  auto fail = [&](const std::string& kind, const std::string& message, int code, json extra = json::object()) {
    json e = error_json(kind, message, code);
    for (auto& [key, value] : extra.items()) e["error"][key] = value;
    if (!command.empty()) e["error"]["command"] = command;
    err << e.dump() << "\n";
    if (kind == "usage") err << app.help();
    return code;
  };

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
    return fail("usage", e.what(), kExitUsage);
  }

  try {
    Report r;
    if (replay_cmd->parsed()) {
      command = "replay";
      std::ifstream in(replay_file);
      if (!in) throw UsageError("cannot read '" + replay_file + "'");
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::exception& e) {
        throw UsageError(std::string("replay input is not JSON: ") + e.what());
      }
      r = replay(doc, jobs);
      command = r.json["manifest"]["command"].get<std::string>();
    } else {
      const Leaf* leaf = nullptr;
      for (const auto& l : leaves) {
        if (l->app->parsed()) leaf = l.get();
      }
      if (!leaf) throw UsageError("no command given");
      command = leaf->spec->name;
      Params params;
      for (const auto& [name, opt] : leaf->options) {
        if (opt->count() == 0) continue;
        params[name] = name == "force" ? "true" : leaf->values.at(name);
      }
      if (!params.count("seed")) {
        if (const char* env = std::getenv("POLYBOX_SEED")) params["seed"] = env;
      }
      r = execute(command, params, jobs);
    }
    emit(r, command, mode, out_dir, out);
    return r.exit_code;
  } catch (const UsageError& e) {
    return fail("usage", e.what(), kExitUsage);
  } catch (const polybox::ParseError& e) {
    return fail("parse", e.what(), kExitUsage, {{"offset", e.offset()}});
  } catch (const BudgetExceeded& e) {
    return fail("budget", e.what(), kExitBudget, {{"required", e.required()}, {"budget", e.budget()}});
  } catch (const DomainError& e) {
    return fail("domain", e.what(), kExitUsage);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitUsage);
  }
}

}  // namespace polybox::cli
