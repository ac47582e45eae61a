#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "properties.hpp"
#include "spreadlab/actions.hpp"
#include "spreadlab/domination.hpp"
#include "spreadlab/families.hpp"
#include "spreadlab/fpr.hpp"
#include "spreadlab/version.hpp"

#ifndef SPREADLAB_DATA_DIR
#define SPREADLAB_DATA_DIR "data"
#endif

namespace spl {

// ------------------------------------------------------------------ data file

const std::string& CheckSpec::get(const std::string& key) const {
  auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("check " + id + ": missing key \"" + key + "\"");
  return it->second;
}

std::string CheckSpec::get(const std::string& key, const std::string& dflt) const {
  auto it = kv.find(key);
  return it == kv.end() ? dflt : it->second;
}

std::uint64_t CheckSpec::get_u64(const std::string& key, std::uint64_t dflt) const {
  auto it = kv.find(key);
  return it == kv.end() ? dflt : std::stoull(it->second);
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

PaperValues parse_paper_values(const std::string& text) {
  PaperValues pv;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  CheckSpec* cur = nullptr;
  auto err = [&](const std::string& msg) {
    throw std::invalid_argument("paper values line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == '[') {
      if (line.back() != ']') err("unterminated section header");
      pv.checks.push_back(CheckSpec{trim(line.substr(1, line.size() - 2)), {}});
      for (std::size_t i = 0; i + 1 < pv.checks.size(); ++i)
        if (pv.checks[i].id == pv.checks.back().id) err("duplicate check id " + pv.checks.back().id);
      cur = &pv.checks.back();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) err("expected key = value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (val.size() >= 2 && val.front() == '"') {
      if (val.back() != '"') err("unterminated quote");
      val = val.substr(1, val.size() - 2);
    }
    auto& dst = cur ? cur->kv : pv.header;
    if (dst.count(key)) err("duplicate key " + key);
    dst[key] = val;
  }
  return pv;
}

PaperValues load_paper_values(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_paper_values(ss.str());
}

std::string default_paper_values_path() { return std::string(SPREADLAB_DATA_DIR) + "/paper_values.txt"; }

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped_budget: return "skipped-budget";
  }
  return "?";
}

std::vector<Multiplicity> parse_multiset(const std::string& text) {
  std::vector<Multiplicity> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    auto x = tok.find('x');
    if (x == std::string::npos) throw std::invalid_argument("bad multiset entry " + tok);
    out.push_back({std::stoull(tok.substr(0, x)), std::stoull(tok.substr(x + 1))});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string multiset_str(std::vector<Multiplicity> m) {
  std::sort(m.begin(), m.end());
  std::string s;
  for (const auto& e : m) s += (s.empty() ? "" : " ") + std::to_string(e.length) + "x" + std::to_string(e.mult);
  return s;
}

// ------------------------------------------------------------------ runners

namespace {

rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return rational(bigint(trim(s)));
  return rational(bigint(trim(s.substr(0, slash))), bigint(trim(s.substr(slash + 1))));
}

// "k" or ">= k"
bool match_int(const std::string& expected, std::int64_t v) {
  std::string e = trim(expected);
  if (e.rfind(">=", 0) == 0) return v >= std::stoll(trim(e.substr(2)));
  return v == std::stoll(e);
}

struct Outcome {
  std::string computed;
  bool ok = false;
  std::string note;
};

struct Loaded {
  GroupSpec spec;
  PermGroup G;
  ClassIndex CI;
  std::unique_ptr<GenTable> T;
  std::optional<SpreadResult> U;
};

class Context {
 public:
  explicit Context(const VerifyOptions& o) : opt(o) {
    dopt.budget = o.budget;
    dopt.threads = o.threads;
    fopt.threads = o.threads;
    fopt.cache_dir = o.cache_dir;
  }

  Loaded& group(const std::string& s) {
    auto& slot = groups_[s];
    if (!slot) {
      slot = std::make_unique<Loaded>();
      slot->spec = GroupSpec::parse(s);
      slot->G = construct(slot->spec, opt.cache_dir);
      slot->CI = ClassIndex::build_auto(slot->G);
    }
    return *slot;
  }
  Loaded& tabled(const std::string& s) {
    auto& g = group(s);
    if (!g.T) g.T = std::make_unique<GenTable>(GenTable::build(g.G, g.CI, dopt));
    return g;
  }
  const SpreadResult& uniform(const std::string& s) {
    auto& g = tabled(s);
    if (!g.U) g.U = uniform_spread_exact(*g.T, dopt);
    return *g.U;
  }
  const Action& action(const std::string& s, const std::string& label) {
    auto& slot = actions_[s + "|" + label];
    if (!slot) {
      auto& g = group(s);
      auto H = maximal_overgroups(g.spec, label).at(0);
      slot = std::make_unique<std::pair<Action, bigint>>(coset_action(g.G, H), H.order);
    }
    return slot->first;
  }
  std::size_t class_id(Loaded& g, const std::string& label) {
    for (std::size_t i = 0; i < g.CI.classes().size(); ++i)
      if (g.CI.classes()[i].label == label) return i;
    return g.CI.class_of(distinguished_class(g.spec, label).rep);
  }

  const VerifyOptions& opt;
  DomOptions dopt;
  FprOptions fopt;

 private:
  std::map<std::string, std::unique_ptr<Loaded>> groups_;
  std::map<std::string, std::unique_ptr<std::pair<Action, bigint>>> actions_;
};

std::vector<std::size_t> size_list(const std::string& s) {
  std::vector<std::size_t> v;
  std::istringstream in(s);
  std::size_t x;
  while (in >> x) v.push_back(x);
  return v;
}

std::string fixed(double x, int prec = 5) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << x;
  return os.str();
}

using Runner = Outcome (*)(const CheckSpec&, Context&);

Outcome run_spread(const CheckSpec& c, Context& ctx) {
  const auto& g = c.get("group");
  auto lo = ctx.uniform(g).value;
  auto S = spread_exact(*ctx.tabled(g).T, lo, ctx.dopt);
  std::string note = "breaking tuple of " + std::to_string(S.breaking_tuple.size()) + " elements";
  return {std::to_string(S.value), S.exact && match_int(c.get("expected"), S.value), note};
}

Outcome run_uniform_spread(const CheckSpec& c, Context& ctx) {
  const auto& U = ctx.uniform(c.get("group"));
  return {std::to_string(U.value), U.exact && match_int(c.get("expected"), U.value), "witness class " + U.witness_class};
}

Outcome run_gamma_u(const CheckSpec& c, Context& ctx) {
  auto& g = ctx.tabled(c.get("group"));
  auto r = gamma_u(*g.T, c.get_u64("max_size", 0), ctx.dopt);
  std::string cls;
  for (const auto& w : r.witness_classes) cls += (cls.empty() ? "" : " ") + w;
  std::string v = r.exact ? std::to_string(r.value) : "> " + std::to_string(r.value - 1);
  return {v, r.exact && match_int(c.get("expected"), static_cast<std::int64_t>(r.value)), "classes " + cls};
}

Outcome run_dihedral_cover(const CheckSpec& c, Context& ctx) {
  auto spec = GroupSpec::parse(c.get("group"));
  DomOptions d = ctx.dopt;
  d.node_budget = c.get_u64("node_budget", d.node_budget);
  auto r = psl2_dihedral_cover(spec.q, d);
  std::string v = r.exact ? std::to_string(r.lower) : "[" + std::to_string(r.lower) + "," + std::to_string(r.upper) + "]";
  return {v, r.exact && match_int(c.get("expected"), static_cast<std::int64_t>(r.lower)),
          std::to_string(r.conjugates) + " conjugates, " + std::to_string(r.per_involution) + " per involution"};
}

Outcome run_p2_exact(const CheckSpec& c, Context& ctx) {
  auto& g = ctx.group(c.get("group"));
  auto p = p_gsc_exact_direct(g.G, g.CI, ctx.class_id(g, c.get("class")), ctx.dopt);
  return {q_str(p), p == parse_rational(c.get("expected")), ""};
}

Outcome run_subdegrees(const CheckSpec& c, Context& ctx) {
  std::vector<Multiplicity> m;
  for (auto [len, mult] : subdegrees(ctx.action(c.get("group"), c.get("class")))) m.push_back({len, mult});
  auto v = multiset_str(m);
  return {v, v == multiset_str(parse_multiset(c.get("expected"))), ""};
}

Outcome run_regular_orbits(const CheckSpec& c, Context& ctx) {
  const auto& act = ctx.action(c.get("group"), c.get("class"));
  auto r = regular_orbit_count(act);
  return {std::to_string(r), match_int(c.get("expected"), static_cast<std::int64_t>(r)),
          "degree " + std::to_string(act.N)};
}

Outcome run_base_two(const CheckSpec& c, Context& ctx) {
  auto& act = ctx.action(c.get("group"), c.get("class"));
  auto p = base_two_probability(act);
  auto spec = GroupSpec::parse(c.get("group"));
  std::string note;
  if (spec.family == Family::Sz) note = "closed form " + q_str(p2_suzuki(spec.q));
  return {q_str(p), p == parse_rational(c.get("expected")), note};
}

Outcome run_usl(const CheckSpec& c, Context& ctx) {
  auto cert = uniform_spread_lower(GroupSpec::parse(c.get("group")), c.get("class"), ctx.fopt);
  if (!cert.k_max) return {"unbounded", false, cert.conclusion};
  return {std::to_string(*cert.k_max), match_int(c.get("expected"), static_cast<std::int64_t>(*cert.k_max)),
          "max fpr sum " + q_str(cert.value)};
}

Outcome run_qhat(const CheckSpec& c, Context& ctx) {
  FprOptions f = ctx.fopt;
  f.subgroup_cap = c.get_u64("subgroup_cap", f.subgroup_cap);
  auto cert = qhat(GroupSpec::parse(c.get("group")), c.get("class"), c.get_u64("c", 2), f);
  std::size_t subs = 0;
  for (const auto& o : cert.overgroups) subs += o.count;
  return {q_str(cert.value), cert.value == parse_rational(c.get("expected")),
          std::to_string(subs) + " overgroups; " + cert.conclusion};
}

Outcome run_closed_forms(const CheckSpec& c, Context&) {
  auto cases = check_closed_forms(c.get_u64("n_lo", 8), c.get_u64("n_hi", 14));
  std::size_t bad = 0;
  std::string first;
  for (const auto& k : cases)
    if (!k.equal && bad++ == 0)
      first = k.formula + " n=" + std::to_string(k.n) + " l=" + std::to_string(k.l) + ": " + q_str(k.closed) +
              " vs " + q_str(k.enumerated);
  std::string v = bad ? std::to_string(bad) + " of " + std::to_string(cases.size()) + " differ" : "all";
  return {v, bad == 0 && !cases.empty(), std::to_string(cases.size()) + " cases" + (bad ? "; " + first : "")};
}

Outcome run_fpr_bounds(const CheckSpec& c, Context&) {
  auto rep = verify_fpr_lemma_bounds(c.get_u64("n_lo", 8), c.get_u64("n_hi", 14));
  std::size_t in = 0, bad = 0;
  for (const auto& k : rep.cases)
    if (k.in_hypothesis) {
      ++in;
      bad += !k.holds;
    }
  std::string note = std::to_string(in) + " in-hypothesis cases, " + std::to_string(rep.outside_failures) +
                     " exceed the bound below its range";
  return {rep.passes ? "all" : std::to_string(bad) + " fail", rep.passes, note};
}

Outcome run_binder(const CheckSpec& c, Context&) {
  std::size_t total = 0, repaired = 0, bad = 0;
  std::string first;
  for (auto n : size_list(c.get("n"))) {
    for (const auto& k : check_binder(n)) {
      ++total;
      if (k.paper_ok) continue;
      if (k.repaired) {
        ++repaired;
      } else if (bad++ == 0) {
        first = "n=" + std::to_string(n) + " " + k.c.name + " x=" + k.c.x.str() + " y=" + k.c.y.str();
      }
    }
  }
  std::string note = std::to_string(total) + " cases, " + std::to_string(repaired) +
                     " needed a conjugate of the prescribed z" + (bad ? "; unresolved " + first : "");
  return {bad ? std::to_string(bad) + " unresolved" : "all", bad == 0 && total > 0, note};
}

Outcome run_bk(const CheckSpec& c, Context& ctx) {
  std::size_t bad = 0, checked = 0;
  std::string sizes;
  for (auto n : size_list(c.get("n"))) {
    auto G = construct(GroupSpec::parse("S:" + std::to_string(n)), ctx.opt.cache_dir);
    auto B = sn_even_bk_witness_set(n);
    sizes += (sizes.empty() ? "" : " ") + std::to_string(n) + ":" + std::to_string(B.size());
    if (B.size() > 2 * (n - 1)) ++bad;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) {
        ++checked;
        auto t = Perm::from_cycles(n, {{static_cast<point_t>(i), static_cast<point_t>(j)}});
        bool ok = false;
        for (const auto& b : sn_even_bk(n, j - i)) ok = ok || generates(G, t, b);
        bad += !ok;
      }
  }
  return {bad ? std::to_string(bad) + " uncovered" : "all", bad == 0,
          std::to_string(checked) + " transpositions; |B| by n " + sizes};
}

Outcome run_saxl_clique(const CheckSpec& c, Context& ctx) {
  const auto& act = ctx.action(c.get("group"), c.get("class"));
  auto g = saxl_graph(act);
  auto k = c.get_u64("k", 3);
  auto w = has_clique(g, k);
  std::string note = "degree " + std::to_string(g.degree(0)) + " on " + std::to_string(g.size()) + " vertices";
  if (w) {
    note += "; clique";
    for (auto v : *w) note += " " + std::to_string(v + 1);
  }
  std::string v = w ? "yes" : "no";
  return {v, v == c.get("expected"), note};
}

Outcome run_gamma_u_ell(const CheckSpec& c, Context& ctx) {
  const auto& gs = c.get("group");
  auto ell = c.get_u64("ell", 2);
  auto method = c.get("method", "direct");
  std::optional<EllResult> r;
  if (method == "clique") {
    r = gamma_u_ell_clique(GroupSpec::parse(gs), c.get("class"), ell);
  } else if (method == "probability") {
    auto& g = ctx.group(gs);
    auto p2 = p_gsc_exact_direct(g.G, g.CI, ctx.class_id(g, c.get("class")), ctx.dopt);
    r = gamma_u_ell_probability(p2, ell);
    if (!r) return {"undecided", false, "P2 = " + q_str(p2) + " does not give Q < 1/l"};
  } else if (method == "direct") {
    r = gamma_u_ell(*ctx.tabled(gs).T, ell, c.get_u64("max_size", 6), ctx.dopt);
  } else {
    throw std::invalid_argument("unknown gamma_u_ell method " + method);
  }
  if (!r) return {"undecided", false, method + " route does not apply"};
  std::string v = r->exact ? std::to_string(r->value) : "> " + std::to_string(r->value - 1);
  return {v, r->exact && match_int(c.get("expected"), static_cast<std::int64_t>(r->value)), "via " + r->method};
}

Outcome run_p2_mc(const CheckSpec& c, Context& ctx) {
  auto r = p2_monte_carlo(GroupSpec::parse(c.get("group")), c.get("class"), c.get_u64("trials", 3000), ctx.opt.seed,
                          ctx.opt.threads);
  double target = to_double(parse_rational(c.get("expected")));
  double tol = std::stod(c.get("tolerance", "0.02"));
  bool ok = std::abs(r.estimate - target) <= tol && r.ci_low <= target && target <= r.ci_high;
  return {fixed(r.estimate) + " [" + fixed(r.ci_low) + ", " + fixed(r.ci_high) + "]", ok,
          std::to_string(r.successes) + "/" + std::to_string(r.trials) + " at seed " + std::to_string(r.seed) +
              ", target " + fixed(target)};
}

Outcome run_properties(const CheckSpec& c, Context& ctx) {
  PropertyOptions po;
  po.seed = ctx.opt.seed;
  po.budget = ctx.opt.budget;
  std::uint64_t viol = 0, cases = 0;
  std::string note;
  auto res = run_property_suite(po);
  for (const auto& p : res) {
    viol += p.violations;
    cases += p.cases;
    if (p.violations) note += (note.empty() ? "" : "; ") + p.module + ": " + p.name + " (" + p.first_failure + ")";
  }
  if (note.empty()) note = std::to_string(res.size()) + " properties, " + std::to_string(cases) + " cases";
  return {std::to_string(viol), match_int(c.get("expected"), static_cast<std::int64_t>(viol)), note};
}

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> m = {
      {"spread", run_spread},           {"uniform_spread", run_uniform_spread},
      {"gamma_u", run_gamma_u},         {"dihedral_cover", run_dihedral_cover},
      {"p2_exact", run_p2_exact},       {"subdegrees", run_subdegrees},
      {"regular_orbits", run_regular_orbits}, {"base_two", run_base_two},
      {"usl_kmax", run_usl},            {"qhat", run_qhat},
      {"closed_forms", run_closed_forms}, {"fpr_bounds", run_fpr_bounds},
      {"binder", run_binder},           {"bk", run_bk},
      {"saxl_clique", run_saxl_clique}, {"gamma_u_ell", run_gamma_u_ell},
      {"p2_mc", run_p2_mc},             {"properties", run_properties},
  };
  return m;
}

}  // namespace

VerifyReport run_verify(const PaperValues& pv, const VerifyOptions& opt) {
  if (opt.suite != "core" && opt.suite != "extended") throw std::invalid_argument("suite must be core or extended");
  VerifyReport rep;
  auto hv = pv.header.find("values_version");
  rep.values_version = hv == pv.header.end() ? "" : hv->second;
  Context ctx(opt);
  for (const auto& c : pv.checks) {
    const std::string suite = c.get("suite", "core");
    if (suite == "extended" && opt.suite != "extended") continue;
    if (!opt.criteria.empty() && !opt.criteria.count(c.criterion())) continue;
    CheckRecord r;
    r.id = c.id;
    r.criterion = c.criterion();
    r.anchor = c.get("anchor", "");
    r.quantity = c.get("quantity");
    r.group = c.get("group", "");
    r.cls = c.get("class", "");
    r.suite = suite;
    r.expected = c.get("expected");
    auto t0 = std::chrono::steady_clock::now();
    if (c.get_u64("cost", 1) > opt.budget) {
      r.status = CheckStatus::skipped_budget;
      r.note = "declared cost " + c.get("cost", "1") + " exceeds budget " + std::to_string(opt.budget);
    } else {
      auto it = runners().find(r.quantity);
      try {
        if (it == runners().end()) throw std::invalid_argument("unknown quantity " + r.quantity);
        Outcome o = it->second(c, ctx);
        r.computed = o.computed;
        r.note = o.note;
        r.status = o.ok ? CheckStatus::pass : CheckStatus::fail;
      } catch (const budget_exceeded& e) {
        r.status = CheckStatus::skipped_budget;
        r.note = e.what();
      } catch (const cap_exceeded& e) {
        r.status = CheckStatus::skipped_budget;
        r.note = e.what();
      } catch (const std::exception& e) {
        r.status = CheckStatus::fail;
        r.note = std::string("error: ") + e.what();
      }
    }
    if (r.status == CheckStatus::fail && c.has("discrepancy")) {
      r.documented = true;
      r.note = "documented discrepancy: " + c.get("discrepancy") + (r.note.empty() ? "" : "; " + r.note);
    }
    if (opt.timing)
      r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    switch (r.status) {
      case CheckStatus::pass: ++rep.passed; break;
      case CheckStatus::fail:
        ++rep.failed;
        rep.documented += r.documented;
        break;
      case CheckStatus::skipped_budget: ++rep.skipped; break;
    }
    if (opt.on_check) opt.on_check(r);
    rep.checks.push_back(std::move(r));
  }
  return rep;
}

nlohmann::json report_json(const VerifyReport& rep, const VerifyOptions& opt) {
  nlohmann::json j;
  j["library_version"] = library_version;
  j["values_version"] = rep.values_version;
  j["suite"] = opt.suite;
  j["seed"] = opt.seed;
  j["budget"] = opt.budget;
  auto& arr = j["checks"] = nlohmann::json::array();
  for (const auto& r : rep.checks) {
    arr.push_back({{"id", r.id},
                   {"criterion", r.criterion},
                   {"anchor", r.anchor},
                   {"quantity", r.quantity},
                   {"group", r.group},
                   {"class", r.cls},
                   {"expected", r.expected},
                   {"computed", r.computed},
                   {"status", status_name(r.status)},
                   {"documented_discrepancy", r.documented},
                   {"note", r.note},
                   {"wall_ms", std::round(r.wall_ms * 1000) / 1000}});
  }
  j["summary"] = {{"total", rep.checks.size()},
                  {"pass", rep.passed},
                  {"fail", rep.failed},
                  {"documented_discrepancies", rep.documented},
                  {"skipped_budget", rep.skipped},
                  {"ok", rep.ok()}};
  return j;
}

}  // namespace spl
