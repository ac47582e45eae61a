// spreadlab command line front end
#include <CLI11.hpp>
#include <json.hpp>

#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "properties.hpp"
#include "spreadlab/actions.hpp"
#include "spreadlab/domination.hpp"
#include "spreadlab/families.hpp"
#include "spreadlab/fpr.hpp"
#include "spreadlab/version.hpp"
#include "verify.hpp"

using json = nlohmann::json;
using namespace spl;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, over_budget = 3 };

struct Common {
  std::string group, cls, cache_dir;
  std::uint64_t seed = 0, budget = 200000000, node_budget = 2000000000;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool as_json = false, as_csv = false;
};

void add_common(CLI::App* sc, Common& c, bool needs_group) {
  auto* g = sc->add_option("--group", c.group, "group spec, e.g. S:7, PSL2:11, Frob:7:1:3");
  if (needs_group) g->required();
  sc->add_option("--class", c.cls, "class label (o6-1, [5,3]a) or distinguished label (torus-minus, n-cycle)");
  sc->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sc->add_option("--threads", c.threads, "worker threads")->capture_default_str();
  sc->add_option("--budget", c.budget, "generation-test cap")->capture_default_str();
  sc->add_option("--node-budget", c.node_budget, "cover search node cap")->capture_default_str();
  sc->add_option("--cache-dir", c.cache_dir, "stabilizer chain cache directory");
  auto* j = sc->add_flag("--json", c.as_json, "JSON output (default for most commands)");
  auto* v = sc->add_flag("--csv", c.as_csv, "CSV output where supported");
  j->excludes(v);
}

DomOptions dom_options(const Common& c) {
  DomOptions d;
  d.budget = c.budget;
  d.node_budget = c.node_budget;
  d.threads = c.threads;
  return d;
}

FprOptions fpr_options(const Common& c) {
  FprOptions f;
  f.threads = c.threads;
  f.cache_dir = c.cache_dir;
  return f;
}

json q_json(const rational& q) { return {{"num", numerator(q).str()}, {"den", denominator(q).str()}}; }

json perms_json(const std::vector<Perm>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back(p.str());
  return a;
}

json result(const std::string& group, const std::string& quantity) {
  return {{"group", group},        {"quantity", quantity}, {"exact", true},
          {"budget_used", 0},      {"witness", {{"elements", json::array()}, {"class", nullptr}}},
          {"library_version", library_version}};
}

json certificate_json(const Certificate& c) {
  json og = json::array();
  for (const auto& o : c.overgroups) og.push_back({{"label", o.label}, {"order", o.order.str()}, {"count", o.count}});
  json j = {{"kind", cert_kind_name(c.kind)}, {"group", c.group},          {"class", c.cls},
            {"overgroups", og},               {"c", c.c},                  {"value", q_json(c.value)},
            {"conclusion", c.conclusion},     {"holds", c.holds},          {"library_version", library_version}};
  if (c.k_max) j["k_max"] = *c.k_max;
  return j;
}

struct Loaded {
  GroupSpec spec;
  PermGroup G;
  ClassIndex CI;
};

Loaded load(const Common& c) {
  Loaded L;
  L.spec = GroupSpec::parse(c.group);
  L.G = construct(L.spec, c.cache_dir);
  L.CI = ClassIndex::build_auto(L.G);
  return L;
}

std::size_t resolve_class(const Loaded& L, const std::string& label) {
  if (label.empty()) throw std::invalid_argument("--class is required");
  for (std::size_t i = 0; i < L.CI.classes().size(); ++i)
    if (L.CI.classes()[i].label == label) return i;
  return L.CI.class_of(distinguished_class(L.spec, label).rep);
}

std::string default_class(const GroupSpec& s) {
  switch (s.family) {
    case Family::A:
    case Family::S: return "n-cycle";
    case Family::PSL2:
    case Family::PGL2: return "torus-minus";
    case Family::Sz: return "ovoid-torus";
    case Family::Frob: return "complement";
    default: return "singer";
  }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// --------------------------------------------------------------- commands

int cmd_spread(const Common& c, bool uniform) {
  auto L = load(c);
  auto d = dom_options(c);
  auto T = GenTable::build(L.G, L.CI, d);
  auto U = uniform_spread_exact(T, d);
  json j = result(c.group, uniform ? "u" : "s");
  if (uniform) {
    j["value"] = U.value;
    j["exact"] = U.exact;
    j["witness"]["class"] = U.witness_class;
    json per = json::array();
    for (const auto& cs : U.per_class)
      per.push_back({{"class", cs.label}, {"u", cs.u}, {"exact", cs.exact}, {"breaking_tuple", perms_json(cs.breaking_tuple)}});
    j["per_class"] = per;
  } else {
    auto S = spread_exact(T, U.value, d);
    j["value"] = S.value;
    j["exact"] = S.exact;
    j["witness"]["elements"] = perms_json(S.breaking_tuple);
    j["nodes"] = S.nodes;
  }
  j["budget_used"] = T.tests_used();
  emit(j);
  return ok;
}

int cmd_gamma(const Common& c, bool total, std::size_t max_size) {
  auto L = load(c);
  auto d = dom_options(c);
  auto T = GenTable::build(L.G, L.CI, d);
  if (total && max_size == 0) {
    // the practical cap for S_n and A_n, otherwise a fixed small bound
    std::size_t n = L.G.degree();
    max_size = (L.spec.family == Family::S || L.spec.family == Family::A)
                   ? 2 * static_cast<std::size_t>(std::bit_width(n - 1)) + 2
                   : 8;
  }
  auto r = total ? gamma_t(T, max_size, d) : gamma_u(T, max_size, d);
  json j = result(c.group, total ? "gamma_t" : "gamma_u");
  j["value"] = r.value;
  j["exact"] = r.exact;
  j["witness"]["elements"] = perms_json(r.witness);
  if (!r.witness_classes.empty()) j["witness"]["class"] = r.witness_classes.front();
  j["witness_classes"] = r.witness_classes;
  if (!r.exact) j["note"] = "no set of size <= " + std::to_string(max_size) + "; value is the cap plus one";
  j["budget_used"] = T.tests_used();
  emit(j);
  return ok;
}

int cmd_gamma_u_ell(const Common& c, std::size_t ell, const std::string& method, std::size_t max_size) {
  auto spec = GroupSpec::parse(c.group);
  std::string cls = c.cls.empty() ? default_class(spec) : c.cls;
  std::optional<EllResult> r;
  std::uint64_t used = 0;
  auto direct = [&] {
    auto L = load(c);
    auto T = GenTable::build(L.G, L.CI, dom_options(c));
    used = T.tests_used();
    return gamma_u_ell(T, ell, max_size, dom_options(c));
  };
  if (method == "clique" || method == "auto") {
    try {
      r = gamma_u_ell_clique(spec, cls, ell);
    } catch (const std::invalid_argument&) {
      if (method == "clique") throw;
    }
  }
  if (!r && (method == "probability" || method == "auto")) {
    auto L = load(c);
    auto p2 = p_gsc_exact_direct(L.G, L.CI, resolve_class(L, cls), dom_options(c));
    r = gamma_u_ell_probability(p2, ell);
  }
  if (!r && (method == "direct" || method == "auto")) r = direct();
  if (!r) {
    std::cerr << "the " << method << " route does not decide gamma_u^(" << ell << ")\n";
    return check_failed;
  }
  json j = result(c.group, "gamma_u_ell");
  j["ell"] = ell;
  j["value"] = r->value;
  j["exact"] = r->exact;
  j["method"] = r->method;
  j["witness"]["elements"] = perms_json(r->witness);
  if (!r->witness_class.empty()) j["witness"]["class"] = r->witness_class;
  j["budget_used"] = used;
  emit(j);
  return ok;
}

int cmd_p2(const Common& c, bool exact, std::uint64_t trials) {
  auto spec = GroupSpec::parse(c.group);
  std::string cls = c.cls.empty() ? default_class(spec) : c.cls;
  json j = result(c.group, "p2");
  j["class"] = cls;
  if (exact) {
    auto L = load(c);
    j["value"] = q_json(p_gsc_exact_direct(L.G, L.CI, resolve_class(L, cls), dom_options(c)));
  } else {
    auto r = p2_monte_carlo(spec, cls, trials, c.seed, c.threads);
    j["exact"] = false;
    j["value"] = {{"estimate", r.estimate}, {"ci_low", r.ci_low}, {"ci_high", r.ci_high},
                  {"trials", r.trials},     {"seed", r.seed},     {"successes", r.successes}};
  }
  emit(j);
  return ok;
}

int cmd_qhat(const Common& c, std::uint64_t cexp) {
  auto spec = GroupSpec::parse(c.group);
  auto f = fpr_options(c);
  f.subgroup_cap = std::max<std::uint64_t>(f.subgroup_cap, c.budget);
  emit(certificate_json(qhat(spec, c.cls.empty() ? default_class(spec) : c.cls, cexp, f)));
  return ok;
}

int cmd_usl(const Common& c) {
  auto spec = GroupSpec::parse(c.group);
  emit(certificate_json(uniform_spread_lower(spec, c.cls.empty() ? default_class(spec) : c.cls, fpr_options(c))));
  return ok;
}

std::string decimal(const rational& q) {
  std::ostringstream os;
  os << std::setprecision(10) << to_double(q);
  return os.str();
}

int cmd_fpr(const Common& c, std::size_t n, std::size_t l, const std::string& shape, const std::string& sub) {
  struct Row {
    std::string name;
    rational fpr;
    std::optional<rational> bound;
    std::string rule;
  };
  std::vector<Row> rows;
  if (!c.group.empty()) {
    auto spec = GroupSpec::parse(c.group);
    auto ot = overgroup_tables(spec, c.cls.empty() ? default_class(spec) : c.cls, fpr_options(c));
    bool any = false;
    for (const auto& T : ot.tables) {
      const auto Hs = maximal_overgroups(spec, c.cls.empty() ? default_class(spec) : c.cls);
      std::string role;
      for (const auto& H : Hs)
        if (H.label == T.subgroup) role = H.role;
      // "torus-norm" and other role prefixes select by role
      if (!sub.empty() && sub != "all" && sub != T.subgroup && role.rfind(sub, 0) != 0) continue;
      any = true;
      for (const auto& r : T.rows) rows.push_back({"H=" + T.subgroup + " x=" + r.label, r.fpr, std::nullopt, ""});
    }
    if (!any) throw std::invalid_argument("no overgroup matches --subgroup " + sub);
  } else {
    if (n == 0 || l == 0 || shape.empty()) throw std::invalid_argument("fpr needs --group, or --n --l --shape");
    CycleType ct;
    if (shape.front() == '[') {
      ct = CycleType::parse(shape);
    } else {
      std::map<std::size_t, std::size_t, std::greater<>> m;
      std::stringstream ss(shape);
      std::string tok;
      while (std::getline(ss, tok, ',')) ++m[std::stoul(tok)];
      for (auto [len, mult] : m) ct.parts.emplace_back(len, mult);
    }
    if (ct.degree() != n) throw std::invalid_argument("shape does not have degree n");
    Row r{"n=" + std::to_string(n) + " l=" + std::to_string(l) + " shape=" + ct.label(),
          partition_fpr(canonical_perm(ct), l), std::nullopt, ""};
    // a bound exists for prime order shapes [p^k,1^(n-pk)]
    const auto& P = ct.parts;
    if (!P.empty() && P[0].first > 1 && is_prime_u64(P[0].first) && (P.size() == 1 || (P.size() == 2 && P[1].first == 1)) &&
        l > 1 && l < n && n % l == 0) {
      auto b = fpr_lemma_bound(n, l, P[0].first, P[0].second);
      r.bound = b.value;
      r.rule = b.rule + (b.in_hypothesis ? "" : " (outside the lemma's range)");
    }
    rows.push_back(r);
  }
  if (c.as_json) {
    json a = json::array();
    for (const auto& r : rows) {
      json e = {{"case", r.name}, {"value", q_json(r.fpr)}, {"decimal", to_double(r.fpr)}};
      if (r.bound) {
        e["bound"] = q_json(*r.bound);
        e["margin"] = q_json(*r.bound - r.fpr);
        e["rule"] = r.rule;
      }
      a.push_back(e);
    }
    emit({{"quantity", "fpr"}, {"rows", a}, {"library_version", library_version}});
  } else {
    std::cout << "case,num,den,decimal,bound,margin\n";
    for (const auto& r : rows) {
      std::cout << '"' << r.name << "\"," << numerator(r.fpr) << ',' << denominator(r.fpr) << ',' << decimal(r.fpr) << ',';
      if (r.bound) std::cout << q_str(*r.bound) << ',' << q_str(*r.bound - r.fpr);
      else std::cout << ',';
      std::cout << "\n";
    }
  }
  return ok;
}

int cmd_subdegrees(const Common& c) {
  auto L = load(c);
  std::string cls = c.cls.empty() ? default_class(L.spec) : c.cls;
  auto H = maximal_overgroups(L.spec, cls).at(0);
  auto act = coset_action(L.G, H);
  json sd = json::array();
  for (auto [len, mult] : subdegrees(act)) sd.push_back({{"length", len}, {"multiplicity", mult}});
  json j = result(c.group, "subdegrees");
  j["subgroup"] = H.label;
  j["degree"] = act.N;
  j["value"] = sd;
  j["regular_orbits"] = regular_orbit_count(act);
  j["base_two_probability"] = q_json(base_two_probability(act));
  emit(j);
  return ok;
}

int cmd_saxl(const Common& c, std::size_t k, bool edges) {
  auto L = load(c);
  std::string cls = c.cls.empty() ? default_class(L.spec) : c.cls;
  auto act = coset_action(L.G, maximal_overgroups(L.spec, cls).at(0));
  auto g = saxl_graph(act);
  if (edges) {
    g.write_edge_list(std::cout);
    return ok;
  }
  auto w = has_clique(g, k);
  json j = result(c.group, "saxl");
  j["vertices"] = g.size();
  j["degree"] = g.degree(0);
  j["clique_size"] = k;
  j["value"] = w.has_value();
  if (w) {
    json a = json::array();
    for (auto v : *w) a.push_back(v + 1);
    j["clique"] = a;
  }
  emit(j);
  return ok;
}

int cmd_dihedral(const Common& c) {
  auto spec = GroupSpec::parse(c.group);
  if (spec.family != Family::PSL2) throw std::invalid_argument("dihedral-cover needs a PSL2:q group");
  auto r = psl2_dihedral_cover(spec.q, dom_options(c));
  json j = result(c.group, "dihedral_cover");
  j["value"] = {{"lower", r.lower}, {"upper", r.upper}};
  j["exact"] = r.exact;
  j["witness"]["elements"] = perms_json(r.witness);
  j["conjugates"] = r.conjugates;
  j["involutions"] = r.involutions;
  j["per_involution"] = r.per_involution;
  j["nodes"] = r.nodes;
  emit(j);
  return ok;
}

int cmd_binder(const Common&, std::size_t n) {
  json cases = json::array();
  std::size_t bad = 0;
  for (const auto& k : check_binder(n)) {
    json e = {{"case", k.c.name}, {"x", k.c.x.str()}, {"y", k.c.y.str()}, {"z", k.z.str()}, {"paper_ok", k.paper_ok}};
    if (k.repaired) e["repaired"] = k.repaired->str();
    bad += !k.paper_ok && !k.repaired;
    cases.push_back(e);
  }
  json j = result("S:" + std::to_string(n), "binder");
  j["value"] = cases;
  j["exact"] = bad == 0;
  emit(j);
  return bad ? check_failed : ok;
}

int cmd_classes(const Common& c) {
  auto L = load(c);
  json a = json::array();
  for (const auto& cl : L.CI.classes())
    a.push_back({{"label", cl.label}, {"order", cl.order}, {"size", cl.size.str()}, {"rep", cl.rep.str()}});
  json j = result(c.group, "classes");
  j["order"] = L.G.order().str();
  j["degree"] = L.G.degree();
  j["value"] = a;
  emit(j);
  return ok;
}

int cmd_verify(const Common& c, const std::string& suite, const std::string& values, const std::vector<int>& crit,
               bool timing) {
  VerifyOptions o;
  o.suite = suite;
  o.seed = c.seed;
  o.threads = c.threads;
  o.budget = c.budget;
  o.cache_dir = c.cache_dir;
  o.timing = timing;
  o.criteria.insert(crit.begin(), crit.end());
  if (!c.as_json)
    o.on_check = [](const CheckRecord& r) {
      std::cout << std::left << std::setw(15) << status_name(r.status) + (r.documented ? "*" : "") << std::setw(24) << r.id
                << " expected " << r.expected << ", computed " << (r.computed.empty() ? "-" : r.computed);
      if (!r.note.empty()) std::cout << "  (" << r.note << ")";
      std::cout << std::endl;
    };
  auto rep = run_verify(load_paper_values(values.empty() ? default_paper_values_path() : values), o);
  if (c.as_json) {
    std::cout << report_json(rep, o).dump(2) << "\n";
  } else {
    std::cout << rep.passed << " pass, " << rep.failed << " fail (" << rep.documented << " documented), " << rep.skipped
              << " skipped-budget\n";
  }
  return rep.ok() ? ok : check_failed;
}

int cmd_properties(const Common& c) {
  PropertyOptions po;
  po.seed = c.seed;
  po.budget = c.budget;
  std::uint64_t viol = 0;
  json a = json::array();
  for (const auto& p : run_property_suite(po)) {
    viol += p.violations;
    a.push_back({{"module", p.module}, {"property", p.name}, {"cases", p.cases}, {"violations", p.violations},
                 {"first_failure", p.first_failure}});
  }
  emit({{"quantity", "properties"}, {"seed", c.seed}, {"value", a}, {"violations", viol}, {"library_version", library_version}});
  return viol ? check_failed : ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spreadlab: spread, uniform spread and domination numbers of finite groups"};
  app.set_version_flag("--version", std::string(library_version));
  app.require_subcommand(1);
  Common c;
  std::function<int()> action;

  auto* v = app.add_subcommand("verify", "reproduce the expected values in the paper values file");
  std::string suite = "core", values;
  std::vector<int> crit;
  bool no_timing = false;
  add_common(v, c, false);
  v->add_option("--suite", suite, "core or extended")->check(CLI::IsMember({"core", "extended"}))->capture_default_str();
  v->add_option("--values", values, "paper values file");
  v->add_option("--criterion", crit, "only these acceptance criteria");
  v->add_flag("--no-timing", no_timing, "report wall times as 0 (byte-identical reruns)");
  v->callback([&] { action = [&] { return cmd_verify(c, suite, values, crit, !no_timing); }; });

  for (auto [name, uniform] : {std::pair{"spread", false}, std::pair{"uniform-spread", true}}) {
    auto* s = app.add_subcommand(name, uniform ? "exact uniform spread u(G)" : "exact spread s(G)");
    add_common(s, c, true);
    s->callback([&, uniform = uniform] { action = [&, uniform] { return cmd_spread(c, uniform); }; });
  }

  std::size_t max_size = 0;
  for (auto [name, total] : {std::pair{"gamma-t", true}, std::pair{"gamma-u", false}}) {
    auto* s = app.add_subcommand(name, total ? "total domination number" : "uniform domination number");
    add_common(s, c, true);
    s->add_option("--max-size", max_size, "largest set size searched (0: default cap)");
    s->callback([&, total = total] { action = [&, total] { return cmd_gamma(c, total, max_size); }; });
  }

  std::size_t ell = 2;
  std::string method = "auto";
  auto* ge = app.add_subcommand("gamma-u-ell", "gamma_u^(l): every l-tuple dominated by one class member");
  add_common(ge, c, true);
  ge->add_option("--ell", ell, "tuple size l")->capture_default_str();
  ge->add_option("--method", method, "clique, probability, direct or auto")
      ->check(CLI::IsMember({"auto", "clique", "probability", "direct"}))
      ->capture_default_str();
  ge->add_option("--max-size", max_size, "direct search cap");
  ge->callback([&] { action = [&] { return cmd_gamma_u_ell(c, ell, method, max_size ? max_size : 6); }; });

  bool exact = false;
  std::uint64_t trials = 3000;
  auto* p2 = app.add_subcommand("p2", "P(G,s,2), exact or Monte Carlo");
  add_common(p2, c, true);
  p2->add_flag("--exact", exact, "exact rational by enumerating the class");
  p2->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
  p2->callback([&] { action = [&] { return cmd_p2(c, exact, trials); }; });

  std::uint64_t cexp = 2;
  auto* qh = app.add_subcommand("qhat", "Q-hat(G,s,c) certificate");
  add_common(qh, c, true);
  qh->add_option("--c", cexp, "number of conjugates c")->capture_default_str();
  qh->callback([&] { action = [&] { return cmd_qhat(c, cexp); }; });

  auto* us = app.add_subcommand("usl", "uniform spread lower bound certificate from fixed point ratios");
  add_common(us, c, true);
  us->callback([&] { action = [&] { return cmd_usl(c); }; });

  std::size_t n = 0, l = 0;
  std::string shape, sub;
  auto* fp = app.add_subcommand("fpr", "fixed point ratio tables (CSV by default)");
  add_common(fp, c, false);
  fp->add_option("--n", n, "degree for the partition action");
  fp->add_option("--l", l, "number of parts");
  fp->add_option("--shape", shape, "cycle lengths 3,1,1,... or [3,1^6]");
  fp->add_option("--subgroup", sub, "overgroup label or role prefix (torus-norm), default all");
  fp->callback([&] { action = [&] { return cmd_fpr(c, n, l, shape, sub); }; });

  auto* sd = app.add_subcommand("subdegrees", "suborbits of the action on cosets of the class's overgroup");
  add_common(sd, c, true);
  sd->callback([&] { action = [&] { return cmd_subdegrees(c); }; });

  std::size_t k = 3;
  bool edges = false;
  auto* sx = app.add_subcommand("saxl", "Saxl graph of the coset action: clique test or edge list");
  add_common(sx, c, true);
  sx->add_option("--k", k, "clique size")->capture_default_str();
  sx->add_flag("--edges", edges, "print the edge list (1-based u v per line)");
  sx->callback([&] { action = [&] { return cmd_saxl(c, k, edges); }; });

  auto* dc = app.add_subcommand("dihedral-cover", "fewest involutions whose dihedral overgroups cover all conjugates");
  add_common(dc, c, true);
  dc->callback([&] { action = [&] { return cmd_dihedral(c); }; });

  std::size_t bn = 8;
  auto* bd = app.add_subcommand("binder", "check the even symmetric group witness constructions");
  add_common(bd, c, false);
  bd->add_option("--n", bn, "even degree >= 8")->capture_default_str();
  bd->callback([&] { action = [&] { return cmd_binder(c, bn); }; });

  auto* cl = app.add_subcommand("classes", "conjugacy classes and their labels");
  add_common(cl, c, true);
  cl->callback([&] { action = [&] { return cmd_classes(c); }; });

  auto* pr = app.add_subcommand("properties", "run the randomized property suite");
  add_common(pr, c, false);
  pr->callback([&] { action = [&] { return cmd_properties(c); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }
  try {
    return action();
  } catch (const budget_exceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return over_budget;
  } catch (const cap_exceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return over_budget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return check_failed;
  }
}
