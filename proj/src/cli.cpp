#include "qbisim/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qbisim/axioms.hpp"
#include "qbisim/bisim.hpp"
#include "qbisim/cob.hpp"
#include "qbisim/cts.hpp"
#include "qbisim/io.hpp"
#include "qbisim/kernels.hpp"
#include "qbisim/limits.hpp"

namespace qbisim {

namespace {

using io::Json;

constexpr const char* kSchema = "qbisim.report/1";

struct Options {
  std::string fixtures;
  std::vector<std::string> load;
  std::vector<std::string> aut;
  std::string sigma = "m";
  std::size_t k = 0;
  std::string format = "text";
  std::uint64_t seed = 7;
  bool timing = false;
  std::string kernels;
  Limits limits;

  // command arguments
  std::string a, b, functor, relation, tse, spec, category, adjunction, map, base;
  std::string suite = "A1..A6";
  std::size_t cases = 200;
  bool simulation = false;
  std::vector<std::string> quantaloids, vcats, functors, relations, tses, categories;
};

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto simple = [](const Json& v) {
    if (v.is_primitive()) return true;
    if (!v.is_array()) return false;
    return std::all_of(v.begin(), v.end(), [](const Json& x) {
      return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const Json& y) { return y.is_primitive(); }));
    });
  };
  auto inline_of = [&](const Json& v) {
    if (v.is_primitive()) return scalar(v);
    std::string s;
    for (const auto& x : v) {
      if (!s.empty()) s += " ";
      if (x.is_array()) {
        std::string inner;
        for (const auto& y : x) inner += (inner.empty() ? "" : ",") + scalar(y);
        s += "(" + inner + ")";
      } else {
        s += scalar(x);
      }
    }
    return s;
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k == "schema") continue;
      if (simple(v)) {
        out << pad << k << ": " << inline_of(v) << "\n";
      } else {
        out << pad << k << ":\n";
        render_text(v, out, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      const bool flat = v.is_object() && std::all_of(v.begin(), v.end(), simple);
      if (flat) {
        std::string line;
        for (const auto& [k, x] : v.items()) line += (line.empty() ? "" : ", ") + k + ": " + inline_of(x);
        out << pad << "- " << line << "\n";
      } else if (simple(v)) {
        out << pad << "- " << inline_of(v) << "\n";
      } else {
        out << pad << "-\n";
        render_text(v, out, indent + 2);
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

class Session {
 public:
  explicit Session(const Options& o) : o_(o) {}

  io::Bundle& bundle() { return bundle_; }

  void load(bool resolve) {
    if (!o_.fixtures.empty()) bundle_.add_directory(o_.fixtures);
    for (const auto& p : o_.load) {
      if (std::filesystem::is_directory(p)) {
        bundle_.add_directory(p);
      } else {
        bundle_.add_file(p);
      }
    }
    import_automata();
    if (resolve) bundle_.resolve_all();
  }

  std::string base_name(const QuantaloidPtr& q) const {
    auto n = bundle_.name_of(q);
    return n.empty() ? q->label() : n;
  }

  std::string vname(const VCatPtr& a, const std::string& fallback) const {
    auto n = bundle_.name_of(a);
    return n.empty() ? fallback : n;
  }

  Json vcat(const VCatPtr& a) const { return io::vcategory_json(*a, base_name(a->base())); }

  Json map(const VFunctor& f) const {
    Json m = Json::object();
    for (std::uint32_t x = 0; x < f.source->size(); ++x) m[f.source->name(x)] = f.target->name(f.map[x]);
    return m;
  }

  Json pairs(const SimRelation& r) const {
    Json out = Json::array();
    for (auto [x, y] : r.pairs()) out.push_back({r.left()->name(x), r.right()->name(y)});
    return out;
  }

  Json trace(const Refinement& r) const {
    Json out = Json::array();
    for (const auto& rm : r.trace) {
      out.push_back({{"round", rm.round}, {"removed", {r.relation.left()->name(rm.a), r.relation.right()->name(rm.b)}}});
    }
    return out;
  }

  Json counterexample(const SimRelation& r, const SimCounterexample& c) const {
    const auto& l = c.converse ? r.right() : r.left();
    const auto& rr = c.converse ? r.left() : r.right();
    return {{"pair", {l->name(c.a), rr->name(c.b)}},
            {"successor", l->name(c.a2)},
            {"direction", c.converse ? "converse" : "forward"},
            {"detail", c.detail}};
  }

 private:
  void import_automata() {
    if (o_.aut.empty()) return;
    std::vector<std::pair<std::string, std::string>> files;
    std::size_t states = 0;
    for (const auto& spec : o_.aut) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0) {
        fail(ErrorKind::InvalidArgument, "--aut expects NAME=PATH, got '" + spec + "'");
      }
      files.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
      states = std::max(states, io::aut_state_count(files.back().second));
    }
    std::vector<std::string> sigma;
    std::stringstream ss(o_.sigma);
    for (std::string letter; std::getline(ss, letter, ',');) {
      if (!letter.empty()) sigma.push_back(letter);
    }
    if (sigma.empty()) fail(ErrorKind::InvalidArgument, "--sigma needs at least one letter");
    const std::size_t k = o_.k != 0 ? o_.k : 2 * states;
    auto ql = quantaloids::language(sigma, k);
    for (const auto& [name, path] : files) bundle_.put_vcategory(name, io::import_aut_file(path, ql));
    aut_note_ = "automata read over " + ql->label();
  }

 public:
  std::string aut_note_;

 private:
  const Options& o_;
  io::Bundle bundle_;
};

std::string verdict_of(bool yes) { return yes ? "yes" : "no"; }

const std::string& need(const std::string& v, const char* flag) {
  if (v.empty()) fail(ErrorKind::InvalidArgument, std::string("missing ") + flag);
  return v;
}

Json run_validate(Session& s, const Options& o) {
  s.load(false);
  auto& b = s.bundle();
  std::vector<std::pair<std::string, std::string>> items;
  auto add = [&](const std::vector<std::string>& names, const char* section) {
    for (const auto& n : names) items.emplace_back(section, n);
  };
  add(o.quantaloids, "quantaloids");
  add(o.categories, "categories");
  add(o.vcats, "vcategories");
  add(o.functors, "functors");
  add(o.relations, "relations");
  add(o.tses, "tses");
  if (items.empty()) {
    for (const auto& sec : io::Bundle::sections()) {
      for (const auto& n : b.names(sec)) items.emplace_back(sec, n);
    }
  }
  Json results = Json::array();
  bool all = true;
  for (const auto& [sec, name] : items) {
    Json r{{"section", sec}, {"name", name}};
    try {
      if (sec == "quantaloids") b.quantaloid(name);
      else if (sec == "categories") b.category(name);
      else if (sec == "vcategories" || sec == "specs") b.vcategory(name);
      else if (sec == "functors") b.functor(name);
      else if (sec == "relations") b.relation(name);
      else if (sec == "tses") b.tse(name);
      else if (sec == "cat_functors") b.cat_functor(name);
      else if (sec == "adjunctions") b.adjunction(name);
      r["verdict"] = "valid";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ValidationError) throw;
      r["verdict"] = "invalid";
      r["violations"] = e.what();
      all = false;
    }
    results.push_back(r);
  }
  return {{"verdict", all ? "valid" : "invalid"}, {"items", results}};
}

Json run_largest(Session& s, const Options& o) {
  s.load(true);
  auto a = s.bundle().vcategory(need(o.a, "--a"));
  auto b = s.bundle().vcategory(need(o.b, "--b"));
  const auto r = o.simulation ? largest_simulation(a, b) : largest_bisimulation(a, b);
  return {{"verdict", verdict_of(!r.relation.empty())},
          {"relation", o.simulation ? "simulation" : "bisimulation"},
          {"pairs", s.pairs(r.relation)},
          {"rounds", r.rounds},
          {"trace", s.trace(r)}};
}

Json run_check(Session& s, const Options& o) {
  s.load(true);
  const auto r = s.bundle().relation(need(o.relation, "--relation"));
  const auto c = o.simulation ? check_simulation(r) : check_bisimulation(r);
  Json out{{"verdict", verdict_of(c.holds)}, {"relation", o.relation}, {"property", o.simulation ? "simulation" : "bisimulation"}};
  if (c.counterexample) out["counterexample"] = s.counterexample(r, *c.counterexample);
  return out;
}

Json unmatched(const SimRelation& r, bool left_side) {
  Json out = Json::array();
  const auto& side = left_side ? r.left() : r.right();
  const auto& other = left_side ? r.right() : r.left();
  for (std::uint32_t x = 0; x < side->size(); ++x) {
    bool hit = false;
    for (std::uint32_t y = 0; y < other->size() && !hit; ++y) hit = left_side ? r.contains(x, y) : r.contains(y, x);
    if (!hit) out.push_back(side->name(x));
  }
  return out;
}

Json run_simulates(Session& s, const Options& o) {
  s.load(true);
  auto a = s.bundle().vcategory(need(o.a, "--a"));
  auto b = s.bundle().vcategory(need(o.b, "--b"));
  const auto r = largest_simulation(a, b);
  const bool yes = r.relation.total_left();
  return {{"verdict", verdict_of(yes)},
          {"question", o.b + " simulates " + o.a},
          {"pairs", s.pairs(r.relation)},
          {"unmatched", unmatched(r.relation, true)},
          {"trace", s.trace(r)}};
}

Json run_bisimilar(Session& s, const Options& o) {
  s.load(true);
  auto a = s.bundle().vcategory(need(o.a, "--a"));
  auto b = s.bundle().vcategory(need(o.b, "--b"));
  const auto r = largest_bisimulation(a, b);
  const bool yes = r.relation.total_left() && r.relation.total_right();
  Json out{{"verdict", verdict_of(yes)}, {"pairs", s.pairs(r.relation)}, {"rounds", r.rounds}, {"trace", s.trace(r)}};
  if (!yes) {
    out["unmatched_left"] = unmatched(r.relation, true);
    out["unmatched_right"] = unmatched(r.relation, false);
  }
  return out;
}

Json run_od(Session& s, const Options& o) {
  s.load(true);
  const auto f = s.bundle().functor(need(o.functor, "--functor"));
  const auto failure = functional_bisimulation_failure(f);
  const bool surj = f.surjective();
  Json out{{"verdict", verdict_of(!failure && surj)}, {"functional_bisimulation", !failure}, {"surjective", surj}};
  if (failure) {
    out["counterexample"] = {{"pair", {f.source->name(failure->first), f.target->name(failure->second)}},
                             {"detail", "target hom differs from the join over the fiber"}};
  }
  return out;
}

Json run_quotient(Session& s, const Options& o) {
  s.load(true);
  VCatPtr a;
  SimRelation r;
  if (!o.relation.empty()) {
    r = s.bundle().relation(o.relation);
    a = r.left();
  } else {
    a = s.bundle().vcategory(need(o.a, "--a"));
    r = largest_bisimulation(a, a).relation;
  }
  const auto e = equivalence_closure(r);
  const auto q = quotient(e);
  Json blocks = Json::array();
  for (const auto& blk : e.blocks) {
    Json names = Json::array();
    for (auto x : blk) names.push_back(a->name(x));
    blocks.push_back(names);
  }
  return {{"verdict", verdict_of(is_od(q.map))},
          {"blocks", blocks},
          {"quotient", s.vcat(q.category)},
          {"map", s.map(q.map)}};
}

Json run_witness(Session& s, const Options& o, bool cospan) {
  s.load(true);
  auto a = s.bundle().vcategory(need(o.a, "--a"));
  auto b = s.bundle().vcategory(need(o.b, "--b"));
  const auto r = largest_bisimulation(a, b).relation;
  try {
    if (cospan) {
      const auto w = cospan_witness(r);
      return {{"verdict", verdict_of(is_od(w.left) && is_od(w.right))},
              {"apex", s.vcat(w.apex)},
              {"left", s.map(w.left)},
              {"right", s.map(w.right)},
              {"left_od", is_od(w.left)},
              {"right_od", is_od(w.right)}};
    }
    const auto w = span_witness(r);
    return {{"verdict", verdict_of(is_od(w.left) && is_od(w.right))},
            {"apex", s.vcat(w.apex)},
            {"left", s.map(w.left)},
            {"right", s.map(w.right)},
            {"left_od", is_od(w.left)},
            {"right_od", is_od(w.right)}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotBisimilar) throw;
    return {{"verdict", "no"}, {"reason", e.what()}, {"pairs", s.pairs(r)}};
  }
}

Json run_cob_apply(Session& s, const Options& o) {
  s.load(true);
  const auto t = s.bundle().tse(need(o.tse, "--tse"));
  if (!o.functor.empty()) {
    const auto f = s.bundle().functor(o.functor);
    const auto g = apply_cob(*t, f);
    const bool od_before = is_od(f);
    const bool od_after = is_od(g);
    return {{"verdict", verdict_of(!od_before || od_after)},
            {"source", s.vcat(g.source)},
            {"target", s.vcat(g.target)},
            {"map", s.map(g)},
            {"od_before", od_before},
            {"od_after", od_after}};
  }
  const auto a = apply_cob(*t, s.bundle().vcategory(need(o.a, "--a or --functor")));
  const auto rep = validate_vcategory(*a);
  return {{"verdict", rep.ok() ? "valid" : "invalid"}, {"image", s.vcat(a)}};
}

Json run_cob_radjoint(Session& s, const Options& o) {
  s.load(true);
  const auto t = s.bundle().tse(need(o.tse, "--tse"));
  const auto g = local_right_adjoints(*t);
  Json out{{"unit_coherent", g.unit_coherent},
           {"composition_coherent", g.composition_coherent},
           {"left_leg_bijective", g.bijective}};
  if (!g.coherent()) {
    out["verdict"] = "invalid";
    out["report"] = g.report.summary();
    return out;
  }
  const auto b = right_adjoint_cob(*t, g, s.bundle().vcategory(need(o.b, "--b")));
  const auto rep = validate_vcategory(*b);
  out["verdict"] = rep.ok() ? "valid" : "invalid";
  out["image"] = s.vcat(b);
  return out;
}

QuantaloidPtr axiom_base(Session& s, const std::string& name) {
  auto& b = s.bundle();
  if (b.has("quantaloids", name)) return b.quantaloid(name);
  if (name == "Q2") return quantaloids::boolean();
  if (name == "QL") return quantaloids::language({"m"}, 2);
  if (name == "M3") return quantaloids::metric({0, 1, 2, std::numeric_limits<double>::infinity()});
  fail(ErrorKind::DanglingReference, "no quantaloid named '" + name + "'");
}

Json run_axioms_cmd(Session& s, const Options& o) {
  s.load(false);
  const auto base = axiom_base(s, need(o.base, "--base"));
  const auto results = run_axioms(base, parse_axiom_suite(o.suite), o.seed, o.cases);
  Json rows = Json::array();
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.violations == 0;
    Json row{{"axiom", r.axiom},
             {"cases", r.cases},
             {"hypothesis_held", r.hypothesis_held},
             {"passed", r.hypothesis_held - r.violations},
             {"violations", r.violations},
             {"skipped", r.skipped}};
    if (!r.note.empty()) row["note"] = r.note;
    if (!r.examples.empty()) row["examples"] = r.examples;
    rows.push_back(row);
  }
  return {{"verdict", verdict_of(ok)}, {"base", base->label()}, {"seed", o.seed}, {"results", rows}};
}

Json run_cts_build(Session& s, const Options& o) {
  s.load(true);
  auto& b = s.bundle();
  std::string cat = o.category;
  if (cat.empty() && !o.spec.empty()) cat = b.definition("specs", o.spec).at("category").get<std::string>();
  const auto c = b.crible(need(cat, "--category or --spec"));
  const auto& q = *c->quantaloid();
  const auto rep = validate_quantaloid(q);
  Json homs = Json::array();
  for (std::uint32_t x = 0; x < q.object_count(); ++x) {
    for (std::uint32_t y = 0; y < q.object_count(); ++y) {
      Json names = Json::array();
      for (const auto& e : q.hom(x, y)->elements()) names.push_back(q.hom(x, y)->format(e));
      homs.push_back({{"hom", q.object_name(x) + "," + q.object_name(y)},
                      {"spans", c->spans(x, y).size()},
                      {"cribles", names}});
    }
  }
  Json out{{"verdict", rep.ok() ? "valid" : "invalid"}, {"category", cat}, {"homs", homs}};
  if (!rep.ok()) out["violations"] = rep.summary();
  if (!o.spec.empty()) {
    const auto a = b.vcategory(o.spec);
    out["specification"] = s.vcat(a);
  }
  return out;
}

Json run_cts_refine(Session& s, const Options& o) {
  s.load(true);
  auto& b = s.bundle();
  const auto f = b.cat_functor(need(o.functor, "--functor"));
  const auto& fj = b.definition("cat_functors", o.functor);
  const auto from = b.crible(fj.at("source").get<std::string>());
  const auto to = b.crible(fj.at("target").get<std::string>());
  std::optional<CatAdjunction> adj;
  if (!o.adjunction.empty()) adj = b.adjunction(o.adjunction);
  const auto r = s_functor(f, *from, *to, adj ? &*adj : nullptr);
  Json out{{"local_adjoints", r.adjoints.coherent() ? "coherent" : "incoherent"}};
  if (adj) out["left_adjoints_of_right"] = r.left_of_right.size();
  if (!o.map.empty()) {
    const auto m = b.functor(o.map);
    const auto rm = refine(r, m);
    const bool before = is_od(m), after = is_od(rm);
    out["verdict"] = verdict_of(!before || after);
    out["od_before"] = before;
    out["od_after"] = after;
    out["source"] = s.vcat(rm.source);
    out["target"] = s.vcat(rm.target);
    out["map"] = s.map(rm);
    return out;
  }
  const auto a = refine(r, b.vcategory(need(o.spec, "--spec or --map")));
  const auto rep = validate_vcategory(*a);
  out["verdict"] = rep.ok() ? "valid" : "invalid";
  out["refined"] = s.vcat(a);
  return out;
}

int exit_code(const Json& report) {
  const auto v = report.at("verdict").get<std::string>();
  return v == "yes" || v == "valid" ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* env = std::getenv("QBISIM_FIXTURES")) o.fixtures = env;

  CLI::App app{"Bisimulation and change of base for quantaloid-enriched categories", "qbisim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--fixtures", o.fixtures, "Directory of JSON documents (default: $QBISIM_FIXTURES)");
  app.add_option("--load", o.load, "Extra JSON documents or directories");
  app.add_option("--aut", o.aut, "Import an Aldebaran automaton as NAME=PATH");
  app.add_option("--sigma", o.sigma, "Alphabet for --aut, comma separated");
  app.add_option("--k", o.k, "Word-length truncation for --aut (default 2 x largest state count)");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", o.seed, "Seed for randomized suites");
  app.add_flag("--timing", o.timing, "Add wall-clock time to the report");
  app.add_option("--kernels", o.kernels, "Kernel variant: scalar, avx2 or neon");
  app.add_option("--max-lattice-elements", o.limits.max_lattice_elements, "Cap on explicit lattice sizes");
  app.add_option("--max-enumerate", o.limits.max_enumerate, "Cap on enumerated elements");
  app.add_option("--max-functor-search", o.limits.max_functor_search, "Cap on candidate maps in functor search");
  app.add_option("--max-validation-work", o.limits.max_validation_work, "Tensor evaluations for exhaustive checks");

  auto* validate = app.add_subcommand("validate", "Validate loaded objects (all of them when none is named)");
  validate->add_option("--quantaloid", o.quantaloids);
  validate->add_option("--category", o.categories);
  validate->add_option("--vcat", o.vcats);
  validate->add_option("--functor", o.functors);
  validate->add_option("--relation", o.relations);
  validate->add_option("--tse", o.tses);

  auto pair_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("--a", o.a)->required();
    c->add_option("--b", o.b)->required();
    return c;
  };
  auto* largest = pair_cmd("bisim-largest", "Largest bisimulation (or simulation) between A and B");
  largest->add_flag("--simulation", o.simulation);
  auto* check = app.add_subcommand("bisim-check", "Check that a relation is a bisimulation (or simulation)");
  check->add_option("--relation", o.relation)->required();
  check->add_flag("--simulation", o.simulation);
  pair_cmd("simulates", "Does B simulate A");
  pair_cmd("bisimilar", "Are A and B bisimilar");
  auto* od = app.add_subcommand("od-check", "Is the functor a surjective functional bisimulation");
  od->add_option("--functor", o.functor)->required();
  auto* quot = app.add_subcommand("quotient", "Quotient by a bisimulation equivalence");
  quot->add_option("--a", o.a);
  quot->add_option("--relation", o.relation);
  pair_cmd("cospan", "Od cospan witnessing bisimilarity");
  pair_cmd("span", "Od span witnessing bisimilarity (locally distributive bases)");
  auto* apply = app.add_subcommand("cob-apply", "Change of base along a two-sided enrichment");
  apply->add_option("--tse", o.tse)->required();
  apply->add_option("--a", o.a);
  apply->add_option("--functor", o.functor);
  auto* radj = app.add_subcommand("cob-radjoint", "Right adjoint change of base");
  radj->add_option("--tse", o.tse)->required();
  radj->add_option("--b", o.b)->required();
  auto* ax = app.add_subcommand("axioms", "Randomized check of the axioms for Od");
  ax->add_option("--suite", o.suite);
  ax->add_option("--base", o.base)->required();
  ax->add_option("--cases", o.cases);
  auto* build = app.add_subcommand("cts-build", "Build and validate S(T), optionally a specification over it");
  build->add_option("--category", o.category);
  build->add_option("--spec", o.spec);
  auto* ref = app.add_subcommand("cts-refine", "Refine a specification along a pullback-preserving functor");
  ref->add_option("--functor", o.functor)->required();
  ref->add_option("--spec", o.spec);
  ref->add_option("--map", o.map);
  ref->add_option("--adjunction", o.adjunction);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const Limits saved = limits();
  limits() = o.limits;
  Json report;
  int code = 2;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (!o.kernels.empty() && !kernels::select(o.kernels)) {
      fail(ErrorKind::InvalidArgument, "kernel variant '" + o.kernels + "' is not available");
    }
    Session s(o);
    Json body;
    if (command == "validate") body = run_validate(s, o);
    else if (command == "bisim-largest") body = run_largest(s, o);
    else if (command == "bisim-check") body = run_check(s, o);
    else if (command == "simulates") body = run_simulates(s, o);
    else if (command == "bisimilar") body = run_bisimilar(s, o);
    else if (command == "od-check") body = run_od(s, o);
    else if (command == "quotient") body = run_quotient(s, o);
    else if (command == "cospan") body = run_witness(s, o, true);
    else if (command == "span") body = run_witness(s, o, false);
    else if (command == "cob-apply") body = run_cob_apply(s, o);
    else if (command == "cob-radjoint") body = run_cob_radjoint(s, o);
    else if (command == "axioms") body = run_axioms_cmd(s, o);
    else if (command == "cts-build") body = run_cts_build(s, o);
    else if (command == "cts-refine") body = run_cts_refine(s, o);
    report = Json{{"schema", kSchema}, {"command", command}};
    report.update(body);
    if (!s.aut_note_.empty()) report["note"] = s.aut_note_;
    code = exit_code(report);
  } catch (const Error& e) {
    report = Json{{"schema", kSchema},
                  {"command", command},
                  {"verdict", "error"},
                  {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    err << "error: " << e.what() << "\n";
    code = 2;
  } catch (const std::exception& e) {
    report = Json{{"schema", kSchema}, {"command", command}, {"verdict", "error"},
                  {"error", {{"kind", "InternalAssertion"}, {"message", e.what()}}}};
    err << "error: " << e.what() << "\n";
    code = 2;
  }
  limits() = saved;
  if (o.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["elapsed_ms"] = ms;
  }
  if (o.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    render_text(report, out, 0);
  }
  return code;
}

}  // namespace qbisim
