#include "qbisim/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <regex>
#include <sstream>

#include "qbisim/limits.hpp"

namespace qbisim::io {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  fail(ErrorKind::ParseError, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) parse_fail(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) parse_fail(where, "expected a string, got " + j.dump());
  return j.get<std::string>();
}

std::string text_field(const Json& j, const char* key, const std::string& where) {
  return text(field(j, key, where), where + "." + key);
}

std::uint64_t count(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    parse_fail(where, "expected a non-negative integer, got " + j.dump());
  }
  return j.get<std::uint64_t>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array");
  return j;
}

// Splits "a,b" or "a,b,c" into names accepted by `ok`, trying every comma so
// that names may contain commas themselves.
std::vector<std::string> split_key(const std::string& key, std::size_t parts,
                                   const std::function<bool(std::size_t, const std::string&)>& ok,
                                   std::size_t slot = 0) {
  if (parts == 1) {
    if (ok(slot, key)) return {key};
    return {};
  }
  for (std::size_t c = key.find(','); c != std::string::npos; c = key.find(',', c + 1)) {
    std::string head = key.substr(0, c);
    if (!ok(slot, head)) continue;
    auto rest = split_key(key.substr(c + 1), parts - 1, ok, slot + 1);
    if (!rest.empty()) {
      rest.insert(rest.begin(), head);
      return rest;
    }
  }
  return {};
}


std::uint32_t object_of(const Quantaloid& q, const std::string& name, const std::string& where) {
  auto u = q.find_object(name);
  if (!u) fail(ErrorKind::DanglingReference, where + ": no object '" + name + "' in " + q.label());
  return *u;
}

std::uint32_t cat_object(const FiniteCategory& c, const std::string& name, const std::string& where) {
  auto o = c.find_object(name);
  if (!o) fail(ErrorKind::DanglingReference, where + ": no object '" + name + "'");
  return *o;
}

std::uint32_t cat_morphism(const FiniteCategory& c, const std::string& name, const std::string& where) {
  auto m = c.find_morphism(name);
  if (!m) fail(ErrorKind::DanglingReference, where + ": no morphism '" + name + "'");
  return *m;
}

std::uint32_t vobject(const VCategory& a, const std::string& name, const std::string& where) {
  auto o = a.find(name);
  if (!o) fail(ErrorKind::DanglingReference, where + ": no object '" + name + "'");
  return *o;
}

// Map given as {"x": "y"} or ["y0", "y1", ...] over source names.
std::vector<std::string> name_map(const Json& j, const std::vector<std::string>& source, const std::string& where) {
  std::vector<std::string> out;
  if (j.is_array()) {
    if (j.size() != source.size()) parse_fail(where, "map has " + std::to_string(j.size()) + " entries, expected " +
                                                         std::to_string(source.size()));
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(text(j[i], where));
    return out;
  }
  if (!j.is_object()) parse_fail(where, "expected an object or array map");
  for (const auto& [k, v] : j.items()) {
    if (std::find(source.begin(), source.end(), k) == source.end()) {
      fail(ErrorKind::DanglingReference, where + ": no source object '" + k + "'");
    }
  }
  for (const auto& s : source) {
    if (!j.contains(s)) parse_fail(where, "no image for '" + s + "'");
    out.push_back(text(j.at(s), where + "." + s));
  }
  return out;
}

// Absent lists read as empty.
Json optional_list(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) return Json::array();
  if (!j.at(key).is_array()) parse_fail(where, std::string("'") + key + "' must be a list");
  return j.at(key);
}

void require_valid(const Report& r, const std::string& where) {
  if (!r.ok()) fail(ErrorKind::ValidationError, where + ": " + r.summary());
}

Span parse_span(const FiniteCategory& t, const Json& j, std::uint32_t x, std::uint32_t y, const std::string& where) {
  const std::uint32_t apex = cat_object(t, text_field(j, "apex", where), where);
  auto leg = [&](const char* key, std::uint32_t end) {
    if (j.contains(key)) return cat_morphism(t, text(j.at(key), where), where);
    const auto& h = t.hom(apex, end);
    if (h.size() != 1) parse_fail(where, std::string("'") + key + "' is needed: the leg is not unique");
    return h.front();
  };
  Span s{apex, leg("left", x), leg("right", y)};
  check_span(t, s);
  if (span_source(t, s) != x || span_target(t, s) != y) {
    fail(ErrorKind::TypeMismatch, where + ": span does not connect the state types");
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Elements and lattices

Elem parse_element(const Lattice& l, const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (l.is_powerset()) {
      if (s == "top") return l.top();
      if (s == "bottom") return l.bottom();
      parse_fail("element", "powerset elements are lists of atoms, got " + j.dump());
    }
    if (auto i = l.find(s)) return Elem::at(*i);
    if (s == "top") return l.top();
    if (s == "bottom") return l.bottom();
    fail(ErrorKind::UnknownElement, "no element '" + s + "'");
  }
  if (j.is_number()) {
    if (l.is_powerset()) parse_fail("element", "powerset elements are lists of atoms, got " + j.dump());
    const double x = j.get<double>();
    for (std::uint32_t i = 0; i < l.names().size(); ++i) {
      const auto& n = l.names()[i];
      char* end = nullptr;
      const double v = std::strtod(n.c_str(), &end);
      if (end != n.c_str() && *end == '\0' && std::abs(v - x) <= 1e-9) return Elem::at(i);
    }
    fail(ErrorKind::UnknownElement, "no element " + j.dump());
  }
  if (j.is_array()) {
    if (!l.is_powerset()) parse_fail("element", "a list names a subset, but the lattice is not a powerset");
    std::vector<std::size_t> atoms;
    for (const auto& a : j) {
      auto i = l.find(text(a, "element"));
      if (!i) fail(ErrorKind::UnknownElement, "no atom '" + a.get<std::string>() + "'");
      atoms.push_back(*i);
    }
    return l.subset(atoms);
  }
  parse_fail("element", "cannot read " + j.dump());
}

Json element_json(const Lattice& l, const Elem& e) {
  if (!l.is_powerset()) return l.names()[e.index()];
  Json out = Json::array();
  e.bits().for_each([&](std::size_t i) { out.push_back(l.names()[i].empty() ? "ε" : l.names()[i]); });
  return out;
}

LatticePtr parse_lattice(const Json& j) {
  OrderSpec spec;
  for (const auto& n : array(field(j, "elements", "lattice"), "lattice.elements")) {
    spec.names.push_back(text(n, "lattice.elements"));
  }
  if (j.contains("leq")) {
    for (const auto& p : array(j.at("leq"), "lattice.leq")) {
      if (!p.is_array() || p.size() != 2) parse_fail("lattice.leq", "pairs are [i, j], got " + p.dump());
      auto index = [&](const Json& x) -> std::uint32_t {
        if (x.is_string()) {
          auto it = std::find(spec.names.begin(), spec.names.end(), x.get<std::string>());
          if (it == spec.names.end()) fail(ErrorKind::ValidationError, "leq pair " + p.dump() + " names a missing element");
          return static_cast<std::uint32_t>(it - spec.names.begin());
        }
        return static_cast<std::uint32_t>(count(x, "lattice.leq"));
      };
      spec.leq.emplace_back(index(p[0]), index(p[1]));
    }
  }
  return Lattice::from_order(spec);
}

Json lattice_json(const Lattice& l) {
  if (l.is_powerset()) {
    Json out;
    Json names = Json::array();
    for (const auto& e : l.elements()) names.push_back(l.format(e));
    out["elements"] = names;
    Json leq = Json::array();
    const auto els = l.elements();
    for (std::uint32_t i = 0; i < els.size(); ++i) {
      for (std::uint32_t k = 0; k < els.size(); ++k) {
        if (i != k && l.leq(els[i], els[k])) leq.push_back({i, k});
      }
    }
    out["leq"] = leq;
    return out;
  }
  const auto spec = l.order_spec();
  Json out;
  out["elements"] = spec.names;
  Json leq = Json::array();
  for (auto [i, k] : spec.leq) leq.push_back({i, k});
  out["leq"] = leq;
  return out;
}

// ---------------------------------------------------------------------------
// Bundle bookkeeping

const std::vector<std::string>& Bundle::sections() {
  static const std::vector<std::string> s = {"quantaloids", "categories", "vcategories", "functors", "relations",
                                             "tses", "cat_functors", "adjunctions", "specs"};
  return s;
}

void Bundle::add_document(const Json& doc, const std::string& origin) {
  if (!doc.is_object()) parse_fail(origin, "a document is a JSON object");
  for (const auto& [key, body] : doc.items()) {
    if (key == "schema" || key == "comment") continue;
    const auto& known = sections();
    if (std::find(known.begin(), known.end(), key) == known.end()) parse_fail(origin, "unknown section '" + key + "'");
    if (!body.is_object()) parse_fail(origin, "section '" + key + "' must map names to definitions");
    for (const auto& [name, def] : body.items()) {
      auto& sec = defs_[key];
      if (sec.count(name)) {
        parse_fail(origin, key + " '" + name + "' is already defined in " + sec.at(name).origin);
      }
      sec[name] = Entry{def, origin};
    }
  }
}

void Bundle::add_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail(path.string(), "cannot read");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(path.string(), e.what());
  }
  add_document(doc, path.string());
}

void Bundle::add_directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(dir, ec)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  if (ec) parse_fail(dir.string(), ec.message());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) add_file(f);
}

bool Bundle::has(const std::string& section, const std::string& name) const {
  auto it = defs_.find(section);
  return it != defs_.end() && it->second.count(name) != 0;
}

std::vector<std::string> Bundle::names(const std::string& section) const {
  std::vector<std::string> out;
  if (auto it = defs_.find(section); it != defs_.end()) {
    for (const auto& [n, e] : it->second) out.push_back(n);
  }
  if (section == "vcategories") {
    for (const auto& [n, a] : vcategories_) {
      if (!has(section, n) && !has("specs", n)) out.push_back(n);
    }
    std::sort(out.begin(), out.end());
  }
  return out;
}

const Bundle::Entry& Bundle::entry(const std::string& section, const std::string& name) const {
  auto it = defs_.find(section);
  if (it == defs_.end() || !it->second.count(name)) {
    fail(ErrorKind::DanglingReference, "no " + section + " entry named '" + name + "'");
  }
  return it->second.at(name);
}

const Json& Bundle::definition(const std::string& section, const std::string& name) const {
  return entry(section, name).json;
}

void Bundle::enter(const std::string& key) {
  if (!resolving_.insert(key).second) fail(ErrorKind::DanglingReference, "cyclic reference through " + key);
}

void Bundle::leave(const std::string& key) { resolving_.erase(key); }

namespace {

// Runs `build` with cycle tracking and prefixes errors with the location.
template <typename T, typename Bundle, typename F>
T resolve(Bundle& b, std::map<std::string, T>& cache, const std::string& section, const std::string& name,
          void (Bundle::*enter)(const std::string&), void (Bundle::*leave)(const std::string&), F build) {
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  const std::string key = section + "/" + name;
  (b.*enter)(key);
  try {
    T value = build();
    (b.*leave)(key);
    cache.emplace(name, value);
    return value;
  } catch (...) {
    (b.*leave)(key);
    throw;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Quantaloids

QuantaloidPtr Bundle::quantaloid(const std::string& name) {
  if (!has("quantaloids", name) && name.starts_with("S(") && name.ends_with(")")) {
    const auto cat = name.substr(2, name.size() - 3);
    if (has("categories", cat)) return crible(cat)->quantaloid();
  }
  if (!has("quantaloids", name)) {
    for (const char* side : {".source", ".target"}) {
      const std::string suffix = side;
      if (name.size() > suffix.size() && name.ends_with(suffix)) {
        const auto t = name.substr(0, name.size() - suffix.size());
        if (has("tses", t)) return suffix == ".source" ? tse(t)->source() : tse(t)->target();
      }
    }
  }
  const auto& e = entry("quantaloids", name);
  return resolve(*this, quantaloids_, "quantaloids", name, &Bundle::enter, &Bundle::leave, [&] {
    auto q = build_quantaloid(e.origin + ": quantaloid '" + name + "'", e.json);
    require_valid(validate_quantaloid(*q), e.origin + ": quantaloid '" + name + "'");
    return q;
  });
}

QuantaloidPtr Bundle::build_quantaloid(const std::string& where, const Json& j) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  if (j.contains("kind")) {
    const auto kind = text(j.at("kind"), where + ".kind");
    if (kind == "boolean") return quantaloids::boolean();
    if (kind == "unit") return quantaloids::unit_base();
    if (kind == "language") {
      std::vector<std::string> sigma;
      for (const auto& a : array(field(j, "alphabet", where), where + ".alphabet")) sigma.push_back(text(a, where));
      return quantaloids::language(sigma, count(field(j, "k", where), where + ".k"));
    }
    if (kind == "metric") {
      std::vector<double> grid;
      for (const auto& g : array(field(j, "grid", where), where + ".grid")) {
        if (g.is_string() && (g == "inf" || g == "∞")) {
          grid.push_back(std::numeric_limits<double>::infinity());
        } else if (g.is_number()) {
          grid.push_back(g.get<double>());
        } else {
          parse_fail(where, "grid values are numbers or \"inf\"");
        }
      }
      return quantaloids::metric(grid);
    }
    if (kind == "rel") {
      std::vector<std::vector<std::string>> sets;
      for (const auto& s : array(field(j, "sets", where), where + ".sets")) {
        std::vector<std::string> set;
        for (const auto& x : array(s, where + ".sets")) set.push_back(text(x, where + ".sets"));
        sets.push_back(set);
      }
      std::vector<std::string> names;
      if (j.contains("names")) {
        for (const auto& n : array(j.at("names"), where + ".names")) names.push_back(text(n, where + ".names"));
      }
      return quantaloids::rel(sets, names);
    }
    if (kind == "powerset") return quantaloids::powerset_of(category(text_field(j, "category", where)));
    if (kind == "crible") return crible(text_field(j, "category", where))->quantaloid();
    parse_fail(where, "unknown quantaloid kind '" + kind + "'");
  }

  Quantaloid::Data d;
  d.kind = Quantaloid::Kind::explicit_tables;
  d.label = j.value("label", std::string("Q"));
  for (const auto& o : array(field(j, "objects", where), where + ".objects")) d.objects.push_back(text(o, where));
  const std::size_t n = d.objects.size();
  if (n == 0) parse_fail(where, "a quantaloid needs an object");
  auto obj = [&](std::size_t, const std::string& s) {
    return std::find(d.objects.begin(), d.objects.end(), s) != d.objects.end();
  };
  auto index = [&](const std::string& s) {
    return static_cast<std::uint32_t>(std::find(d.objects.begin(), d.objects.end(), s) - d.objects.begin());
  };
  d.homs.assign(n * n, nullptr);
  for (const auto& [key, lat] : field(j, "homs", where).items()) {
    auto parts = split_key(key, 2, obj);
    if (parts.empty()) fail(ErrorKind::DanglingReference, where + ": hom key '" + key + "' names missing objects");
    try {
      d.homs[index(parts[0]) * n + index(parts[1])] = parse_lattice(lat);
    } catch (const Error& e) {
      fail(e.kind(), where + ".homs." + key + ": " + e.what());
    }
  }
  for (std::size_t i = 0; i < n * n; ++i) {
    if (!d.homs[i]) parse_fail(where, "hom " + d.objects[i / n] + "," + d.objects[i % n] + " is missing");
    if (d.homs[i]->is_powerset()) parse_fail(where, "explicit homs must be ordered element lists");
  }
  auto tensor = std::make_shared<DenseTensor>(n);
  std::vector<bool> seen(n * n * n, false);
  for (const auto& [key, rows] : field(j, "tensor", where).items()) {
    auto parts = split_key(key, 3, obj);
    if (parts.empty()) fail(ErrorKind::DanglingReference, where + ": tensor key '" + key + "' names missing objects");
    const auto u = index(parts[0]), v = index(parts[1]), w = index(parts[2]);
    const std::size_t a = d.homs[u * n + v]->width(), b = d.homs[v * n + w]->width(), c = d.homs[u * n + w]->width();
    if (!rows.is_array() || rows.size() != a) parse_fail(where + ".tensor." + key, "expected " + std::to_string(a) + " rows");
    std::vector<std::uint32_t> table;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != b) {
        parse_fail(where + ".tensor." + key, "expected rows of " + std::to_string(b) + " entries");
      }
      for (const auto& k : row) {
        const auto x = count(k, where + ".tensor." + key);
        if (x >= c) fail(ErrorKind::ValidationError, where + ".tensor." + key + ": entry " + std::to_string(x) + " out of range");
        table.push_back(static_cast<std::uint32_t>(x));
      }
    }
    tensor->set(u, v, w, std::move(table));
    seen[(u * n + v) * n + w] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      parse_fail(where, "tensor " + d.objects[i / (n * n)] + "," + d.objects[(i / n) % n] + "," + d.objects[i % n] +
                            " is missing");
    }
  }
  d.tensor = tensor;
  const auto& ids = field(j, "id", where);
  for (std::uint32_t u = 0; u < n; ++u) {
    if (!ids.contains(d.objects[u])) parse_fail(where, "no identity for " + d.objects[u]);
    const auto& x = ids.at(d.objects[u]);
    if (x.is_string()) {
      d.ids.push_back(parse_element(*d.homs[u * n + u], x));
    } else {
      const auto i = count(x, where + ".id");
      if (i >= d.homs[u * n + u]->width()) fail(ErrorKind::ValidationError, where + ": identity index out of range");
      d.ids.push_back(Elem::at(static_cast<std::uint32_t>(i)));
    }
  }
  return Quantaloid::make(std::move(d));
}

CriblePtr Bundle::crible(const std::string& cat) {
  if (auto it = cribles_.find(cat); it != cribles_.end()) return it->second;
  auto s = build_S_quantaloid(category(cat));
  cribles_.emplace(cat, s);
  return s;
}

// ---------------------------------------------------------------------------
// Categories

FinCatPtr Bundle::category(const std::string& name) {
  const auto& e = entry("categories", name);
  return resolve(*this, categories_, "categories", name, &Bundle::enter, &Bundle::leave, [&] {
    const std::string where = e.origin + ": category '" + name + "'";
    FinCatPtr c;
    try {
      c = build_category(e.json);
    } catch (const Error& err) {
      fail(err.kind(), where + ": " + err.what());
    }
    require_valid(validate_fincat(*c), where);
    return c;
  });
}

FinCatPtr Bundle::build_category(const Json& j) {
  const std::string where = "category";
  if (j.contains("kind")) {
    const auto kind = text(j.at("kind"), where);
    if (kind == "chain") return std::make_shared<const FiniteCategory>(FiniteCategory::chain(count(field(j, "n", where), where)));
    if (kind == "poset") {
      std::vector<std::string> names;
      for (const auto& o : array(field(j, "objects", where), where)) names.push_back(text(o, where));
      std::vector<std::pair<std::uint32_t, std::uint32_t>> leq;
      auto idx = [&](const Json& x) {
        auto it = std::find(names.begin(), names.end(), text(x, where));
        if (it == names.end()) fail(ErrorKind::DanglingReference, "no object " + x.dump());
        return static_cast<std::uint32_t>(it - names.begin());
      };
      for (const auto& p : optional_list(j, "leq", where)) {
        if (!p.is_array() || p.size() != 2) parse_fail(where, "leq pairs are [x, y]");
        leq.emplace_back(idx(p[0]), idx(p[1]));
      }
      return std::make_shared<const FiniteCategory>(FiniteCategory::poset(names, leq));
    }
    parse_fail(where, "unknown category kind '" + kind + "'");
  }
  FiniteCategory::Spec spec;
  for (const auto& o : array(field(j, "objects", where), where)) spec.objects.push_back(text(o, where));
  auto obj = [&](const Json& x) {
    auto it = std::find(spec.objects.begin(), spec.objects.end(), text(x, where));
    if (it == spec.objects.end()) fail(ErrorKind::DanglingReference, "no object " + x.dump());
    return static_cast<std::uint32_t>(it - spec.objects.begin());
  };
  for (const auto& m : array(field(j, "morphisms", where), where)) {
    spec.morphisms.push_back({text_field(m, "name", where), obj(field(m, "source", where)), obj(field(m, "target", where))});
  }
  auto mor = [&](const Json& x) {
    const auto s = text(x, where);
    for (std::uint32_t i = 0; i < spec.morphisms.size(); ++i) {
      if (spec.morphisms[i].name == s) return i;
    }
    fail(ErrorKind::DanglingReference, "no morphism '" + s + "'");
  };
  const auto& ids = field(j, "identities", where);
  for (const auto& o : spec.objects) {
    if (!ids.contains(o)) parse_fail(where, "no identity for " + o);
    spec.identities.push_back(mor(ids.at(o)));
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> listed;
  for (const auto& t : optional_list(j, "compose", where)) {
    if (!t.is_array() || t.size() != 3) parse_fail(where, "compose entries are [f, g, f;g]");
    spec.compose.push_back({mor(t[0]), mor(t[1]), mor(t[2])});
    listed.insert({mor(t[0]), mor(t[1])});
  }
  // Identity laws need not be listed.
  for (std::uint32_t f = 0; f < spec.morphisms.size(); ++f) {
    const auto s = spec.identities[spec.morphisms[f].source];
    const auto t = spec.identities[spec.morphisms[f].target];
    if (!listed.count({s, f})) spec.compose.push_back({s, f, f});
    listed.insert({s, f});
    if (!listed.count({f, t})) spec.compose.push_back({f, t, f});
    listed.insert({f, t});
  }
  for (const auto& p : optional_list(j, "pullbacks", where)) {
    const auto& cs = field(p, "cospan", where);
    if (!cs.is_array() || cs.size() != 2) parse_fail(where, "cospan is [f, g]");
    spec.pullbacks.push_back(
        {{mor(cs[0]), mor(cs[1])}, {obj(field(p, "apex", where)), mor(field(p, "left", where)), mor(field(p, "right", where))}});
  }
  return std::make_shared<const FiniteCategory>(spec);
}

// ---------------------------------------------------------------------------
// V-categories, functors, relations

void Bundle::put_vcategory(const std::string& name, VCatPtr a) {
  if (has("vcategories", name) || has("specs", name) || vcategories_.count(name)) {
    parse_fail(name, "a V-category with this name already exists");
  }
  vcategories_[name] = std::move(a);
}

VCatPtr Bundle::vcategory(const std::string& name) {
  if (!has("vcategories", name) && has("specs", name)) {
    return resolve(*this, vcategories_, "vcategories", name, &Bundle::enter, &Bundle::leave, [&] {
      const auto& e = entry("specs", name);
      auto s = spec(name);
      auto a = cts_to_vcat(*crible(text_field(e.json, "category", name)), s);
      require_valid(validate_vcategory(*a), e.origin + ": spec '" + name + "'");
      return a;
    });
  }
  if (auto it = vcategories_.find(name); it != vcategories_.end()) return it->second;
  const auto& e = entry("vcategories", name);
  return resolve(*this, vcategories_, "vcategories", name, &Bundle::enter, &Bundle::leave, [&] {
    const std::string where = e.origin + ": vcategory '" + name + "'";
    VCatPtr a;
    try {
      a = build_vcategory(e.json);
    } catch (const Error& err) {
      fail(err.kind(), where + ": " + err.what());
    }
    require_valid(validate_vcategory(*a), where);
    return a;
  });
}

VCatPtr Bundle::build_vcategory(const Json& j) {
  const std::string where = "vcategory";
  const auto& base_ref = field(j, "base", where);
  QuantaloidPtr base;
  if (base_ref.is_string()) {
    base = quantaloid(base_ref.get<std::string>());
  } else {
    // Inline shorthand, shared between equal documents.
    const std::string key = "inline:" + base_ref.dump();
    if (auto it = quantaloids_.find(key); it != quantaloids_.end()) {
      base = it->second;
    } else {
      base = build_quantaloid(where + ".base", base_ref);
      require_valid(validate_quantaloid(*base), where + ".base");
      quantaloids_.emplace(key, base);
    }
  }
  const bool graph = j.contains("vertices");
  const Json& objs = graph ? j.at("vertices") : field(j, "objects", where);
  std::vector<std::string> names;
  std::vector<std::uint32_t> extents;
  for (const auto& o : array(objs, where)) {
    if (o.is_string()) {
      names.push_back(o.get<std::string>());
    } else {
      names.push_back(text_field(o, "name", where));
    }
    if (o.is_object() && o.contains("extent")) {
      extents.push_back(object_of(*base, text(o.at("extent"), where), where));
    } else if (base->object_count() == 1) {
      extents.push_back(0);
    } else {
      parse_fail(where, "object '" + names.back() + "' needs an extent");
    }
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (names[i] == names[k]) parse_fail(where, "duplicate object '" + names[i] + "'");
    }
  }
  auto idx = [&](const std::string& s) -> std::uint32_t {
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) fail(ErrorKind::DanglingReference, "no object '" + s + "'");
    return static_cast<std::uint32_t>(it - names.begin());
  };
  if (graph) {
    Graph g;
    for (std::size_t i = 0; i < names.size(); ++i) g.vertices.push_back({names[i], extents[i]});
    for (const auto& e : optional_list(j, "edges", where)) {
      const auto s = idx(text_field(e, "src", where));
      const auto t = idx(text_field(e, "tgt", where));
      g.edges.push_back({s, t, parse_element(*base->hom(extents[s], extents[t]), field(e, "label", where))});
    }
    return free_vcategory(base, g);
  }
  auto a = std::make_shared<VCategory>(base, names, extents);
  if (j.contains("homs")) {
    auto ok = [&](std::size_t, const std::string& s) {
      return std::find(names.begin(), names.end(), s) != names.end();
    };
    for (const auto& [key, value] : j.at("homs").items()) {
      auto parts = split_key(key, 2, ok);
      if (parts.empty()) fail(ErrorKind::DanglingReference, "hom key '" + key + "' names missing objects");
      const auto x = idx(parts[0]), y = idx(parts[1]);
      try {
        a->set_hom(x, y, parse_element(a->lattice(x, y), value));
      } catch (const Error& err) {
        fail(err.kind(), "hom " + key + ": " + err.what());
      }
    }
  }
  return a;
}

VFunctor Bundle::functor(const std::string& name) {
  const auto& e = entry("functors", name);
  return resolve(*this, functors_, "functors", name, &Bundle::enter, &Bundle::leave, [&] {
    const std::string where = e.origin + ": functor '" + name + "'";
    VFunctor f;
    try {
      f = build_functor(e.json);
    } catch (const Error& err) {
      fail(err.kind(), where + ": " + err.what());
    }
    require_valid(validate_vfunctor(f), where);
    return f;
  });
}

VFunctor Bundle::build_functor(const Json& j) {
  const std::string where = "functor";
  VFunctor f;
  f.source = vcategory(text_field(j, "source", where));
  f.target = vcategory(text_field(j, "target", where));
  for (const auto& b : name_map(field(j, "map", where), f.source->names(), where + ".map")) {
    f.map.push_back(vobject(*f.target, b, where));
  }
  return f;
}

SimRelation Bundle::relation(const std::string& name) {
  const auto& e = entry("relations", name);
  return resolve(*this, relations_, "relations", name, &Bundle::enter, &Bundle::leave, [&] {
    const std::string where = e.origin + ": relation '" + name + "'";
    try {
      auto left = vcategory(text_field(e.json, "left", where));
      auto right = vcategory(text_field(e.json, "right", where));
      std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
      for (const auto& p : array(field(e.json, "pairs", where), where)) {
        if (!p.is_array() || p.size() != 2) parse_fail(where, "pairs are [a, b]");
        pairs.emplace_back(vobject(*left, text(p[0], where), where), vobject(*right, text(p[1], where), where));
      }
      return SimRelation::from_pairs(left, right, pairs);
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::TypeMismatch) fail(ErrorKind::ValidationError, where + ": " + err.what());
      throw;
    }
  });
}

// ---------------------------------------------------------------------------
// Two-sided enrichments

TsePtr Bundle::tse(const std::string& name) {
  const auto& e = entry("tses", name);
  return resolve(*this, tses_, "tses", name, &Bundle::enter, &Bundle::leave, [&] {
    const std::string where = e.origin + ": tse '" + name + "'";
    TsePtr t;
    try {
      t = build_tse(name, e.json);
    } catch (const Error& err) {
      fail(err.kind(), where + ": " + err.what());
    }
    require_valid(validate_tse(*t), where);
    return t;
  });
}

TsePtr Bundle::build_tse(const std::string& name, const Json& j) {
  const std::string where = "tse";
  if (j.contains("kind")) {
    const auto kind = text(j.at("kind"), where);
    if (kind == "identity") return identity_tse(quantaloid(text_field(j, "base", where)));
    if (kind == "compose") return compose_tse(*tse(text_field(j, "first", where)), *tse(text_field(j, "second", where)));
    if (kind == "relabel" || kind == "monoid-congruence") {
      auto from = quantaloid(text_field(j, "source", where));
      auto to = quantaloid(text_field(j, "target", where));
      if (!from->words() || !to->words()) parse_fail(where, kind + " needs language quantales");
      MonoidCongruence r;
      if (kind == "relabel") {
        std::vector<std::string> image;
        for (const auto& x : array(field(j, "image", where), where)) image.push_back(text(x, where));
        r = MonoidCongruence::graph(from, to, image);
        if (j.value("inverse", false)) r = r.inverse();
      } else {
        r.from = from;
        r.to = to;
        auto word = [&](const WordIndex& w, const Json& x) {
          auto letters = w.parse(text(x, where));
          auto i = letters ? w.index(*letters) : std::nullopt;
          if (!i) fail(ErrorKind::UnknownElement, "word " + x.dump() + " is not in the truncated language");
          return *i;
        };
        for (const auto& p : array(field(j, "pairs", where), where)) {
          if (!p.is_array() || p.size() != 2) parse_fail(where, "pairs are [m, n]");
          r.pairs.emplace_back(word(*from->words(), p[0]), word(*to->words(), p[1]));
        }
        std::sort(r.pairs.begin(), r.pairs.end());
        r.pairs.erase(std::unique(r.pairs.begin(), r.pairs.end()), r.pairs.end());
      }
      return monoid_congruence_tse(r).tse;
    }
    if (kind == "exists" || kind == "inverse") {
      const auto f = cat_functor(text_field(j, "functor", where));
      auto r = kind == "exists" ? CategoryCongruence::exists(f) : CategoryCongruence::inverse(f);
      QuantaloidPtr from = j.contains("source") ? quantaloid(text(j.at("source"), where)) : nullptr;
      QuantaloidPtr to = j.contains("target") ? quantaloid(text(j.at("target"), where)) : nullptr;
      return category_congruence_tse(r, from, to).tse;
    }
    if (kind == "slice-change") return slice_change(functor(text_field(j, "functor", where))).tse;
    if (kind == "s-functor") {
      const auto& fj = definition("cat_functors", text_field(j, "functor", where));
      const auto f = cat_functor(text_field(j, "functor", where));
      return s_functor(f, *crible(text_field(fj, "source", where)), *crible(text_field(fj, "target", where))).tse;
    }
    parse_fail(where, "unknown tse kind '" + kind + "'");
  }
  (void)name;
  auto source = quantaloid(text_field(j, "source", where));
  auto target = quantaloid(text_field(j, "target", where));
  std::vector<Carrier> carriers;
  for (const auto& c : array(field(j, "carriers", where), where)) {
    carriers.push_back({text_field(c, "name", where), object_of(*source, text_field(c, "minus", where), where),
                        object_of(*target, text_field(c, "plus", where), where)});
  }
  auto t = std::make_shared<TwoSidedEnrichment>(source, target, carriers);
  auto ok = [&](std::size_t, const std::string& s) { return t->find(s).has_value(); };
  if (j.contains("components")) {
    for (const auto& [key, table] : j.at("components").items()) {
      auto parts = split_key(key, 2, ok);
      if (parts.empty()) fail(ErrorKind::DanglingReference, "component key '" + key + "' names missing carriers");
      const auto x = *t->find(parts[0]), y = *t->find(parts[1]);
      const auto& cx = t->carrier(x);
      const auto& cy = t->carrier(y);
      const auto& from = source->hom(cx.minus, cy.minus);
      const auto& to = target->hom(cx.plus, cy.plus);
      if (!table.is_array() || table.size() != from->element_count()) {
        parse_fail(where + ".components." + key, "expected one image per source element (" +
                                                     std::to_string(from->element_count()) + ")");
      }
      std::vector<Elem> images;
      for (const auto& v : table) images.push_back(parse_element(*to, v));
      t->set_component(x, y, MonotoneMap::tabulated(from, to, std::move(images)));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Category functors, adjunctions, specifications

CatFunctor Bundle::cat_functor(const std::string& name) {
  const auto& e = entry("cat_functors", name);
  return resolve(*this, cat_functors_, "cat_functors", name, &Bundle::enter, &Bundle::leave, [&] {
    const std::string where = e.origin + ": cat_functor '" + name + "'";
    CatFunctor f;
    try {
      f = build_cat_functor(e.json);
    } catch (const Error& err) {
      fail(err.kind(), where + ": " + err.what());
    }
    require_valid(validate_cat_functor(f), where);
    return f;
  });
}

CatFunctor Bundle::build_cat_functor(const Json& j) {
  const std::string where = "cat_functor";
  auto source = category(text_field(j, "source", where));
  auto target = category(text_field(j, "target", where));
  std::vector<std::uint32_t> objects;
  for (const auto& y : name_map(field(j, "objects", where), source->object_names(), where + ".objects")) {
    objects.push_back(cat_object(*target, y, where));
  }
  if (!j.contains("morphisms")) return CatFunctor::from_objects(source, target, objects);
  std::vector<std::string> mnames;
  for (std::uint32_t m = 0; m < source->morphism_count(); ++m) mnames.push_back(source->morphism(m).name);
  CatFunctor f;
  f.source = source;
  f.target = target;
  f.on_objects = objects;
  for (const auto& y : name_map(j.at("morphisms"), mnames, where + ".morphisms")) {
    f.on_morphisms.push_back(cat_morphism(*target, y, where));
  }
  return f;
}

CatAdjunction Bundle::adjunction(const std::string& name) {
  const auto& e = entry("adjunctions", name);
  return resolve(*this, adjunctions_, "adjunctions", name, &Bundle::enter, &Bundle::leave, [&] {
    const std::string where = e.origin + ": adjunction '" + name + "'";
    CatAdjunction adj;
    try {
      adj = build_adjunction(e.json);
    } catch (const Error& err) {
      fail(err.kind(), where + ": " + err.what());
    }
    require_valid(validate_cat_adjunction(adj), where);
    return adj;
  });
}

CatAdjunction Bundle::build_adjunction(const Json& j) {
  const std::string where = "adjunction";
  CatAdjunction adj;
  adj.left = cat_functor(text_field(j, "left", where));
  adj.right = cat_functor(text_field(j, "right", where));
  const auto& d = *adj.left.target;
  for (std::uint32_t b = 0; b < d.object_count(); ++b) {
    const auto fgb = adj.left.on_objects[adj.right.on_objects[b]];
    if (j.contains("counit")) {
      const auto& c = j.at("counit");
      if (!c.contains(d.object_name(b))) parse_fail(where, "no counit component at " + d.object_name(b));
      const auto m = cat_morphism(d, text(c.at(d.object_name(b)), where), where);
      adj.counit.push_back(m);
    } else {
      const auto& h = d.hom(fgb, b);
      if (h.size() != 1) parse_fail(where, "counit at " + d.object_name(b) + " is not unique; list it");
      adj.counit.push_back(h.front());
    }
  }
  return adj;
}

CtsSpec Bundle::spec(const std::string& name) {
  const auto& e = entry("specs", name);
  return resolve(*this, specs_, "specs", name, &Bundle::enter, &Bundle::leave, [&] {
    FinCatPtr t;
    try {
      return build_spec(e.json, t);
    } catch (const Error& err) {
      fail(err.kind(), e.origin + ": spec '" + name + "': " + err.what());
    }
  });
}

CtsSpec Bundle::build_spec(const Json& j, FinCatPtr& t) {
  const std::string where = "spec";
  t = category(text_field(j, "category", where));
  CtsSpec s;
  std::vector<std::string> names;
  for (const auto& st : array(field(j, "states", where), where)) {
    s.states.push_back({text_field(st, "name", where), cat_object(*t, text_field(st, "type", where), where)});
    names.push_back(s.states.back().name);
  }
  auto idx = [&](const std::string& n) {
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) fail(ErrorKind::DanglingReference, "no state '" + n + "'");
    return static_cast<std::uint32_t>(it - names.begin());
  };
  for (const auto& tr : optional_list(j, "transitions", where)) {
    const auto a = idx(text_field(tr, "src", where));
    const auto b = idx(text_field(tr, "tgt", where));
    s.transitions.push_back({a, b, parse_span(*t, tr, s.states[a].type, s.states[b].type, where)});
  }
  return s;
}

// ---------------------------------------------------------------------------

void Bundle::resolve_all() {
  for (const auto& n : names("quantaloids")) quantaloid(n);
  for (const auto& n : names("categories")) category(n);
  for (const auto& n : names("cat_functors")) cat_functor(n);
  for (const auto& n : names("adjunctions")) adjunction(n);
  for (const auto& n : names("specs")) vcategory(n);
  for (const auto& n : names("vcategories")) vcategory(n);
  for (const auto& n : names("functors")) functor(n);
  for (const auto& n : names("relations")) relation(n);
  for (const auto& n : names("tses")) tse(n);
}

std::string Bundle::name_of(const QuantaloidPtr& q) const {
  for (const auto& [n, p] : quantaloids_) {
    if (p == q && !n.starts_with("inline:")) return n;
  }
  for (const auto& [n, c] : cribles_) {
    if (c->quantaloid() == q) return "S(" + n + ")";
  }
  for (const auto& [n, t] : tses_) {
    if (t->source() == q) return n + ".source";
    if (t->target() == q) return n + ".target";
  }
  return {};
}

std::string Bundle::name_of(const VCatPtr& a) const {
  for (const auto& [n, p] : vcategories_) {
    if (p == a) return n;
  }
  return {};
}

Json Bundle::serialize() {
  resolve_all();
  Json out;
  out["schema"] = "qbisim.bundle/1";
  auto base_ref = [&](const QuantaloidPtr& q) -> Json {
    auto n = name_of(q);
    if (!n.empty()) return n;
    return quantaloid_json(*q);
  };
  Json qs = Json::object();
  for (const auto& n : names("quantaloids")) {
    const auto& d = definition("quantaloids", n);
    qs[n] = d.contains("kind") ? d : quantaloid_json(*quantaloid(n));
  }
  out["quantaloids"] = qs;
  Json cs = Json::object();
  for (const auto& n : names("categories")) {
    const auto& d = definition("categories", n);
    cs[n] = d.contains("kind") ? d : category_json(*category(n));
  }
  out["categories"] = cs;
  Json vs = Json::object();
  for (const auto& n : names("vcategories")) {
    auto a = vcategory(n);
    Json j = vcategory_json(*a, "");
    j["base"] = base_ref(a->base());
    vs[n] = j;
  }
  out["vcategories"] = vs;
  Json fs = Json::object();
  for (const auto& n : names("functors")) {
    const auto& d = definition("functors", n);
    fs[n] = functor_json(functor(n), d.at("source").get<std::string>(), d.at("target").get<std::string>());
  }
  out["functors"] = fs;
  Json rs = Json::object();
  for (const auto& n : names("relations")) {
    const auto& d = definition("relations", n);
    rs[n] = relation_json(relation(n), d.at("left").get<std::string>(), d.at("right").get<std::string>());
  }
  out["relations"] = rs;
  Json ts = Json::object();
  for (const auto& n : names("tses")) {
    const auto& d = definition("tses", n);
    if (d.contains("kind")) {
      ts[n] = d;
    } else {
      ts[n] = tse_json(*tse(n), d.at("source").get<std::string>(), d.at("target").get<std::string>());
    }
  }
  out["tses"] = ts;
  Json cf = Json::object();
  for (const auto& n : names("cat_functors")) {
    const auto f = cat_functor(n);
    const auto& d = definition("cat_functors", n);
    Json j;
    j["source"] = d.at("source");
    j["target"] = d.at("target");
    Json objs = Json::object();
    for (std::uint32_t o = 0; o < f.source->object_count(); ++o) {
      objs[f.source->object_name(o)] = f.target->object_name(f.on_objects[o]);
    }
    j["objects"] = objs;
    Json mors = Json::object();
    for (std::uint32_t m = 0; m < f.source->morphism_count(); ++m) {
      mors[f.source->morphism(m).name] = f.target->morphism(f.on_morphisms[m]).name;
    }
    j["morphisms"] = mors;
    cf[n] = j;
  }
  out["cat_functors"] = cf;
  Json as = Json::object();
  for (const auto& n : names("adjunctions")) {
    const auto adj = adjunction(n);
    const auto& d = definition("adjunctions", n);
    Json j;
    j["left"] = d.at("left");
    j["right"] = d.at("right");
    Json counit = Json::object();
    const auto& t = *adj.left.target;
    for (std::uint32_t b = 0; b < t.object_count(); ++b) counit[t.object_name(b)] = t.morphism(adj.counit[b]).name;
    j["counit"] = counit;
    as[n] = j;
  }
  out["adjunctions"] = as;
  Json ss = Json::object();
  for (const auto& n : names("specs")) {
    const auto s = spec(n);
    const auto& d = definition("specs", n);
    auto t = category(d.at("category").get<std::string>());
    Json j;
    j["category"] = d.at("category");
    Json states = Json::array();
    for (const auto& st : s.states) states.push_back({{"name", st.name}, {"type", t->object_name(st.type)}});
    j["states"] = states;
    Json trs = Json::array();
    for (const auto& tr : s.transitions) {
      trs.push_back({{"src", s.states[tr.source].name},
                     {"tgt", s.states[tr.target].name},
                     {"apex", t->object_name(tr.label.apex)},
                     {"left", t->morphism(tr.label.left).name},
                     {"right", t->morphism(tr.label.right).name}});
    }
    j["transitions"] = trs;
    ss[n] = j;
  }
  out["specs"] = ss;
  return out;
}

Bundle load_bundle(const std::vector<std::filesystem::path>& paths) {
  Bundle b;
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p)) {
      b.add_directory(p);
    } else {
      b.add_file(p);
    }
  }
  b.resolve_all();
  return b;
}

// ---------------------------------------------------------------------------
// Aldebaran

namespace {

struct AutHeader {
  std::size_t initial = 0;
  std::size_t transitions = 0;
  std::size_t states = 0;
};

const std::regex& header_re() {
  static const std::regex re(R"(^\s*des\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$)");
  return re;
}

AutHeader read_header(std::istream& in, const std::string& origin, std::size_t& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::smatch m;
    if (!std::regex_match(line, m, header_re())) {
      parse_fail(origin + ":" + std::to_string(line_no), "expected 'des (initial, transitions, states)'");
    }
    return {std::stoul(m[1]), std::stoul(m[2]), std::stoul(m[3])};
  }
  parse_fail(origin, "empty file");
}

}  // namespace

VCatPtr import_aut(std::istream& in, const QuantaloidPtr& ql, const std::string& origin) {
  if (!ql || !ql->words()) fail(ErrorKind::InvalidArgument, "automata are read over a language quantale");
  std::size_t line_no = 0;
  const auto h = read_header(in, origin, line_no);
  if (h.states == 0) parse_fail(origin, "an automaton needs a state");
  if (h.initial >= h.states) parse_fail(origin, "initial state out of range");
  static const std::regex edge(R"re(^\s*\(\s*(\d+)\s*,\s*(?:"([^"]*)"|([^,"]*[^,"\s]))\s*,\s*(\d+)\s*\)\s*$)re");
  const auto& sigma = ql->words()->alphabet();
  Graph g;
  for (std::size_t s = 0; s < h.states; ++s) g.vertices.push_back({"s" + std::to_string(s), 0});
  std::size_t seen = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    std::smatch m;
    if (!std::regex_match(line, m, edge)) parse_fail(where, "expected '(src, \"label\", dst)'");
    const std::size_t src = std::stoul(m[1]);
    const std::size_t dst = std::stoul(m[4]);
    const std::string label = m[2].matched ? m[2].str() : m[3].str();
    if (src >= h.states || dst >= h.states) parse_fail(where, "state out of range");
    if (std::find(sigma.begin(), sigma.end(), label) == sigma.end()) {
      fail(ErrorKind::UnknownLabel, where + ": label '" + label + "' is not in the alphabet");
    }
    g.edges.push_back({static_cast<std::uint32_t>(src), static_cast<std::uint32_t>(dst), quantaloids::words(*ql, {label})});
    ++seen;
  }
  if (seen != h.transitions) {
    parse_fail(origin, "header announces " + std::to_string(h.transitions) + " transitions, found " + std::to_string(seen));
  }
  return free_vcategory(ql, g);
}

VCatPtr import_aut_file(const std::filesystem::path& path, const QuantaloidPtr& ql) {
  std::ifstream in(path);
  if (!in) parse_fail(path.string(), "cannot read");
  return import_aut(in, ql, path.string());
}

std::size_t aut_state_count(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail(path.string(), "cannot read");
  std::size_t line_no = 0;
  return read_header(in, path.string(), line_no).states;
}

// ---------------------------------------------------------------------------
// Serialization

Json quantaloid_json(const Quantaloid& q) {
  switch (q.kind()) {
    case Quantaloid::Kind::boolean:
      return {{"kind", "boolean"}};
    case Quantaloid::Kind::unit:
      return {{"kind", "unit"}};
    case Quantaloid::Kind::language:
      return {{"kind", "language"}, {"alphabet", q.words()->alphabet()}, {"k", q.words()->max_length()}};
    case Quantaloid::Kind::metric: {
      Json grid = Json::array();
      for (double x : q.grid()) {
        if (std::isinf(x)) {
          grid.push_back("inf");
        } else {
          grid.push_back(x);
        }
      }
      return {{"kind", "metric"}, {"grid", grid}};
    }
    default:
      break;
  }
  const std::size_t n = q.object_count();
  Json out;
  out["label"] = q.label();
  out["objects"] = q.object_names();
  Json homs = Json::object();
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) homs[q.object_name(u) + "," + q.object_name(v)] = lattice_json(*q.hom(u, v));
  }
  out["homs"] = homs;
  Json tensor = Json::object();
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      for (std::uint32_t w = 0; w < n; ++w) {
        const auto& huv = *q.hom(u, v);
        const auto& hvw = *q.hom(v, w);
        const auto& huw = *q.hom(u, w);
        Json rows = Json::array();
        for (const auto& f : huv.elements()) {
          Json row = Json::array();
          for (const auto& g : hvw.elements()) row.push_back(huw.ordinal(q.tensor(u, v, w, f, g)));
          rows.push_back(row);
        }
        tensor[q.object_name(u) + "," + q.object_name(v) + "," + q.object_name(w)] = rows;
      }
    }
  }
  out["tensor"] = tensor;
  Json ids = Json::object();
  for (std::uint32_t u = 0; u < n; ++u) ids[q.object_name(u)] = q.hom(u, u)->ordinal(q.id(u));
  out["id"] = ids;
  return out;
}

Json category_json(const FiniteCategory& c) {
  Json out;
  out["objects"] = c.object_names();
  Json mors = Json::array();
  for (std::uint32_t m = 0; m < c.morphism_count(); ++m) {
    const auto& mor = c.morphism(m);
    mors.push_back({{"name", mor.name}, {"source", c.object_name(mor.source)}, {"target", c.object_name(mor.target)}});
  }
  out["morphisms"] = mors;
  Json ids = Json::object();
  for (std::uint32_t o = 0; o < c.object_count(); ++o) ids[c.object_name(o)] = c.morphism(c.identity(o)).name;
  out["identities"] = ids;
  Json comp = Json::array();
  for (std::uint32_t f = 0; f < c.morphism_count(); ++f) {
    for (std::uint32_t g = 0; g < c.morphism_count(); ++g) {
      if (auto h = c.then(f, g)) comp.push_back({c.morphism(f).name, c.morphism(g).name, c.morphism(*h).name});
    }
  }
  out["compose"] = comp;
  Json pbs = Json::array();
  for (const auto& [key, pb] : c.pullbacks()) {
    pbs.push_back({{"cospan", {c.morphism(key.first).name, c.morphism(key.second).name}},
                   {"apex", c.object_name(pb.apex)},
                   {"left", c.morphism(pb.left).name},
                   {"right", c.morphism(pb.right).name}});
  }
  out["pullbacks"] = pbs;
  return out;
}

Json vcategory_json(const VCategory& a, const std::string& base) {
  const auto& q = *a.base();
  Json out;
  out["base"] = base;
  Json objs = Json::array();
  for (std::uint32_t x = 0; x < a.size(); ++x) objs.push_back({{"name", a.name(x)}, {"extent", q.object_name(a.extent(x))}});
  out["objects"] = objs;
  Json homs = Json::object();
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    for (std::uint32_t y = 0; y < a.size(); ++y) {
      const auto& l = a.lattice(x, y);
      if (a.hom(x, y) == l.bottom()) continue;
      homs[a.name(x) + "," + a.name(y)] = element_json(l, a.hom(x, y));
    }
  }
  out["homs"] = homs;
  return out;
}

Json functor_json(const VFunctor& f, const std::string& source, const std::string& target) {
  Json map = Json::object();
  for (std::uint32_t x = 0; x < f.source->size(); ++x) map[f.source->name(x)] = f.target->name(f.map[x]);
  return {{"source", source}, {"target", target}, {"map", map}};
}

Json relation_json(const SimRelation& r, const std::string& left, const std::string& right) {
  Json pairs = Json::array();
  for (auto [a, b] : r.pairs()) pairs.push_back({r.left()->name(a), r.right()->name(b)});
  return {{"left", left}, {"right", right}, {"pairs", pairs}};
}

Json tse_json(const TwoSidedEnrichment& f, const std::string& source, const std::string& target) {
  Json out;
  out["source"] = source;
  out["target"] = target;
  Json carriers = Json::array();
  for (const auto& c : f.carriers()) {
    carriers.push_back(
        {{"name", c.name}, {"minus", f.source()->object_name(c.minus)}, {"plus", f.target()->object_name(c.plus)}});
  }
  out["carriers"] = carriers;
  Json comps = Json::object();
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    for (std::uint32_t y = 0; y < f.size(); ++y) {
      const auto& m = f.component(x, y);
      Json table = Json::array();
      for (const auto& e : m.source()->elements()) table.push_back(element_json(*m.target(), m(e)));
      comps[f.carrier(x).name + "," + f.carrier(y).name] = table;
    }
  }
  out["components"] = comps;
  return out;
}

}  // namespace qbisim::io
