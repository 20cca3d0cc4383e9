#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbisim/bisim.hpp"
#include "qbisim/cob.hpp"
#include "qbisim/cts.hpp"
#include "qbisim/fincat.hpp"
#include "qbisim/lattice.hpp"
#include "qbisim/quantaloid.hpp"
#include "qbisim/vcat.hpp"

namespace qbisim::io {

using Json = nlohmann::ordered_json;

/// Elements: a name for explicit lattices (numbers are matched against
/// names), a list of atom names for powersets, or "top"/"bottom".
Elem parse_element(const Lattice& l, const Json& j);
Json element_json(const Lattice& l, const Elem& e);

/// { "elements": [...], "leq": [[i, j], ...] }. Throws ValidationError.
LatticePtr parse_lattice(const Json& j);
Json lattice_json(const Lattice& l);

/// Named objects read from JSON documents. Every section maps names to
/// definitions; references between them are resolved on first use, and each
/// object is validated before it is handed out.
///
///   quantaloids   explicit tables or {"kind": boolean|language|metric|rel|powerset|crible|unit}
///   categories    {"kind": poset|chain} or explicit morphisms and composition
///   vcategories   {"base", "objects", "homs"} or {"base", "vertices", "edges"}
///   functors      {"source", "target", "map"}
///   relations     {"left", "right", "pairs"}
///   tses          {"source", "target", "carriers", "components"} or a shorthand kind
///   cat_functors  {"source", "target", "objects", "morphisms"?}
///   adjunctions   {"left", "right", "counit"?}
///   specs         {"category", "states", "transitions"}
///
/// A spec name also resolves as a V-category over S(category); "S(C)" names
/// the crible quantaloid of the category C, and "T.source" / "T.target" the
/// bases of the tse T.
class Bundle {
 public:
  static const std::vector<std::string>& sections();

  // Throws ParseError on malformed JSON, unknown sections or duplicate names.
  void add_document(const Json& doc, const std::string& origin);
  void add_file(const std::filesystem::path& path);
  // Every *.json file, in name order.
  void add_directory(const std::filesystem::path& dir);

  bool has(const std::string& section, const std::string& name) const;
  std::vector<std::string> names(const std::string& section) const;
  const Json& definition(const std::string& section, const std::string& name) const;

  // Throw DanglingReference for unknown names, ValidationError (naming the
  // object) when a validator fails, ParseError on bad definitions.
  QuantaloidPtr quantaloid(const std::string& name);
  FinCatPtr category(const std::string& name);
  VCatPtr vcategory(const std::string& name);
  VFunctor functor(const std::string& name);
  SimRelation relation(const std::string& name);
  TsePtr tse(const std::string& name);
  CatFunctor cat_functor(const std::string& name);
  CatAdjunction adjunction(const std::string& name);
  CtsSpec spec(const std::string& name);
  // S(T) for a named category, shared by every use.
  CriblePtr crible(const std::string& category);

  // Objects built outside documents (e.g. imported automata).
  void put_vcategory(const std::string& name, VCatPtr a);

  // Resolves and validates every definition.
  void resolve_all();

  // Normal form: every section, names sorted, references by name, shorthand
  // kinds kept, homs listed only when above bottom.
  Json serialize();

  // Name under which a resolved object is known, for serialization.
  std::string name_of(const QuantaloidPtr& q) const;
  std::string name_of(const VCatPtr& a) const;

 private:
  struct Entry {
    Json json;
    std::string origin;
  };
  const Entry& entry(const std::string& section, const std::string& name) const;
  void enter(const std::string& key);
  void leave(const std::string& key);

  QuantaloidPtr build_quantaloid(const std::string& name, const Json& j);
  FinCatPtr build_category(const Json& j);
  VCatPtr build_vcategory(const Json& j);
  VFunctor build_functor(const Json& j);
  TsePtr build_tse(const std::string& name, const Json& j);
  CatFunctor build_cat_functor(const Json& j);
  CatAdjunction build_adjunction(const Json& j);
  CtsSpec build_spec(const Json& j, FinCatPtr& category);

  std::map<std::string, std::map<std::string, Entry>> defs_;
  std::set<std::string> resolving_;

  std::map<std::string, QuantaloidPtr> quantaloids_;
  std::map<std::string, FinCatPtr> categories_;
  std::map<std::string, VCatPtr> vcategories_;
  std::map<std::string, VFunctor> functors_;
  std::map<std::string, SimRelation> relations_;
  std::map<std::string, TsePtr> tses_;
  std::map<std::string, CatFunctor> cat_functors_;
  std::map<std::string, CatAdjunction> adjunctions_;
  std::map<std::string, CtsSpec> specs_;
  std::map<std::string, CriblePtr> cribles_;
};

// Loads files and directories, then resolves everything.
Bundle load_bundle(const std::vector<std::filesystem::path>& paths);

/// Aldebaran .aut: `des (initial, transitions, states)` then one
/// `(src, "label", dst)` per line. Labels must be letters of the alphabet of
/// the language quantale `ql`; edges carry singleton languages.
/// Throws ParseError, UnknownLabel.
VCatPtr import_aut(std::istream& in, const QuantaloidPtr& ql, const std::string& origin = "<aut>");
VCatPtr import_aut_file(const std::filesystem::path& path, const QuantaloidPtr& ql);
// State count from the header alone, to pick the truncation before importing.
std::size_t aut_state_count(const std::filesystem::path& path);

Json quantaloid_json(const Quantaloid& q);
Json category_json(const FiniteCategory& c);
Json vcategory_json(const VCategory& a, const std::string& base);
Json functor_json(const VFunctor& f, const std::string& source, const std::string& target);
Json relation_json(const SimRelation& r, const std::string& left, const std::string& right);
Json tse_json(const TwoSidedEnrichment& f, const std::string& source, const std::string& target);

}  // namespace qbisim::io
