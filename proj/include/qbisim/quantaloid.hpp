#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbisim/error.hpp"
#include "qbisim/fincat.hpp"
#include "qbisim/lattice.hpp"

namespace qbisim {

class Quantaloid;
using QuantaloidPtr = std::shared_ptr<const Quantaloid>;

/// Horizontal composition f (x) g : u -> w of f : u -> v and g : v -> w.
class TensorRule {
 public:
  virtual ~TensorRule() = default;
  virtual Elem apply(const Quantaloid& q, std::uint32_t u, std::uint32_t v, std::uint32_t w, const Elem& f,
                     const Elem& g) const = 0;
  // True when the rule is defined on atoms of powerset homs and extended by
  // unions, so it preserves joins in each variable by construction.
  virtual bool atomwise() const { return false; }
};

/// Tables indexed by explicit element indices: table[u][v][w][i * |hom(v,w)| + j].
class DenseTensor final : public TensorRule {
 public:
  explicit DenseTensor(std::size_t objects) : n_(objects), tables_(objects * objects * objects) {}
  void set(std::uint32_t u, std::uint32_t v, std::uint32_t w, std::vector<std::uint32_t> table) {
    tables_[(u * n_ + v) * n_ + w] = std::move(table);
  }
  const std::vector<std::uint32_t>& table(std::uint32_t u, std::uint32_t v, std::uint32_t w) const {
    return tables_[(u * n_ + v) * n_ + w];
  }
  Elem apply(const Quantaloid& q, std::uint32_t u, std::uint32_t v, std::uint32_t w, const Elem& f,
             const Elem& g) const override;

 private:
  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> tables_;
};

/// Composition of atoms of powerset homs, extended by unions.
class AtomTensor final : public TensorRule {
 public:
  explicit AtomTensor(std::size_t objects) : n_(objects), tables_(objects * objects * objects) {}
  // products[i * atoms(v,w) + j] is the subset of atoms(u,w) for atoms i, j.
  void set(std::uint32_t u, std::uint32_t v, std::uint32_t w, std::vector<Bits> products) {
    tables_[(u * n_ + v) * n_ + w] = std::move(products);
  }
  Elem apply(const Quantaloid& q, std::uint32_t u, std::uint32_t v, std::uint32_t w, const Elem& f,
             const Elem& g) const override;
  bool atomwise() const override { return true; }

 private:
  std::size_t n_;
  std::vector<std::vector<Bits>> tables_;
};

/// Words of length <= k over an alphabet of size s, numbered by length, then
/// lexicographically: index(w) = offset(|w|) + rank(w).
class WordIndex {
 public:
  WordIndex(std::vector<std::string> alphabet, std::size_t k);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::size_t max_length() const { return k_; }
  std::size_t size() const { return offset_.back(); }
  std::size_t offset(std::size_t len) const { return offset_[len]; }
  std::size_t count(std::size_t len) const { return pow_[len]; }
  std::size_t length_of(std::size_t index) const;

  std::optional<std::size_t> index(const std::vector<std::uint32_t>& letters) const;
  std::vector<std::uint32_t> letters(std::size_t index) const;
  std::string name(std::size_t index) const;
  // Letter-by-letter parse of an atom name; dot-separated when letters are
  // longer than one character.
  std::optional<std::vector<std::uint32_t>> parse(std::string_view word) const;

 private:
  std::vector<std::string> alphabet_;
  std::size_t k_;
  bool single_char_ = true;
  std::vector<std::size_t> offset_;  // k + 2 entries
  std::vector<std::size_t> pow_;
};

/// Truncated concatenation L (x) L' = {uv : u in L, v in L', |uv| <= k}.
class LanguageTensor final : public TensorRule {
 public:
  explicit LanguageTensor(std::shared_ptr<const WordIndex> words) : words_(std::move(words)) {}
  Elem apply(const Quantaloid& q, std::uint32_t u, std::uint32_t v, std::uint32_t w, const Elem& f,
             const Elem& g) const override;
  bool atomwise() const override { return true; }

 private:
  std::shared_ptr<const WordIndex> words_;
};

/// An element of a hom lattice together with its endpoints.
struct Arrow {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  Elem value;
};

/// Finite quantaloid: objects, a complete lattice per object pair, a tensor
/// rule and identities. Composition is diagrammatic.
class Quantaloid {
 public:
  enum class Kind { explicit_tables, boolean, language, metric, rel, powerset, crible, unit };

  struct Data {
    Kind kind = Kind::explicit_tables;
    std::string label;
    std::vector<std::string> objects;
    std::vector<LatticePtr> homs;  // objects^2, row major
    std::vector<Elem> ids;
    std::shared_ptr<const TensorRule> tensor;
    std::shared_ptr<const WordIndex> words;  // language
    std::vector<double> grid;                // metric
    FinCatPtr category;                      // powerset, crible
  };

  // Checks shapes and that identities are hom elements; full axioms are
  // checked by validate_quantaloid.
  static QuantaloidPtr make(Data data);

  Kind kind() const { return d_.kind; }
  const std::string& label() const { return d_.label; }
  std::size_t object_count() const { return d_.objects.size(); }
  const std::string& object_name(std::uint32_t u) const { return d_.objects[u]; }
  const std::vector<std::string>& object_names() const { return d_.objects; }
  std::optional<std::uint32_t> find_object(std::string_view name) const;

  const LatticePtr& hom(std::uint32_t u, std::uint32_t v) const { return d_.homs[u * object_count() + v]; }
  const Elem& id(std::uint32_t u) const { return d_.ids[u]; }
  Elem tensor(std::uint32_t u, std::uint32_t v, std::uint32_t w, const Elem& f, const Elem& g) const {
    return d_.tensor->apply(*this, u, v, w, f, g);
  }
  // Throws NotComposable when f.target != g.source.
  Arrow tensor(const Arrow& f, const Arrow& g) const;
  const TensorRule& rule() const { return *d_.tensor; }

  const WordIndex* words() const { return d_.words.get(); }
  const std::vector<double>& grid() const { return d_.grid; }
  const FinCatPtr& category() const { return d_.category; }
  const Data& data() const { return d_; }

  bool locally_distributive() const;

 private:
  explicit Quantaloid(Data d) : d_(std::move(d)) {}
  Data d_;
};

/// Associativity, units, typing and join preservation of the tensor in each
/// variable, exhaustively when the element counts fit the work budget.
/// Atomwise rules past the budget are checked on atoms (sampled when even the
/// atom triples do not fit). Notes record per-hom distributivity.
Report validate_quantaloid(const Quantaloid& q);

enum class Side { left, right };

/// Right: join{g : f (x) g <= h}, for f : u -> v, h : u -> w.
/// Left: join{g : g (x) f <= h}, for f : v -> w, h : u -> w.
Arrow residual(const Quantaloid& q, Side side, const Arrow& f, const Arrow& h);

namespace quantaloids {

// Q2: one object, hom {0 <= 1}, tensor = meet, unit 1.
QuantaloidPtr boolean();
// Truncated language quantale QL(alphabet, k).
QuantaloidPtr language(std::vector<std::string> alphabet, std::size_t k);
// Lawvere metric grid; `grid` must be strictly ascending from 0 and end at
// infinity. Non-associative rounding is reported by validate_quantaloid.
QuantaloidPtr metric(std::vector<double> grid);
// Rel restricted to the given finite sets.
QuantaloidPtr rel(std::vector<std::vector<std::string>> sets, std::vector<std::string> names = {});
// B(C): homs are powersets of C(c, c'), composition is pointwise.
QuantaloidPtr powerset_of(FinCatPtr category);
// One object, one element: the base of plain sets of carriers. Shared.
QuantaloidPtr unit_base();

// Elements of a language quantale from word lists.
Elem words(const Quantaloid& q, const std::vector<std::string>& words);
// Index of a metric grid value (within tolerance), if present.
std::optional<std::uint32_t> grid_index(const Quantaloid& q, double value);

}  // namespace quantaloids

std::string format_arrow(const Quantaloid& q, const Arrow& a);

}  // namespace qbisim
