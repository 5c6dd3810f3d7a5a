#pragma once

// Free Gerstenhaber algebra on the 16 momentum-decorated dual generators:
// canonical normal forms with a decidable zero test, the Hopf-module momentum
// action, and the derivation calculus (alpha, beta, gamma, K, Gamma,
// commutators) built on top of it.
//
// Normal form strategy: every bracket expression is reduced to a linear
// combination of registered "atoms".  An atom is either a decorated generator
// or a bracket of two atoms that is linearly independent of all previously
// registered atoms; independence is decided in a faithful associative model
// ([a,b] -> a(x)b - (-1)^{(|a|-1)(|b|-1)} b(x)a recursively), where a
// Gaussian echelon over tensor words gives a sound and complete zero test.
// Products are multisets of atoms with Koszul reordering signs.

#include "ymbv/poly.hpp"
#include "ymbv/tables.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ymbv {

// A decorated dual generator: basis index 0..15 plus momentum-derivative
// exponents.  Degree is minus the primal degree; decoration keeps it.
struct Letter {
  int idx = 0;
  std::array<uint8_t, 4> kexp{};
  auto operator<=>(const Letter&) const = default;
};

// A product word: sorted vector of atom ids.
using Word = std::vector<int>;

struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Element of the free Gerstenhaber algebra with polynomial (parameter)
// coefficients.  The empty word is the scalar slot (only appears as an
// intermediate value; operators annihilate it).
struct GElement {
  std::map<Word, Poly, WordLess> t;

  bool is_zero() const { return t.empty(); }
  void add(const Word& w, const Poly& c);
  GElement& operator+=(const GElement& o);
  GElement& operator-=(const GElement& o);
  friend GElement operator+(GElement a, const GElement& b) { return a += b; }
  friend GElement operator-(GElement a, const GElement& b) { return a -= b; }
  bool operator==(const GElement& o) const { return t == o.t; }

  static GElement scalar(const QI& c);
};

GElement gscale(const GElement& x, const Poly& c);
GElement gscale(const GElement& x, const QI& c);

class GContext;

// Pluggable generator model. The default (all hooks null) is the 16
// momentum-decorated fiber duals. A custom model reinterprets Letter::idx as
// an index into its own generator table; decoration then returns a linear
// combination of model letters instead of bumping kexp.
struct LetterOps {
  std::function<int(int idx)> deg;    // degree of the undecorated generator
  std::function<int(int idx)> ndeg;   // letter-count weight (default 1)
  std::function<GElement(GContext&, const Letter&, int mu)> decorate;
  std::function<std::string(int idx)> name;
};

class GContext {
 public:
  explicit GContext(int kcap = 4) : kcap_(kcap) {}
  GContext(int kcap, LetterOps ops) : kcap_(kcap), ops_(std::move(ops)) {}

  // Atoms.
  int letter_atom(const Letter& l);
  GElement gen(int idx);               // undecorated dual generator
  GElement atom_elem(int id) const;    // single-atom word
  bool atom_is_letter(int id) const { return atoms_[id].is_letter; }
  const Letter& atom_letter(int id) const { return atoms_[id].let; }
  int atom_left(int id) const { return atoms_[id].left; }
  int atom_right(int id) const { return atoms_[id].right; }
  int atom_deg(int id) const { return atoms_[id].deg; }
  int atom_ndeg(int id) const { return atoms_[id].ndeg; }
  size_t atom_count() const { return atoms_.size(); }

  int word_deg(const Word& w) const;
  int word_ndeg(const Word& w) const;
  // Degree/ndeg of a homogeneous element (0 for zero/scalar).
  int elem_deg(const GElement& x) const;
  int elem_ndeg(const GElement& x) const;

  // Algebra operations.
  GElement mul(const GElement& a, const GElement& b);
  GElement lie(const GElement& a, const GElement& b);

  // Hopf-module action: one momentum derivative, distributed by the
  // primitive coproduct over both products.
  GElement apply_momentum(int mu, const GElement& x);
  // Wave-operator action -D0^2+D1^2+D2^2+D3^2.
  GElement box(const GElement& x);

  // Canonicalize an unsorted atom sequence: sorted word and Koszul sign,
  // or nullopt if the word vanishes (repeated odd atom).
  std::optional<std::pair<Word, int>> canonical_word(std::vector<int> w) const;

  // Stable debug serialization.
  std::string atom_str(int id) const;
  std::string str(const GElement& x) const;

  int kcap() const { return kcap_; }

 private:
  using TWord = std::vector<Letter>;  // tensor word in the associative model
  struct TWordLess {
    bool operator()(const TWord& a, const TWord& b) const {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    }
  };
  using TExp = std::map<TWord, QI, TWordLess>;

  struct AtomInfo {
    bool is_letter = false;
    Letter let;
    int left = -1, right = -1;
    int deg = 0, ndeg = 0;
    TExp exp;
  };
  struct Row {
    TExp exp;                 // pivot (largest word) has coefficient 1
    std::map<int, QI> comb;   // invariant: exp = embedding of comb
  };

  GElement lie_words(const Word& a, const Word& b);
  GElement lie_atoms(int a, int b);
  GElement atom_decorate(int mu, int id);
  static void texp_axpy(TExp& dst, const QI& c, const TExp& src);
  static TExp texp_concat(const TExp& a, const TExp& b);

  std::vector<AtomInfo> atoms_;
  std::map<Letter, int> letter_ids_;
  std::map<std::pair<int, int>, GElement> lie_cache_;
  std::map<std::pair<int, int>, GElement> deco_cache_;
  std::map<TWord, Row, TWordLess> rows_;
  int kcap_;
  LetterOps ops_;
};

// A Gerstenhaber derivation-style operator: determined by its action on
// generators (equivariant under decoration) plus optional product/bracket
// anomalies, extended by the standard sign-graded recursion.
struct OperatorSpec {
  int deg = 0;
  int ndeg = 0;  // shift of the word-length degree
  std::function<GElement(GContext&, int)> gen0;  // action on plain generators
  std::function<GElement(GContext&, const GElement&, const GElement&)>
      mul_anomaly;  // g(a,b); applied with prefactor (-1)^{deg a}
  std::function<GElement(GContext&, const GElement&, const GElement&)>
      lie_anomaly;  // h(a,b); applied with prefactor (-1)^{deg a}
  std::shared_ptr<std::map<int, GElement>> memo =
      std::make_shared<std::map<int, GElement>>();
};

GElement eval_op(GContext& ctx, const OperatorSpec& op, const GElement& x);

// Graded commutator of two operators, returned as the anomaly-free
// derivation determined by its generator action.
OperatorSpec commutator(const OperatorSpec& x, const OperatorSpec& y);

// Derivation determined by a generator action alone.
OperatorSpec derivation(int deg, int ndeg,
                        std::function<GElement(GContext&, int)> gen0);
OperatorSpec scale_op(const OperatorSpec& x, const QI& c);

// The auxiliary operator Gamma: zero on word-length-preserving derivations,
// otherwise the derivation with generator action 2/((n+1)n) gamma(x(g)).
OperatorSpec big_gamma(const OperatorSpec& x);

// Canonical operators.
OperatorSpec alpha_op();
OperatorSpec beta_op();
OperatorSpec gamma_op();
OperatorSpec K_op();

// Structure-induced derivations (transpose action on dual generators).
OperatorSpec d_op(const StructureTables& t);
OperatorSpec h_op(const StructureTables& t);
OperatorSpec theta2_op(const StructureTables& t);

// Dual-side degree of the generator with basis index idx (0-based).
int dual_deg(int idx);

}  // namespace ymbv
