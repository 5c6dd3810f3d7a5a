#pragma once

// Word-of-words model: the free Gerstenhaber algebra generated by the duals
// of normal-form words (each with degree shifted by two), carrying a
// differential and a second-order contraction built from the transposed
// structure maps.
//
// Momentum handling: every fiber slot of an inner word carries a tag (a slot
// identity); a letter is a generator index plus a set of tags, and momentum
// acts by multiplication with the tagged momentum symbols, so coefficients
// are exact polynomials and the dualization is fiberwise over momenta.
// Exact on elements with at most W slots in total, because none of the
// transposed derivations increases the slot count.

#include "ymbv/bv.hpp"

#include <optional>
#include <set>

namespace ymbv {

// Dualization convention, one choice per transposed block: a global sign and
// whether the graded-dual Koszul factor (-1)^{deg target} is applied.  The
// defaults are the calibrated assignment under which the strictness
// identities (square-zero, anticommutator = wave operator) hold.
struct CoSigns {
  int d1 = 1, dm1 = 1, tt = 1, beta = 1;  // block signs
  bool gd_d = false, gd_h = false, gd_tt = false, gd_beta = false;
  // Signs of the two coproduct-derived terms, each of the form
  // s * (-1)^{ea*deg(a) + eb*deg(b) + eab*deg(a)*deg(b)} over the ordered
  // split halves a, b (degrees taken in the outer algebra).
  int mul_s = 1, mul_ea = 1, mul_eb = 0, mul_eab = 0;   // bracket-split, multiplied
  int lie_s = -1, lie_ea = 1, lie_eb = 0, lie_eab = 0;  // product-split, bracketed
};

class Cobar {
 public:
  // The system must have its homotopy family solved through arity W.
  explicit Cobar(BVSystem& bv, int W = 4, CoSigns signs = CoSigns{});
  Cobar(const Cobar&) = delete;
  Cobar& operator=(const Cobar&) = delete;

  GContext& tctx() { return tctx_; }  // tagged inner context
  GContext& actx() { return actx_; }  // outer (word-of-words) context
  GContext& vctx() { return bv_.ctx(); }
  int budget() const { return W_; }

  // Momentum symbol of tag t (0..W-1), component mu; and the total momentum
  // polynomial of a tag set.
  Sym qsym(int t, int mu) const { return q_[t][mu]; }
  Poly qpoly(unsigned mask, int mu) const;

  // Tagged inner letter: generator g carrying the tag set `mask`.
  int tletter(int g, unsigned mask);

  // Swap the sign convention; keeps the convention-independent caches.
  void set_signs(CoSigns s);
  const CoSigns& signs() const { return s_; }

  // Intern a tagged inner normal-form word as an outer generator.
  int cletter(const Word& inner);
  const Word& cword(int id) const { return cwords_.at(id); }
  size_t cletter_count() const { return cwords_.size(); }

  // Single outer generator as an element of the outer algebra.
  GElement a_gen(int id);
  // Degree of the outer generator: 2 minus the inner word degree.
  int a_deg(int id) const;

  // Canonical degree-zero inclusion: primal generator vidx placed at slot
  // `tag`.
  GElement embed_gen(int vidx, int tag);

  // Forward (primal-side) operators acting on the tagged inner context:
  // 0 is the differential, 1 the contraction, 2/3 the second-order residue
  // operators, then the higher operation pairs per arity.
  const OperatorSpec& forward_op(int opid) const { return fops_.at(opid); }
  static int opid_nu(int k) { return 4 + 2 * (k - 2); }
  static int opid_mu(int k) { return 5 + 2 * (k - 2); }

  // The differential and the second-order contraction of the outer algebra.
  const OperatorSpec& dA();
  const OperatorSpec& hA();
  GElement apply_dA(const GElement& x);
  GElement apply_hA(const GElement& x);
  // Wave operator on the outer algebra (multiplication by the squared total
  // momentum, distributed by the Leibniz rule).
  GElement boxA(const GElement& x) { return actx_.box(x); }

  // Generator-level blocks (plain transposes, no convention signs), exposed
  // for the unit tests.
  GElement delta1(int cid);   // transpose of d + sum_k (mu_k + nu_k)
  GElement deltam1(int cid);  // transpose of h
  GElement ttC(int cid);      // transpose of the bracket-residue operator
  GElement betaC(int cid);    // transpose of the wave-residue operator

  struct CopTerm {
    int a = 0, b = 0;
    QI c;
  };
  // Transposed structure constants of the inner product / bracket (no
  // convention signs, no Koszul factor).
  const std::vector<CopTerm>& cop_mul(int cid);
  const std::vector<CopTerm>& cop_lie(int cid);

  // Full generator action with the convention applied.
  GElement gen0_d(int cid);
  GElement gen0_h(int cid);

 private:
  using LMS = std::vector<Letter>;  // sorted letter multiset

  LMS word_letters(const Word& w) const;
  const std::set<int>& atoms_over(const LMS& ms);
  const std::vector<Word>& words_over(const LMS& ms);

  // Tagged forward operator built from the derivation's generator table on
  // the fiber side: tag sets distribute over the image slots by ordered set
  // partitions, decorations become tagged momentum monomials.
  OperatorSpec table_op(const OperatorSpec& vop);
  GElement translate(int g, unsigned mask, const GElement& vimg);

  const GElement& forward(int opid, const Word& w);
  GElement transpose_at(const Word& target, int opid,
                        const std::vector<Word>& candidates);

  std::vector<Word> letterwise_candidates(const Word& target);
  std::vector<Word> samems_candidates(const Word& target);
  std::vector<Word> collapse_candidates(const Word& target, int k);

  int block_sign(int s, bool graded, int cid) const;

  BVSystem& bv_;
  int W_;
  CoSigns s_;
  std::array<std::array<Sym, 4>, 4> q_{};
  GContext tctx_;
  GContext actx_;

  std::vector<Word> cwords_;
  std::map<Word, int, WordLess> cindex_;

  std::vector<OperatorSpec> fops_;  // 0:d 1:h 2:alpha 3:beta 4+:nu_k,mu_k
  std::map<std::pair<int, Word>, GElement> fcache_;

  std::map<LMS, std::set<int>> atoms_over_;
  std::map<LMS, std::vector<Word>> words_over_;

  std::map<int, GElement> delta1_, deltam1_, ttC_, betaC_;
  std::map<int, std::vector<CopTerm>> copmul_, coplie_;
  std::optional<OperatorSpec> dA_, hA_;
};

}  // namespace ymbv
