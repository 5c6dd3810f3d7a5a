#include "ymbv/cobar.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ymbv {

namespace {

constexpr int OPD = 0, OPH = 1, OPA = 2, OPB = 3;
int opnu(int k) { return 4 + 2 * (k - 2); }
int opmu(int k) { return 5 + 2 * (k - 2); }

void letters_of(const GContext& v, int atom, std::vector<Letter>& out) {
  if (v.atom_is_letter(atom)) {
    out.push_back(v.atom_letter(atom));
  } else {
    letters_of(v, v.atom_left(atom), out);
    letters_of(v, v.atom_right(atom), out);
  }
}

// Set partitions of {0..n-1} as block lists.
std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> cur;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (size_t bi = 0; bi < cur.size(); ++bi) {
      cur[bi].push_back(i);
      rec(i + 1);
      cur[bi].pop_back();
    }
    cur.push_back({i});
    rec(i + 1);
    cur.pop_back();
  };
  rec(0);
  return out;
}

GElement word_elem(const Word& w) {
  GElement e;
  e.add(w, Poly::con(1));
  return e;
}

}  // namespace

Cobar::Cobar(BVSystem& bv, int W, CoSigns signs)
    : bv_(bv), W_(W), s_(signs), tctx_(8), actx_(64) {
  if (W_ < 2 || W_ > 4)
    throw std::invalid_argument("slot budget must be between 2 and 4");
  for (int k = 3; k <= W_; ++k)
    if (!bv_.is_solved(k))
      throw std::invalid_argument(
          "the homotopy family must be solved through the slot budget");
  for (int t = 0; t < 4; ++t)
    for (int mu = 0; mu < 4; ++mu)
      q_[t][mu] =
          symtab::fresh("q" + std::to_string(t) + std::to_string(mu) + "_");

  LetterOps tops;
  tops.deg = [](int idx) { return dual_deg(idx % 16); };
  tops.ndeg = [](int idx) { return std::popcount((unsigned)(idx / 16)); };
  tops.decorate = [this](GContext&, const Letter& l, int mu) {
    GElement r;
    r.add(Word{tctx_.letter_atom(l)}, qpoly((unsigned)(l.idx / 16), mu));
    return r;
  };
  tops.name = [](int idx) {
    std::ostringstream os;
    os << "d" << YMBasis::names()[idx % 16] << "@T";
    for (int t = 0; t < 4; ++t)
      if ((idx >> (4 + t)) & 1) os << t;
    return os.str();
  };
  tctx_ = GContext(8, std::move(tops));

  LetterOps aops;
  aops.deg = [this](int idx) { return a_deg(idx); };
  aops.ndeg = [this](int idx) { return tctx_.word_ndeg(cwords_.at(idx)); };
  aops.decorate = [this](GContext& octx, const Letter& l, int mu) {
    GElement di = tctx_.apply_momentum(mu, word_elem(cwords_.at(l.idx)));
    GElement r;
    for (auto& [w, c] : di.t) {
      Letter nl;
      nl.idx = cletter(w);
      r.add(Word{octx.letter_atom(nl)}, c);
    }
    return r;
  };
  aops.name = [this](int idx) {
    std::ostringstream os;
    os << "c[";
    const Word& w = cwords_.at(idx);
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) os << " ";
      os << tctx_.atom_str(w[i]);
    }
    os << "]";
    return os.str();
  };
  actx_ = GContext(64, std::move(aops));

  fops_.push_back(table_op(bv_.d()));
  fops_.push_back(table_op(bv_.h()));
  fops_.push_back(alpha_op());
  fops_.push_back(beta_op());
  for (int k = 2; k <= W_; ++k) {
    fops_.push_back(table_op(bv_.nu(k)));
    fops_.push_back(table_op(bv_.mu(k)));
  }
}

Poly Cobar::qpoly(unsigned mask, int mu) const {
  Poly p;
  for (int t = 0; t < 4; ++t)
    if ((mask >> t) & 1u) p += Poly::sym(q_[t][mu]);
  return p;
}

int Cobar::tletter(int g, unsigned mask) { return g + 16 * (int)mask; }

void Cobar::set_signs(CoSigns s) {
  s_ = s;
  dA_.reset();
  hA_.reset();
}

int Cobar::cletter(const Word& inner) {
  auto it = cindex_.find(inner);
  if (it != cindex_.end()) return it->second;
  if (inner.empty())
    throw std::invalid_argument("the empty word has no dual generator");
  if (tctx_.word_ndeg(inner) > W_)
    throw std::invalid_argument("inner word exceeds the slot budget");
  int id = (int)cwords_.size();
  cwords_.push_back(inner);
  cindex_.emplace(inner, id);
  return id;
}

GElement Cobar::a_gen(int id) {
  Letter l;
  l.idx = id;
  return actx_.atom_elem(actx_.letter_atom(l));
}

int Cobar::a_deg(int id) const { return 2 - tctx_.word_deg(cwords_.at(id)); }

GElement Cobar::embed_gen(int vidx, int tag) {
  Letter l;
  l.idx = tletter(vidx, 1u << tag);
  return a_gen(cletter(Word{tctx_.letter_atom(l)}));
}

OperatorSpec Cobar::table_op(const OperatorSpec& vop) {
  auto vs = std::make_shared<OperatorSpec>(vop);
  return derivation(vop.deg, vop.ndeg, [this, vs](GContext&, int idx) {
    GElement vimg = eval_op(vctx(), *vs, vctx().gen(idx % 16));
    return translate(idx % 16, (unsigned)(idx / 16), vimg);
  });
}

GElement Cobar::translate(int /*g*/, unsigned mask, const GElement& vimg) {
  GElement out;
  GContext& v = vctx();
  std::vector<int> tags;
  for (int t = 0; t < 4; ++t)
    if ((mask >> t) & 1u) tags.push_back(t);
  for (auto& [vw, c] : vimg.t) {
    int r = v.word_ndeg(vw);
    if (r == 0 || (int)tags.size() < r) continue;
    std::vector<int> assign(tags.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == tags.size()) {
        std::vector<unsigned> parts((size_t)r, 0u);
        for (size_t t = 0; t < tags.size(); ++t)
          parts[assign[t]] |= (1u << tags[t]);
        for (auto p : parts)
          if (!p) return;
        int slot = 0;
        std::function<GElement(int)> tr_atom = [&](int atom) -> GElement {
          if (v.atom_is_letter(atom)) {
            const Letter l = v.atom_letter(atom);
            unsigned pm = parts[slot++];
            GElement e = tctx_.gen(tletter(l.idx, pm));
            Poly coeff = Poly::con(QI(1));
            for (int mu = 0; mu < 4; ++mu)
              for (int j = 0; j < l.kexp[mu]; ++j)
                coeff = coeff * qpoly(pm, mu);
            return gscale(e, coeff);
          }
          GElement left = tr_atom(v.atom_left(atom));
          GElement right = tr_atom(v.atom_right(atom));
          return tctx_.lie(left, right);
        };
        GElement term = GElement::scalar(QI(1));
        for (int atom : vw) term = tctx_.mul(term, tr_atom(atom));
        out += gscale(term, c);
      } else {
        for (int p = 0; p < r; ++p) {
          assign[i] = p;
          rec(i + 1);
        }
      }
    };
    rec(0);
  }
  return out;
}

Cobar::LMS Cobar::word_letters(const Word& w) const {
  LMS out;
  for (int a : w) letters_of(tctx_, a, out);
  std::sort(out.begin(), out.end());
  return out;
}

const std::set<int>& Cobar::atoms_over(const LMS& ms) {
  auto it = atoms_over_.find(ms);
  if (it != atoms_over_.end()) return it->second;
  std::set<int> out;
  int n = (int)ms.size();
  if (n == 1) {
    out.insert(tctx_.letter_atom(ms[0]));
  } else {
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      if (!(mask & 1u)) continue;  // antisymmetry: same span either way
      LMS m1, m2;
      for (int i = 0; i < n; ++i)
        (((mask >> i) & 1u) ? m1 : m2).push_back(ms[i]);
      const auto a1 = atoms_over(m1);  // copies: recursion mutates the memo
      const auto a2 = atoms_over(m2);
      for (int a : a1)
        for (int b : a2) {
          GElement g = tctx_.lie(tctx_.atom_elem(a), tctx_.atom_elem(b));
          for (auto& [w, c] : g.t) out.insert(w.at(0));
        }
    }
  }
  return atoms_over_.emplace(ms, std::move(out)).first->second;
}

const std::vector<Word>& Cobar::words_over(const LMS& ms) {
  auto it = words_over_.find(ms);
  if (it != words_over_.end()) return it->second;
  std::set<Word, WordLess> out;
  int n = (int)ms.size();
  for (auto& part : set_partitions(n)) {
    std::vector<std::vector<int>> choices;
    bool dead = false;
    for (auto& blk : part) {
      LMS sub;
      for (int i : blk) sub.push_back(ms[i]);
      std::sort(sub.begin(), sub.end());
      const auto& at = atoms_over(sub);
      if (at.empty()) {
        dead = true;
        break;
      }
      choices.emplace_back(at.begin(), at.end());
    }
    if (dead) continue;
    std::vector<size_t> idx(choices.size(), 0);
    while (true) {
      std::vector<int> atoms;
      for (size_t i = 0; i < choices.size(); ++i)
        atoms.push_back(choices[i][idx[i]]);
      auto cw = tctx_.canonical_word(std::move(atoms));
      if (cw) out.insert(cw->first);
      size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++idx[i] < choices[i].size()) break;
        idx[i] = 0;
      }
      if (i == idx.size()) break;
    }
  }
  return words_over_
      .emplace(ms, std::vector<Word>(out.begin(), out.end()))
      .first->second;
}

const GElement& Cobar::forward(int opid, const Word& w) {
  auto key = std::make_pair(opid, w);
  auto it = fcache_.find(key);
  if (it != fcache_.end()) return it->second;
  GElement r = eval_op(tctx_, fops_.at(opid), word_elem(w));
  return fcache_.emplace(std::move(key), std::move(r)).first->second;
}

GElement Cobar::transpose_at(const Word& target, int opid,
                             const std::vector<Word>& candidates) {
  std::set<Word, WordLess> seen;
  GElement r;
  for (auto& cand : candidates) {
    if (!seen.insert(cand).second) continue;
    const GElement img = forward(opid, cand);  // copy: cletter may recurse
    auto f = img.t.find(target);
    if (f == img.t.end()) continue;
    r += gscale(a_gen(cletter(cand)), f->second);
  }
  return r;
}

std::vector<Word> Cobar::letterwise_candidates(const Word& target) {
  LMS L = word_letters(target);
  // Letterwise derivations preserve the multiset of atom arities.
  std::vector<int> shape;
  for (int a : target) shape.push_back(tctx_.atom_ndeg(a));
  std::sort(shape.begin(), shape.end());
  std::set<LMS> mss;
  for (size_t p = 0; p < L.size(); ++p)
    for (int j = 0; j < 16; ++j) {
      LMS m = L;
      m[p].idx = tletter(j, (unsigned)(L[p].idx / 16));
      std::sort(m.begin(), m.end());
      mss.insert(std::move(m));
    }
  std::vector<Word> out;
  for (auto& m : mss)
    for (auto& w : words_over(m)) {
      std::vector<int> s2;
      for (int a : w) s2.push_back(tctx_.atom_ndeg(a));
      std::sort(s2.begin(), s2.end());
      if (s2 == shape) out.push_back(w);
    }
  return out;
}

std::vector<Word> Cobar::samems_candidates(const Word& target) {
  return words_over(word_letters(target));
}

std::vector<Word> Cobar::collapse_candidates(const Word& target, int k) {
  LMS L = word_letters(target);
  int n = (int)L.size();
  std::set<LMS> mss;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    unsigned tags = 0;
    LMS rest;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u)
        tags |= (unsigned)(L[i].idx / 16);
      else
        rest.push_back(L[i]);
    }
    for (int j = 0; j < 16; ++j) {
      LMS m = rest;
      Letter nl;
      nl.idx = tletter(j, tags);
      m.push_back(nl);
      std::sort(m.begin(), m.end());
      mss.insert(std::move(m));
    }
  }
  std::vector<Word> out;
  for (auto& m : mss)
    for (auto& w : words_over(m)) out.push_back(w);
  return out;
}

GElement Cobar::delta1(int cid) {
  auto it = delta1_.find(cid);
  if (it != delta1_.end()) return it->second;
  const Word w = cwords_.at(cid);
  GElement r = transpose_at(w, OPD, letterwise_candidates(w));
  int n = tctx_.word_ndeg(w);
  for (int k = 2; k <= std::min(n, W_); ++k) {
    auto cands = collapse_candidates(w, k);
    r += transpose_at(w, opnu(k), cands);
    r += transpose_at(w, opmu(k), cands);
  }
  delta1_.emplace(cid, r);
  return r;
}

GElement Cobar::deltam1(int cid) {
  auto it = deltam1_.find(cid);
  if (it != deltam1_.end()) return it->second;
  const Word w = cwords_.at(cid);
  GElement r = transpose_at(w, OPH, letterwise_candidates(w));
  deltam1_.emplace(cid, r);
  return r;
}

GElement Cobar::ttC(int cid) {
  auto it = ttC_.find(cid);
  if (it != ttC_.end()) return it->second;
  const Word w = cwords_.at(cid);
  GElement r = transpose_at(w, OPA, samems_candidates(w));
  ttC_.emplace(cid, r);
  return r;
}

GElement Cobar::betaC(int cid) {
  auto it = betaC_.find(cid);
  if (it != betaC_.end()) return it->second;
  const Word w = cwords_.at(cid);
  GElement r = transpose_at(w, OPB, samems_candidates(w));
  betaC_.emplace(cid, r);
  return r;
}

const std::vector<Cobar::CopTerm>& Cobar::cop_mul(int cid) {
  auto it = copmul_.find(cid);
  if (it != copmul_.end()) return it->second;
  const Word w = cwords_.at(cid);
  std::vector<CopTerm> out;
  int n = (int)w.size();
  std::set<std::pair<Word, Word>> seen;
  for (unsigned mask = 1; n > 1 && mask + 1 < (1u << n); ++mask) {
    Word w1, w2;
    for (int i = 0; i < n; ++i)
      (((mask >> i) & 1u) ? w1 : w2).push_back(w[i]);
    if (!seen.insert({w1, w2}).second) continue;
    GElement p = tctx_.mul(word_elem(w1), word_elem(w2));
    auto f = p.t.find(w);
    if (f == p.t.end()) continue;
    out.push_back({cletter(w1), cletter(w2), f->second.const_value()});
  }
  return copmul_.emplace(cid, std::move(out)).first->second;
}

const std::vector<Cobar::CopTerm>& Cobar::cop_lie(int cid) {
  auto it = coplie_.find(cid);
  if (it != coplie_.end()) return it->second;
  const Word w = cwords_.at(cid);
  LMS L = word_letters(w);
  int n = (int)L.size();
  std::vector<CopTerm> out;
  std::set<std::pair<Word, Word>> seen;
  for (unsigned mask = 1; n > 1 && mask + 1 < (1u << n); ++mask) {
    LMS m1, m2;
    for (int i = 0; i < n; ++i)
      (((mask >> i) & 1u) ? m1 : m2).push_back(L[i]);
    std::vector<Word> ws1 = words_over(m1);  // copies: the memo may grow
    std::vector<Word> ws2 = words_over(m2);
    for (auto& w1 : ws1)
      for (auto& w2 : ws2) {
        if (!seen.insert({w1, w2}).second) continue;
        GElement b = tctx_.lie(word_elem(w1), word_elem(w2));
        auto f = b.t.find(w);
        if (f == b.t.end()) continue;
        out.push_back({cletter(w1), cletter(w2), f->second.const_value()});
      }
  }
  return coplie_.emplace(cid, std::move(out)).first->second;
}

int Cobar::block_sign(int s, bool graded, int cid) const {
  int sg = s;
  if (graded && (tctx_.word_deg(cwords_.at(cid)) & 1)) sg = -sg;
  return sg;
}

GElement Cobar::gen0_d(int cid) {
  GElement r = gscale(betaC(cid), QI(block_sign(s_.beta, s_.gd_beta, cid)));
  r += gscale(delta1(cid), QI(block_sign(s_.d1, s_.gd_d, cid)));
  auto term_sign = [&](int s, int ea, int eb, int eab, int da, int db) {
    int e = ea * (da & 1) + eb * (db & 1) + eab * (da & 1) * (db & 1);
    return (e & 1) ? -s : s;
  };
  // bracket-coproduct halves, multiplied
  for (auto& t : cop_lie(cid)) {
    int sg = term_sign(s_.mul_s, s_.mul_ea, s_.mul_eb, s_.mul_eab,
                       a_deg(t.a), a_deg(t.b));
    r += gscale(actx_.mul(a_gen(t.a), a_gen(t.b)), t.c * QI(sg));
  }
  // product-coproduct halves, bracketed
  for (auto& t : cop_mul(cid)) {
    int sg = term_sign(s_.lie_s, s_.lie_ea, s_.lie_eb, s_.lie_eab,
                       a_deg(t.a), a_deg(t.b));
    r += gscale(actx_.lie(a_gen(t.a), a_gen(t.b)), t.c * QI(sg));
  }
  return r;
}

GElement Cobar::gen0_h(int cid) {
  GElement r = gscale(ttC(cid), QI(block_sign(s_.tt, s_.gd_tt, cid)));
  r += gscale(deltam1(cid), QI(block_sign(s_.dm1, s_.gd_h, cid)));
  return r;
}

const OperatorSpec& Cobar::dA() {
  if (!dA_) {
    OperatorSpec op;
    op.deg = 1;
    op.ndeg = 0;
    op.lie_anomaly = [](GContext& ctx, const GElement& a, const GElement& b) {
      GElement r = ctx.box(ctx.mul(a, b));
      r -= ctx.mul(ctx.box(a), b);
      r -= ctx.mul(a, ctx.box(b));
      return r;
    };
    op.gen0 = [this](GContext&, int idx) { return gen0_d(idx); };
    dA_ = std::move(op);
  }
  return *dA_;
}

const OperatorSpec& Cobar::hA() {
  if (!hA_) {
    OperatorSpec op;
    op.deg = -1;
    op.ndeg = 0;
    op.mul_anomaly = [](GContext& ctx, const GElement& a, const GElement& b) {
      return ctx.lie(a, b);
    };
    op.gen0 = [this](GContext&, int idx) { return gen0_h(idx); };
    hA_ = std::move(op);
  }
  return *hA_;
}

GElement Cobar::apply_dA(const GElement& x) { return eval_op(actx_, dA(), x); }

GElement Cobar::apply_hA(const GElement& x) { return eval_op(actx_, hA(), x); }

}  // namespace ymbv
