#include "ymbv/gerst.hpp"

#include <sstream>
#include <stdexcept>

namespace ymbv {

int dual_deg(int idx) { return -YMBasis::deg()[idx]; }

// ---- GElement ----------------------------------------------------------

void GElement::add(const Word& w, const Poly& c) {
  if (c.is_zero()) return;
  auto it = t.find(w);
  if (it == t.end()) {
    t.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

GElement& GElement::operator+=(const GElement& o) {
  for (auto& [w, c] : o.t) add(w, c);
  return *this;
}

GElement& GElement::operator-=(const GElement& o) {
  for (auto& [w, c] : o.t) add(w, c * QI(-1));
  return *this;
}

GElement GElement::scalar(const QI& c) {
  GElement r;
  r.add(Word{}, Poly::con(c));
  return r;
}

GElement gscale(const GElement& x, const Poly& c) {
  GElement r;
  if (c.is_zero()) return r;
  for (auto& [w, v] : x.t) r.add(w, v * c);
  return r;
}

GElement gscale(const GElement& x, const QI& c) {
  return gscale(x, Poly::con(c));
}

// ---- atoms -------------------------------------------------------------

int GContext::letter_atom(const Letter& l) {
  auto it = letter_ids_.find(l);
  if (it != letter_ids_.end()) return it->second;
  AtomInfo info;
  info.is_letter = true;
  info.let = l;
  info.deg = ops_.deg ? ops_.deg(l.idx) : dual_deg(l.idx);
  info.ndeg = ops_.ndeg ? ops_.ndeg(l.idx) : 1;
  info.exp[TWord{l}] = QI(1);
  int id = (int)atoms_.size();
  atoms_.push_back(std::move(info));
  letter_ids_.emplace(l, id);
  return id;
}

GElement GContext::gen(int idx) {
  Letter l;
  l.idx = idx;
  return atom_elem(letter_atom(l));
}

GElement GContext::atom_elem(int id) const {
  GElement r;
  r.add(Word{id}, Poly::con(1));
  return r;
}

int GContext::word_deg(const Word& w) const {
  int d = 0;
  for (int a : w) d += atoms_[a].deg;
  return d;
}

int GContext::word_ndeg(const Word& w) const {
  int n = 0;
  for (int a : w) n += atoms_[a].ndeg;
  return n;
}

int GContext::elem_deg(const GElement& x) const {
  if (x.is_zero()) return 0;
  return word_deg(x.t.begin()->first);
}

int GContext::elem_ndeg(const GElement& x) const {
  if (x.is_zero()) return 0;
  return word_ndeg(x.t.begin()->first);
}

// ---- product -----------------------------------------------------------

std::optional<std::pair<Word, int>> GContext::canonical_word(
    std::vector<int> w) const {
  int sign = 1;
  // insertion sort with Koszul signs from adjacent transpositions
  for (size_t i = 1; i < w.size(); ++i) {
    size_t j = i;
    while (j > 0 && w[j - 1] > w[j]) {
      if ((atoms_[w[j - 1]].deg & 1) && (atoms_[w[j]].deg & 1)) sign = -sign;
      std::swap(w[j - 1], w[j]);
      --j;
    }
  }
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1] && (atoms_[w[i]].deg & 1)) return std::nullopt;
  return std::make_pair(std::move(w), sign);
}

GElement GContext::mul(const GElement& a, const GElement& b) {
  GElement r;
  for (auto& [wa, ca] : a.t)
    for (auto& [wb, cb] : b.t) {
      std::vector<int> w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      auto cw = canonical_word(std::move(w));
      if (!cw) continue;
      Poly c = ca * cb;
      if (cw->second < 0) c = c * QI(-1);
      r.add(cw->first, c);
    }
  return r;
}

// ---- bracket -----------------------------------------------------------

void GContext::texp_axpy(TExp& dst, const QI& c, const TExp& src) {
  for (auto& [w, v] : src) {
    auto it = dst.find(w);
    if (it == dst.end()) {
      QI nv = c * v;
      if (!nv.is_zero()) dst.emplace(w, nv);
    } else {
      it->second += c * v;
      if (it->second.is_zero()) dst.erase(it);
    }
  }
}

GContext::TExp GContext::texp_concat(const TExp& a, const TExp& b) {
  TExp r;
  for (auto& [wa, ca] : a)
    for (auto& [wb, cb] : b) {
      TWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      auto it = r.find(w);
      if (it == r.end()) {
        QI c = ca * cb;
        if (!c.is_zero()) r.emplace(std::move(w), c);
      } else {
        it->second += ca * cb;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  return r;
}

GElement GContext::lie_atoms(int a, int b) {
  auto key = std::make_pair(a, b);
  auto hit = lie_cache_.find(key);
  if (hit != lie_cache_.end()) return hit->second;

  const int da = atoms_[a].deg, db = atoms_[b].deg;
  const int shift_sign = ((da - 1) * (db - 1)) & 1 ? -1 : 1;
  GElement result;
  if (b < a) {
    // antisymmetry: [a,b] = -(-1)^{(da-1)(db-1)} [b,a]
    result = gscale(lie_atoms(b, a), QI(-shift_sign));
  } else if (a == b && shift_sign > 0) {
    // shifted-even square vanishes by antisymmetry over a field of char 0
    result = GElement{};
  } else {
    // expand in the associative model and reduce against the registry
    TExp e0 = texp_concat(atoms_[a].exp, atoms_[b].exp);
    texp_axpy(e0, QI(-shift_sign), texp_concat(atoms_[b].exp, atoms_[a].exp));
    TExp e = e0;
    std::map<int, QI> comb;
    bool changed = true;
    while (changed && !e.empty()) {
      changed = false;
      for (auto it = e.rbegin(); it != e.rend(); ++it) {
        auto row = rows_.find(it->first);
        if (row == rows_.end()) continue;
        QI lam = it->second;  // row pivot is normalized to 1
        texp_axpy(e, -lam, row->second.exp);
        for (auto& [atom, c] : row->second.comb) {
          comb[atom] += lam * c;
          if (comb[atom].is_zero()) comb.erase(atom);
        }
        changed = true;
        break;
      }
    }
    if (e.empty()) {
      for (auto& [atom, c] : comb) result.add(Word{atom}, Poly::con(c));
    } else {
      // independent: register a new bracket atom
      AtomInfo info;
      info.is_letter = false;
      info.left = a;
      info.right = b;
      info.deg = da + db - 1;
      info.ndeg = atoms_[a].ndeg + atoms_[b].ndeg;
      info.exp = e0;
      int id = (int)atoms_.size();
      atoms_.push_back(std::move(info));
      // residual row: e = embedding of (new atom - comb), normalized
      QI lead = e.rbegin()->second;
      QI inv = lead.inverse();
      Row row;
      row.exp = std::move(e);
      for (auto& [w, v] : row.exp) v *= inv;
      row.comb[id] = inv;
      for (auto& [atom, c] : comb) row.comb[atom] -= inv * c;
      TWord pivot = row.exp.rbegin()->first;
      rows_.emplace(std::move(pivot), std::move(row));
      result = atom_elem(id);
    }
  }
  lie_cache_.emplace(key, result);
  return result;
}

GElement GContext::lie_words(const Word& wa, const Word& wb) {
  if (wa.empty() || wb.empty()) return GElement{};
  if (wa.size() > 1) {
    // [a.rest, c] = a [rest, c] + (-1)^{deg a * deg rest} rest [a, c]
    int a = wa[0];
    Word rest(wa.begin() + 1, wa.end());
    GElement r = mul(atom_elem(a), lie_words(rest, wb));
    int s = (atoms_[a].deg * word_deg(rest)) & 1 ? -1 : 1;
    GElement rest_el;
    rest_el.add(rest, Poly::con(1));
    r += gscale(mul(rest_el, lie_words(Word{a}, wb)), QI(s));
    return r;
  }
  if (wb.size() > 1) {
    // [a, b.rest] = [a,b] rest + (-1)^{(deg a - 1) deg b} b [a, rest]
    int a = wa[0], b = wb[0];
    Word rest(wb.begin() + 1, wb.end());
    GElement rest_el;
    rest_el.add(rest, Poly::con(1));
    GElement r = mul(lie_atoms(a, b), rest_el);
    int s = ((atoms_[a].deg - 1) * atoms_[b].deg) & 1 ? -1 : 1;
    r += gscale(mul(atom_elem(b), lie_words(wa, rest)), QI(s));
    return r;
  }
  return lie_atoms(wa[0], wb[0]);
}

GElement GContext::lie(const GElement& a, const GElement& b) {
  GElement r;
  for (auto& [wa, ca] : a.t)
    for (auto& [wb, cb] : b.t) r += gscale(lie_words(wa, wb), ca * cb);
  return r;
}

// ---- momentum action ---------------------------------------------------

GElement GContext::atom_decorate(int mu, int id) {
  auto key = std::make_pair(mu, id);
  auto hit = deco_cache_.find(key);
  if (hit != deco_cache_.end()) return hit->second;
  GElement r;
  // copy: registering atoms below may reallocate atoms_
  const AtomInfo info = atoms_[id];
  if (info.is_letter) {
    if (ops_.decorate) {
      r = ops_.decorate(*this, info.let, mu);
      for (auto& [w, c] : r.t)
        if (w.size() != 1)
          throw std::logic_error("letter decoration must be letter-linear");
    } else {
      Letter l = info.let;
      int total = 0;
      for (int i = 0; i < 4; ++i) total += l.kexp[i];
      if (total + 1 > kcap_)
        throw std::runtime_error("momentum decoration exceeds the cap");
      l.kexp[mu] += 1;
      r = atom_elem(letter_atom(l));
    }
  } else {
    r = lie(atom_decorate(mu, info.left), atom_elem(info.right)) +
        lie(atom_elem(info.left), atom_decorate(mu, info.right));
  }
  deco_cache_.emplace(key, r);
  return r;
}

GElement GContext::apply_momentum(int mu, const GElement& x) {
  GElement r;
  for (auto& [w, c] : x.t) {
    for (size_t i = 0; i < w.size(); ++i) {
      GElement dec = atom_decorate(mu, w[i]);
      for (auto& [dw, dc] : dec.t) {
        std::vector<int> nw = w;
        nw[i] = dw[0];
        auto cw = canonical_word(std::move(nw));
        if (!cw) continue;
        Poly coeff = c * dc;
        if (cw->second < 0) coeff = coeff * QI(-1);
        r.add(cw->first, coeff);
      }
    }
  }
  return r;
}

GElement GContext::box(const GElement& x) {
  GElement r = gscale(apply_momentum(0, apply_momentum(0, x)), QI(-1));
  for (int i = 1; i < 4; ++i) r += apply_momentum(i, apply_momentum(i, x));
  return r;
}

// ---- serialization -----------------------------------------------------

std::string GContext::atom_str(int id) const {
  const AtomInfo& info = atoms_[id];
  std::ostringstream os;
  if (info.is_letter) {
    if (ops_.name)
      os << ops_.name(info.let.idx);
    else
      os << "d" << YMBasis::names()[info.let.idx];
    for (int i = 0; i < 4; ++i)
      for (int e = 0; e < info.let.kexp[i]; ++e) os << "@k" << i;
  } else {
    os << "(lie " << atom_str(info.left) << " " << atom_str(info.right) << ")";
  }
  return os.str();
}

std::string GContext::str(const GElement& x) const {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [w, c] : x.t) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*";
    if (w.empty()) {
      os << "1";
    } else {
      os << "(mul";
      for (int a : w) os << " " << atom_str(a);
      os << ")";
    }
  }
  return os.str();
}

// ---- operators ---------------------------------------------------------

namespace {

GElement eval_word(GContext& ctx, const OperatorSpec& op, const Word& w);

GElement eval_atom(GContext& ctx, const OperatorSpec& op, int id) {
  auto hit = op.memo->find(id);
  if (hit != op.memo->end()) return hit->second;
  GElement r;
  if (ctx.atom_is_letter(id)) {
    // copy: gen0 may register atoms and invalidate references
    const Letter l = ctx.atom_letter(id);
    if (op.gen0) {
      r = op.gen0(ctx, l.idx);
      // equivariance under decoration
      for (int mu = 0; mu < 4; ++mu)
        for (int e = 0; e < l.kexp[mu]; ++e) r = ctx.apply_momentum(mu, r);
    }
  } else {
    int a = ctx.atom_left(id), b = ctx.atom_right(id);
    GElement ea = ctx.atom_elem(a), eb = ctx.atom_elem(b);
    int da = ctx.atom_deg(a);
    if (op.lie_anomaly) {
      GElement an = op.lie_anomaly(ctx, ea, eb);
      r += (da & 1) ? gscale(an, QI(-1)) : an;
    }
    r += ctx.lie(eval_atom(ctx, op, a), eb);
    GElement tail = ctx.lie(ea, eval_atom(ctx, op, b));
    int s = (op.deg * (da - 1)) & 1 ? -1 : 1;
    r += s < 0 ? gscale(tail, QI(-1)) : tail;
  }
  op.memo->emplace(id, r);
  return r;
}

GElement eval_word(GContext& ctx, const OperatorSpec& op, const Word& w) {
  if (w.empty()) return GElement{};
  if (w.size() == 1) return eval_atom(ctx, op, w[0]);
  int a = w[0];
  Word rest(w.begin() + 1, w.end());
  GElement ea = ctx.atom_elem(a);
  GElement erest;
  erest.add(rest, Poly::con(1));
  int da = ctx.atom_deg(a);
  GElement r;
  if (op.mul_anomaly) {
    GElement an = op.mul_anomaly(ctx, ea, erest);
    r += (da & 1) ? gscale(an, QI(-1)) : an;
  }
  r += ctx.mul(eval_atom(ctx, op, a), erest);
  GElement tail = ctx.mul(ea, eval_word(ctx, op, rest));
  int s = (op.deg * da) & 1 ? -1 : 1;
  r += s < 0 ? gscale(tail, QI(-1)) : tail;
  return r;
}

}  // namespace

GElement eval_op(GContext& ctx, const OperatorSpec& op, const GElement& x) {
  GElement r;
  for (auto& [w, c] : x.t) r += gscale(eval_word(ctx, op, w), c);
  return r;
}

OperatorSpec derivation(int deg, int ndeg,
                        std::function<GElement(GContext&, int)> gen0) {
  OperatorSpec op;
  op.deg = deg;
  op.ndeg = ndeg;
  op.gen0 = std::move(gen0);
  return op;
}

OperatorSpec scale_op(const OperatorSpec& x, const QI& c) {
  if (x.mul_anomaly || x.lie_anomaly)
    throw std::logic_error("scale_op: only derivations can be rescaled");
  auto xs = std::make_shared<OperatorSpec>(x);
  return derivation(x.deg, x.ndeg, [xs, c](GContext& ctx, int idx) {
    return gscale(eval_op(ctx, *xs, ctx.gen(idx)), c);
  });
}

OperatorSpec commutator(const OperatorSpec& x, const OperatorSpec& y) {
  auto xs = std::make_shared<OperatorSpec>(x);
  auto ys = std::make_shared<OperatorSpec>(y);
  int s = (x.deg * y.deg) & 1 ? -1 : 1;
  return derivation(
      x.deg + y.deg, x.ndeg + y.ndeg, [xs, ys, s](GContext& ctx, int idx) {
        GElement g = ctx.gen(idx);
        GElement r = eval_op(ctx, *xs, eval_op(ctx, *ys, g));
        r -= gscale(eval_op(ctx, *ys, eval_op(ctx, *xs, g)), QI(s));
        return r;
      });
}

OperatorSpec big_gamma(const OperatorSpec& x) {
  int n = x.ndeg;
  if (n == 0) return derivation(x.deg + 1, 0, nullptr);
  auto xs = std::make_shared<OperatorSpec>(x);
  QI c = QI::frac(2, (long)(n + 1) * n);
  OperatorSpec g = gamma_op();
  return derivation(x.deg + 1, n, [xs, c, g](GContext& ctx, int idx) {
    return gscale(eval_op(ctx, g, eval_op(ctx, *xs, ctx.gen(idx))), c);
  });
}

OperatorSpec alpha_op() {
  OperatorSpec op;
  op.deg = -1;
  op.ndeg = 0;
  op.mul_anomaly = [](GContext& ctx, const GElement& a, const GElement& b) {
    return ctx.lie(a, b);
  };
  return op;
}

OperatorSpec beta_op() {
  OperatorSpec op;
  op.deg = 1;
  op.ndeg = 0;
  op.lie_anomaly = [](GContext& ctx, const GElement& a, const GElement& b) {
    GElement r = ctx.box(ctx.mul(a, b));
    r -= ctx.mul(ctx.box(a), b);
    r -= ctx.mul(a, ctx.box(b));
    return r;
  };
  return op;
}

OperatorSpec gamma_op() {
  OperatorSpec op;
  op.deg = 1;
  op.ndeg = 0;
  op.lie_anomaly = [](GContext& ctx, const GElement& a, const GElement& b) {
    long n = (long)ctx.elem_ndeg(a) * ctx.elem_ndeg(b);
    return gscale(ctx.mul(a, b), QI(n));
  };
  return op;
}

OperatorSpec K_op() {
  return derivation(0, 0,
                    [](GContext& ctx, int idx) { return ctx.box(ctx.gen(idx)); });
}

namespace {

// Convert one matrix entry (polynomial in momentum symbols) applied to a
// dual generator into a decorated-letter combination.
GElement decorated_gen(GContext& ctx, int idx, const Poly& coeff) {
  GElement r;
  for (auto& [m, c] : coeff.t) {
    Letter l;
    l.idx = idx;
    int total = 0;
    for (auto& [s, e] : m.e) {
      if (s > 3) throw std::logic_error("structure entry uses a non-momentum symbol");
      l.kexp[s] += (uint8_t)e;
      total += (int)e;
    }
    if (total > ctx.kcap())
      throw std::runtime_error("momentum decoration exceeds the cap");
    r.add(Word{ctx.letter_atom(l)}, Poly::con(c));
  }
  return r;
}

}  // namespace

OperatorSpec d_op(const StructureTables& t) {
  auto ts = std::make_shared<StructureTables>(t);
  return derivation(1, 0, [ts](GContext& ctx, int idx) {
    GElement r;
    for (int j = 0; j < 16; ++j)
      if (!ts->dmat[idx][j].is_zero())
        r += decorated_gen(ctx, j, ts->dmat[idx][j]);
    return r;
  });
}

OperatorSpec h_op(const StructureTables& t) {
  auto ts = std::make_shared<StructureTables>(t);
  return derivation(-1, 0, [ts](GContext& ctx, int idx) {
    GElement r;
    for (int j = 0; j < 16; ++j)
      if (!ts->hmat[idx][j].is_zero())
        r += decorated_gen(ctx, j, ts->hmat[idx][j]);
    return r;
  });
}

OperatorSpec theta2_op(const StructureTables& t) {
  auto ts = std::make_shared<StructureTables>(t);
  return derivation(2, 1, [ts](GContext& ctx, int idx) {
    GElement r;
    for (auto& e : ts->prod)
      if (e.out == idx)
        r += gscale(ctx.mul(ctx.gen(e.in1), ctx.gen(e.in2)), e.c);
    return r;
  });
}

}  // namespace ymbv
