#include "ymbv/amplitudes.hpp"

#include <algorithm>
#include <functional>

namespace ymbv {

int primal_deg(int i) { return YMBasis::form_deg(i); }

bool MomKeyLess::operator()(const MomKey& a, const MomKey& b) const {
  for (int mu = 0; mu < 4; ++mu) {
    if (a[mu] < b[mu]) return true;
    if (b[mu] < a[mu]) return false;
  }
  return false;
}

bool PWState::operator==(const PWState& o) const {
  if (t.size() != o.t.size()) return false;
  auto it = o.t.begin();
  for (auto& [k, f] : t) {
    if (MomKeyLess{}(k, it->first) || MomKeyLess{}(it->first, k)) return false;
    for (int i = 0; i < 16; ++i)
      if (f[i] != it->second[i]) return false;
    ++it;
  }
  return true;
}

PWState& PWState::operator+=(const PWState& o) {
  for (auto& [k, f] : o.t) {
    auto [it, fresh] = t.try_emplace(k, f);
    if (!fresh) it->second = fvec_add(it->second, f);
    if (fvec_is_zero(it->second)) t.erase(it);
  }
  return *this;
}

PWState& PWState::operator-=(const PWState& o) {
  for (auto& [k, f] : o.t) {
    auto [it, fresh] = t.try_emplace(k, FVec{});
    it->second = fvec_sub(it->second, f);
    if (fvec_is_zero(it->second)) t.erase(it);
  }
  return *this;
}

PWState pw_scale(const PWState& x, const QI& c) {
  PWState r;
  if (c.is_zero()) return r;
  for (auto& [k, f] : x.t) r.t.emplace(k, fvec_scale(f, Poly::con(c)));
  return r;
}

static QI sg(int e) { return (e % 2) ? QI(-1) : QI(1); }

Theta3Table::Theta3Table(const ThetaEntry& e) {
  for (int target = 0; target < 16; ++target)
    for (auto& [word, coeff] : e.rows[target]) {
      if (coeff.is_zero()) continue;
      std::array<int, 3> w{word[0], word[1], word[2]};
      // Dictionary between the derivation-style coefficient and the
      // symmetric trilinear map: the stored value is 4/stab(word) times the
      // map coefficient, with stab the order of the word's stabilizer.
      // Determined by solving the defining homotopy identity directly on the
      // primal side (unique solution) and comparing.
      long stab = 1;
      if (w[0] == w[1] && w[1] == w[2]) stab = 6;
      else if (w[0] == w[1] || w[1] == w[2]) stab = 2;
      QI c = coeff.const_value() * QI::frac(stab, 4);
      rows[w].push_back({target, c});
    }
}

PWState PWAlgebra::wave(const Momentum& k, const FVec& f) const {
  PWState r;
  if (!fvec_is_zero(f)) r.t.emplace(k.k, f);
  return r;
}

Momentum PWAlgebra::momentum_of(const MomKey& k) const {
  Momentum m;
  m.k = k;
  return m;
}

int PWAlgebra::deg(const PWState& x) const {
  int d = 0;
  bool seen = false;
  for (auto& [k, f] : x.t)
    for (int i = 0; i < 16; ++i) {
      if (f[i].is_zero()) continue;
      if (seen && d != primal_deg(i))
        throw std::invalid_argument("inhomogeneous plane-wave state");
      d = primal_deg(i);
      seen = true;
    }
  return d;
}

PWState PWAlgebra::mul(const PWState& a, const PWState& b) {
  PWState r;
  for (auto& [ka, fa] : a.t)
    for (auto& [kb, fb] : b.t) {
      MomKey k;
      for (int mu = 0; mu < 4; ++mu) k[mu] = ka[mu] + kb[mu];
      PWState term;
      FVec f = fiber_product(t_, fa, fb);
      if (!fvec_is_zero(f)) term.t.emplace(k, f);
      r += term;
    }
  return r;
}

const PMat& PWAlgebra::dmat_at(const MomKey& k) {
  auto it = dcache_.find(k);
  if (it == dcache_.end())
    it = dcache_.emplace(k, matrix_at(t_.dmat, momentum_of(k))).first;
  return it->second;
}

const PMat& PWAlgebra::hmat_at(const MomKey& k) {
  auto it = hcache_.find(k);
  if (it == hcache_.end())
    it = hcache_.emplace(k, matrix_at(t_.hmat, momentum_of(k))).first;
  return it->second;
}

PWState PWAlgebra::d(const PWState& x) {
  PWState r;
  for (auto& [k, f] : x.t) {
    FVec g = apply_matrix(dmat_at(k), f);
    PWState term;
    if (!fvec_is_zero(g)) term.t.emplace(k, g);
    r += term;
  }
  return r;
}

PWState PWAlgebra::h(const PWState& x) {
  PWState r;
  for (auto& [k, f] : x.t) {
    FVec g = apply_matrix(hmat_at(k), f);
    PWState term;
    if (!fvec_is_zero(g)) term.t.emplace(k, g);
    r += term;
  }
  return r;
}

PWState PWAlgebra::hsharp(const PWState& x) {
  PWState r;
  for (auto& [k, f] : x.t) {
    Poly q = momentum_of(k).square();
    if (q.is_zero()) throw OnShellPole("propagator at a null momentum");
    if (!q.is_const())
      throw std::invalid_argument("propagator requires a numeric momentum");
    FVec g = apply_matrix(hmat_at(k), f);
    g = fvec_scale(g, Poly::con(q.const_value().inverse()));
    PWState term;
    if (!fvec_is_zero(g)) term.t.emplace(k, g);
    r += term;
  }
  return r;
}

PWState PWAlgebra::S(const PWState& x, const PWState& y, const PWState& z) {
  int dx = deg(x), dy = deg(y);
  PWState xy = mul(x, y), yz = mul(y, z), xz = mul(x, z);
  PWState r = h(mul(xy, z));
  r -= mul(h(xy), z);
  r -= pw_scale(mul(x, h(yz)), sg(dx));
  r -= pw_scale(mul(y, h(xz)), sg((dx + 1) * dy));
  r += mul(h(x), mul(y, z));
  r += pw_scale(mul(x, mul(h(y), z)), sg(dx));
  r += pw_scale(mul(xy, h(z)), sg(dx + dy));
  return r;
}

PWState PWAlgebra::theta3(const Theta3Table& th, const PWState& x,
                          const PWState& y, const PWState& z) {
  PWState r;
  for (auto& [kx, fx] : x.t)
    for (auto& [ky, fy] : y.t)
      for (auto& [kz, fz] : z.t) {
        MomKey k;
        for (int mu = 0; mu < 4; ++mu) k[mu] = kx[mu] + ky[mu] + kz[mu];
        FVec out;
        for (int a = 0; a < 16; ++a) {
          if (fx[a].is_zero()) continue;
          for (int b = 0; b < 16; ++b) {
            if (fy[b].is_zero()) continue;
            for (int c = 0; c < 16; ++c) {
              if (fz[c].is_zero()) continue;
              // sort (a,b,c) with the Koszul sign of the permutation
              std::array<int, 3> idx{a, b, c};
              std::array<int, 3> dgs{primal_deg(a), primal_deg(b),
                                     primal_deg(c)};
              int sign = 1;
              for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2 - i; ++j)
                  if (idx[j] > idx[j + 1]) {
                    if ((dgs[j] & 1) && (dgs[j + 1] & 1)) sign = -sign;
                    std::swap(idx[j], idx[j + 1]);
                    std::swap(dgs[j], dgs[j + 1]);
                  }
              auto it = th.rows.find(idx);
              if (it == th.rows.end()) continue;
              Poly c3 = fx[a] * fy[b] * fz[c] * QI(sign);
              for (auto& [target, coeff] : it->second)
                out[target] += c3 * coeff;
            }
          }
        }
        PWState term;
        if (!fvec_is_zero(out)) term.t.emplace(k, out);
        r += term;
      }
  return r;
}

PWState PWAlgebra::E2(const PWState& x, const PWState& y) {
  return hsharp(mul(x, y));
}

PWState PWAlgebra::S4(const PWState& x, const PWState& y, const PWState& u,
                      const PWState& v) {
  int dx = deg(x), dy = deg(y), du = deg(u), dv = deg(v);
  PWState r = S(E2(x, y), u, v);
  r -= pw_scale(S(x, E2(y, u), v), sg(dx));
  r += pw_scale(S(x, y, E2(u, v)), sg(dx + dy));
  r -= pw_scale(S(y, u, E2(v, x)), sg(dy + du + dx * (dy + du + dv)));
  return r;
}

PWState PWAlgebra::T4(const Theta3Table& th, const PWState& x,
                      const PWState& y, const PWState& u, const PWState& v) {
  int dx = deg(x), dy = deg(y), du = deg(u), dv = deg(v);
  PWState r = theta3(th, E2(x, y), u, v);
  r -= pw_scale(theta3(th, x, E2(y, u), v), sg(dx));
  r += pw_scale(theta3(th, x, y, E2(u, v)), sg(dx + dy));
  r -= pw_scale(theta3(th, y, u, E2(v, x)),
                sg(dy + du + dx * (dy + du + dv)));
  return r;
}

PWState PWAlgebra::comb(const std::vector<PWState>& xs) {
  // Sum over all planar binary trees with the product at each vertex and
  // the propagator on each internal line and on the output line.  The split
  // sign (-1)^{(s+1)+(1+m+s) deg(L)} is the unique choice (up to
  // normalization, fixed by comb(x,y) = h#(xy)) for which
  //   d comb(w) = sum_s +- comb(L) comb(R) - (-1)^m comb(d w)
  // holds, which drives the chain-map property of the cyclic sums.
  int m = (int)xs.size();
  if (m == 1) return xs[0];
  PWState acc;
  for (int s = 1; s < m; ++s) {
    std::vector<PWState> left(xs.begin(), xs.begin() + s);
    std::vector<PWState> right(xs.begin() + s, xs.end());
    int dleft = 0;
    for (auto& l : left) dleft += deg(l);
    acc += pw_scale(mul(comb(left), comb(right)),
                    sg((s + 1) + (1 + m + s) * dleft));
  }
  return hsharp(acc);
}

PWState PWAlgebra::Sn(const std::vector<PWState>& xs) {
  int n = (int)xs.size();
  if (n < 3) throw std::invalid_argument("Sn needs at least three inputs");
  std::vector<int> dgs(n);
  for (int i = 0; i < n; ++i) dgs[i] = deg(xs[i]);
  PWState r;
  // Sum over the C(n,3) decompositions of the cyclically ordered inputs
  // into three contiguous blocks B1,B2,B3 (cut positions c1<c2<c3; the
  // third block wraps around).  The sign is
  //   (-1)^{(n+1) r + b + 1}  x  (Koszul sign of the cyclic rotation)
  //   x  (-1)^{(n+a) deg(B1) + (n+a+b+1) deg(B2)}
  // with r = c1 and a,b the sizes of B1,B2.  The degree part is forced by
  // the chain-map requirement; the constant part by the cancellation of
  // the comb boundary terms through the four-argument product identity.
  // It reproduces the closed three- and four-input formulas.
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = c1 + 1; c2 < n; ++c2)
      for (int c3 = c2 + 1; c3 < n; ++c3) {
        int rrot = c1, a = c2 - c1, b = c3 - c2;
        std::vector<PWState> rot(n);
        std::vector<int> rdg(n);
        for (int i = 0; i < n; ++i) {
          rot[i] = xs[(c1 + i) % n];
          rdg[i] = dgs[(c1 + i) % n];
        }
        // Koszul sign of moving the first rrot arguments past the rest
        int head = 0, tail = 0;
        for (int i = 0; i < rrot; ++i) head += dgs[i];
        for (int i = rrot; i < n; ++i) tail += dgs[i];
        std::vector<PWState> b1(rot.begin(), rot.begin() + a);
        std::vector<PWState> b2(rot.begin() + a, rot.begin() + a + b);
        std::vector<PWState> b3(rot.begin() + a + b, rot.end());
        int d1 = 0, d2 = 0;
        for (int i = 0; i < a; ++i) d1 += rdg[i];
        for (int i = a; i < a + b; ++i) d2 += rdg[i];
        int e = head * tail + (n + 1) * rrot + b + 1 + (n + a) * d1 +
                (n + a + b + 1) * d2;
        r += pw_scale(S(comb(b1), comb(b2), comb(b3)), sg(e));
      }
  return r;
}

PWState PWAlgebra::tree_sum(const std::vector<PWState>& xs) {
  if (xs.size() < 2)
    throw std::invalid_argument("tree sum needs at least two inputs");
  // child(block): undecorated leaf, or propagator applied to the subtree sum
  std::function<PWState(size_t, size_t)> node = [&](size_t lo, size_t hi) {
    PWState acc;
    for (size_t s = lo + 1; s < hi; ++s) {
      PWState L = (s - lo == 1) ? xs[lo] : hsharp(node(lo, s));
      PWState R = (hi - s == 1) ? xs[s] : hsharp(node(s, hi));
      acc += mul(L, R);
    }
    return acc;
  };
  return node(0, xs.size());
}

// ---- kinematics ---------------------------------------------------------

Momentum random_null_momentum(std::mt19937& rng) {
  for (;;) {
    long a = (long)(rng() % 9) - 4, b = (long)(rng() % 9) - 4,
         c = (long)(rng() % 9) - 4;
    long t = a * a + b * b + c * c;
    long sp[3] = {a * a + b * b - c * c, 2 * a * c, 2 * b * c};
    if (t == 0 || (sp[0] == 0 && sp[1] == 0 && sp[2] == 0)) continue;
    int perm = (int)(rng() % 6);
    static const int pt[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                 {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    long k1 = sp[pt[perm][0]], k2 = sp[pt[perm][1]], k3 = sp[pt[perm][2]];
    if (rng() % 2) k1 = -k1;
    if (rng() % 2) k2 = -k2;
    if (rng() % 2) k3 = -k3;
    if (rng() % 2) t = -t;
    return Momentum::numeric(QI(t), QI(k1), QI(k2), QI(k3));
  }
}

static QI mink_dot(const Momentum& p, const Momentum& q) {
  QI r = QI(0) - p.k[0].const_value() * q.k[0].const_value();
  for (int mu = 1; mu < 4; ++mu)
    r += p.k[mu].const_value() * q.k[mu].const_value();
  return r;
}

std::vector<Momentum> null_config(std::mt19937& rng, int n) {
  for (int attempt = 0; attempt < 4000; ++attempt) {
    std::vector<Momentum> ks;
    for (int i = 0; i + 1 < n; ++i) ks.push_back(random_null_momentum(rng));
    Momentum P = ks[0];
    for (int i = 1; i + 1 < n; ++i) P = P + ks[i];
    QI P2 = P.square().const_value();
    if (P2.is_zero()) continue;
    Momentum u = random_null_momentum(rng);
    QI pu = mink_dot(P, u);
    if (pu.is_zero()) continue;
    QI lam = (QI(0) - P2) / (pu * QI(2));
    Momentum last;
    for (int mu = 0; mu < 4; ++mu)
      last.k[mu] = Poly::con(u.k[mu].const_value() * lam);
    ks.push_back(last);
    // genericity: every proper subset of size >= 2 off-shell
    bool ok = true;
    for (unsigned mask = 1; mask + 1 < (1u << n) && ok; ++mask) {
      int bits = __builtin_popcount(mask);
      if (bits < 2 || bits >= n) continue;
      Momentum s;
      bool first = true;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) {
          s = first ? ks[i] : s + ks[i];
          first = false;
        }
      if (s.square().const_value().is_zero()) ok = false;
    }
    for (auto& k : ks)
      if (k.is_zero()) ok = false;
    Momentum tot = ks[0];
    for (int i = 1; i < n; ++i) tot = tot + ks[i];
    if (tot.is_zero()) ok = false;
    if (ok) return ks;
  }
  throw std::runtime_error("no generic null configuration found");
}

// ---- partial amplitudes -------------------------------------------------

AmplitudeResult partial_amplitude(PWAlgebra& alg,
                                  const std::vector<ExternalLeg>& legs) {
  if (legs.size() < 2)
    throw std::invalid_argument("amplitude needs at least two legs");
  std::vector<PWState> states;
  Momentum total;
  bool first = true;
  for (auto& leg : legs) {
    if (leg.k.is_zero() || !leg.k.square().const_value().is_zero())
      throw DegenerateKinematics("leg momentum must be null and nonzero");
    Homology hom = homology_at(alg.tables(), leg.k);
    if (leg.cls.size() != hom.reps[1].size())
      throw std::invalid_argument("class vector has wrong dimension");
    FVec f;
    for (size_t j = 0; j < leg.cls.size(); ++j)
      for (int i = 0; i < 16; ++i)
        f[i] += Poly::con(leg.cls[j] * hom.reps[1][j][i]);
    states.push_back(alg.wave(leg.k, f));
    total = first ? leg.k : total + leg.k;
    first = false;
  }
  AmplitudeResult res;
  res.total = total;
  if (total.is_zero() || !total.square().const_value().is_zero())
    throw DegenerateKinematics("total momentum must be null and nonzero");
  res.pre = alg.tree_sum(states);
  res.d_closed = alg.d(res.pre).is_zero();
  Homology hout = homology_at(alg.tables(), total);
  FVec out;
  auto it = res.pre.t.find(total.k);
  if (it != res.pre.t.end()) out = it->second;
  for (auto& row : hout.proj[2]) {
    QI c;
    for (int i = 0; i < 16; ++i)
      if (!out[i].is_zero()) c += row[i] * out[i].const_value();
    res.h2_class.push_back(c);
  }
  return res;
}

}  // namespace ymbv
