#include "ymbv/fiber.hpp"
#include "ymbv/linsolve.hpp"

#include <stdexcept>

namespace ymbv {

Momentum Momentum::symbolic() {
  Momentum m;
  for (Sym s = 0; s < 4; ++s) m.k[s] = Poly::sym(s);
  return m;
}

Momentum Momentum::symbolic_named(const std::string& prefix) {
  Momentum m;
  for (int s = 0; s < 4; ++s)
    m.k[s] = Poly::sym(symtab::intern(prefix + std::to_string(s)));
  return m;
}

Momentum Momentum::numeric(const QI& a, const QI& b, const QI& c, const QI& d) {
  Momentum m;
  m.k = {Poly::con(a), Poly::con(b), Poly::con(c), Poly::con(d)};
  return m;
}

Poly Momentum::square() const {
  return -(k[0] * k[0]) + k[1] * k[1] + k[2] * k[2] + k[3] * k[3];
}

bool Momentum::is_zero() const {
  for (auto& c : k)
    if (!c.is_zero()) return false;
  return true;
}

Momentum Momentum::operator+(const Momentum& o) const {
  Momentum m;
  for (int s = 0; s < 4; ++s) m.k[s] = k[s] + o.k[s];
  return m;
}

FVec fvec_basis(int i) {
  FVec v;
  v[i] = Poly::con(1);
  return v;
}

FVec fvec_add(const FVec& a, const FVec& b) {
  FVec r;
  for (int i = 0; i < 16; ++i) r[i] = a[i] + b[i];
  return r;
}

FVec fvec_sub(const FVec& a, const FVec& b) {
  FVec r;
  for (int i = 0; i < 16; ++i) r[i] = a[i] - b[i];
  return r;
}

FVec fvec_scale(const FVec& a, const Poly& c) {
  FVec r;
  for (int i = 0; i < 16; ++i) r[i] = a[i] * c;
  return r;
}

bool fvec_is_zero(const FVec& a) {
  for (auto& c : a)
    if (!c.is_zero()) return false;
  return true;
}

FVec fiber_product(const StructureTables& t, const FVec& a, const FVec& b) {
  FVec r;
  for (int i = 0; i < 16; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < 16; ++j) {
      if (b[j].is_zero()) continue;
      for (auto& [o, c] : t.prod_at(i, j)) r[o] += a[i] * b[j] * c;
    }
  }
  return r;
}

PMat matrix_at(const PMat& m, const Momentum& p) {
  std::map<Sym, Poly> bind;
  for (Sym s = 0; s < 4; ++s) bind[s] = p.k[s];
  PMat r;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (!m[i][j].is_zero()) r[i][j] = m[i][j].substitute_poly(bind);
  return r;
}

FVec apply_matrix(const PMat& m, const FVec& x) {
  FVec r;
  for (int j = 0; j < 16; ++j) {
    if (x[j].is_zero()) continue;
    for (int i = 0; i < 16; ++i)
      if (!m[i][j].is_zero()) r[i] += m[i][j] * x[j];
  }
  return r;
}

PMat mat_mul(const PMat& a, const PMat& b) {
  PMat r;
  for (int i = 0; i < 16; ++i)
    for (int l = 0; l < 16; ++l) {
      if (a[i][l].is_zero()) continue;
      for (int j = 0; j < 16; ++j)
        if (!b[l][j].is_zero()) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

PMat mat_add(const PMat& a, const PMat& b) {
  PMat r;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

PMat mat_scale(const PMat& a, const Poly& c) {
  PMat r;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) r[i][j] = a[i][j] * c;
  return r;
}

bool mat_is_zero(const PMat& a) {
  for (auto& row : a)
    for (auto& c : row)
      if (!c.is_zero()) return false;
  return true;
}

PMat identity_mat() {
  PMat r;
  for (int i = 0; i < 16; ++i) r[i][i] = Poly::con(1);
  return r;
}

// ---- homotopy solve ----------------------------------------------------

namespace {

// Build the ansatz matrix and record the parameter symbols in order.
PMat h_ansatz(std::vector<Sym>& params) {
  const auto& deg = YMBasis::deg();
  const auto& rdeg = YMBasis::rdeg();
  PMat h;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      if (deg[i] != deg[j] - 1) continue;
      int rd = rdeg[i] - rdeg[j];
      if (rd == 0) {
        Poly e;
        for (Sym mu = 0; mu < 4; ++mu) {
          Sym p = symtab::fresh("hp");
          params.push_back(p);
          e += Poly::sym(p) * Poly::sym(mu);
        }
        h[i][j] = e;
      } else if (rd == -1) {
        Sym p = symtab::fresh("hp");
        params.push_back(p);
        h[i][j] = Poly::sym(p);
      }
    }
  return h;
}

PMat substitute_params(const PMat& m, const std::map<Sym, Poly>& bind) {
  PMat r;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (!m[i][j].is_zero()) r[i][j] = m[i][j].substitute_poly(bind);
  return r;
}

} // namespace

HSolveResult solve_h(const StructureTables& t, const std::vector<QI>& cands) {
  std::vector<Sym> params;
  PMat h = h_ansatz(params);

  // Stage 1: dh + hd = wave * id, affine in the parameters.
  PMat lhs = mat_add(mat_mul(t.dmat, h), mat_mul(h, t.dmat));
  PMat target = mat_scale(identity_mat(), wave_poly());
  std::vector<Poly> eqs;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      Poly e = lhs[i][j] - target[i][j];
      if (!e.is_zero()) eqs.push_back(std::move(e));
    }
  AffineSolution sol = solve_affine(eqs, params);
  if (!sol.consistent)
    throw std::runtime_error("homotopy ansatz: contraction system inconsistent");
  h = substitute_params(h, sol.assign);

  // Stage 2: h^2 = 0, quadratic in the remaining free parameters.
  PMat h2 = mat_mul(h, h);
  std::vector<Poly> quad;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (!h2[i][j].is_zero()) quad.push_back(h2[i][j]);
  auto inst = find_instance(quad, sol.free_syms, cands);
  if (!inst)
    throw std::runtime_error(
        "homotopy ansatz: no h^2=0 instance in candidate list");
  std::map<Sym, Poly> bind;
  for (auto& [s, v] : *inst) bind[s] = Poly::con(v);
  h = substitute_params(h, bind);

  HSolveResult out;
  out.tables = t;
  out.tables.hmat = h;
  out.tables.has_h = true;
  // Record the full assignment (pivot parameters evaluated at the instance).
  for (Sym p : params) {
    QI v;
    auto it = sol.assign.find(p);
    if (it != sol.assign.end())
      v = it->second.substitute_poly(bind).const_value();
    else
      v = inst->at(p);
    out.params.emplace_back(symtab::name(p), v);
  }
  return out;
}

HSolveResult solve_h(const StructureTables& t) {
  return solve_h(t, find_instance_candidates());
}

HReport verify_h(const StructureTables& t) {
  HReport r;
  r.h2_zero = mat_is_zero(mat_mul(t.hmat, t.hmat));
  PMat lhs = mat_add(mat_mul(t.dmat, t.hmat), mat_mul(t.hmat, t.dmat));
  PMat target = mat_scale(identity_mat(), wave_poly());
  r.contraction_ok = true;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (lhs[i][j] != target[i][j]) r.contraction_ok = false;

  const auto& deg = YMBasis::deg();
  const auto& rdeg = YMBasis::rdeg();
  r.pattern_ok = true;
  std::vector<Sym> ks = {K0, K1, K2, K3};
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const Poly& e = t.hmat[i][j];
      if (e.is_zero()) continue;
      if (deg[i] != deg[j] - 1) { r.pattern_ok = false; continue; }
      int rd = rdeg[i] - rdeg[j];
      bool ok;
      if (rd == 0) {
        // homogeneous linear in the momentum symbols
        ok = true;
        for (auto& [m, c] : e.t)
          if (m.total_deg() != 1 || m.e[0].first > 3) ok = false;
      } else if (rd == -1) {
        ok = e.is_const();
      } else {
        ok = false;
      }
      if (!ok) r.pattern_ok = false;
    }
  return r;
}

// ---- homology ----------------------------------------------------------

namespace {

using Vec = std::vector<QI>;
using Mat = std::vector<Vec>;  // row-major

// Reduced row echelon form in place; returns pivot column list.
std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pr = r;
    while (pr < rows && m[pr][c].is_zero()) ++pr;
    if (pr == rows) continue;
    std::swap(m[pr], m[r]);
    QI inv = m[r][c].inverse();
    for (auto& v : m[r]) v *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      QI f = m[i][c];
      for (size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back((int)c);
    ++r;
  }
  return pivots;
}

// Kernel basis of a matrix (columns = domain coordinates), deterministic:
// one vector per free column, in column order.
std::vector<Vec> kernel_basis(Mat m, size_t cols) {
  auto piv = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<Vec> out;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_piv[fc]) continue;
    Vec v(cols, QI(0));
    v[fc] = QI(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][fc];
    out.push_back(std::move(v));
  }
  return out;
}

// Incremental independence oracle over row vectors.
struct Indep {
  std::map<size_t, Vec> rows;  // keyed by leading index, normalized
  // Returns true (and absorbs) if v is independent of the current span.
  bool add(Vec v) {
    for (;;) {
      size_t lead = v.size();
      for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) { lead = i; break; }
      if (lead == v.size()) return false;
      auto it = rows.find(lead);
      if (it == rows.end()) {
        QI inv = v[lead].inverse();
        for (auto& x : v) x *= inv;
        rows.emplace(lead, std::move(v));
        return true;
      }
      QI f = v[lead];
      for (size_t j = 0; j < v.size(); ++j) v[j] -= f * it->second[j];
    }
  }
  bool contains(Vec v) { return !add_probe(std::move(v)); }

private:
  bool add_probe(Vec v) {
    for (;;) {
      size_t lead = v.size();
      for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) { lead = i; break; }
      if (lead == v.size()) return false;  // reduced to zero: in span
      auto it = rows.find(lead);
      if (it == rows.end()) return true;  // independent
      QI f = v[lead];
      for (size_t j = 0; j < v.size(); ++j) v[j] -= f * it->second[j];
    }
  }
};

Mat invert(Mat m) {
  size_t n = m.size();
  for (size_t i = 0; i < n; ++i) {
    m[i].resize(2 * n, QI(0));
    m[i][n + i] = QI(1);
  }
  auto piv = rref(m);
  if (piv.size() != n || (size_t)piv.back() != n - 1)
    throw std::runtime_error("singular matrix");
  Mat inv(n, Vec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

std::array<std::vector<int>, 4> degree_blocks() {
  std::array<std::vector<int>, 4> b;
  for (int i = 0; i < 16; ++i) b[YMBasis::form_deg(i)].push_back(i);
  return b;
}

// Numeric 16x16 matrix from a Poly matrix at a numeric momentum.
std::array<std::array<QI, 16>, 16> numeric_matrix(const PMat& m,
                                                  const Momentum& p) {
  PMat sub = matrix_at(m, p);
  std::array<std::array<QI, 16>, 16> r{};
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) r[i][j] = sub[i][j].const_value();
  return r;
}

} // namespace

Homology homology_at(const StructureTables& t, const Momentum& p) {
  if (p.is_zero()) throw std::invalid_argument("homology at zero momentum");
  for (auto& c : p.k)
    if (!c.is_const())
      throw std::invalid_argument("homology needs a numeric momentum");

  auto D = numeric_matrix(t.dmat, p);
  auto blocks = degree_blocks();
  Homology out;

  for (int g = 0; g < 4; ++g) {
    const auto& dom = blocks[g];
    size_t n = dom.size();

    // d_g as a matrix block: rows = degree g+1, cols = degree g.
    std::vector<Vec> ker;  // kernel of d_g in block coordinates
    if (g < 3) {
      const auto& cod = blocks[g + 1];
      Mat dg(cod.size(), Vec(n, QI(0)));
      for (size_t r = 0; r < cod.size(); ++r)
        for (size_t c = 0; c < n; ++c) dg[r][c] = D[cod[r]][dom[c]];
      ker = kernel_basis(std::move(dg), n);
    } else {
      for (size_t c = 0; c < n; ++c) {
        Vec v(n, QI(0));
        v[c] = QI(1);
        ker.push_back(std::move(v));
      }
    }

    // image of d_{g-1} inside block g
    std::vector<Vec> im_cols;
    if (g > 0) {
      const auto& prev = blocks[g - 1];
      for (size_t c = 0; c < prev.size(); ++c) {
        Vec v(n, QI(0));
        bool nz = false;
        for (size_t r = 0; r < n; ++r) {
          v[r] = D[dom[r]][prev[c]];
          nz = nz || !v[r].is_zero();
        }
        if (nz) im_cols.push_back(std::move(v));
      }
    }

    Indep span;
    std::vector<Vec> im_basis;
    for (auto& v : im_cols)
      if (span.add(v)) im_basis.push_back(v);

    std::vector<Vec> reps;
    for (auto& v : ker)
      if (span.add(v)) reps.push_back(v);
    out.dims[g] = (int)reps.size();

    // complete to a basis of the block with standard vectors, first fit
    std::vector<Vec> completion;
    for (size_t c = 0; c < n; ++c) {
      Vec v(n, QI(0));
      v[c] = QI(1);
      if (span.add(v)) completion.push_back(std::move(v));
    }

    // assemble M = [im | reps | completion] as columns; p = rows of M^{-1}
    // at the rep positions
    size_t m0 = im_basis.size(), m1 = reps.size();
    Mat M(n, Vec(n, QI(0)));
    size_t col = 0;
    for (auto& v : im_basis) {
      for (size_t r = 0; r < n; ++r) M[r][col] = v[r];
      ++col;
    }
    for (auto& v : reps) {
      for (size_t r = 0; r < n; ++r) M[r][col] = v[r];
      ++col;
    }
    for (auto& v : completion) {
      for (size_t r = 0; r < n; ++r) M[r][col] = v[r];
      ++col;
    }
    Mat Minv = invert(M);

    for (auto& v : reps) {
      std::array<QI, 16> full{};
      for (size_t r = 0; r < n; ++r) full[dom[r]] = v[r];
      out.reps[g].push_back(full);
    }
    for (size_t r = 0; r < m1; ++r) {
      std::array<QI, 16> full{};
      for (size_t c = 0; c < n; ++c) full[dom[c]] = Minv[m0 + r][c];
      out.proj[g].push_back(full);
    }
  }
  return out;
}

KihReport check_kih_and_iso(const StructureTables& t, const Momentum& p) {
  if (p.is_zero() || !p.square().is_zero())
    throw std::invalid_argument("need a nonzero null momentum");
  if (!t.has_h) throw std::invalid_argument("homotopy not solved");

  auto D = numeric_matrix(t.dmat, p);
  auto H = numeric_matrix(t.hmat, p);
  auto blocks = degree_blocks();
  KihReport rep;

  // ker d^1 subset ker h^1 (degree 1 -> degrees 2 and 0 respectively)
  {
    const auto& dom = blocks[1];
    const auto& cod = blocks[2];
    Mat d1(cod.size(), Vec(dom.size(), QI(0)));
    for (size_t r = 0; r < cod.size(); ++r)
      for (size_t c = 0; c < dom.size(); ++c) d1[r][c] = D[cod[r]][dom[c]];
    auto ker = kernel_basis(std::move(d1), dom.size());
    rep.ker_d1_in_ker_h1 = true;
    for (auto& v : ker) {
      // h maps degree 1 to degree 0 (the single basis element "one")
      QI acc(0);
      for (size_t c = 0; c < dom.size(); ++c) acc += H[0][dom[c]] * v[c];
      if (!acc.is_zero()) rep.ker_d1_in_ker_h1 = false;
    }
  }

  // im h^3 subset im d^1 (inside degree 2)
  {
    const auto& deg2 = blocks[2];
    const auto& deg1 = blocks[1];
    Indep span;
    for (size_t c = 0; c < deg1.size(); ++c) {
      Vec v(deg2.size(), QI(0));
      for (size_t r = 0; r < deg2.size(); ++r) v[r] = D[deg2[r]][deg1[c]];
      span.add(std::move(v));
    }
    Vec hv(deg2.size(), QI(0));
    for (size_t r = 0; r < deg2.size(); ++r) hv[r] = H[deg2[r]][15];
    rep.im_h3_in_im_d1 = span.contains(std::move(hv));
  }

  // induced map H^2 -> H^1: proj[1] . h . reps[2]
  {
    Homology hom = homology_at(t, p);
    size_t n2 = hom.reps[2].size(), n1 = hom.proj[1].size();
    rep.iso.assign(n1, std::vector<QI>(n2, QI(0)));
    for (size_t cj = 0; cj < n2; ++cj) {
      std::array<QI, 16> hv{};
      for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) hv[r] += H[r][c] * hom.reps[2][cj][c];
      for (size_t ri = 0; ri < n1; ++ri) {
        QI acc(0);
        for (int c = 0; c < 16; ++c) acc += hom.proj[1][ri][c] * hv[c];
        rep.iso[ri][cj] = acc;
      }
    }
    Mat m(rep.iso.size(), Vec());
    for (size_t i = 0; i < rep.iso.size(); ++i) m[i] = rep.iso[i];
    rep.iso_rank = (int)rref(m).size();
  }
  return rep;
}

} // namespace ymbv
