#include "ymbv/linsolve.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ymbv {

namespace {

// A scalar row: sparse coefficients over unknown columns 0..n-1 plus the
// inhomogeneous constant in column n.
using Row = std::map<unsigned, QI>;

void row_axpy(Row& r, const QI& c, const Row& s) {
  for (auto& [col, v] : s) {
    auto it = r.find(col);
    if (it == r.end()) {
      QI nv = c * v;
      if (!nv.is_zero()) r.emplace(col, nv);
    } else {
      it->second += c * v;
      if (it->second.is_zero()) r.erase(it);
    }
  }
}

} // namespace

AffineSolution solve_affine(const std::vector<Poly>& eqs,
                            const std::vector<Sym>& unknowns) {
  const unsigned n = (unsigned)unknowns.size();
  std::map<Sym, unsigned> col_of;
  for (unsigned i = 0; i < n; ++i) col_of[unknowns[i]] = i;

  // Expand each polynomial equation into scalar rows, one per monomial in
  // the non-unknown symbols.
  std::vector<Row> rows;
  for (const Poly& eq : eqs) {
    Poly c0;
    std::map<Sym, Poly> coeff;
    eq.affine_split(unknowns, c0, coeff);
    std::map<Mono, Row> per_mono;
    for (auto& [m, c] : c0.t) per_mono[m][n] += c;
    for (auto& [u, p] : coeff) {
      unsigned col = col_of.at(u);
      for (auto& [m, c] : p.t) {
        auto& cell = per_mono[m][col];
        cell += c;
      }
    }
    for (auto& [m, row] : per_mono) {
      Row r;
      for (auto& [col, v] : row)
        if (!v.is_zero()) r.emplace(col, v);
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }

  AffineSolution out;
  // Incremental reduction: basis keyed by leading column.
  std::map<unsigned, Row> basis;
  for (Row r : rows) {
    for (;;) {
      if (r.empty()) break;
      unsigned lead = r.begin()->first;
      if (lead == n) {
        out.consistent = false;  // 0 = c with c != 0
        return out;
      }
      auto it = basis.find(lead);
      if (it == basis.end()) {
        // normalize leading coefficient to 1
        QI inv = r.begin()->second.inverse();
        for (auto& [col, v] : r) v *= inv;
        basis.emplace(lead, std::move(r));
        break;
      }
      QI c = -r.begin()->second;
      row_axpy(r, c, it->second);
    }
  }
  // Back-substitute to full RREF so every basis row involves only free columns.
  for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
    for (auto jt = basis.begin(); jt->first < it->first; ++jt) {
      auto hit = jt->second.find(it->first);
      if (hit != jt->second.end()) {
        QI c = -hit->second;
        row_axpy(jt->second, c, it->second);
      }
    }
  }

  for (unsigned i = 0; i < n; ++i)
    if (!basis.count(i)) out.free_syms.push_back(unknowns[i]);
  for (auto& [lead, row] : basis) {
    Poly rhs;
    for (auto& [col, v] : row) {
      if (col == lead) continue;
      if (col == n)
        rhs -= Poly::con(v);
      else
        rhs -= Poly::sym(unknowns[col]) * v;
    }
    out.assign[unknowns[lead]] = std::move(rhs);
  }
  return out;
}

std::vector<QI> find_instance_candidates() {
  return {QI(0),          QI(1),           QI(-1),
          QI::i(),        -QI::i(),        QI::frac(1, 2),
          QI::ifrac(2, 1), QI::ifrac(-2, 1), QI(2),
          QI(-2)};
}

namespace {

// Substitute one assignment into all equations, dropping satisfied ones.
// Returns false on a contradiction (nonzero constant equation).
bool substitute_all(std::vector<Poly>& eqs, Sym s, const QI& v) {
  std::map<Sym, QI> bind{{s, v}};
  std::vector<Poly> next;
  next.reserve(eqs.size());
  for (auto& e : eqs) {
    Poly r = e.substitute(bind);
    if (r.is_const()) {
      if (!r.const_value().is_zero()) return false;
    } else {
      next.push_back(std::move(r));
    }
  }
  eqs = std::move(next);
  return true;
}

// Propagate single-variable linear equations until a fixed point.
bool propagate(std::vector<Poly>& eqs, std::map<Sym, QI>& assign) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& e : eqs) {
      if (e.is_const()) {
        if (!e.const_value().is_zero()) return false;
        continue;
      }
      // Find equations of the form c1 * s + c0 = 0 with a single symbol s.
      Sym s = 0;
      bool single = true, linear = true;
      bool have = false;
      for (auto& [m, c] : e.t) {
        if (m.empty()) continue;
        if (m.e.size() != 1 || m.e[0].second != 1) { linear = false; break; }
        if (!have) {
          s = m.e[0].first;
          have = true;
        } else if (m.e[0].first != s) {
          single = false;
          break;
        }
      }
      if (!have || !single || !linear) continue;
      QI c1, c0;
      for (auto& [m, c] : e.t)
        (m.empty() ? c0 : c1) = c;
      QI v = -(c0 / c1);
      assign[s] = v;
      if (!substitute_all(eqs, s, v)) return false;
      changed = true;
      break;  // eqs vector replaced; restart the scan
    }
  }
  for (auto& e : eqs)
    if (e.is_const() && !e.const_value().is_zero()) return false;
  return true;
}

bool search(std::vector<Poly> eqs, std::map<Sym, QI> assign,
            const std::vector<Sym>& unknowns, const std::vector<QI>& cands,
            std::map<Sym, QI>& out) {
  if (!propagate(eqs, assign)) return false;
  // first unassigned unknown that still occurs in an equation
  for (Sym u : unknowns) {
    if (assign.count(u)) continue;
    bool occurs = false;
    for (auto& e : eqs)
      if (e.uses(u)) { occurs = true; break; }
    if (!occurs) continue;
    for (const QI& v : cands) {
      auto eqs2 = eqs;
      if (!substitute_all(eqs2, u, v)) continue;
      auto assign2 = assign;
      assign2[u] = v;
      if (search(std::move(eqs2), std::move(assign2), unknowns, cands, out))
        return true;
    }
    return false;  // candidate list exhausted for this unknown
  }
  // all equations satisfied; pin symbols that never occurred to 0
  for (auto& e : eqs)
    if (!(e.is_const() && e.const_value().is_zero())) return false;
  for (Sym u : unknowns)
    if (!assign.count(u)) assign[u] = QI(0);
  out = std::move(assign);
  return true;
}

} // namespace

std::optional<std::map<Sym, QI>> find_instance(const std::vector<Poly>& eqs,
                                               const std::vector<Sym>& unknowns,
                                               const std::vector<QI>& candidates) {
  for (auto& e : eqs)
    if (e.deg_in(unknowns) > 2)
      throw std::domain_error("find_instance: equation degree > 2 in unknowns");
  // Equations must hold identically in the non-unknown symbols: expand each
  // polynomial per monomial in those symbols and require every coefficient
  // (a polynomial purely in the unknowns) to vanish.
  std::set<Sym> uset(unknowns.begin(), unknowns.end());
  std::set<Poly> seen;
  std::vector<Poly> scalar_eqs;
  for (const Poly& eq : eqs) {
    std::map<Mono, Poly> per_other;
    for (auto& [m, c] : eq.t) {
      Mono mu, mo;
      for (auto& [s, e] : m.e) (uset.count(s) ? mu : mo).e.emplace_back(s, e);
      per_other[mo].add_term(mu, c);
    }
    for (auto& [mo, coeff] : per_other)
      if (!coeff.is_zero() && seen.insert(coeff).second)
        scalar_eqs.push_back(coeff);
  }
  std::map<Sym, QI> out;
  if (search(scalar_eqs, {}, unknowns, candidates, out)) return out;
  return std::nullopt;
}

std::optional<std::map<Sym, QI>> find_instance(const std::vector<Poly>& eqs,
                                               const std::vector<Sym>& unknowns) {
  return find_instance(eqs, unknowns, find_instance_candidates());
}

} // namespace ymbv
