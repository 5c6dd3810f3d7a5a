#ifndef YMBV_LINSOLVE_HPP
#define YMBV_LINSOLVE_HPP

#include "ymbv/poly.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ymbv {

// Result of reducing an affine system to reduced row echelon form.
struct AffineSolution {
  bool consistent = true;
  // pivot unknown -> polynomial in the free unknowns (QI coefficients)
  std::map<Sym, Poly> assign;
  std::vector<Sym> free_syms;  // in the order the unknowns were given
};

// Solve a system of polynomial equations that are affine in `unknowns`.
// Coefficients may involve further symbols (momentum components); each
// equation is first expanded per-monomial in those extra symbols so that
// every resulting row is scalar over Q(i). Reduction is deterministic:
// rows are processed in input order and the echelon basis is keyed by the
// leading unknown in the given unknown order, so the output is the unique
// RREF of the system.
AffineSolution solve_affine(const std::vector<Poly>& eqs,
                            const std::vector<Sym>& unknowns);

// Deterministic backtracking search for an exact solution of a system of
// equations of total degree <= 2 in the unknowns. Unassigned symbols are
// tried in the given order against a fixed candidate list
// [0, 1, -1, i, -i, 1/2, 2i, -2i, 2, -2]; after every assignment, forced
// affine consequences (single-variable linear equations) are propagated.
// Returns the first full assignment found, or nullopt if the candidate
// list is exhausted.
std::optional<std::map<Sym, QI>> find_instance(const std::vector<Poly>& eqs,
                                               const std::vector<Sym>& unknowns);

// Same search with an explicit candidate order (used to produce a second,
// genuinely different homotopy for the gauge-independence checks).
std::optional<std::map<Sym, QI>> find_instance(const std::vector<Poly>& eqs,
                                               const std::vector<Sym>& unknowns,
                                               const std::vector<QI>& candidates);

// The fixed candidate list used by find_instance, exposed for tests and for
// the alternate-homotopy run (which permutes it deterministically).
std::vector<QI> find_instance_candidates();

} // namespace ymbv

#endif
