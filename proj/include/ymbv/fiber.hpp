#ifndef YMBV_FIBER_HPP
#define YMBV_FIBER_HPP

#include "ymbv/tables.hpp"

#include <optional>
#include <vector>

namespace ymbv {

// A momentum 4-vector with polynomial components (numeric momenta are the
// constant case). square() is -k0^2+k1^2+k2^2+k3^2 for metric diag(-1,1,1,1).
struct Momentum {
  std::array<Poly, 4> k;

  static Momentum symbolic();  // the standard symbols k0..k3
  static Momentum symbolic_named(const std::string& prefix);
  static Momentum numeric(const QI& a, const QI& b, const QI& c, const QI& d);
  Poly square() const;
  bool is_zero() const;
  Momentum operator+(const Momentum& o) const;
};

// Element of the 16-dimensional fiber with polynomial coefficients.
using FVec = std::array<Poly, 16>;

FVec fvec_basis(int i);
FVec fvec_add(const FVec& a, const FVec& b);
FVec fvec_sub(const FVec& a, const FVec& b);
FVec fvec_scale(const FVec& a, const Poly& c);
bool fvec_is_zero(const FVec& a);

FVec fiber_product(const StructureTables& t, const FVec& a, const FVec& b);

// Substitute momentum components for k0..k3 in a structure matrix.
PMat matrix_at(const PMat& m, const Momentum& p);
FVec apply_matrix(const PMat& m, const FVec& x);
PMat mat_mul(const PMat& a, const PMat& b);
PMat mat_add(const PMat& a, const PMat& b);
PMat mat_scale(const PMat& a, const Poly& c);
bool mat_is_zero(const PMat& a);
PMat identity_mat();

// ---- homotopy ----------------------------------------------------------

struct HSolveResult {
  StructureTables tables;  // with hmat resolved, has_h = true
  std::vector<std::pair<std::string, QI>> params;  // full parameter assignment
};

// Build the sparsity-patterned ansatz for h, solve the affine system
// dh + hd = wave * identity exactly, then pin the remaining free parameters
// by a deterministic search making h^2 = 0. Throws std::runtime_error if no
// assignment exists within the candidate list.
HSolveResult solve_h(const StructureTables& t);
HSolveResult solve_h(const StructureTables& t, const std::vector<QI>& candidates);

struct HReport {
  bool h2_zero = false;       // h^2 = 0 symbolically
  bool contraction_ok = false; // dh + hd = wave * id symbolically
  bool pattern_ok = false;    // sparsity/linearity pattern respected
  bool all() const { return h2_zero && contraction_ok && pattern_ok; }
};

HReport verify_h(const StructureTables& t);

// ---- plane-wave homology ----------------------------------------------

struct Homology {
  std::array<int, 4> dims{};  // per form degree 0..3
  // i: representatives of homology classes as fiber vectors (numeric).
  std::array<std::vector<std::array<QI, 16>>, 4> reps;
  // p: row functionals extracting class coordinates; p.i = identity and
  // p kills the image of d.
  std::array<std::vector<std::array<QI, 16>>, 4> proj;
};

// Exact homology of the fiber differential at a nonzero numeric momentum.
// Throws std::invalid_argument on k = 0.
Homology homology_at(const StructureTables& t, const Momentum& p);

struct KihReport {
  bool ker_d1_in_ker_h1 = false;  // degree-1 kernels
  bool im_h3_in_im_d1 = false;    // degree-2 images
  int iso_rank = -1;              // rank of the induced H^2 -> H^1 map
  // the induced map itself, for h-independence comparison
  std::vector<std::vector<QI>> iso;
  bool all() const { return ker_d1_in_ker_h1 && im_h3_in_im_d1 && iso_rank == 2; }
};

// Checks at a nonzero null momentum that h is compatible with the homology:
// the degree-1 kernel of d lies in the kernel of h, the degree-2 image of h
// (from degree 3) lies in the image of d, and h induces a rank-2 map
// H^2 -> H^1. Throws std::invalid_argument unless k != 0 and k^2 = 0.
KihReport check_kih_and_iso(const StructureTables& t, const Momentum& p);

} // namespace ymbv

#endif
