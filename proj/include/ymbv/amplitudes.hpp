#pragma once

// Plane-wave Feynman machinery on the 16-dimensional fiber complex: finite
// linear combinations of plane waves with exact polynomial coefficients, the
// propagator h/k^2, the second-order defect S and its homotopy, the signed
// cyclic-decomposition maps S_n, and color-ordered partial amplitudes as
// planar cubic tree sums.
//
// Sign conventions (fixed here, validated by the anchor identities in the
// tests): the arity-n maps sum over decompositions of Z/n into three
// contiguous blocks of sizes a,b,c starting at rotation r; each block is
// expanded by the all-planar-trees comb with split sign
// (-1)^{(s+1)+(1+m+s) deg(L)}, and the decomposition carries
// (-1)^{(n+1)r + b + 1 + (n+a) deg(B1) + (n+a+b+1) deg(B2)} times the
// Koszul sign of the cyclic rotation.  This is the unique rule (for the
// comb normalization E(x,y) = hsharp(xy)) that reduces to the closed
// three- and four-input formulas and satisfies the chain-map identity in
// every arity.  The amplitude tree sum uses unsigned planar combs; with
// closed degree-1 legs the pre-projection sum is d-closed.

#include "ymbv/bv.hpp"
#include "ymbv/fiber.hpp"

#include <array>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

namespace ymbv {

struct OnShellPole : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateKinematics : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Primal form degree of fiber basis index i (0..3 across the two rows).
int primal_deg(int i);

using MomKey = std::array<Poly, 4>;
struct MomKeyLess {
  bool operator()(const MomKey& a, const MomKey& b) const;
};

// Finite sum of plane waves: momentum -> fiber coefficient vector.
struct PWState {
  std::map<MomKey, FVec, MomKeyLess> t;

  bool is_zero() const { return t.empty(); }
  bool operator==(const PWState& o) const;
  PWState& operator+=(const PWState& o);
  PWState& operator-=(const PWState& o);
  friend PWState operator+(PWState a, const PWState& b) { return a += b; }
  friend PWState operator-(PWState a, const PWState& b) { return a -= b; }
};

PWState pw_scale(const PWState& x, const QI& c);

// Sorted-word coefficient table of the solved arity-3 homotopy.
struct Theta3Table {
  std::map<std::array<int, 3>, std::vector<std::pair<int, QI>>> rows;
  explicit Theta3Table(const ThetaEntry& e);
};

class PWAlgebra {
 public:
  explicit PWAlgebra(const StructureTables& t) : t_(t) {}
  const StructureTables& tables() const { return t_; }

  PWState wave(const Momentum& k, const FVec& f) const;
  Momentum momentum_of(const MomKey& k) const;

  // Primal degree of a homogeneous state (0 for the zero state); throws
  // std::invalid_argument on mixed degrees.
  int deg(const PWState& x) const;

  PWState mul(const PWState& a, const PWState& b);
  PWState d(const PWState& x);
  PWState h(const PWState& x);
  // Propagator h/k^2. Requires every momentum square to be a nonzero
  // constant; throws OnShellPole on k^2 = 0 and std::invalid_argument on a
  // non-constant square.
  PWState hsharp(const PWState& x);

  // Seven-term second-order defect of h.
  PWState S(const PWState& x, const PWState& y, const PWState& z);
  // Solved symmetric homotopy of S.
  PWState theta3(const Theta3Table& th, const PWState& x, const PWState& y,
                 const PWState& z);

  // Two-argument propagator comb E(x,y) = hsharp(xy).
  PWState E2(const PWState& x, const PWState& y);
  // Arity-4 defect map and its homotopy witness.
  PWState S4(const PWState& x, const PWState& y, const PWState& u,
             const PWState& v);
  PWState T4(const Theta3Table& th, const PWState& x, const PWState& y,
             const PWState& u, const PWState& v);

  // Signed sum over all planar binary trees on a block, with the product at
  // each vertex and the propagator on internal lines and the output line;
  // size-1 blocks are undecorated.
  PWState comb(const std::vector<PWState>& xs);
  // Signed sum over decompositions of Z/n into three contiguous blocks.
  PWState Sn(const std::vector<PWState>& xs);

  // Planar cubic tree sum with propagators on internal lines only (the
  // pre-projection color-ordered amplitude integrand).
  PWState tree_sum(const std::vector<PWState>& xs);

 private:
  const PMat& dmat_at(const MomKey& k);
  const PMat& hmat_at(const MomKey& k);

  StructureTables t_;
  std::map<MomKey, PMat, MomKeyLess> dcache_, hcache_;
};

// ---- kinematics ---------------------------------------------------------

// Random nonzero null momentum with integer components (Pythagorean
// quadruple parametrization, random axis permutation and signs).
Momentum random_null_momentum(std::mt19937& rng);

// n null momenta whose total is null and nonzero, with every proper subset
// sum off-shell (rejection sampling). Throws std::runtime_error if no
// configuration is found within the attempt budget.
std::vector<Momentum> null_config(std::mt19937& rng, int n);

// ---- partial amplitudes -------------------------------------------------

struct ExternalLeg {
  Momentum k;                   // null, nonzero
  std::vector<QI> cls;          // coordinates in the degree-1 homology
};

struct AmplitudeResult {
  Momentum total;
  bool d_closed = false;        // differential of the pre-projection sum
  std::vector<QI> h2_class;     // output class coordinates in degree 2
  PWState pre;                  // pre-projection tree sum
};

// Color-ordered partial amplitude: legs embedded by the degree-1 homology
// representatives at their momenta, planar tree sum, projection to the
// degree-2 homology at the total momentum. Throws DegenerateKinematics if a
// leg or the total momentum is not null/nonzero, OnShellPole from internal
// lines.
AmplitudeResult partial_amplitude(PWAlgebra& alg,
                                  const std::vector<ExternalLeg>& legs);

}  // namespace ymbv
