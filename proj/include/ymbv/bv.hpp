#pragma once

// Homotopy structure solver: build the arity-2 homotopy from the product
// tables, solve the higher homotopies theta_n by exact linear algebra, and
// evaluate the (reduced) structure axioms A/B/C per arity and degree.

#include "ymbv/gerst.hpp"
#include "ymbv/tables.hpp"

#include <map>
#include <string>
#include <vector>

namespace ymbv {

// Symmetric-ansatz enumeration for the arity-n homotopy acting on the dual
// generator `target` (0-based): all non-decreasing n-tuples of basis indices
// that are duplicate-free on odd-degree letters, with primal degrees summing
// to deg(target) - 2 and row degrees summing to rdeg(target).
std::vector<std::vector<int>> theta_words(int n, int target);

// Per-arity homotopy data: for each target generator, the admissible words
// with their coefficients (parameter symbols before the solve, exact
// constants afterwards).
struct ThetaEntry {
  std::array<std::vector<std::pair<std::vector<int>, Poly>>, 16> rows;
};

struct AxiomVerdict {
  std::string name;   // e.g. "A(2,2)" or "b(3)"
  bool pass = false;
  int witness = -1;   // first failing generator, -1 if none
};

struct AxiomReport {
  std::vector<AxiomVerdict> items;
  bool all_pass() const {
    for (auto& v : items)
      if (!v.pass) return false;
    return true;
  }
};

class BVSystem {
 public:
  // Tables must carry a solved contraction homotopy (has_h).
  explicit BVSystem(const StructureTables& t, int kcap = 4);

  GContext& ctx() { return ctx_; }
  const StructureTables& tables() const { return t_; }

  // Operators (cached per arity; theta(n>=3) requires ansatz or solve).
  const OperatorSpec& d() const { return d_; }
  const OperatorSpec& h() const { return h_; }
  const OperatorSpec& K() const { return K_; }
  const OperatorSpec& alpha() const { return alpha_; }
  const OperatorSpec& beta() const { return beta_; }
  OperatorSpec theta(int n);
  OperatorSpec nu(int k);
  OperatorSpec mu(int k);
  OperatorSpec q_op(int k);  // Gamma sum of [mu_m, nu_n], m+n-1=k, m != 1
  OperatorSpec b_op(int k);  // -[d, theta_k] + q_k
  OperatorSpec c_op(int k);  // 1/2 Gamma sum of [nu_m, nu_n]

  // Create the parametric ansatz for arity n (fresh parameters).
  void build_ansatz(int n);

  struct SolveInfo {
    bool consistent = false;
    size_t free_params = 0;  // nonzero means the solution is not unique
    size_t params = 0;
    size_t equations = 0;
  };
  // Solve b_n = 0 for the arity-n coefficients; requires arities < n solved.
  SolveInfo solve_theta(int n);

  const ThetaEntry& entry(int n) const { return entries_.at(n); }
  bool is_solved(int n) const;
  // Perturb one stored coefficient (mutation testing); invalidates caches.
  void perturb(int n, int target, size_t word_index, const QI& delta);

  // Evaluate every A/B/C degree component and the reduced forms b_k, c_k
  // for arities <= nmax.
  AxiomReport verify_all(int nmax);

  void save_certificate(const std::string& path, int nmax,
                        const AxiomReport& report) const;

 private:
  OperatorSpec theta_operator(int n) const;
  void invalidate(int n);
  bool op_zero_on_gens(const OperatorSpec& op, int& witness);

  StructureTables t_;
  GContext ctx_;
  OperatorSpec alpha_, beta_, K_, d_, h_;
  std::map<int, ThetaEntry> entries_;
  std::map<int, bool> solved_;
  std::map<int, OperatorSpec> theta_cache_, nu_cache_, mu_cache_;
};

// Sum of derivations of equal degree.
OperatorSpec add_ops(const std::vector<OperatorSpec>& ops);

}  // namespace ymbv
