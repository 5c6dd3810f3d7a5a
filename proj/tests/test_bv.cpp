#include <doctest.h>

#include "ymbv/bv.hpp"
#include "ymbv/fiber.hpp"
#include "ymbv/linsolve.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

using namespace ymbv;

TEST_SUITE_BEGIN("bv");

namespace {

const StructureTables& solved_tables() {
  static StructureTables t = [] {
    return solve_h(StructureTables::builtin()).tables;
  }();
  return t;
}

// Shared system with theta_3 solved once (solving is the expensive step).
BVSystem& solved_system() {
  static BVSystem* sys = [] {
    auto* s = new BVSystem(solved_tables());
    auto info = s->solve_theta(3);
    REQUIRE(info.consistent);
    REQUIRE(info.free_params == 0);
    return s;
  }();
  return *sys;
}

bool zero_on_gens(BVSystem& sys, const OperatorSpec& op) {
  for (int i = 0; i < 16; ++i)
    if (!eval_op(sys.ctx(), op, sys.ctx().gen(i)).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("ansatz word enumeration matches a brute-force oracle") {
  const auto& deg = YMBasis::deg();
  const auto& rdeg = YMBasis::rdeg();
  for (int target = 0; target < 16; ++target) {
    std::set<std::vector<int>> oracle;
    for (int a = 0; a < 16; ++a)
      for (int b = 0; b < 16; ++b)
        for (int c = 0; c < 16; ++c) {
          std::vector<int> w{a, b, c};
          std::sort(w.begin(), w.end());
          if (deg[a] + deg[b] + deg[c] + 2 != deg[target]) continue;
          if (rdeg[a] + rdeg[b] + rdeg[c] != rdeg[target]) continue;
          bool dup_odd = false;
          for (int i = 1; i < 3; ++i)
            if (w[i] == w[i - 1] && (deg[w[i]] & 1)) dup_odd = true;
          if (dup_odd) continue;
          oracle.insert(w);
        }
    auto got = theta_words(3, target);
    std::set<std::vector<int>> got_set(got.begin(), got.end());
    CHECK(got.size() == got_set.size());  // no duplicates emitted
    CHECK(got_set == oracle);
    for (auto& w : got) {
      CHECK(w.size() == 3);
      CHECK(std::is_sorted(w.begin(), w.end()));
    }
  }
  // total parameter count of the arity-3 ansatz
  size_t total = 0;
  for (int t = 0; t < 16; ++t) total += theta_words(3, t).size();
  CHECK(total == 656);
}

TEST_CASE("arity-2 layer: bracket image of the product homotopy") {
  BVSystem& sys = solved_system();
  GContext& ctx = sys.ctx();
  OperatorSpec nu2 = sys.nu(2);
  // [d, nu2] = 0 and [alpha, nu2] = 0 and [nu2, nu2] = 0 on generators
  CHECK(zero_on_gens(sys, commutator(sys.d(), nu2)));
  CHECK(zero_on_gens(sys, commutator(sys.alpha(), nu2)));
  CHECK(zero_on_gens(sys, commutator(nu2, nu2)));
  // Gamma nu2 recovers theta2
  OperatorSpec g = big_gamma(nu2);
  OperatorSpec th2 = sys.theta(2);
  for (int i = 0; i < 16; ++i)
    CHECK(eval_op(ctx, g, ctx.gen(i)) == eval_op(ctx, th2, ctx.gen(i)));
  // q vanishes at arity 2 (empty convolution range)
  CHECK(zero_on_gens(sys, sys.q_op(2)));
}

TEST_CASE("arity-3 homotopy: unique exact solution") {
  BVSystem& sys = solved_system();
  CHECK(sys.is_solved(3));
  // the defining equation b_3 = 0 holds after the solve
  CHECK(zero_on_gens(sys, sys.b_op(3)));
  // all stored words sorted (graded-symmetric storage) with constant coeffs
  const ThetaEntry& e = sys.entry(3);
  for (int i = 0; i < 16; ++i)
    for (auto& [w, c] : e.rows[i]) {
      CHECK(std::is_sorted(w.begin(), w.end()));
      CHECK(c.is_const());
    }
  // the solution is nonzero
  bool any = false;
  for (int i = 0; i < 16; ++i)
    for (auto& [w, c] : e.rows[i])
      if (!c.is_zero()) any = true;
  CHECK(any);
}

TEST_CASE("mu operators land in pure product words") {
  BVSystem& sys = solved_system();
  GContext& ctx = sys.ctx();
  for (int k : {2, 3}) {
    OperatorSpec m = sys.mu(k);
    for (int i = 0; i < 16; ++i) {
      GElement r = eval_op(ctx, m, ctx.gen(i));
      for (auto& [w, c] : r.t)
        for (int atom : w) CHECK(ctx.atom_is_letter(atom));
    }
    // Gamma nu_k = theta_k (the reduced-form normalization)
    OperatorSpec g = big_gamma(sys.nu(k));
    OperatorSpec th = sys.theta(k);
    for (int i = 0; i < 16; ++i)
      CHECK(eval_op(ctx, g, ctx.gen(i)) == eval_op(ctx, th, ctx.gen(i)));
  }
}

TEST_CASE("all structure axioms hold through arity 3") {
  BVSystem& sys = solved_system();
  AxiomReport rep = sys.verify_all(3);
  for (auto& v : rep.items) {
    INFO(v.name);
    CHECK(v.pass);
  }
  CHECK(rep.all_pass());
  // families present: arity-1 (3), arity-2 A/B (4), arity-3 A/B/C (6),
  // reduced b_2, b_3, c_3
  CHECK(rep.items.size() == 16);
}

TEST_CASE("certificate round trip") {
  BVSystem& sys = solved_system();
  AxiomReport rep = sys.verify_all(3);
  std::string path = "theta_cert_test.json";
  sys.save_certificate(path, 3, rep);
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  CHECK(j["format"] == "theta-certificate-v1");
  CHECK(j["all_pass"] == true);
  CHECK(j["h_checksum"] == hmat_checksum(solved_tables().hmat));
  CHECK(j["theta"].contains("3"));
  size_t nonzero = 0;
  for (auto& row : j["theta"]["3"]) nonzero += row.size();
  CHECK(nonzero > 0);
  std::remove(path.c_str());
}

TEST_CASE("mutation: a tampered arity-3 homotopy is rejected with a witness") {
  // fresh system so the shared one stays intact
  BVSystem sys(solved_tables());
  auto info = sys.solve_theta(3);
  REQUIRE(info.consistent);
  sys.perturb(3, 8, 0, QI(1));
  OperatorSpec b = sys.b_op(3);
  bool failed = false;
  int witness = -1;
  for (int i = 0; i < 16 && !failed; ++i)
    if (!eval_op(sys.ctx(), b, sys.ctx().gen(i)).is_zero()) {
      failed = true;
      witness = i;
    }
  CHECK(failed);
  CHECK(witness >= 0);
  AxiomReport rep = sys.verify_all(3);
  CHECK(!rep.all_pass());
  bool witness_recorded = false;
  for (auto& v : rep.items)
    if (!v.pass && v.witness >= 0) witness_recorded = true;
  CHECK(witness_recorded);
}

TEST_CASE("a second independent homotopy also admits the structure") {
  // permuted candidate order yields a genuinely different h
  auto cands = find_instance_candidates();
  std::rotate(cands.begin(), cands.begin() + 1, cands.end());
  StructureTables t2 = solve_h(StructureTables::builtin(), cands).tables;
  bool different = false;
  const auto& t1 = solved_tables();
  for (int i = 0; i < 16 && !different; ++i)
    for (int j = 0; j < 16 && !different; ++j)
      if (t1.hmat[i][j] != t2.hmat[i][j]) different = true;
  CHECK(different);
  BVSystem sys(t2);
  auto info = sys.solve_theta(3);
  CHECK(info.consistent);
  CHECK(info.free_params == 0);
  AxiomReport rep = sys.verify_all(3);
  CHECK(rep.all_pass());
}

TEST_CASE("arity 4: unique solution and full axiom check" * doctest::timeout(300)) {
  BVSystem sys(solved_tables());
  auto i3 = sys.solve_theta(3);
  REQUIRE(i3.consistent);
  REQUIRE(i3.free_params == 0);
  auto i4 = sys.solve_theta(4);
  CHECK(i4.consistent);
  CHECK(i4.free_params == 0);
  CHECK(i4.params == 1628);
  AxiomReport rep = sys.verify_all(4);
  for (auto& v : rep.items) {
    INFO(v.name);
    CHECK(v.pass);
  }
  CHECK(rep.all_pass());
}

TEST_SUITE_END();
