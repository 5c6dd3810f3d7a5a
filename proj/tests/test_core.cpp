#include <doctest.h>

#include "ymbv/linsolve.hpp"
#include "ymbv/poly.hpp"
#include "ymbv/qi.hpp"

#include <random>

using namespace ymbv;

TEST_SUITE_BEGIN("core");

TEST_CASE("gaussian rational basics") {
  QI i = QI::i();
  CHECK(i * i == QI(-1));
  CHECK((QI(1) + i) * (QI(1) - i) == QI(2));
  QI half = QI::frac(1, 2);
  CHECK(half + half == QI(1));
  CHECK((QI(3) / QI(2)) == QI::frac(3, 2));
  // inverse of a+bi
  QI z = QI(mpq_class(2), mpq_class(3));
  CHECK(z * z.inverse() == QI(1));
  CHECK_THROWS_AS(QI(0).inverse(), std::domain_error);
  // string round trip
  CHECK(QI::from_strings("-3/4", "5/7") == QI(mpq_class(-3, 4), mpq_class(5, 7)));
}

TEST_CASE("polynomial ring axioms on random samples") {
  std::mt19937 rng(12345);
  Sym u = symtab::intern("u1"), v = symtab::intern("v1");
  auto rnd = [&]() {
    Poly p;
    for (int t = 0; t < 4; ++t) {
      Mono m;
      std::vector<Sym> syms = {K0, K1, K2, K3, u, v};
      Sym s = syms[rng() % syms.size()];
      unsigned e = 1 + rng() % 2;
      m.e.emplace_back(s, e);
      p.add_term(m, QI((long)(rng() % 7) - 3));
    }
    return p;
  };
  for (int trial = 0; trial < 50; ++trial) {
    Poly a = rnd(), b = rnd(), c = rnd();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("wave operator examples") {
  Poly q = wave_poly();
  // doubling
  CHECK(q + q == q * QI(2));
  // null momentum (3,1,2,2): -9+1+4+4 = 0
  std::map<Sym, QI> null_k{{K0, QI(3)}, {K1, QI(1)}, {K2, QI(2)}, {K3, QI(2)}};
  CHECK(q.substitute(null_k).is_zero());
  // timelike unit momentum
  std::map<Sym, QI> tl{{K0, QI(1)}, {K1, QI(0)}, {K2, QI(0)}, {K3, QI(0)}};
  CHECK(q.substitute(tl).const_value() == QI(-1));
  // partial substitution keeps the unbound symbol
  Sym u = symtab::intern("u1");
  Poly p = Poly::sym(K0) * Poly::sym(u);
  Poly r = p.substitute({{K0, QI(2)}});
  CHECK(r == Poly::sym(u) * QI(2));
}

TEST_CASE("affine solve: simple systems") {
  Sym x = symtab::intern("x_t"), y = symtab::intern("y_t");
  // x + i y = 0, y = 2  =>  x = -2i
  std::vector<Poly> eqs = {Poly::sym(x) + Poly::sym(y) * QI::i(),
                           Poly::sym(y) - Poly::con(2)};
  auto sol = solve_affine(eqs, {x, y});
  REQUIRE(sol.consistent);
  CHECK(sol.free_syms.empty());
  CHECK(sol.assign.at(x) == Poly::con(QI::ifrac(-2, 1)));
  CHECK(sol.assign.at(y) == Poly::con(2));

  // rank-0 system
  auto sol2 = solve_affine({Poly::sym(x) - Poly::sym(x)}, {x});
  REQUIRE(sol2.consistent);
  CHECK(sol2.free_syms == std::vector<Sym>{x});

  // inconsistent
  auto sol3 = solve_affine({Poly::sym(x), Poly::sym(x) - Poly::con(1)}, {x});
  CHECK_FALSE(sol3.consistent);
}

TEST_CASE("affine solve: momentum-dependent coefficients expand per monomial") {
  Sym x = symtab::intern("x_t"), y = symtab::intern("y_t");
  // k0*x + k1*y = k0 + 2*k1 forces x=1, y=2
  Poly eq = Poly::sym(K0) * Poly::sym(x) + Poly::sym(K1) * Poly::sym(y) -
            Poly::sym(K0) - Poly::sym(K1) * QI(2);
  auto sol = solve_affine({eq}, {x, y});
  REQUIRE(sol.consistent);
  CHECK(sol.assign.at(x) == Poly::con(1));
  CHECK(sol.assign.at(y) == Poly::con(2));
  // substituting the solution back annihilates the system
  std::map<Sym, Poly> bind;
  for (auto& [s, p] : sol.assign) bind[s] = p;
  CHECK(eq.substitute_poly(bind).is_zero());
}

TEST_CASE("find_instance: candidate order and propagation") {
  Sym u = symtab::intern("u_t"), v = symtab::intern("v_t");
  // u^2 - 1 = 0 -> first working candidate is 1
  auto r1 = find_instance({Poly::sym(u) * Poly::sym(u) - Poly::con(1)}, {u});
  REQUIRE(r1.has_value());
  CHECK(r1->at(u) == QI(1));
  // u*v = 2i with u = 1 forces v = 2i by propagation
  auto r2 = find_instance({Poly::sym(u) * Poly::sym(v) - Poly::con(QI::ifrac(2, 1)),
                           Poly::sym(u) - Poly::con(1)},
                          {u, v});
  REQUIRE(r2.has_value());
  CHECK(r2->at(u) == QI(1));
  CHECK(r2->at(v) == QI::ifrac(2, 1));
  // unsatisfiable within candidates
  auto r3 = find_instance({Poly::sym(u) * Poly::sym(u) - Poly::con(3)}, {u});
  CHECK_FALSE(r3.has_value());
}

TEST_CASE("serialization round trip is identity on canonical forms") {
  QI z = QI(mpq_class(22, 7), mpq_class(-5, 3));
  CHECK(QI::from_strings(z.re_str(), z.im_str()) == z);
}

TEST_SUITE_END();
