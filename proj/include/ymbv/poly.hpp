#ifndef YMBV_POLY_HPP
#define YMBV_POLY_HPP

#include "ymbv/qi.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ymbv {

// Interned symbol. Ids 0..3 are pre-registered as the momentum components
// k0..k3; further symbols (solver parameters, extra momenta) are registered
// on demand. Registration order is deterministic for a deterministic program.
using Sym = std::uint32_t;

struct symtab {
  static Sym intern(const std::string& name);
  static const std::string& name(Sym s);
  // Fresh parameter symbol with a unique generated name (prefix + counter).
  static Sym fresh(const std::string& prefix);
  static void reset_fresh_counter();  // test isolation
};

inline constexpr Sym K0 = 0, K1 = 1, K2 = 2, K3 = 3;

// Monomial: sorted (symbol, exponent>0) pairs.
struct Mono {
  std::vector<std::pair<Sym, unsigned>> e;

  unsigned total_deg() const {
    unsigned d = 0;
    for (auto& p : e) d += p.second;
    return d;
  }
  unsigned deg_of(Sym s) const {
    for (auto& p : e)
      if (p.first == s) return p.second;
    return 0;
  }
  bool empty() const { return e.empty(); }
  Mono operator*(const Mono& o) const;
  // Graded lexicographic: higher total degree first; ties broken by the
  // exponent sequence in symbol-id order (higher power of the earliest
  // differing symbol first). This makes serialization canonical.
  bool operator<(const Mono& o) const;
  bool operator==(const Mono& o) const { return e == o.e; }
  std::string str() const;
};

class Poly {
public:
  // Terms keyed by monomial; invariant: no zero coefficients stored.
  std::map<Mono, QI> t;

  Poly() = default;
  static Poly con(const QI& c);
  static Poly con(long c) { return con(QI(c)); }
  static Poly sym(Sym s, unsigned exp = 1);

  bool is_zero() const { return t.empty(); }
  bool is_const() const { return t.empty() || (t.size() == 1 && t.begin()->first.empty()); }
  QI const_value() const;  // throws if not constant

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const QI& c) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  bool operator==(const Poly& o) const { return t == o.t; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  // Ordering for use as a map key (term-map lexicographic); canonical.
  bool operator<(const Poly& o) const;

  void add_term(const Mono& m, const QI& c);  // accumulate, drop zeros

  unsigned total_deg() const;
  unsigned deg_in(const std::vector<Sym>& syms) const;  // max combined degree
  bool uses(Sym s) const;

  // Exact substitution of values for a subset of symbols.
  Poly substitute(const std::map<Sym, QI>& bind) const;
  // Substitution of polynomials for symbols (used to apply solver output).
  Poly substitute_poly(const std::map<Sym, Poly>& bind) const;

  // Split p = c0 + sum_u coeff_u * u over the given unknowns; throws
  // std::domain_error if p has degree > 1 in the unknowns or a product of
  // two unknowns appears.
  void affine_split(const std::vector<Sym>& unknowns, Poly& c0,
                    std::map<Sym, Poly>& coeff) const;

  // Group terms by their monomial in `syms`; each group's value is the
  // cofactor polynomial in the remaining symbols.
  std::map<Mono, Poly> collect(const std::vector<Sym>& syms) const;

  std::string str() const;
};

inline Poly operator*(const QI& c, const Poly& p) { return p * c; }

// The wave operator -k0^2+k1^2+k2^2+k3^2 in the four standard momentum symbols.
Poly wave_poly();

} // namespace ymbv

#endif
