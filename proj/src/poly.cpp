#include "ymbv/poly.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ymbv {

namespace {
struct Tab {
  std::vector<std::string> names;
  std::unordered_map<std::string, Sym> ids;
  unsigned long fresh_counter = 0;
  Tab() {
    for (const char* n : {"k0", "k1", "k2", "k3"}) {
      ids.emplace(n, (Sym)names.size());
      names.emplace_back(n);
    }
  }
};
Tab& tab() {
  static Tab t;
  return t;
}
} // namespace

Sym symtab::intern(const std::string& name) {
  auto& t = tab();
  auto it = t.ids.find(name);
  if (it != t.ids.end()) return it->second;
  Sym s = (Sym)t.names.size();
  t.ids.emplace(name, s);
  t.names.push_back(name);
  return s;
}

const std::string& symtab::name(Sym s) { return tab().names.at(s); }

Sym symtab::fresh(const std::string& prefix) {
  auto& t = tab();
  for (;;) {
    std::string n = prefix + std::to_string(t.fresh_counter++);
    if (!t.ids.count(n)) return intern(n);
  }
}

void symtab::reset_fresh_counter() { tab().fresh_counter = 0; }

Mono Mono::operator*(const Mono& o) const {
  Mono r;
  size_t i = 0, j = 0;
  while (i < e.size() || j < o.e.size()) {
    if (j == o.e.size() || (i < e.size() && e[i].first < o.e[j].first)) {
      r.e.push_back(e[i++]);
    } else if (i == e.size() || o.e[j].first < e[i].first) {
      r.e.push_back(o.e[j++]);
    } else {
      r.e.emplace_back(e[i].first, e[i].second + o.e[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

bool Mono::operator<(const Mono& o) const {
  unsigned da = total_deg(), db = o.total_deg();
  if (da != db) return da > db;  // higher total degree sorts first
  // lex on the exponent sequence in symbol-id order
  size_t i = 0, j = 0;
  while (i < e.size() && j < o.e.size()) {
    if (e[i].first != o.e[j].first)
      // the one holding a positive power of the earlier symbol sorts first
      return e[i].first < o.e[j].first;
    if (e[i].second != o.e[j].second) return e[i].second > o.e[j].second;
    ++i;
    ++j;
  }
  return false;
}

std::string Mono::str() const {
  if (e.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto& p : e) {
    if (!first) os << "*";
    first = false;
    os << symtab::name(p.first);
    if (p.second > 1) os << "^" << p.second;
  }
  return os.str();
}

Poly Poly::con(const QI& c) {
  Poly p;
  if (!c.is_zero()) p.t.emplace(Mono{}, c);
  return p;
}

Poly Poly::sym(Sym s, unsigned exp) {
  Poly p;
  if (exp == 0) return con(1);
  Mono m;
  m.e.emplace_back(s, exp);
  p.t.emplace(std::move(m), QI(1));
  return p;
}

QI Poly::const_value() const {
  if (t.empty()) return QI(0);
  if (t.size() == 1 && t.begin()->first.empty()) return t.begin()->second;
  throw std::domain_error("polynomial is not constant: " + str());
}

void Poly::add_term(const Mono& m, const QI& c) {
  if (c.is_zero()) return;
  auto it = t.find(m);
  if (it == t.end()) {
    t.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r;
  for (auto& [m, c] : t) r.t.emplace(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [m, c] : o.t) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (auto& [m, c] : o.t) add_term(m, -c);
  return *this;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (auto& [m1, c1] : t)
    for (auto& [m2, c2] : o.t) r.add_term(m1 * m2, c1 * c2);
  return r;
}

Poly Poly::operator*(const QI& c) const {
  Poly r;
  if (c.is_zero()) return r;
  for (auto& [m, c0] : t) r.t.emplace(m, c0 * c);
  return r;
}

bool Poly::operator<(const Poly& o) const {
  auto a = t.begin(), b = o.t.begin();
  while (a != t.end() && b != o.t.end()) {
    if (a->first < b->first) return true;
    if (b->first < a->first) return false;
    if (a->second != b->second) return a->second < b->second;
    ++a;
    ++b;
  }
  return a == t.end() && b != o.t.end();
}

unsigned Poly::total_deg() const {
  unsigned d = 0;
  for (auto& [m, c] : t) d = std::max(d, m.total_deg());
  return d;
}

unsigned Poly::deg_in(const std::vector<Sym>& syms) const {
  unsigned d = 0;
  for (auto& [m, c] : t) {
    unsigned md = 0;
    for (Sym s : syms) md += m.deg_of(s);
    d = std::max(d, md);
  }
  return d;
}

bool Poly::uses(Sym s) const {
  for (auto& [m, c] : t)
    if (m.deg_of(s) > 0) return true;
  return false;
}

Poly Poly::substitute(const std::map<Sym, QI>& bind) const {
  Poly r;
  for (auto& [m, c] : t) {
    QI v = c;
    Mono rest;
    for (auto& [s, e] : m.e) {
      auto it = bind.find(s);
      if (it == bind.end()) {
        rest.e.emplace_back(s, e);
      } else {
        for (unsigned p = 0; p < e; ++p) v *= it->second;
      }
    }
    r.add_term(rest, v);
  }
  return r;
}

Poly Poly::substitute_poly(const std::map<Sym, Poly>& bind) const {
  Poly r;
  for (auto& [m, c] : t) {
    Poly term = Poly::con(c);
    Mono rest;
    for (auto& [s, e] : m.e) {
      auto it = bind.find(s);
      if (it == bind.end()) {
        rest.e.emplace_back(s, e);
      } else {
        for (unsigned p = 0; p < e; ++p) term = term * it->second;
      }
    }
    Poly restp;
    restp.t.emplace(rest, QI(1));
    r += term * restp;
  }
  return r;
}

void Poly::affine_split(const std::vector<Sym>& unknowns, Poly& c0,
                        std::map<Sym, Poly>& coeff) const {
  c0 = Poly();
  coeff.clear();
  for (auto& [m, c] : t) {
    Sym hit = 0;
    unsigned nhits = 0;
    Mono rest;
    for (auto& [s, e] : m.e) {
      bool unk = false;
      for (Sym u : unknowns)
        if (u == s) { unk = true; break; }
      if (unk) {
        nhits += e;
        hit = s;
      } else {
        rest.e.emplace_back(s, e);
      }
    }
    if (nhits == 0) {
      c0.add_term(rest, c);
    } else if (nhits == 1) {
      coeff[hit].add_term(rest, c);
    } else {
      throw std::domain_error("equation not affine in unknowns: " + str());
    }
  }
}

std::map<Mono, Poly> Poly::collect(const std::vector<Sym>& syms) const {
  std::map<Mono, Poly> groups;
  for (auto& [m, c] : t) {
    Mono key, rest;
    for (auto& [s, e] : m.e) {
      bool in = false;
      for (Sym g : syms)
        if (g == s) { in = true; break; }
      (in ? key : rest).e.emplace_back(s, e);
    }
    groups[key].add_term(rest, c);
  }
  return groups;
}

std::string Poly::str() const {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : t) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (!m.empty()) os << "*" << m.str();
  }
  return os.str();
}

Poly wave_poly() {
  Poly q;
  q -= Poly::sym(K0, 2);
  q += Poly::sym(K1, 2);
  q += Poly::sym(K2, 2);
  q += Poly::sym(K3, 2);
  return q;
}

} // namespace ymbv
