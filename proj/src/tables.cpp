#include "ymbv/tables.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ymbv {

using nlohmann::json;

const std::array<const char*, 16>& YMBasis::names() {
  static const std::array<const char*, 16> n = {
      "one",    "e0",     "e1",     "e2",     "e3",    "e01i23",
      "e02i31", "e03i12", "s01i23", "s02i31", "s03i12", "s123",
      "s023",   "s031",   "s012",   "s0123"};
  return n;
}

const std::array<int, 16>& YMBasis::deg() {
  static const std::array<int, 16> d = {-2, -1, -1, -1, -1, 0, 0, 0,
                                        -1, -1, -1, 0,  0,  0, 0, 1};
  return d;
}

const std::array<int, 16>& YMBasis::rdeg() {
  static const std::array<int, 16> r = {0, 0, 0, 0, 0, 0, 0, 0,
                                        1, 1, 1, 1, 1, 1, 1, 1};
  return r;
}

namespace {

struct PE {
  int o, a, b;       // 1-based
  int re_n, re_d, im_n, im_d;
};

// The 80 nonzero product structure constants, (out,in1,in2) 1-based.
const PE kProd[] = {
    {1, 1, 1, 1, 1, 0, 1},
    {2, 1, 2, 1, 1, 0, 1},   {2, 2, 1, 1, 1, 0, 1},
    {3, 1, 3, 1, 1, 0, 1},   {3, 3, 1, 1, 1, 0, 1},
    {4, 1, 4, 1, 1, 0, 1},   {4, 4, 1, 1, 1, 0, 1},
    {5, 1, 5, 1, 1, 0, 1},   {5, 5, 1, 1, 1, 0, 1},
    {6, 1, 6, 1, 1, 0, 1},   {6, 2, 3, 1, 2, 0, 1},  {6, 3, 2, -1, 2, 0, 1},
    {6, 6, 1, 1, 1, 0, 1},   {6, 4, 5, 0, 1, -1, 2}, {6, 5, 4, 0, 1, 1, 2},
    {7, 1, 7, 1, 1, 0, 1},   {7, 2, 4, 1, 2, 0, 1},  {7, 4, 2, -1, 2, 0, 1},
    {7, 7, 1, 1, 1, 0, 1},   {7, 3, 5, 0, 1, 1, 2},  {7, 5, 3, 0, 1, -1, 2},
    {8, 1, 8, 1, 1, 0, 1},   {8, 2, 5, 1, 2, 0, 1},  {8, 5, 2, -1, 2, 0, 1},
    {8, 8, 1, 1, 1, 0, 1},   {8, 3, 4, 0, 1, -1, 2}, {8, 4, 3, 0, 1, 1, 2},
    {9, 1, 9, 1, 1, 0, 1},   {9, 9, 1, 1, 1, 0, 1},
    {10, 1, 10, 1, 1, 0, 1}, {10, 10, 1, 1, 1, 0, 1},
    {11, 1, 11, 1, 1, 0, 1}, {11, 11, 1, 1, 1, 0, 1},
    {12, 1, 12, 1, 1, 0, 1}, {12, 3, 9, 0, 1, 1, 1},  {12, 4, 10, 0, 1, 1, 1},
    {12, 5, 11, 0, 1, 1, 1}, {12, 9, 3, 0, 1, -1, 1}, {12, 10, 4, 0, 1, -1, 1},
    {12, 11, 5, 0, 1, -1, 1}, {12, 12, 1, 1, 1, 0, 1},
    {13, 1, 13, 1, 1, 0, 1}, {13, 2, 9, 0, 1, 1, 1},  {13, 4, 11, -1, 1, 0, 1},
    {13, 5, 10, 1, 1, 0, 1}, {13, 9, 2, 0, 1, -1, 1}, {13, 10, 5, -1, 1, 0, 1},
    {13, 11, 4, 1, 1, 0, 1}, {13, 13, 1, 1, 1, 0, 1},
    {14, 1, 14, 1, 1, 0, 1}, {14, 2, 10, 0, 1, 1, 1}, {14, 3, 11, 1, 1, 0, 1},
    {14, 5, 9, -1, 1, 0, 1}, {14, 9, 5, 1, 1, 0, 1},  {14, 10, 2, 0, 1, -1, 1},
    {14, 11, 3, -1, 1, 0, 1}, {14, 14, 1, 1, 1, 0, 1},
    {15, 1, 15, 1, 1, 0, 1}, {15, 2, 11, 0, 1, 1, 1}, {15, 3, 10, -1, 1, 0, 1},
    {15, 4, 9, 1, 1, 0, 1},  {15, 9, 4, -1, 1, 0, 1}, {15, 10, 3, 1, 1, 0, 1},
    {15, 11, 2, 0, 1, -1, 1}, {15, 15, 1, 1, 1, 0, 1},
    {16, 1, 16, 1, 1, 0, 1}, {16, 2, 12, 1, 1, 0, 1}, {16, 3, 13, -1, 1, 0, 1},
    {16, 4, 14, -1, 1, 0, 1}, {16, 5, 15, -1, 1, 0, 1}, {16, 6, 9, 0, 1, 2, 1},
    {16, 7, 10, 0, 1, 2, 1}, {16, 8, 11, 0, 1, 2, 1},  {16, 9, 6, 0, 1, 2, 1},
    {16, 10, 7, 0, 1, 2, 1}, {16, 11, 8, 0, 1, 2, 1},  {16, 12, 2, 1, 1, 0, 1},
    {16, 13, 3, -1, 1, 0, 1}, {16, 14, 4, -1, 1, 0, 1}, {16, 15, 5, -1, 1, 0, 1},
    {16, 16, 1, 1, 1, 0, 1}};

struct DE {
  int i, j;          // 1-based
  int kidx;          // 0..3, or -1 for a constant entry
  int re_n, re_d, im_n, im_d;
};

// The 35 nonzero differential entries; value = coeff * k[kidx] (or coeff).
const DE kDmat[] = {
    {2, 1, 0, 1, 1, 0, 1},   {3, 1, 1, 1, 1, 0, 1},  {4, 1, 2, 1, 1, 0, 1},
    {5, 1, 3, 1, 1, 0, 1},
    {6, 9, -1, 1, 1, 0, 1},  {6, 4, 3, 0, 1, 1, 2},  {6, 5, 2, 0, 1, -1, 2},
    {6, 2, 1, -1, 2, 0, 1},  {6, 3, 0, 1, 2, 0, 1},
    {7, 10, -1, 1, 1, 0, 1}, {7, 3, 3, 0, 1, -1, 2}, {7, 2, 2, -1, 2, 0, 1},
    {7, 5, 1, 0, 1, 1, 2},   {7, 4, 0, 1, 2, 0, 1},
    {8, 11, -1, 1, 1, 0, 1}, {8, 2, 3, -1, 2, 0, 1}, {8, 3, 2, 0, 1, 1, 2},
    {8, 4, 1, 0, 1, -1, 2},  {8, 5, 0, 1, 2, 0, 1},
    {12, 11, 3, 0, 1, 1, 1}, {12, 10, 2, 0, 1, 1, 1}, {12, 9, 1, 0, 1, 1, 1},
    {13, 10, 3, 1, 1, 0, 1}, {13, 11, 2, -1, 1, 0, 1}, {13, 9, 0, 0, 1, 1, 1},
    {14, 9, 3, -1, 1, 0, 1}, {14, 11, 1, 1, 1, 0, 1}, {14, 10, 0, 0, 1, 1, 1},
    {15, 9, 2, 1, 1, 0, 1},  {15, 10, 1, -1, 1, 0, 1}, {15, 11, 0, 0, 1, 1, 1},
    {16, 15, 3, -1, 1, 0, 1}, {16, 14, 2, -1, 1, 0, 1}, {16, 13, 1, -1, 1, 0, 1},
    {16, 12, 0, 1, 1, 0, 1}};

QI make_qi(int rn, int rd, int in, int id) {
  mpq_class r(rn, rd), i(in, id);
  r.canonicalize();
  i.canonicalize();
  return QI(r, i);
}

json poly_to_json(const Poly& p) {
  // Polynomial in k0..k3 only; terms as [e0,e1,e2,e3,"re","im"].
  json out = json::array();
  for (auto& [m, c] : p.t) {
    std::array<unsigned, 4> e{0, 0, 0, 0};
    for (auto& [s, ex] : m.e) {
      if (s > 3) throw std::runtime_error("matrix entry not numeric in parameters");
      e[s] = ex;
    }
    out.push_back(json::array(
        {e[0], e[1], e[2], e[3], c.re_str(), c.im_str()}));
  }
  return out;
}

Poly poly_from_json(const json& j) {
  Poly p;
  for (auto& t : j) {
    Mono m;
    for (Sym s = 0; s < 4; ++s) {
      unsigned e = t[s].get<unsigned>();
      if (e) m.e.emplace_back(s, e);
    }
    p.add_term(m, QI::from_strings(t[4].get<std::string>(),
                                   t[5].get<std::string>()));
  }
  return p;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string canonical_text(const StructureTables& t) {
  std::ostringstream os;
  for (auto& e : t.prod)
    os << "P " << e.out << " " << e.in1 << " " << e.in2 << " " << e.c.str()
       << "\n";
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (!t.dmat[i][j].is_zero())
        os << "D " << i << " " << j << " " << t.dmat[i][j].str() << "\n";
  return os.str();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
  return buf;
}

} // namespace

std::string table_checksum(const StructureTables& t) {
  return hex64(fnv1a(canonical_text(t)));
}

std::string hmat_checksum(const PMat& h) {
  std::ostringstream os;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (!h[i][j].is_zero()) os << i << " " << j << " " << h[i][j].str() << "\n";
  return hex64(fnv1a(os.str()));
}

StructureTables StructureTables::builtin() {
  StructureTables t;
  for (auto& e : kProd)
    t.prod.push_back(
        {e.o - 1, e.a - 1, e.b - 1, make_qi(e.re_n, e.re_d, e.im_n, e.im_d)});
  for (auto& e : kDmat) {
    QI c = make_qi(e.re_n, e.re_d, e.im_n, e.im_d);
    Poly v = e.kidx < 0 ? Poly::con(c) : Poly::sym((Sym)e.kidx) * c;
    t.dmat[e.i - 1][e.j - 1] = v;
  }
  return t;
}

const std::vector<std::pair<int, QI>>& StructureTables::prod_at(int i,
                                                                int j) const {
  if (prod_dense_.empty()) {
    prod_dense_.assign(256, {});
    for (auto& e : prod) prod_dense_[e.in1 * 16 + e.in2].emplace_back(e.out, e.c);
  }
  return prod_dense_[i * 16 + j];
}

void StructureTables::save_fixture(const std::string& path) const {
  json j;
  j["basis"] = json::array();
  for (auto* n : YMBasis::names()) j["basis"].push_back(n);
  j["deg"] = YMBasis::deg();
  j["rdeg"] = YMBasis::rdeg();
  j["prod"] = json::array();
  for (auto& e : prod)
    j["prod"].push_back(json::array(
        {e.out + 1, e.in1 + 1, e.in2 + 1, e.c.re_str(), e.c.im_str()}));
  j["dmat"] = json::array();
  for (int i = 0; i < 16; ++i)
    for (int jj = 0; jj < 16; ++jj)
      if (!dmat[i][jj].is_zero())
        j["dmat"].push_back(
            json::array({i + 1, jj + 1, poly_to_json(dmat[i][jj])}));
  j["checksum"] = table_checksum(*this);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << "\n";
}

StructureTables StructureTables::load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  in >> j;
  StructureTables t;
  for (auto& e : j.at("prod"))
    t.prod.push_back({e[0].get<int>() - 1, e[1].get<int>() - 1,
                      e[2].get<int>() - 1,
                      QI::from_strings(e[3].get<std::string>(),
                                       e[4].get<std::string>())});
  for (auto& e : j.at("dmat"))
    t.dmat[e[0].get<int>() - 1][e[1].get<int>() - 1] = poly_from_json(e[2]);
  std::string want = j.at("checksum").get<std::string>();
  std::string got = table_checksum(t);
  if (want != got)
    throw std::runtime_error("checksum mismatch in " + path + ": stored " +
                             want + ", computed " + got);
  return t;
}

void StructureTables::save_h(
    const std::string& path,
    const std::vector<std::pair<std::string, QI>>& params) const {
  json j;
  j["tables_checksum"] = table_checksum(*this);
  j["hmat"] = json::array();
  for (int i = 0; i < 16; ++i)
    for (int jj = 0; jj < 16; ++jj)
      if (!hmat[i][jj].is_zero())
        j["hmat"].push_back(
            json::array({i + 1, jj + 1, poly_to_json(hmat[i][jj])}));
  j["h_checksum"] = hmat_checksum(hmat);
  j["params"] = json::array();
  for (auto& [n, v] : params)
    j["params"].push_back(json::array({n, v.re_str(), v.im_str()}));
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << "\n";
}

void StructureTables::load_h(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  in >> j;
  for (auto& row : hmat)
    for (auto& c : row) c = Poly();
  for (auto& e : j.at("hmat"))
    hmat[e[0].get<int>() - 1][e[1].get<int>() - 1] = poly_from_json(e[2]);
  std::string want = j.at("h_checksum").get<std::string>();
  if (want != hmat_checksum(hmat))
    throw std::runtime_error("checksum mismatch in " + path);
  has_h = true;
}

} // namespace ymbv
