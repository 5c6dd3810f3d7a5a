#ifndef YMBV_TABLES_HPP
#define YMBV_TABLES_HPP

#include "ymbv/poly.hpp"

#include <array>
#include <string>
#include <vector>

namespace ymbv {

// The 16-element graded basis of the fiber model. Indices are 0-based in
// code; the customary 1-based indices appear in serialized tables.
// deg is the shifted grading (V = fiber[2]); the physical form degree is
// deg + 2 in {0,1,2,3}. rdeg is the row degree (0 = top row, 1 = bottom).
struct YMBasis {
  static constexpr int N = 16;
  static const std::array<const char*, 16>& names();
  static const std::array<int, 16>& deg();   // -2,-1,...,1
  static const std::array<int, 16>& rdeg();  // 0 or 1
  static int form_deg(int i) { return deg()[i] + 2; }
};

struct ProdEntry {
  int out, in1, in2;  // 0-based
  QI c;
};

using PMat = std::array<std::array<Poly, 16>, 16>;  // [row][col]

// Structure constants of the fiber dgca plus (optionally) a solved homotopy.
// Conventions: product(a,b)[o] = sum prod(o,i,j) a[i] b[j];
// d(basis_j) = sum_i dmat[i][j] basis_i, and the same for hmat.
struct StructureTables {
  std::vector<ProdEntry> prod;
  PMat dmat;
  PMat hmat;          // zero until solved or loaded
  bool has_h = false;

  // Dense view of the product for fast contraction: by (in1,in2) -> list of
  // (out, coefficient).
  const std::vector<std::pair<int, QI>>& prod_at(int i, int j) const;

  static StructureTables builtin();  // the literal reference tables

  // Fixture round-trip. The file carries a checksum over the canonical
  // serialization of the tables; load_fixture throws std::runtime_error
  // ("checksum mismatch ...") if it does not match.
  void save_fixture(const std::string& path) const;
  static StructureTables load_fixture(const std::string& path);

  // h serialization (matrix + the parameter assignment that produced it).
  void save_h(const std::string& path,
              const std::vector<std::pair<std::string, QI>>& params) const;
  void load_h(const std::string& path);

private:
  mutable std::vector<std::vector<std::pair<int, QI>>> prod_dense_;  // lazy
};

// Fingerprint used for fixture integrity and certificate cross-references
// (FNV-1a over the canonical text form).
std::string table_checksum(const StructureTables& t);
std::string hmat_checksum(const PMat& h);

} // namespace ymbv

#endif
