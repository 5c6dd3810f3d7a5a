#ifndef YMBV_QI_HPP
#define YMBV_QI_HPP

#include <gmpxx.h>
#include <string>
#include <iosfwd>

namespace ymbv {

// Exact element of Q(i): re + im*i with arbitrary-precision rational parts.
// mpq_class keeps denominators positive and in lowest terms, so equality of
// the two parts is canonical equality of the number.
struct QI {
  mpq_class re, im;

  QI() : re(0), im(0) {}
  QI(long r) : re(r), im(0) {}
  QI(const mpq_class& r) : re(r), im(0) {}
  QI(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  static QI i() { return QI(mpq_class(0), mpq_class(1)); }
  // Parse "p/q" or "p" (one rational part).
  static mpq_class parse_rat(const std::string& s);
  // num/den shorthand for tests.
  static QI frac(long num, long den) { mpq_class q(num, den); q.canonicalize(); return QI(q); }
  static QI ifrac(long num, long den) { mpq_class q(num, den); q.canonicalize(); return QI(mpq_class(0), q); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }

  QI operator-() const { return QI(-re, -im); }
  QI operator+(const QI& o) const { return QI(re + o.re, im + o.im); }
  QI operator-(const QI& o) const { return QI(re - o.re, im - o.im); }
  QI operator*(const QI& o) const {
    return QI(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  QI inverse() const;               // throws std::domain_error on zero
  QI operator/(const QI& o) const { return *this * o.inverse(); }
  QI conj() const { return QI(re, -im); }

  QI& operator+=(const QI& o) { re += o.re; im += o.im; return *this; }
  QI& operator-=(const QI& o) { re -= o.re; im -= o.im; return *this; }
  QI& operator*=(const QI& o) { *this = *this * o; return *this; }

  bool operator==(const QI& o) const { return re == o.re && im == o.im; }
  bool operator!=(const QI& o) const { return !(*this == o); }
  // Total order for canonical serialization (not an algebraic order).
  bool operator<(const QI& o) const {
    int c = cmp(re, o.re);
    if (c != 0) return c < 0;
    return cmp(im, o.im) < 0;
  }

  // "a/b" or "a/b+c/d*I" style human-readable form; stable.
  std::string str() const;
  // JSON-facing encodings of the two parts, always lowest terms.
  std::string re_str() const { return re.get_str(); }
  std::string im_str() const { return im.get_str(); }
  static QI from_strings(const std::string& re_s, const std::string& im_s);
};

std::ostream& operator<<(std::ostream& os, const QI& q);

} // namespace ymbv

#endif
