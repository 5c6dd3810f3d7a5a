#include "ymbv/qi.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ymbv {

mpq_class QI::parse_rat(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

QI QI::from_strings(const std::string& re_s, const std::string& im_s) {
  return QI(parse_rat(re_s), parse_rat(im_s));
}

QI QI::inverse() const {
  // 1/(a+bi) = (a-bi)/(a^2+b^2)
  mpq_class n = re * re + im * im;
  if (sgn(n) == 0) throw std::domain_error("division by zero in Q(i)");
  return QI(re / n, -im / n);
}

std::string QI::str() const {
  std::ostringstream os;
  if (sgn(im) == 0) {
    os << re.get_str();
  } else if (sgn(re) == 0) {
    os << im.get_str() << "*I";
  } else {
    os << re.get_str();
    if (sgn(im) > 0) os << "+";
    os << im.get_str() << "*I";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QI& q) { return os << q.str(); }

} // namespace ymbv
