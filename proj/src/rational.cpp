#include "qlk/rational.hpp"

#include <cctype>
#include <sstream>

namespace qlk {

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << r.get_num() << "/" << r.get_den();
  return os.str();
}

std::optional<Rat> rat_from_string(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::string num, den = "1";
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    num = s;
  } else {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
    if (den.empty()) return std::nullopt;
  }
  auto valid = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!valid(num) || !valid(den)) return std::nullopt;
  if (num[0] == '+') num = num.substr(1);
  if (den[0] == '+') den = den.substr(1);
  Int n, d;
  if (mpz_set_str(n.get_mpz_t(), num.c_str(), 10) != 0) return std::nullopt;
  if (mpz_set_str(d.get_mpz_t(), den.c_str(), 10) != 0) return std::nullopt;
  if (d == 0) return std::nullopt;
  Rat r(n, d);
  r.canonicalize();
  return r;
}

Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

std::string poly1_to_string(const std::vector<Rat>& coeffs, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (size_t d = coeffs.size(); d-- > 0;) {
    const Rat& c = coeffs[d];
    if (c == 0) continue;
    Rat a = c;
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    } else if (a < 0) {
      os << "-";
      a = -a;
    }
    bool unit = (a == 1);
    if (d == 0) {
      os << (is_integer(a) ? a.get_num().get_str() : rat_to_string(a));
    } else {
      if (!unit) os << (is_integer(a) ? a.get_num().get_str() : rat_to_string(a)) << "*";
      os << var;
      if (d > 1) os << "^" << d;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace qlk
