#include "bbk/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace bbk {

Rat::Rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("Rat: zero denominator");
  mpq_init(v_);
  mpq_set_si(v_, num, 1);
  Rat d;
  mpq_set_si(d.v_, den, 1);
  mpq_div(v_, v_, d.v_);
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.isZero()) throw std::invalid_argument("Rat: division by zero");
  Rat r;
  mpq_div(r.v_, a.v_, b.v_);
  return r;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.isZero()) throw std::invalid_argument("Rat: division by zero");
  mpq_div(v_, v_, o.v_);
  return *this;
}

Rat Rat::invFactorial(int k) {
  Rat f(1);
  for (int i = 2; i <= k; ++i) f *= Rat(i);
  return Rat(1) / f;
}

std::string Rat::str() const {
  char* s = mpq_get_str(nullptr, 10, v_);
  std::string out(s);
  free(s);
  return out;
}

std::optional<Rat> Rat::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  // Validate shape by hand; mpq_set_str accepts some forms we do not want.
  auto isInt = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view() : s.substr(slash + 1);
  if (!isInt(num)) return std::nullopt;
  if (slash != std::string_view::npos && !isInt(den)) return std::nullopt;

  Rat r;
  std::string copy(s);
  if (mpq_set_str(r.v_, copy.c_str(), 10) != 0) return std::nullopt;
  if (mpz_sgn(mpq_denref(r.v_)) == 0) return std::nullopt;
  mpq_canonicalize(r.v_);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace bbk
