#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace bbk {

/// Arbitrary-precision rational scalar over GMP's mpq_t.
///
/// Thin value wrapper: all conversions are explicit and no expression
/// templates leak out, so the type is safe as an Eigen scalar. Every value
/// is kept canonical (positive denominator, reduced fraction).
class Rat {
 public:
  Rat() { mpq_init(v_); }
  Rat(long n) {
    mpq_init(v_);
    mpq_set_si(v_, n, 1);
  }
  Rat(int n) : Rat(static_cast<long>(n)) {}
  Rat(long num, long den);
  Rat(const Rat& o) {
    mpq_init(v_);
    mpq_set(v_, o.v_);
  }
  Rat(Rat&& o) noexcept {
    mpq_init(v_);
    mpq_swap(v_, o.v_);
  }
  Rat& operator=(const Rat& o) {
    mpq_set(v_, o.v_);
    return *this;
  }
  Rat& operator=(Rat&& o) noexcept {
    mpq_swap(v_, o.v_);
    return *this;
  }
  ~Rat() { mpq_clear(v_); }

  bool isZero() const { return mpq_sgn(v_) == 0; }
  int sign() const { return mpq_sgn(v_); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    Rat r;
    mpq_add(r.v_, a.v_, b.v_);
    return r;
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    Rat r;
    mpq_sub(r.v_, a.v_, b.v_);
    return r;
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    Rat r;
    mpq_mul(r.v_, a.v_, b.v_);
    return r;
  }
  friend Rat operator/(const Rat& a, const Rat& b);

  Rat operator-() const {
    Rat r;
    mpq_neg(r.v_, v_);
    return r;
  }
  Rat& operator+=(const Rat& o) {
    mpq_add(v_, v_, o.v_);
    return *this;
  }
  Rat& operator-=(const Rat& o) {
    mpq_sub(v_, v_, o.v_);
    return *this;
  }
  Rat& operator*=(const Rat& o) {
    mpq_mul(v_, v_, o.v_);
    return *this;
  }
  Rat& operator/=(const Rat& o);

  friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.v_, b.v_) != 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return mpq_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return mpq_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return mpq_cmp(a.v_, b.v_) >= 0; }

  Rat abs() const {
    Rat r;
    mpq_abs(r.v_, v_);
    return r;
  }

  /// Reciprocal of k! as an exact rational.
  static Rat invFactorial(int k);

  /// Serialized form: "p" or "p/q" in lowest terms, q > 0.
  std::string str() const;

  /// Parses "p" or "p/q". Rejects zero denominators and garbage.
  static std::optional<Rat> parse(std::string_view s);

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  mpq_t v_;
};

inline Rat abs(const Rat& r) { return r.abs(); }

}  // namespace bbk

#include <Eigen/Core>

namespace Eigen {
template <>
struct NumTraits<bbk::Rat> : GenericNumTraits<bbk::Rat> {
  typedef bbk::Rat Real;
  typedef bbk::Rat NonInteger;
  typedef bbk::Rat Nested;
  static inline Real epsilon() { return bbk::Rat(0); }
  static inline Real dummy_precision() { return bbk::Rat(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};
}  // namespace Eigen
