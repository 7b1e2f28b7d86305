#pragma once
// Exact scalars: GMP rationals and prime-field residues.

#include <cstdint>
#include <gmpxx.h>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace nilorb {

using Rational = mpq_class;

struct ArithmeticError : std::domain_error {
  using std::domain_error::domain_error;
};

struct CharacteristicError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Residue modulo a prime. The modulus travels with the value so that
// combining residues of different fields is caught at run time.
class Zp {
 public:
  Zp() = default;
  Zp(long long v, std::uint32_t p) : p_(p) {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
  }
  static Zp raw(std::uint32_t v, std::uint32_t p) {
    Zp z;
    z.v_ = v;
    z.p_ = p;
    return z;
  }

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend Zp operator+(Zp a, Zp b) {
    check(a, b);
    std::uint32_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return raw(s, a.p_);
  }
  friend Zp operator-(Zp a, Zp b) {
    check(a, b);
    return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_);
  }
  friend Zp operator*(Zp a, Zp b) {
    check(a, b);
    return raw(static_cast<std::uint32_t>(std::uint64_t(a.v_) * b.v_ % a.p_), a.p_);
  }
  Zp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
  Zp& operator+=(Zp b) { return *this = *this + b; }
  Zp& operator-=(Zp b) { return *this = *this - b; }
  Zp& operator*=(Zp b) { return *this = *this * b; }
  friend bool operator==(Zp a, Zp b) { return a.p_ == b.p_ && a.v_ == b.v_; }
  friend bool operator!=(Zp a, Zp b) { return !(a == b); }

  Zp pow(std::uint64_t e) const {
    Zp r = raw(1 % p_, p_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  Zp inverse() const {
    if (v_ == 0) throw ArithmeticError("inverse of zero in F_" + std::to_string(p_));
    return pow(p_ - 2);
  }

  friend std::ostream& operator<<(std::ostream& os, Zp a) { return os << a.v_; }

 private:
  static void check(Zp a, Zp b) {
    if (a.p_ != b.p_)
      throw ArithmeticError("mixed fields: F_" + std::to_string(a.p_) + " and F_" +
                            std::to_string(b.p_));
  }
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 2;
};

inline bool is_zero(const Rational& a) { return sgn(a) == 0; }
inline bool is_zero(const Zp& a) { return a.is_zero(); }

inline Rational inv(const Rational& a) {
  if (is_zero(a)) throw ArithmeticError("inverse of zero rational");
  Rational r = 1 / a;
  return r;
}
inline Zp inv(const Zp& a) { return a.inverse(); }

// Field descriptor: the rationals or F_p for a prime p.
class Field {
 public:
  enum class Kind { rational, prime };

  static Field rational() { return Field(Kind::rational, 0); }
  static Field prime(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    return Field(Kind::prime, p);
  }

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::rational; }
  std::uint32_t characteristic() const { return p_; }

  // The exponential series needs 1/k! for every k below the nilpotency
  // index and the group law needs p above the highest-root height, so we
  // require p > height.
  bool supports_exp(int highest_height) const {
    return is_rational() || static_cast<int>(p_) > highest_height;
  }
  void require_exp(int highest_height) const {
    if (!supports_exp(highest_height))
      throw CharacteristicError("characteristic " + std::to_string(p_) +
                                " too small for the coadjoint exponential: need a prime > " +
                                std::to_string(highest_height));
  }

  std::string name() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  Field(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational from_int(const Field& f, long long n) {
    if (!f.is_rational()) throw ArithmeticError("rational scalar requested over " + f.name());
    return Rational(static_cast<long>(n));
  }
  static Rational from_rational(const Field& f, const Rational& r) {
    (void)from_int(f, 0);
    return r;
  }
  static bool belongs(const Field& f, const Rational&) { return f.is_rational(); }
};

template <>
struct ScalarTraits<Zp> {
  static Zp from_int(const Field& f, long long n) {
    if (f.is_rational()) throw ArithmeticError("residue requested over Q");
    return Zp(n, f.characteristic());
  }
  static Zp from_rational(const Field& f, const Rational& r) {
    Zp num = from_mpz(f, r.get_num()), den = from_mpz(f, r.get_den());
    return num / den;
  }
  static bool belongs(const Field& f, const Zp& z) {
    return !f.is_rational() && z.modulus() == f.characteristic();
  }

 private:
  static Zp from_mpz(const Field& f, const mpz_class& z) {
    mpz_class r = z % f.characteristic();
    return Zp(r.get_si(), f.characteristic());
  }
};

template <class S>
S scalar(const Field& f, long long n) {
  return ScalarTraits<S>::from_int(f, n);
}

// Reduction of a rational modulo p; the denominator must be a unit.
inline Zp reduce(const Rational& r, std::uint32_t p) {
  return ScalarTraits<Zp>::from_rational(Field::prime(p), r);
}

// Uniform element of the field; rationals are drawn as small fractions.
template <class S, class Rng>
S random_scalar(const Field& f, Rng& rng, bool nonzero) {
  if constexpr (std::is_same_v<S, Zp>) {
    std::uniform_int_distribution<std::uint32_t> d(nonzero ? 1 : 0, f.characteristic() - 1);
    return Zp::raw(d(rng), f.characteristic());
  } else {
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    for (;;) {
      Rational r(num(rng), den(rng));
      r.canonicalize();
      if (!nonzero || !is_zero(r)) return r;
    }
  }
}

}  // namespace nilorb
