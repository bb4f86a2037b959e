#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include "orbi/error.hpp"

namespace orbi::numeric {

/// Runtime tag of a scalar backend. Ordered by inclusion: every rational is a
/// qsqrt5 value and every qsqrt5 value embeds into float64.
enum class Field { Rational = 0, QSqrt5 = 1, Float64 = 2 };

std::string_view to_string(Field f) noexcept;
Field parse_field(std::string_view name);

/// Tolerance used by the float64 backend. Fixed for the duration of an
/// analysis; ScopedTolerance restores the previous value on exit.
double tolerance() noexcept;
void set_tolerance(double eps);

class ScopedTolerance {
 public:
  explicit ScopedTolerance(double eps) : saved_(tolerance()) { set_tolerance(eps); }
  ~ScopedTolerance() { set_tolerance(saved_); }
  ScopedTolerance(const ScopedTolerance&) = delete;
  ScopedTolerance& operator=(const ScopedTolerance&) = delete;

 private:
  double saved_;
};

inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr double kSqrt5 = 2.2360679774997896964;

// ---------------------------------------------------------------------------
// Rational: arbitrary precision, always canonical. Values whose numerator and
// denominator fit in 64 bits are held inline; anything larger is promoted to
// an mpq_class and demoted again as soon as it fits.

class Rational {
 public:
  Rational() noexcept = default;
  Rational(int v) noexcept : num_(v) {}  // NOLINT: Eigen builds Scalar(0), Scalar(1)
  Rational(long v) noexcept : num_(v) {}  // NOLINT
  Rational(long num, long den);
  explicit Rational(const mpq_class& q) { assign(q); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Accepts "p", "p/q", and finite decimals such as "-0.25".
  static Rational parse(std::string_view text);

  mpq_class value() const;
  int sign() const noexcept { return big_ ? sgn(*big_) : (num_ > 0) - (num_ < 0); }
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_small() const noexcept { return !big_; }
  double to_double() const;
  std::string str() const;
  std::size_t hash() const noexcept;

  Rational operator-() const;
  Rational& operator+=(const Rational& o) {
    if (!big_ && !o.big_ && add_small(o.num_, o.den_)) return *this;
    return big_op(o, '+');
  }
  Rational& operator-=(const Rational& o) {
    if (!big_ && !o.big_ && add_small(-static_cast<__int128>(o.num_), o.den_)) return *this;
    return big_op(o, '-');
  }
  Rational& operator*=(const Rational& o) {
    if (!big_ && !o.big_ && mul_small(o.num_, o.den_)) return *this;
    return big_op(o, '*');
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: a promoted value never fits in 64 bits
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static int compare(const Rational& a, const Rational& b);
  void assign(const mpq_class& q);
  Rational& big_op(const Rational& o, char op);

  /// Reduces n/d (d > 0) into the inline form; false if it does not fit.
  bool assign_small(__int128 n, __int128 d) noexcept {
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return true;
    }
    unsigned __int128 a = n < 0 ? static_cast<unsigned __int128>(-n) : static_cast<unsigned __int128>(n);
    unsigned __int128 b = static_cast<unsigned __int128>(d);
    if (b != 1) {
      unsigned __int128 x = a, y = b;
      while (y != 0) {
        const unsigned __int128 t = x % y;
        x = y;
        y = t;
      }
      n /= static_cast<__int128>(x);
      d /= static_cast<__int128>(x);
    }
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi) return false;
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    return true;
  }
  bool add_small(__int128 on, std::int64_t od) noexcept {
    if (den_ == od) return assign_small(num_ + on, od);
    return assign_small(static_cast<__int128>(num_) * od + on * den_, static_cast<__int128>(den_) * od);
  }
  bool mul_small_wide(__int128 on, __int128 od) noexcept;
  bool mul_small(std::int64_t on, std::int64_t od) noexcept {
    if (num_ == 0 || on == 0) {
      num_ = 0;
      den_ = 1;
      return true;
    }
    if (den_ == 1 && od == 1) {
      long long r;
      if (__builtin_mul_overflow(num_, on, &r)) return false;
      num_ = r;
      return true;
    }
    return assign_small(static_cast<__int128>(num_) * on, static_cast<__int128>(den_) * od);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::optional<Rational> sqrt_exact(const Rational& x);

// ---------------------------------------------------------------------------
// QSqrt5: a + b*sqrt(5) with rational a, b. Totally ordered as a subfield of R.

class QSqrt5 {
 public:
  QSqrt5() = default;
  QSqrt5(int v) : a_(v) {}  // NOLINT
  QSqrt5(long v) : a_(v) {}  // NOLINT
  QSqrt5(Rational a) : a_(std::move(a)) {}  // NOLINT
  QSqrt5(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  /// tau = (1 + sqrt 5) / 2.
  static QSqrt5 golden();
  static QSqrt5 sqrt5() { return QSqrt5(Rational(0), Rational(1)); }

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  int sign() const;
  bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const noexcept { return b_.is_zero(); }
  double to_double() const { return a_.to_double() + b_.to_double() * kSqrt5; }
  QSqrt5 conjugate() const { return QSqrt5(a_, -b_); }
  /// a^2 - 5 b^2
  Rational norm() const { return a_ * a_ - Rational(5) * b_ * b_; }
  std::string str() const;
  std::size_t hash() const noexcept;

  QSqrt5 operator-() const { return QSqrt5(-a_, -b_); }
  QSqrt5& operator+=(const QSqrt5& o) { a_ += o.a_; b_ += o.b_; return *this; }
  QSqrt5& operator-=(const QSqrt5& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  QSqrt5& operator*=(const QSqrt5& o);
  QSqrt5& operator/=(const QSqrt5& o);

  friend QSqrt5 operator+(QSqrt5 x, const QSqrt5& y) { return x += y; }
  friend QSqrt5 operator-(QSqrt5 x, const QSqrt5& y) { return x -= y; }
  friend QSqrt5 operator*(QSqrt5 x, const QSqrt5& y) { return x *= y; }
  friend QSqrt5 operator/(QSqrt5 x, const QSqrt5& y) { return x /= y; }
  friend bool operator==(const QSqrt5& x, const QSqrt5& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const QSqrt5& x, const QSqrt5& y) { return !(x == y); }
  friend bool operator<(const QSqrt5& x, const QSqrt5& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QSqrt5& x, const QSqrt5& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const QSqrt5& x, const QSqrt5& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const QSqrt5& x, const QSqrt5& y) { return (x - y).sign() >= 0; }
  friend std::ostream& operator<<(std::ostream& os, const QSqrt5& x) { return os << x.str(); }

 private:
  Rational a_;
  Rational b_;
};

/// Square root inside Q(sqrt 5), solving (x + y sqrt5)^2 = s as a rational
/// system. Returns the non-negative root, or nullopt if it leaves the field.
std::optional<QSqrt5> sqrt_exact(const QSqrt5& s);

// ---------------------------------------------------------------------------
// FieldTraits: the uniform interface the generic algorithms are written against.

template <class S>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr Field field = Field::Rational;
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static bool equal(const Rational& x, const Rational& y) { return x == y; }
  static int sign(const Rational& x) { return x.sign(); }
  static std::size_t hash(const Rational& x) { return x.hash(); }
  static double to_double(const Rational& x) { return x.to_double(); }
  static std::optional<Rational> sqrt(const Rational& x) { return sqrt_exact(x); }
  static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct FieldTraits<QSqrt5> {
  static constexpr Field field = Field::QSqrt5;
  static constexpr bool exact = true;
  static bool is_zero(const QSqrt5& x) { return x.is_zero(); }
  static bool equal(const QSqrt5& x, const QSqrt5& y) { return x == y; }
  static int sign(const QSqrt5& x) { return x.sign(); }
  static std::size_t hash(const QSqrt5& x) { return x.hash(); }
  static double to_double(const QSqrt5& x) { return x.to_double(); }
  static std::optional<QSqrt5> sqrt(const QSqrt5& x) { return sqrt_exact(x); }
  static std::string str(const QSqrt5& x) { return x.str(); }
};

template <>
struct FieldTraits<double> {
  static constexpr Field field = Field::Float64;
  static constexpr bool exact = false;
  static bool is_zero(double x) { return x <= tolerance() && x >= -tolerance(); }
  static bool equal(double x, double y) { return is_zero(x - y); }
  static int sign(double x) { return x > tolerance() ? 1 : (x < -tolerance() ? -1 : 0); }
  /// Grid hash at six decimals; callers confirm candidates with equal().
  static std::size_t hash(double x);
  static double to_double(double x) { return x; }
  static std::optional<double> sqrt(double x);
  static std::string str(double x);
};

template <class S>
concept Scalar = requires { FieldTraits<S>::field; };

/// Embedding between backends along Rational -> QSqrt5 -> Float64. Narrowing
/// conversions succeed only when the value lies in the target field.
template <class To, class From>
To convert(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<To, double>) {
    return FieldTraits<From>::to_double(x);
  } else if constexpr (std::is_same_v<To, QSqrt5> && std::is_same_v<From, Rational>) {
    return QSqrt5(x);
  } else if constexpr (std::is_same_v<To, Rational> && std::is_same_v<From, QSqrt5>) {
    if (!x.is_rational()) {
      throw Error(ErrorCode::BackendMismatch, "value " + x.str() + " is not rational");
    }
    return x.a();
  } else {
    static_assert(std::is_same_v<To, From>, "no exact conversion from float64");
  }
}

}  // namespace orbi::numeric

namespace Eigen {

template <>
struct NumTraits<orbi::numeric::Rational> : GenericNumTraits<orbi::numeric::Rational> {
  using Real = orbi::numeric::Rational;
  using NonInteger = orbi::numeric::Rational;
  using Literal = orbi::numeric::Rational;
  using Nested = orbi::numeric::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32,
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<orbi::numeric::QSqrt5> : GenericNumTraits<orbi::numeric::QSqrt5> {
  using Real = orbi::numeric::QSqrt5;
  using NonInteger = orbi::numeric::QSqrt5;
  using Literal = orbi::numeric::QSqrt5;
  using Nested = orbi::numeric::QSqrt5;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128,
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
