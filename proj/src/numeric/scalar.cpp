#include "orbi/numeric/scalar.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>

namespace orbi {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AmbiguousRank: return "AmbiguousRank";
    case ErrorCode::BackendMismatch: return "BackendMismatch";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::ContainedPair: return "ContainedPair";
    case ErrorCode::DegenerateConfig: return "DegenerateConfig";
    case ErrorCode::EmptySubspace: return "EmptySubspace";
    case ErrorCode::InternalError: return "InternalError";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NoFieldSqrt: return "NoFieldSqrt";
    case ErrorCode::NotA2Group: return "NotA2Group";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NotPseudoreflectionGroup: return "NotPseudoreflectionGroup";
    case ErrorCode::NotSpecialOrthogonal: return "NotSpecialOrthogonal";
    case ErrorCode::PNotDividing: return "PNotDividing";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Unclassifiable: return "Unclassifiable";
  }
  return "Unknown";
}

}  // namespace orbi

namespace orbi::numeric {

namespace {

std::atomic<double> g_tolerance{kDefaultTolerance};

std::size_t hash_mpz(mpz_srcptr z) noexcept {
  std::size_t h = static_cast<std::size_t>(mpz_size(z)) * 0x9e3779b97f4a7c15ULL;
  if (mpz_size(z) > 0) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z, 0)) + 0x7f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h ^ static_cast<std::size_t>(mpz_sgn(z) + 1);
}

std::size_t mix(std::size_t seed, std::size_t v) noexcept {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::string_view to_string(Field f) noexcept {
  switch (f) {
    case Field::Rational: return "rational";
    case Field::QSqrt5: return "qsqrt5";
    case Field::Float64: return "float64";
  }
  return "?";
}

Field parse_field(std::string_view name) {
  if (name == "rational") return Field::Rational;
  if (name == "qsqrt5") return Field::QSqrt5;
  if (name == "float64") return Field::Float64;
  throw Error(ErrorCode::InvalidInput, "unknown field '" + std::string(name) + "'");
}

double tolerance() noexcept { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::BadParameter, "tolerance must be positive and finite");
  }
  g_tolerance.store(eps, std::memory_order_relaxed);
}

// --- Rational ---------------------------------------------------------------

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  const __int128 n = den < 0 ? -static_cast<__int128>(num) : num;
  const __int128 d = den < 0 ? -static_cast<__int128>(den) : den;
  if (!assign_small(n, d)) assign(mpq_class(mpz_class(num), mpz_class(den)));
}

void Rational::assign(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  if (mpz_fits_slong_p(c.get_num_mpz_t()) && mpz_fits_slong_p(c.get_den_mpz_t())) {
    num_ = mpz_get_si(c.get_num_mpz_t());
    den_ = mpz_get_si(c.get_den_mpz_t());
    big_.reset();
  } else {
    big_ = std::make_unique<mpq_class>(std::move(c));
    num_ = 0;
    den_ = 1;
  }
}

mpq_class Rational::value() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

Rational& Rational::big_op(const Rational& o, char op) {
  mpq_class a = value();
  const mpq_class b = o.value();
  switch (op) {
    case '+': a += b; break;
    case '-': a -= b; break;
    case '*': a *= b; break;
    default: a /= b; break;
  }
  assign(a);
  return *this;
}

int Rational::compare(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return (l > r) - (l < r);
  }
  return cmp(a.value(), b.value());
}

Rational Rational::operator-() const {
  Rational out;
  if (!big_ && num_ != INT64_MIN) {
    out.num_ = -num_;
    out.den_ = den_;
  } else {
    out.assign(mpq_class(-value()));
  }
  return out;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidInput, "division by zero");
  if (!big_ && !o.big_) {
    __int128 on = o.den_, od = o.num_;
    if (od < 0) {
      on = -on;
      od = -od;
    }
    if (od <= INT64_MAX && mul_small_wide(on, od)) return *this;
  }
  return big_op(o, '/');
}

bool Rational::mul_small_wide(__int128 on, __int128 od) noexcept {
  if (num_ == 0) return true;
  return assign_small(static_cast<__int128>(num_) * on, static_cast<__int128>(den_) * od);
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error(ErrorCode::InvalidInput, "cannot parse rational '" + s + "'"); };
  if (s.empty()) throw bad();
  if (auto dot = s.find('.'); dot != std::string::npos) {
    if (s.find_first_of("/eE") != std::string::npos) throw bad();
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t decimals = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw bad();
    if (digits.front() == '+') digits.erase(0, 1);
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw bad();
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, decimals);
    return Rational(mpq_class(num, den));
  }
  if (s.front() == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw bad();
  return Rational(q);
}

std::size_t Rational::hash() const noexcept {
  if (big_) return mix(hash_mpz(big_->get_num_mpz_t()), hash_mpz(big_->get_den_mpz_t()));
  return mix(std::hash<std::int64_t>{}(num_) * 0x9e3779b97f4a7c15ULL, static_cast<std::size_t>(den_));
}

std::optional<Rational> sqrt_exact(const Rational& x) {
  if (x.sign() < 0) return std::nullopt;
  if (x.is_zero()) return Rational(0);
  const mpq_class v = x.value();
  const mpz_class& num = v.get_num();
  const mpz_class& den = v.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

// --- QSqrt5 -----------------------------------------------------------------

QSqrt5 QSqrt5::golden() { return QSqrt5(Rational(1, 2), Rational(1, 2)); }

int QSqrt5::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: |a| versus |b| sqrt 5.
  return a_ * a_ > Rational(5) * b_ * b_ ? sa : sb;
}

QSqrt5& QSqrt5::operator*=(const QSqrt5& o) {
  Rational na = a_ * o.a_ + Rational(5) * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

QSqrt5& QSqrt5::operator/=(const QSqrt5& o) {
  const Rational n = o.norm();
  if (n.is_zero()) throw Error(ErrorCode::InvalidInput, "division by zero");
  *this *= o.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

std::string QSqrt5::str() const {
  if (b_.is_zero()) return a_.str();
  std::ostringstream os;
  if (!a_.is_zero()) {
    os << a_.str() << (b_.sign() > 0 ? "+" : "");
  }
  os << b_.str() << "*sqrt5";
  return os.str();
}

std::size_t QSqrt5::hash() const noexcept { return mix(a_.hash(), b_.hash() * 31 + 7); }

std::optional<QSqrt5> sqrt_exact(const QSqrt5& s) {
  if (s.is_zero()) return QSqrt5(0);
  if (s.sign() < 0) return std::nullopt;
  const Rational& s1 = s.a();
  const Rational& s2 = s.b();
  if (s2.is_zero()) {
    if (auto x = sqrt_exact(s1)) return QSqrt5(*x);
    if (auto y = sqrt_exact(s1 / Rational(5))) return QSqrt5(Rational(0), *y);
    return std::nullopt;
  }
  // x^2 + 5y^2 = s1, 2xy = s2  =>  x^2 = (s1 +- sqrt(s1^2 - 5 s2^2)) / 2.
  const auto d = sqrt_exact(s1 * s1 - Rational(5) * s2 * s2);
  if (!d) return std::nullopt;
  for (const Rational& x2 : {(s1 + *d) / Rational(2), (s1 - *d) / Rational(2)}) {
    if (x2.sign() <= 0) continue;
    const auto x = sqrt_exact(x2);
    if (!x) continue;
    QSqrt5 root(*x, s2 / (Rational(2) * *x));
    if (root * root != s) continue;
    return root.sign() < 0 ? -root : root;
  }
  return std::nullopt;
}

// --- float64 ----------------------------------------------------------------

std::size_t FieldTraits<double>::hash(double x) {
  const long long cell = std::llround(x * 1e6);
  return std::hash<long long>{}(cell);
}

std::optional<double> FieldTraits<double>::sqrt(double x) {
  if (x < -tolerance()) return std::nullopt;
  return std::sqrt(std::max(x, 0.0));
}

std::string FieldTraits<double>::str(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace orbi::numeric
