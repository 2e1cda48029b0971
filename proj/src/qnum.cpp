#include "qsorep/qnum.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsorep {

namespace {

constexpr double kRootTolerance = 1e-12;
constexpr int kRootMaxOrder = 64;
constexpr double kAdmissibleTolerance = 1e-14;

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

QMode QMode::float_complex(std::complex<double> q) {
  if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
    throw std::invalid_argument("q must be finite");
  if (q == std::complex<double>{0.0, 0.0}) throw std::invalid_argument("q must be nonzero");
  QMode m;
  m.kind_ = Kind::FloatComplex;
  m.q_ = q;
  m.log_q_ = std::log(q);
  std::complex<double> power{1.0, 0.0};
  for (int n = 1; n <= kRootMaxOrder; ++n) {
    power *= q;
    if (std::abs(power - 1.0) < kRootTolerance) {
      m.root_order_ = n;
      break;
    }
  }
  return m;
}

QMode QMode::polar(double h) { return float_complex(std::polar(1.0, h)); }

QMode QMode::exact(const mpq_class& s) {
  if (s == 0 || s == 1 || s == -1)
    throw std::invalid_argument("exact mode needs s = q^(1/2) different from 0, 1, -1");
  QMode m;
  m.kind_ = Kind::ExactRational;
  m.s_ = s;
  m.s_.canonicalize();
  const double sd = m.s_.get_d();
  m.q_ = {sd * sd, 0.0};
  return m;
}

QMode QMode::classical() { return QMode{}; }

std::complex<double> QMode::q() const { return q_; }

std::string QMode::warning() const {
  if (!root_order_) return {};
  return "q is within 1e-12 of a root of unity (q^" + std::to_string(*root_order_) +
         " ~ 1); the construction assumes q^N != 1";
}

bool QMode::star_admissible() const {
  switch (kind_) {
    case Kind::Classical:
      return true;
    case Kind::ExactRational:
      return s_ > 0;
    case Kind::FloatComplex:
      break;
  }
  const bool real_positive = std::abs(q_.imag()) <= kAdmissibleTolerance * std::abs(q_) && q_.real() > 0;
  const bool unimodular = std::abs(std::abs(q_) - 1.0) <= kAdmissibleTolerance;
  return real_positive || unimodular;
}

std::string QMode::describe() const {
  switch (kind_) {
    case Kind::Classical:
      return "classical";
    case Kind::ExactRational:
      return "exact:s=" + s_.get_str();
    case Kind::FloatComplex:
      break;
  }
  if (q_.imag() == 0.0) return "float:" + format_double(q_.real());
  return "float:(" + format_double(q_.real()) + "," + format_double(q_.imag()) + ")";
}

// --- QScalar ---------------------------------------------------------------

QScalar QScalar::zero(const QMode& mode) { return from_int(0, mode); }
QScalar QScalar::one(const QMode& mode) { return from_int(1, mode); }
QScalar QScalar::from_int(long v, const QMode& mode) {
  if (mode.is_exact()) return QScalar(mpq_class(v));
  return QScalar(std::complex<double>(static_cast<double>(v), 0.0));
}

const mpq_class& QScalar::exact() const {
  if (const auto* p = std::get_if<mpq_class>(&value_)) return *p;
  throw std::logic_error("QScalar holds a floating value, not an exact rational");
}

std::complex<double> QScalar::to_complex() const {
  if (const auto* p = std::get_if<mpq_class>(&value_)) return {p->get_d(), 0.0};
  return std::get<std::complex<double>>(value_);
}

bool QScalar::is_zero() const {
  if (const auto* p = std::get_if<mpq_class>(&value_)) return *p == 0;
  return std::get<std::complex<double>>(value_) == std::complex<double>{};
}

QScalar QScalar::operator-() const {
  if (const auto* p = std::get_if<mpq_class>(&value_)) return QScalar(mpq_class(-*p));
  return QScalar(-std::get<std::complex<double>>(value_));
}

namespace {

template <class ExactOp, class FloatOp>
void combine(std::variant<std::complex<double>, mpq_class>& lhs,
             const std::variant<std::complex<double>, mpq_class>& rhs, ExactOp exact_op,
             FloatOp float_op) {
  if (lhs.index() != rhs.index())
    throw std::logic_error("QScalar: mixing exact and floating values");
  if (auto* p = std::get_if<mpq_class>(&lhs)) {
    exact_op(*p, std::get<mpq_class>(rhs));
  } else {
    float_op(std::get<std::complex<double>>(lhs), std::get<std::complex<double>>(rhs));
  }
}

}  // namespace

QScalar& QScalar::operator+=(const QScalar& o) {
  combine(value_, o.value_, [](mpq_class& a, const mpq_class& b) { a += b; },
          [](std::complex<double>& a, std::complex<double> b) { a += b; });
  return *this;
}

QScalar& QScalar::operator-=(const QScalar& o) {
  combine(value_, o.value_, [](mpq_class& a, const mpq_class& b) { a -= b; },
          [](std::complex<double>& a, std::complex<double> b) { a -= b; });
  return *this;
}

QScalar& QScalar::operator*=(const QScalar& o) {
  combine(value_, o.value_, [](mpq_class& a, const mpq_class& b) { a *= b; },
          [](std::complex<double>& a, std::complex<double> b) { a *= b; });
  return *this;
}

QScalar& QScalar::operator/=(const QScalar& o) {
  combine(
      value_, o.value_,
      [](mpq_class& a, const mpq_class& b) {
        if (b == 0) throw std::domain_error("QScalar: division by exact zero");
        a /= b;
      },
      [](std::complex<double>& a, std::complex<double> b) { a /= b; });
  return *this;
}

bool operator==(const QScalar& a, const QScalar& b) {
  if (a.value_.index() != b.value_.index()) return false;
  if (const auto* p = std::get_if<mpq_class>(&a.value_)) return *p == std::get<mpq_class>(b.value_);
  return std::get<std::complex<double>>(a.value_) == std::get<std::complex<double>>(b.value_);
}

std::string QScalar::to_string() const {
  if (const auto* p = std::get_if<mpq_class>(&value_)) return p->get_str();
  const auto c = std::get<std::complex<double>>(value_);
  if (c.imag() == 0.0) return format_double(c.real());
  return "(" + format_double(c.real()) + "," + format_double(c.imag()) + ")";
}

// --- q-numbers -------------------------------------------------------------

mpq_class rational_pow(const mpq_class& s, long exponent) {
  if (s == 0) throw std::domain_error("rational_pow: zero base");
  const unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                       : static_cast<unsigned long>(exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), s.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), s.get_den_mpz_t(), e);
  mpq_class r = exponent < 0 ? mpq_class(den, num) : mpq_class(num, den);
  r.canonicalize();
  return r;
}

QScalar q_number(HalfInt x, const QMode& mode) {
  switch (mode.kind()) {
    case QMode::Kind::Classical: {
      mpq_class v(x.twice(), 2);
      v.canonicalize();
      return QScalar(std::move(v));
    }
    case QMode::Kind::ExactRational: {
      const mpq_class& s = mode.s();
      // q^x = s^(2x); denominator q - 1/q = s^2 - s^-2.
      mpq_class num = rational_pow(s, x.twice()) - rational_pow(s, -x.twice());
      mpq_class den = rational_pow(s, 2) - rational_pow(s, -2);
      return QScalar(mpq_class(num / den));
    }
    case QMode::Kind::FloatComplex:
      break;
  }
  if (x.is_zero()) return QScalar(std::complex<double>{});
  const auto L = mode.log_q();
  return QScalar(std::sinh(x.to_double() * L) / std::sinh(L));
}

QScalar balanced_bracket(HalfInt x, const QMode& mode) {
  switch (mode.kind()) {
    case QMode::Kind::Classical:
      return QScalar(mpq_class(2));
    case QMode::Kind::ExactRational:
      return QScalar(mpq_class(rational_pow(mode.s(), x.twice()) +
                               rational_pow(mode.s(), -x.twice())));
    case QMode::Kind::FloatComplex:
      break;
  }
  return QScalar(2.0 * std::cosh(x.to_double() * mode.log_q()));
}

QScalar q_two(const QMode& mode) { return q_number(HalfInt::from_int(2), mode); }

mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::string t = text;
  if (auto dot = t.find('.'); dot != std::string::npos && t.find('/') == std::string::npos) {
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    const std::size_t scale = t.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("not a rational: '" + text + "'");
    t = digits + "/1" + std::string(scale, '0');
  }
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  mpq_class r;
  if (r.set_str(t, 10) != 0) throw std::invalid_argument("not a rational: '" + text + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

}  // namespace qsorep
