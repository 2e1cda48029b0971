#pragma once

/// q-number arithmetic.
///
/// Every scalar in the library is produced by one of three evaluation modes:
///
///   FloatComplex   q is a complex double; [x] = sinh(x log q) / sinh(log q)
///                  with the principal logarithm, which is the same value as
///                  (q^x - q^-x)/(q - q^-1) but stays accurate near q = 1.
///   ExactRational  parameterised by the rational s = q^(1/2), so that
///                  q^x = s^(2x) is rational for half-integral x.
///   Classical      q = 1 taken as a limit: [x] = x and {x} = 2, exactly.
///
/// Classical and ExactRational values are exact rationals (mpq_class).

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "qsorep/halfint.hpp"

namespace qsorep {

class QMode {
 public:
  enum class Kind { FloatComplex, ExactRational, Classical };

  /// Throws std::invalid_argument when q == 0 or q is not finite.
  static QMode float_complex(std::complex<double> q);
  /// q = exp(i h).
  static QMode polar(double h);
  /// Throws std::invalid_argument when s is 0, 1 or -1.
  static QMode exact(const mpq_class& s);
  static QMode classical();

  Kind kind() const { return kind_; }
  bool is_float() const { return kind_ == Kind::FloatComplex; }
  bool is_exact() const { return kind_ != Kind::FloatComplex; }

  /// The deformation parameter as a complex double (1 in Classical mode).
  std::complex<double> q() const;
  /// s = q^(1/2); only meaningful in ExactRational mode.
  const mpq_class& s() const { return s_; }
  /// Principal log q, FloatComplex only.
  std::complex<double> log_q() const { return log_q_; }

  /// Smallest N in 1..64 with |q^N - 1| < 1e-12, if any (FloatComplex only).
  std::optional<int> root_of_unity_order() const { return root_order_; }
  /// Human-readable root-of-unity warning, empty when none applies.
  std::string warning() const;

  /// True when q = e^h or q = e^{ih} for real h (or Classical), i.e. the
  /// parameters for which generators are expected to be anti-Hermitian.
  bool star_admissible() const;

  /// "float:0.9", "float:(2,1)", "exact:7/2", "classical".
  std::string describe() const;

 private:
  QMode() = default;

  Kind kind_ = Kind::Classical;
  std::complex<double> q_{1.0, 0.0};
  std::complex<double> log_q_{0.0, 0.0};
  mpq_class s_{1};
  std::optional<int> root_order_;
};

/// A mode-tagged scalar: complex double or exact rational.
class QScalar {
 public:
  QScalar() : value_(std::complex<double>{}) {}
  QScalar(std::complex<double> v) : value_(v) {}
  QScalar(mpq_class v) : value_(std::move(v)) {}

  static QScalar zero(const QMode& mode);
  static QScalar one(const QMode& mode);
  static QScalar from_int(long v, const QMode& mode);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  /// Throws std::logic_error on a float scalar.
  const mpq_class& exact() const;
  std::complex<double> to_complex() const;
  bool is_zero() const;

  QScalar operator-() const;
  QScalar& operator+=(const QScalar& o);
  QScalar& operator-=(const QScalar& o);
  QScalar& operator*=(const QScalar& o);
  /// Division by an exact zero throws std::domain_error.
  QScalar& operator/=(const QScalar& o);

  friend QScalar operator+(QScalar a, const QScalar& b) { return a += b; }
  friend QScalar operator-(QScalar a, const QScalar& b) { return a -= b; }
  friend QScalar operator*(QScalar a, const QScalar& b) { return a *= b; }
  friend QScalar operator/(QScalar a, const QScalar& b) { return a /= b; }

  /// Exact comparison for exact scalars; bitwise comparison for floats.
  friend bool operator==(const QScalar& a, const QScalar& b);

  std::string to_string() const;

 private:
  std::variant<std::complex<double>, mpq_class> value_;
};

/// [x] = (q^x - q^-x) / (q - q^-1).
QScalar q_number(HalfInt x, const QMode& mode);
/// {x} = q^x + q^-x.
QScalar balanced_bracket(HalfInt x, const QMode& mode);
/// [2]_q = q + q^-1.
QScalar q_two(const QMode& mode);

/// s^e for an exact rational and any integer exponent (s != 0).
mpq_class rational_pow(const mpq_class& s, long exponent);
/// Parses "a", "a/b" or a finite decimal such as "3.5" into an exact rational.
mpq_class parse_rational(const std::string& text);

}  // namespace qsorep
