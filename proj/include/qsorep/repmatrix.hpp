#pragma once

/// Matrix elements and sparse generator matrices T(I_{k,k-1}).
///
/// The odd generator I_{2p+1,2p} moves one entry of row 2p by +-1 with weights
/// +A^j (raising, evaluated at the source pattern) and -A^j (lowering,
/// evaluated at the lowered pattern). The even generator I_{2p,2p-1} does the
/// same on row 2p-1 with weights +-B^j and adds the diagonal i*C_{2p-1}.
///
/// Squared coefficients are ratios of bracket products and are evaluated in
/// any mode, exactly when the mode is exact. A and B are square roots of the
/// signed squared values (see coefficient_root), so assembled matrices are
/// always floating point.

#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qsorep/gtbasis.hpp"
#include "qsorep/qnum.hpp"

namespace qsorep {

/// A coefficient formula was evaluated at a transition whose denominator
/// vanishes while its numerator does not.
class InvalidTransition : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested operation is not available in the given evaluation mode.
class UnsupportedMode : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// prod [num] / (prod [den] * prod {bal}), stored as bracket arguments so that
/// vanishing factors can be detected exactly, independent of the mode.
struct BracketRatio {
  std::vector<HalfInt> numerator;
  std::vector<HalfInt> denominator;
  std::vector<HalfInt> balanced_denominator;

  bool numerator_vanishes() const;
  bool denominator_vanishes() const;
};

/// 0 when a numerator bracket has argument 0; throws InvalidTransition when
/// only a denominator bracket does.
QScalar evaluate(const BracketRatio& ratio, const QMode& mode);

/// l-coordinates of the rows a generator I_{k,k-1} reads: levels k, k-1, k-2.
/// Rows below level 2 are empty.
struct TransitionContext {
  LRow upper;
  LRow middle;
  LRow lower;
};

TransitionContext context_at(const GTPattern& pattern, int k);

/// (A^j_{2p})^2 for the context of I_{2p+1,2p}; j is 0-based.
BracketRatio a_squared_ratio(const TransitionContext& ctx, std::size_t j);
/// (B^j_{2p-1})^2 for the context of I_{2p,2p-1}; j is 0-based, j < p-1.
BracketRatio b_squared_ratio(const TransitionContext& ctx, std::size_t j);
/// C_{2p-1} for the context of I_{2p,2p-1} (signed, no square root).
BracketRatio c_ratio(const TransitionContext& ctx);

struct Coefficient {
  std::complex<double> value;
  /// Set when the value is not a nonnegative real, i.e. the squared
  /// coefficient was negative or non-real.
  bool complex_valued = false;
};

/// Square root of a squared coefficient. For complex q off the real line and
/// the unit circle: the principal root of the value. For real brackets: the
/// principal root of the product of argument signs times the principal roots
/// of each sign-normalised bracket, which for real q is the principal root of
/// the value.
Coefficient coefficient_root(const BracketRatio& ratio, const QMode& mode);

QScalar coeff_A_squared(const TransitionContext& ctx, std::size_t j, const QMode& mode);
Coefficient coeff_A(const TransitionContext& ctx, std::size_t j, const QMode& mode);
QScalar coeff_B_squared(const TransitionContext& ctx, std::size_t j, const QMode& mode);
Coefficient coeff_B(const TransitionContext& ctx, std::size_t j, const QMode& mode);
QScalar coeff_C(const TransitionContext& ctx, const QMode& mode);

struct MatrixEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  std::complex<double> value;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

class GeneratorMatrix {
 public:
  GeneratorMatrix(int k, std::size_t dim, std::vector<MatrixEntry> entries, QMode mode,
                  bool complex_coefficients = false);

  int k() const { return k_; }
  std::size_t dim() const { return dim_; }
  /// Sorted by (row, col); at most one entry per position.
  const std::vector<MatrixEntry>& entries() const { return entries_; }
  const QMode& mode() const { return mode_; }
  bool complex_coefficients() const { return complex_coefficients_; }

  Eigen::MatrixXcd dense() const;

 private:
  int k_;
  std::size_t dim_;
  std::vector<MatrixEntry> entries_;
  QMode mode_;
  bool complex_coefficients_;
};

/// T(I_{k,k-1}) over `basis`, columns assembled in parallel.
/// Throws UnsupportedMode in ExactRational mode and std::invalid_argument for
/// k outside 2..n.
GeneratorMatrix generator_matrix(const Basis& basis, int k, const QMode& mode);
/// Single-threaded reference assembly; same result as generator_matrix.
GeneratorMatrix generator_matrix_serial(const Basis& basis, int k, const QMode& mode);
GeneratorMatrix generator_matrix(const Signature& sig, int k, const QMode& mode);

struct RepBundle {
  Signature signature;
  std::shared_ptr<const Basis> basis;
  std::vector<GeneratorMatrix> generators;  ///< k = 2, ..., n in order
  QMode mode;

  std::size_t dim() const { return basis->size(); }
  const GeneratorMatrix& generator(int k) const { return generators.at(static_cast<std::size_t>(k - 2)); }
};

RepBundle build_rep(const Signature& sig, const QMode& mode);
RepBundle build_rep_serial(const Signature& sig, const QMode& mode);

}  // namespace qsorep
