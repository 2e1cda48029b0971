#include "qsorep/repmatrix.hpp"

#include <algorithm>
#include <string>

namespace qsorep {

namespace {

bool any_zero(const std::vector<HalfInt>& args) {
  return std::any_of(args.begin(), args.end(), [](HalfInt x) { return x.is_zero(); });
}

LRow row_or_empty(const GTPattern& pattern, int level) {
  if (level < 2) return LRow{level, {}};
  return l_coords(pattern.row(level));
}

void check_generator_label(const Basis& basis, int k) {
  const int n = basis.signature().n;
  if (k < 2 || k > n)
    throw std::invalid_argument("generator I_{k,k-1} needs 2 <= k <= " + std::to_string(n) +
                                ", got k = " + std::to_string(k));
}

/// Entries of column `col` of T(I_{k,k-1}), sorted by row.
std::vector<MatrixEntry> assemble_column(const Basis& basis, int k, const QMode& mode,
                                         std::size_t col, bool& complex_flag) {
  std::vector<MatrixEntry> out;
  const GTPattern& source = basis[col];
  const int moved = k - 1;
  const auto source_ctx = context_at(source, k);

  if (k % 2 == 1) {
    const std::size_t p = static_cast<std::size_t>((k - 1) / 2);
    for (std::size_t j = 0; j < p; ++j) {
      if (auto t = basis.index_of(shifted(source, moved, j, +1))) {
        const auto a = coeff_A(source_ctx, j, mode);
        complex_flag |= a.complex_valued;
        out.push_back({*t, col, a.value});
      }
      if (auto t = basis.index_of(shifted(source, moved, j, -1))) {
        const auto a = coeff_A(context_at(basis[*t], k), j, mode);
        complex_flag |= a.complex_valued;
        out.push_back({*t, col, std::complex<double>{} - a.value});
      }
    }
  } else {
    const std::size_t p = static_cast<std::size_t>(k / 2);
    for (std::size_t j = 0; j + 1 < p; ++j) {
      if (auto t = basis.index_of(shifted(source, moved, j, +1))) {
        const auto b = coeff_B(source_ctx, j, mode);
        complex_flag |= b.complex_valued;
        out.push_back({*t, col, b.value});
      }
      if (auto t = basis.index_of(shifted(source, moved, j, -1))) {
        const auto b = coeff_B(context_at(basis[*t], k), j, mode);
        complex_flag |= b.complex_valued;
        out.push_back({*t, col, std::complex<double>{} - b.value});
      }
    }
    // i*C; C is real whenever the brackets are.
    const auto c = coeff_C(source_ctx, mode).to_complex();
    if (c != std::complex<double>{})
      out.push_back({col, col, {mode.star_admissible() ? 0.0 : 0.0 - c.imag(), c.real()}});
  }
  std::sort(out.begin(), out.end(), [](const MatrixEntry& a, const MatrixEntry& b) { return a.row < b.row; });
  return out;
}

std::vector<MatrixEntry> merge_columns(std::vector<std::vector<MatrixEntry>>& columns) {
  std::vector<MatrixEntry> entries;
  for (auto& c : columns) entries.insert(entries.end(), c.begin(), c.end());
  std::sort(entries.begin(), entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return entries;
}

void require_float_assembly(const QMode& mode) {
  if (mode.kind() == QMode::Kind::ExactRational)
    throw UnsupportedMode(
        "generator matrices contain square roots and cannot be assembled in exact rational mode");
}

}  // namespace

bool BracketRatio::numerator_vanishes() const { return any_zero(numerator); }
bool BracketRatio::denominator_vanishes() const { return any_zero(denominator); }

QScalar evaluate(const BracketRatio& ratio, const QMode& mode) {
  if (ratio.numerator_vanishes()) return QScalar::zero(mode);
  if (ratio.denominator_vanishes())
    throw InvalidTransition("coefficient denominator vanishes at a non-vanishing numerator");
  QScalar num = QScalar::one(mode);
  for (HalfInt x : ratio.numerator) num *= q_number(x, mode);
  QScalar den = QScalar::one(mode);
  for (HalfInt x : ratio.denominator) den *= q_number(x, mode);
  for (HalfInt x : ratio.balanced_denominator) den *= balanced_bracket(x, mode);
  return num / den;
}

TransitionContext context_at(const GTPattern& pattern, int k) {
  return {row_or_empty(pattern, k), row_or_empty(pattern, k - 1), row_or_empty(pattern, k - 2)};
}

BracketRatio a_squared_ratio(const TransitionContext& ctx, std::size_t j) {
  const std::size_t p = ctx.middle.size();
  const HalfInt lj = ctx.middle[j];
  BracketRatio r;
  for (std::size_t i = 0; i < p; ++i) {
    r.numerator.push_back(ctx.upper[i] + lj);
    r.numerator.push_back(ctx.upper[i] - lj - 1);
  }
  for (std::size_t i = 0; i < ctx.lower.size(); ++i) {
    r.numerator.push_back(ctx.lower[i] + lj);
    r.numerator.push_back(ctx.lower[i] - lj - 1);
  }
  for (std::size_t i = 0; i < p; ++i) {
    if (i == j) continue;
    const HalfInt li = ctx.middle[i];
    r.denominator.push_back(li + lj);
    r.denominator.push_back(li - lj);
    r.denominator.push_back(li + lj + 1);
    r.denominator.push_back(li - lj - 1);
  }
  // d(l)^2 = [l][l+1] / ([2l][2l+2]) = 1 / ({l}{l+1}), finite at l = 0.
  r.balanced_denominator = {lj, lj + 1};
  return r;
}

BracketRatio b_squared_ratio(const TransitionContext& ctx, std::size_t j) {
  const HalfInt lj = ctx.middle[j];
  BracketRatio r;
  for (std::size_t i = 0; i < ctx.upper.size(); ++i) {
    r.numerator.push_back(ctx.upper[i] + lj);
    r.numerator.push_back(ctx.upper[i] - lj);
  }
  for (std::size_t i = 0; i < ctx.lower.size(); ++i) {
    r.numerator.push_back(ctx.lower[i] + lj);
    r.numerator.push_back(ctx.lower[i] - lj);
  }
  r.denominator = {lj.doubled() + 1, lj.doubled() - 1, lj, lj};
  for (std::size_t i = 0; i < ctx.middle.size(); ++i) {
    if (i == j) continue;
    const HalfInt li = ctx.middle[i];
    r.denominator.push_back(li + lj);
    r.denominator.push_back(li - lj);
    r.denominator.push_back(li + lj - 1);
    r.denominator.push_back(li - lj - 1);
  }
  return r;
}

BracketRatio c_ratio(const TransitionContext& ctx) {
  BracketRatio r;
  r.numerator = ctx.upper.l;
  r.numerator.insert(r.numerator.end(), ctx.lower.l.begin(), ctx.lower.l.end());
  for (HalfInt l : ctx.middle.l) {
    r.denominator.push_back(l);
    r.denominator.push_back(l - 1);
  }
  return r;
}

Coefficient coefficient_root(const BracketRatio& ratio, const QMode& mode) {
  const auto squared = evaluate(ratio, mode);
  if (!mode.star_admissible() || squared.is_zero()) {
    const auto root = std::sqrt(squared.to_complex());
    return {root, root.imag() != 0.0 || root.real() < 0.0};
  }
  // Real brackets: [x] = sgn(x) rho(x) with rho > 0 for real q. The signs go
  // under one root, each rho under its own, so products of entries around a
  // cycle stay consistent when some rho turns negative on the unit circle.
  double sign = 1.0;
  std::complex<double> root = 1.0;
  auto rho_root = [&](HalfInt x, double value) {
    if (x.twice() < 0) {
      sign = -sign;
      value = -value;
    }
    return std::sqrt(std::complex<double>(value, 0.0));
  };
  for (HalfInt x : ratio.numerator) root *= rho_root(x, q_number(x, mode).to_complex().real());
  for (HalfInt x : ratio.denominator) root /= rho_root(x, q_number(x, mode).to_complex().real());
  for (HalfInt x : ratio.balanced_denominator)
    root /= std::sqrt(std::complex<double>(balanced_bracket(x, mode).to_complex().real(), 0.0));
  root *= std::sqrt(std::complex<double>(sign, 0.0));
  if (root.imag() == 0.0) root = {root.real(), 0.0};
  if (root.real() == 0.0) root = {0.0, root.imag()};
  return {root, root.imag() != 0.0 || root.real() < 0.0};
}

QScalar coeff_A_squared(const TransitionContext& ctx, std::size_t j, const QMode& mode) {
  return evaluate(a_squared_ratio(ctx, j), mode);
}

Coefficient coeff_A(const TransitionContext& ctx, std::size_t j, const QMode& mode) {
  return coefficient_root(a_squared_ratio(ctx, j), mode);
}

QScalar coeff_B_squared(const TransitionContext& ctx, std::size_t j, const QMode& mode) {
  return evaluate(b_squared_ratio(ctx, j), mode);
}

Coefficient coeff_B(const TransitionContext& ctx, std::size_t j, const QMode& mode) {
  return coefficient_root(b_squared_ratio(ctx, j), mode);
}

QScalar coeff_C(const TransitionContext& ctx, const QMode& mode) {
  // Vanishes identically when l_{p,2p} = 0; that bracket is in the numerator.
  return evaluate(c_ratio(ctx), mode);
}

GeneratorMatrix::GeneratorMatrix(int k, std::size_t dim, std::vector<MatrixEntry> entries, QMode mode,
                                 bool complex_coefficients)
    : k_(k), dim_(dim), entries_(std::move(entries)), mode_(std::move(mode)),
      complex_coefficients_(complex_coefficients) {}

Eigen::MatrixXcd GeneratorMatrix::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& e : entries_) m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += e.value;
  return m;
}

GeneratorMatrix generator_matrix(const Basis& basis, int k, const QMode& mode) {
  check_generator_label(basis, k);
  require_float_assembly(mode);
  const auto dim = static_cast<std::ptrdiff_t>(basis.size());
  std::vector<std::vector<MatrixEntry>> columns(basis.size());
  bool complex_flag = false;
#pragma omp parallel for schedule(dynamic, 16) reduction(|| : complex_flag)
  for (std::ptrdiff_t col = 0; col < dim; ++col) {
    bool flag = false;
    columns[static_cast<std::size_t>(col)] = assemble_column(basis, k, mode, static_cast<std::size_t>(col), flag);
    complex_flag = complex_flag || flag;
  }
  return GeneratorMatrix(k, basis.size(), merge_columns(columns), mode, complex_flag);
}

GeneratorMatrix generator_matrix_serial(const Basis& basis, int k, const QMode& mode) {
  check_generator_label(basis, k);
  require_float_assembly(mode);
  std::vector<std::vector<MatrixEntry>> columns;
  columns.reserve(basis.size());
  bool complex_flag = false;
  for (std::size_t col = 0; col < basis.size(); ++col)
    columns.push_back(assemble_column(basis, k, mode, col, complex_flag));
  return GeneratorMatrix(k, basis.size(), merge_columns(columns), mode, complex_flag);
}

GeneratorMatrix generator_matrix(const Signature& sig, int k, const QMode& mode) {
  return generator_matrix(Basis(sig), k, mode);
}

namespace {

template <class Assemble>
RepBundle build_with(const Signature& sig, const QMode& mode, Assemble assemble) {
  require_float_assembly(mode);
  auto basis = std::make_shared<const Basis>(sig);
  RepBundle bundle{sig, basis, {}, mode};
  for (int k = 2; k <= sig.n; ++k) bundle.generators.push_back(assemble(*basis, k, mode));
  return bundle;
}

}  // namespace

RepBundle build_rep(const Signature& sig, const QMode& mode) {
  return build_with(sig, mode, [](const Basis& b, int k, const QMode& m) { return generator_matrix(b, k, m); });
}

RepBundle build_rep_serial(const Signature& sig, const QMode& mode) {
  return build_with(sig, mode,
                    [](const Basis& b, int k, const QMode& m) { return generator_matrix_serial(b, k, m); });
}

}  // namespace qsorep
