#include "qsorep/algebra_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>
#include <Eigen/SparseCore>
#include <Eigen/SparseQR>
#include <Eigen/OrderingMethods>

namespace qsorep {

namespace {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

void require_same_dim(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols())
    throw DimensionMismatch("generator matrices have different dimensions (" + std::to_string(x.rows()) +
                            " vs " + std::to_string(y.rows()) + ")");
}

double trilinear_one(const Matrix& x, const Matrix& y, Complex q_two) {
  const Matrix xx = x * x;
  const Matrix r = xx * y + y * xx - q_two * (x * y * x) + y;
  return max_abs(r);
}

double scale_of(std::initializer_list<const Matrix*> ms) {
  double s = 0.0;
  for (const auto* m : ms) s = std::max(s, max_abs(*m));
  return std::max(1.0, s);
}

ResidualReport make_report(Relation rel, int k1, int k2, double residual, double tolerance) {
  return {rel, k1, k2, residual, tolerance, residual <= tolerance};
}

bool is_diagonal(const Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (r != c && m(r, c) != Complex{}) return false;
  return true;
}

}  // namespace

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::TrilinearI:
      return "trilinear_I";
    case Relation::TrilinearII:
      return "trilinear_II";
    case Relation::Commutation:
      return "commutation";
    case Relation::Star:
      return "star";
  }
  return "unknown";
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double trilinear_residual(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y, std::complex<double> q_two) {
  require_same_dim(x, y);
  return std::max(trilinear_one(x, y, q_two), trilinear_one(y, x, q_two));
}

double trilinear_residual(const GeneratorMatrix& x, const GeneratorMatrix& y, const QMode& mode) {
  if (x.dim() != y.dim()) throw DimensionMismatch("generator matrices have different dimensions");
  return trilinear_residual(x.dense(), y.dense(), q_two(mode).to_complex());
}

double commutation_residual(const GeneratorMatrix& x, const GeneratorMatrix& y) {
  if (std::abs(x.k() - y.k()) == 1)
    throw std::invalid_argument("commutation_residual: generators I_{" + std::to_string(x.k()) + "} and I_{" +
                                std::to_string(y.k()) + "} are adjacent");
  if (x.dim() != y.dim()) throw DimensionMismatch("generator matrices have different dimensions");
  const Matrix a = x.dense();
  const Matrix b = y.dense();
  return max_abs(a * b - b * a);
}

double star_residual(const GeneratorMatrix& x) {
  const Matrix a = x.dense();
  return max_abs(a + a.adjoint());
}

std::vector<Eigen::MatrixXcd> dense_generators(const RepBundle& bundle) {
  std::vector<Matrix> out;
  out.reserve(bundle.generators.size());
  for (const auto& g : bundle.generators) out.push_back(g.dense());
  return out;
}

std::vector<Eigen::MatrixXcd> direct_sum(const std::vector<Eigen::MatrixXcd>& a,
                                         const std::vector<Eigen::MatrixXcd>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("direct_sum: generator counts differ");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto da = a[i].rows();
    const auto db = b[i].rows();
    Matrix m = Matrix::Zero(da + db, da + db);
    m.topLeftCorner(da, da) = a[i];
    m.bottomRightCorner(db, db) = b[i];
    out.push_back(std::move(m));
  }
  return out;
}

CommutantResult commutant_dimension(const std::vector<Eigen::MatrixXcd>& generators,
                                    const CommutantOptions& options) {
  if (generators.empty()) throw std::invalid_argument("commutant_dimension: no generators");
  const auto d = static_cast<std::size_t>(generators.front().rows());
  for (const auto& g : generators) require_same_dim(generators.front(), g);
  if (d > options.max_dim)
    throw std::invalid_argument("commutant_dimension: dimension " + std::to_string(d) + " exceeds the cap " +
                                std::to_string(options.max_dim));

  double scale = 0.0;
  for (const auto& g : generators) scale = std::max(scale, max_abs(g));

  // Unknown X_ij, column-major. Diagonal generators pin off-block entries to zero.
  std::vector<char> kept(d * d, 1);
  if (scale > 0.0) {
    for (const auto& g : generators) {
      if (!is_diagonal(g)) continue;
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) {
          const auto gap = std::abs(g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) -
                                    g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)));
          if (gap > 1e-6 * scale) kept[i + d * j] = 0;
        }
    }
  }
  std::vector<std::ptrdiff_t> column_of(d * d, -1);
  std::size_t unknowns = 0;
  for (std::size_t u = 0; u < d * d; ++u)
    if (kept[u]) column_of[u] = static_cast<std::ptrdiff_t>(unknowns++);

  // Rows of (X T - T X)_ij restricted to kept unknowns.
  std::vector<Eigen::Triplet<Complex>> triplets;
  std::size_t rows = 0;
  for (const auto& g : generators) {
    std::vector<std::vector<std::pair<std::size_t, Complex>>> by_col(d), by_row(d);
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r) {
        const Complex v = g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        if (v != Complex{}) {
          by_col[c].emplace_back(r, v);
          by_row[r].emplace_back(c, v);
        }
      }
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) {
        bool any = false;
        // sum_l X_il T_lj
        for (auto [l, v] : by_col[j])
          if (auto c = column_of[i + d * l]; c >= 0) {
            triplets.emplace_back(static_cast<int>(rows), static_cast<int>(c), v);
            any = true;
          }
        // - sum_l T_il X_lj
        for (auto [l, v] : by_row[i])
          if (auto c = column_of[l + d * j]; c >= 0) {
            triplets.emplace_back(static_cast<int>(rows), static_cast<int>(c), -v);
            any = true;
          }
        if (any) ++rows;
      }
  }

  CommutantResult result;
  result.unknowns = unknowns;
  std::vector<double> sigma;
  if (rows > 0 && unknowns > 0) {
    Eigen::SparseMatrix<Complex> k(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(unknowns));
    k.setFromTriplets(triplets.begin(), triplets.end());
    k.makeCompressed();
    Eigen::SparseQR<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> qr;
    qr.setPivotThreshold(0.0);
    qr.compute(k);
    if (qr.info() != Eigen::Success) throw std::runtime_error("commutant_dimension: sparse QR failed");
    const auto n = std::min<Eigen::Index>(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(unknowns));
    Matrix r = Matrix(qr.matrixR()).topRows(n);
    Eigen::BDCSVD<Matrix> svd(r);
    const auto& sv = svd.singularValues();
    sigma.assign(sv.data(), sv.data() + sv.size());
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<>());

  const double largest = sigma.empty() ? 0.0 : sigma.front();
  result.largest_singular_value = largest;
  const double threshold = options.relative_threshold * largest;
  std::size_t rank = 0;
  if (largest > 0.0)
    while (rank < sigma.size() && sigma[rank] >= threshold) ++rank;
  result.dimension = unknowns - rank;

  const double smallest_kept = rank > 0 ? sigma[rank - 1] : std::numeric_limits<double>::infinity();
  const double largest_dropped = rank < sigma.size() ? sigma[rank] : 0.0;
  if (rank == 0 || largest_dropped == 0.0) {
    result.gap = std::numeric_limits<double>::infinity();
  } else {
    result.gap = smallest_kept / largest_dropped;
  }
  result.status = result.gap < options.required_gap ? CommutantResult::Status::Indeterminate
                                                    : CommutantResult::Status::Determined;
  return result;
}

CommutantResult commutant_dimension(const RepBundle& bundle, const CommutantOptions& options) {
  if (bundle.dim() > options.max_dim)
    throw std::invalid_argument("commutant_dimension: dimension " + std::to_string(bundle.dim()) +
                                " exceeds the cap " + std::to_string(options.max_dim));
  return commutant_dimension(dense_generators(bundle), options);
}

std::vector<ResidualReport> relation_suite(const RepBundle& bundle, double tolerance) {
  const auto dense = dense_generators(bundle);
  const Complex two = q_two(bundle.mode).to_complex();
  const int n = bundle.signature.n;
  auto gen = [&](int k) -> const Matrix& { return dense[static_cast<std::size_t>(k - 2)]; };

  std::vector<ResidualReport> reports;
  for (int k = 3; k <= n; ++k) {
    const Matrix& x = gen(k);
    const Matrix& y = gen(k - 1);
    const double s3 = std::pow(scale_of({&x, &y}), 3);
    reports.push_back(make_report(Relation::TrilinearI, k, k - 1, trilinear_one(x, y, two) / s3, tolerance));
    reports.push_back(make_report(Relation::TrilinearII, k, k - 1, trilinear_one(y, x, two) / s3, tolerance));
  }
  for (int i = 2; i <= n; ++i)
    for (int k = i + 2; k <= n; ++k) {
      const Matrix& a = gen(i);
      const Matrix& b = gen(k);
      const double s2 = std::pow(scale_of({&a, &b}), 2);
      reports.push_back(make_report(Relation::Commutation, i, k, max_abs(a * b - b * a) / s2, tolerance));
    }
  if (bundle.mode.star_admissible()) {
    for (int k = 2; k <= n; ++k) {
      const Matrix& a = gen(k);
      reports.push_back(make_report(Relation::Star, k, k, max_abs(a + a.adjoint()) / scale_of({&a}), tolerance));
    }
  }
  return reports;
}

bool all_pass(const std::vector<ResidualReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const ResidualReport& r) { return r.pass; });
}

}  // namespace qsorep
