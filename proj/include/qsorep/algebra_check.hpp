#pragma once

/// Residuals of the defining relations, the *-condition and a numerical
/// irreducibility test (Schur: the commutant of an irreducible family is the
/// scalars).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsorep/repmatrix.hpp"

namespace qsorep {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Relation { TrilinearI, TrilinearII, Commutation, Star };

std::string relation_name(Relation r);

struct ResidualReport {
  Relation relation = Relation::Star;
  int k_first = 0;   ///< generator label k of I_{k,k-1}
  int k_second = 0;  ///< second label, equal to k_first for Star
  double residual = 0.0;  ///< scale-normalised max-abs-entry norm
  double tolerance = 0.0;
  bool pass = false;
};

/// Largest absolute entry.
double max_abs(const Eigen::MatrixXcd& m);

/// max of ||X^2 Y + Y X^2 - [2] X Y X + Y|| and ||Y^2 X + X Y^2 - [2] Y X Y + X||
/// (max-abs-entry norm, unnormalised). X = T(I_{k,k-1}), Y = T(I_{k-1,k-2}).
double trilinear_residual(const GeneratorMatrix& x, const GeneratorMatrix& y, const QMode& mode);
double trilinear_residual(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y, std::complex<double> q_two);

/// ||XY - YX||. Throws std::invalid_argument for adjacent generators.
double commutation_residual(const GeneratorMatrix& x, const GeneratorMatrix& y);

/// ||X + X^dagger||.
double star_residual(const GeneratorMatrix& x);

struct CommutantResult {
  enum class Status { Determined, Indeterminate };
  Status status = Status::Determined;
  std::size_t dimension = 0;  ///< nullity when Determined, best guess otherwise
  double gap = 0.0;           ///< smallest kept / largest dropped singular value
  double largest_singular_value = 0.0;
  std::size_t unknowns = 0;   ///< size of the reduced linear system

  bool irreducible() const { return status == Status::Determined && dimension == 1; }
};

struct CommutantOptions {
  std::size_t max_dim = 64;
  double relative_threshold = 1e-8;
  double required_gap = 1e2;
};

/// Dimension of {X : X T = T X for all T in `generators`}.
///
/// The unknown X is vectorised. Any generator that is diagonal fixes
/// X_ij = 0 wherever its diagonal entries differ by more than 1e-6 of the
/// largest generator entry; the remaining unknowns are solved by the singular
/// values of the stacked commutator operators restricted to them. Singular
/// values below relative_threshold * largest count as zero. A gap smaller than
/// required_gap between kept and dropped values makes the result Indeterminate.
/// Throws std::invalid_argument when the dimension exceeds max_dim.
CommutantResult commutant_dimension(const std::vector<Eigen::MatrixXcd>& generators,
                                    const CommutantOptions& options = {});
CommutantResult commutant_dimension(const RepBundle& bundle, const CommutantOptions& options = {});

/// Block-diagonal direct sum of equal-length generator lists.
std::vector<Eigen::MatrixXcd> direct_sum(const std::vector<Eigen::MatrixXcd>& a,
                                         const std::vector<Eigen::MatrixXcd>& b);
std::vector<Eigen::MatrixXcd> dense_generators(const RepBundle& bundle);

/// All trilinear pairs (both orientations), all distant commuting pairs and,
/// when the mode admits a *-structure, one star report per generator.
std::vector<ResidualReport> relation_suite(const RepBundle& bundle, double tolerance);

bool all_pass(const std::vector<ResidualReport>& reports);

}  // namespace qsorep
