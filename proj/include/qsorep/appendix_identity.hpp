#pragma once

/// The master identity Phi = 1 behind the diagonal relation checks.
///
///   f(x; y)   = [x + y][x - y - 1]
///   phi^r     = prod_s f(u_s; m_r) prod_{s<p} f(w_s; m_r)
///               / prod_{s != r} f(m_s; m_r) f(m_s + 1; m_r)
///   Phi       = sum_r ( -phi^r(m) + phi^r(m with m_r -> m_r - 1) ) / [2 m_r]
///
/// where u, m, w are the l-coordinates of rows 2p+1, 2p and 2p-1 of a pattern.
/// Evaluated exactly at rational s = q^(1/2), Phi is compared with 1.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qsorep/gtbasis.hpp"
#include "qsorep/qnum.hpp"
#include "qsorep/repmatrix.hpp"

namespace qsorep {

struct LTriple {
  HalfInt upper;                 ///< l_{r,2p+1}
  HalfInt middle;                ///< l_{r,2p}
  std::optional<HalfInt> lower;  ///< l_{r,2p-1}, absent for r = p

  friend bool operator==(const LTriple&, const LTriple&) = default;
  friend auto operator<=>(const LTriple&, const LTriple&) = default;
};

struct LConfig {
  std::vector<LTriple> triples;

  std::size_t p() const { return triples.size(); }
  std::string to_string() const;
  friend bool operator==(const LConfig&, const LConfig&) = default;
  friend auto operator<=>(const LConfig&, const LConfig&) = default;
};

/// A phi^r denominator vanished with a non-vanishing numerator, or [2 l_{r,2p}] = 0.
class ZeroDenominator : public std::domain_error {
 public:
  ZeroDenominator(const std::string& what, std::size_t s, std::size_t r)
      : std::domain_error(what), s_index(s), r_index(r) {}
  std::size_t s_index;  ///< 0-based; equals r_index for the [2l] factor
  std::size_t r_index;
};

QScalar f(HalfInt x, HalfInt y, const QMode& mode);

/// How a phi^r term with a vanishing bracket is read.
///   Forbidden  a vanishing numerator factor gives 0 even when a denominator
///              factor also vanishes; on pattern configs this is the
///              forbidden transition contributing nothing.
///   Strict     the plain rational function: any vanishing denominator
///              factor throws ZeroDenominator. Used off the pattern lattice,
///              where 0/0 has no meaning.
enum class ZeroRule { Forbidden, Strict };

/// phi^r with 0-based r.
QScalar phi_r(const LConfig& config, std::size_t r, const QMode& mode, ZeroRule rule = ZeroRule::Forbidden);

QScalar big_phi(const LConfig& config, const QMode& mode, ZeroRule rule = ZeroRule::Forbidden);

/// Config of the rows (2p+1, 2p, 2p-1) of a pattern; lower is ignored for p = 1.
LConfig config_from_rows(const Signature& upper, const Signature& middle, const Signature* lower);
LConfig config_from_context(const TransitionContext& ctx);

/// [2l][2l+2] / ([l][l+1]) * (A^r)^2 with A^r the assembled (square-rooted)
/// coefficient; equals phi^r on valid contexts. Float or Classical mode.
std::complex<double> phi_via_coefficient(const TransitionContext& ctx, std::size_t r, const QMode& mode);

/// Configs from every triple of rows (2p+1, 2p, 2p-1) below a top row of
/// level 2p+1 whose entries have |2m| <= max_twice, deduplicated, sorted.
/// Configs with some l_{r,2p} = 0 (where [2 l_{r,2p}] = 0) are skipped.
std::vector<LConfig> pattern_configs(std::size_t p, std::int64_t max_twice);

/// l_{j,2p-1} -> 0 applied to each config with p >= 2 and each j < p-1.
std::vector<LConfig> lower_zero_extensions(const std::vector<LConfig>& configs);

/// The substitution that maps the even-generator diagonal relation onto
/// Phi = 1: built from rows (2p, 2p-1, 2p-2) of patterns below level-2p tops
/// with |2m| <= max_twice, and j in 1..p:
///   u_s = l_{s,2p} + 1/2 (s != j), u_j = 3/2,
///   m_s = l_{s,2p-1} - 1/2, w_s = l_{s,2p-2} + 1/2 (s < p), m_p = -1/2.
std::vector<LConfig> half_shift_extensions(std::size_t p, std::int64_t max_twice);

/// Span (max minus min exponent of s) of the Laurent polynomial obtained by
/// clearing every bracket denominator in Phi - 1. Agreement at more than this
/// many distinct nonzero s proves the identity for the config.
std::int64_t laurent_span_bound(const LConfig& config);

struct Counterexample {
  LConfig config;
  std::string s;
  std::string value;  ///< Phi, or the error text when evaluation failed
};

struct SweepReport {
  std::size_t configs = 0;      ///< configs evaluated (all p, incl. extensions)
  std::size_t extension_configs = 0;
  std::size_t undefined = 0;    ///< Strict configs with a vanishing denominator, skipped
  std::size_t evaluations = 0;  ///< defined configs x s values
  std::int64_t max_span_bound = 0;
  std::vector<Counterexample> failures;

  bool all_one() const { return failures.empty(); }
};

struct SweepOptions {
  std::size_t p_max = 2;
  std::size_t samples = 0;  ///< per p; 0 means every config
  std::int64_t max_twice = 4;
  std::int64_t extension_max_twice = 6;  ///< wider, so p = 3 has defined lower-zero points
  std::vector<mpq_class> s_values{mpq_class(3), mpq_class(7, 2), mpq_class(11, 5)};
  bool include_extensions = true;
};

/// Pattern configs use ZeroRule::Forbidden, the two extension families
/// ZeroRule::Strict. Throws std::invalid_argument for p_max outside 1..4 or
/// an invalid s.
SweepReport identity_sweep(const SweepOptions& options);

/// Evaluates Phi at every (config, s) pair; failures in config order.
/// Parallel over configs. Under ZeroRule::Strict a config with a vanishing
/// denominator counts as undefined; under Forbidden it is a failure.
SweepReport evaluate_identity(const std::vector<LConfig>& configs, const std::vector<mpq_class>& s_values,
                              ZeroRule rule = ZeroRule::Forbidden);
SweepReport evaluate_identity_serial(const std::vector<LConfig>& configs, const std::vector<mpq_class>& s_values,
                                     ZeroRule rule = ZeroRule::Forbidden);

}  // namespace qsorep
