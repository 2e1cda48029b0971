#pragma once

/// Machine-readable export of representation bundles.
///
/// JSON layout (schema_version "1"):
///
///   { "schema_version": "1", "n": 5, "signature": [2, 0],
///     "q": {"mode": "float", "value": "0.9"},
///     "basis": [[[2, 0], [2, 0], [2], [2]], ...],      rows of twice-integers
///     "generators": [{"k": 2, "entries": [[row, col, re, im], ...]}, ...],
///     "checks": [...] }                                  optional
///
/// q modes: "float" (value "x"), "float-complex" (value "re,im"),
/// "polar" (value "h", q = e^{ih}), "exact" (value "a/b" for s), "classical".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsorep/algebra_check.hpp"
#include "qsorep/qnum.hpp"
#include "qsorep/repmatrix.hpp"

namespace qsorep {

inline constexpr const char* kSchemaVersion = "1";

struct QSpec {
  std::string mode;
  std::string value;

  QMode to_mode() const;
  friend bool operator==(const QSpec&, const QSpec&) = default;
};

QSpec qspec_real(double q);
QSpec qspec_complex(std::complex<double> q);
QSpec qspec_polar(double h);
QSpec qspec_exact(const mpq_class& s);
QSpec qspec_classical();

struct ExportEntry {
  std::uint64_t row = 0;
  std::uint64_t col = 0;
  double re = 0.0;
  double im = 0.0;
  friend bool operator==(const ExportEntry&, const ExportEntry&) = default;
};

struct ExportGenerator {
  int k = 0;
  std::vector<ExportEntry> entries;
  friend bool operator==(const ExportGenerator&, const ExportGenerator&) = default;
};

struct ExportCheck {
  std::string relation;
  int k_first = 0;
  int k_second = 0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  friend bool operator==(const ExportCheck&, const ExportCheck&) = default;
};

struct ExportBundle {
  std::string schema_version = kSchemaVersion;
  int n = 0;
  std::vector<std::int64_t> signature;
  QSpec q;
  std::vector<std::vector<std::vector<std::int64_t>>> basis;
  std::vector<ExportGenerator> generators;
  std::optional<std::vector<ExportCheck>> checks;

  std::size_t dim() const { return basis.size(); }
  friend bool operator==(const ExportBundle&, const ExportBundle&) = default;
};

ExportBundle make_export(const RepBundle& bundle, const QSpec& q,
                         const std::optional<std::vector<ResidualReport>>& checks = std::nullopt);

/// Pretty-printed JSON with a trailing newline. Doubles use the shortest
/// decimal that reads back to the same bits.
std::string emit_json(const ExportBundle& bundle);
/// Throws std::invalid_argument on malformed input or an unknown schema.
ExportBundle parse_json(const std::string& text);

/// Matrix-market style triplets, 1-based, one block per generator.
std::string emit_coo_text(const ExportBundle& bundle);

}  // namespace qsorep
