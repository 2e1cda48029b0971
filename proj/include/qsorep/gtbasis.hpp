#pragma once

/// Signatures, Gel'fand-Tsetlin patterns and their enumeration.
///
/// A pattern for so_n is a stack of rows m_n, m_{n-1}, ..., m_2 where row k has
/// floor(k/2) entries and consecutive rows interlace. Interlacing from an odd
/// row 2p+1 to the even row 2p below it reads
///
///   m_{1,2p+1} >= m_{1,2p} >= m_{2,2p+1} >= ... >= m_{p,2p+1} >= m_{p,2p} >= -m_{p,2p+1}
///
/// and from an even row 2p to the odd row 2p-1 below it
///
///   m_{1,2p} >= m_{1,2p-1} >= m_{2,2p} >= ... >= m_{p-1,2p-1} >= |m_{p,2p}|.
///
/// Patterns are ordered lexicographically descending, row by row from the top,
/// entries left to right. That order is the basis order of every matrix.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsorep/halfint.hpp"

namespace qsorep {

/// One row of a pattern, or a highest weight when it is the top row.
struct Signature {
  int n = 2;                  ///< level k of the row (so_k)
  std::vector<HalfInt> m;     ///< floor(n/2) entries

  int rank() const { return n / 2; }
  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
  std::string to_string() const;
};

struct SignatureCheck {
  enum class Status { Ok, Structural, Parity, Dominance };
  Status status = Status::Ok;
  std::string message;

  bool ok() const { return status == Status::Ok; }
};

SignatureCheck validate_signature(const Signature& sig);

/// Throws std::invalid_argument with the violation message unless valid.
void require_valid_signature(const Signature& sig);

/// All rows of level k-1 interlacing with `sig` (level k >= 3), in
/// lexicographically decreasing order.
std::vector<Signature> branch(const Signature& sig);

struct GTPattern {
  std::vector<Signature> rows;  ///< rows[0] is level n, rows.back() is level 2

  int top_level() const { return rows.front().n; }
  /// Row of level k (2 <= k <= n).
  const Signature& row(int level) const { return rows[static_cast<std::size_t>(top_level() - level)]; }
  Signature& row(int level) { return rows[static_cast<std::size_t>(top_level() - level)]; }

  friend bool operator==(const GTPattern&, const GTPattern&) = default;
  friend auto operator<=>(const GTPattern&, const GTPattern&) = default;
  std::string to_string() const;
};

/// True when every consecutive pair of rows interlaces and row lengths match.
bool is_valid_pattern(const GTPattern& pattern);

/// Every pattern with top row `sig`, in basis order. Throws on invalid sig.
std::vector<GTPattern> enumerate_patterns(const Signature& sig);

/// Number of patterns, from the branching recursion with memoised
/// sub-dimensions (level-2 rows have dimension 1).
std::uint64_t dimension(const Signature& sig);

/// Shifted coordinates: l_{j,2p+1} = m_{j,2p+1} + p - j + 1 and
/// l_{j,2p} = m_{j,2p} + p - j (j is 1-based).
struct LRow {
  int level = 2;
  std::vector<HalfInt> l;

  std::size_t size() const { return l.size(); }
  HalfInt operator[](std::size_t j) const { return l[j]; }
};

LRow l_coords(const Signature& row);

/// Copy of `pattern` with component j (0-based) of the row at `level`
/// shifted by `delta`. The result is not validated.
GTPattern shifted(const GTPattern& pattern, int level, std::size_t j, int delta);

/// An enumerated basis with O(1) lookup of pattern positions.
class Basis {
 public:
  explicit Basis(Signature top);

  const Signature& signature() const { return top_; }
  std::size_t size() const { return patterns_.size(); }
  const GTPattern& operator[](std::size_t i) const { return patterns_[i]; }
  const std::vector<GTPattern>& patterns() const { return patterns_; }
  auto begin() const { return patterns_.begin(); }
  auto end() const { return patterns_.end(); }

  /// Position of `pattern`, or nullopt when it is not a pattern of this basis
  /// (for instance a shifted pattern that breaks interlacing).
  std::optional<std::size_t> index_of(const GTPattern& pattern) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const noexcept;
  };
  static std::vector<std::int64_t> key_of(const GTPattern& pattern);

  Signature top_;
  std::vector<GTPattern> patterns_;
  std::unordered_map<std::vector<std::int64_t>, std::size_t, KeyHash> index_;
};

inline std::optional<std::size_t> pattern_index(const GTPattern& pattern, const Basis& basis) {
  return basis.index_of(pattern);
}

/// Builds a signature from twice-integer entries, e.g. make_signature(5, {2, 0}) is m = (1, 0).
Signature make_signature(int n, const std::vector<std::int64_t>& twice_entries);

}  // namespace qsorep
