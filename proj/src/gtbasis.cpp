#include "qsorep/gtbasis.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace qsorep {

namespace {

std::string entry_name(std::size_t j) { return "m_" + std::to_string(j + 1); }

/// Inclusive bounds [lo, hi] of every entry of a row at level k-1 below `upper`.
std::vector<std::pair<HalfInt, HalfInt>> interlacing_bounds(const Signature& upper) {
  const std::size_t p = upper.m.size();
  std::vector<std::pair<HalfInt, HalfInt>> bounds;
  if (upper.n % 2 == 1) {
    for (std::size_t j = 0; j < p; ++j) {
      const HalfInt lo = j + 1 < p ? upper.m[j + 1] : -upper.m[p - 1];
      bounds.emplace_back(lo, upper.m[j]);
    }
  } else {
    for (std::size_t j = 0; j + 1 < p; ++j) {
      const HalfInt lo = j + 2 < p ? upper.m[j + 1] : upper.m[p - 1].abs();
      bounds.emplace_back(lo, upper.m[j]);
    }
  }
  return bounds;
}

bool interlaces(const Signature& upper, const Signature& lower) {
  if (lower.n != upper.n - 1 || lower.m.size() != static_cast<std::size_t>(lower.n / 2)) return false;
  const auto bounds = interlacing_bounds(upper);
  if (bounds.size() != lower.m.size()) return false;
  const int parity = upper.m.empty() ? 0 : upper.m[0].parity();
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    const HalfInt x = lower.m[j];
    if (x.parity() != parity || x < bounds[j].first || x > bounds[j].second) return false;
  }
  return true;
}

void branch_rec(const Signature& upper, const std::vector<std::pair<HalfInt, HalfInt>>& bounds,
                std::size_t j, std::vector<HalfInt>& current, std::vector<Signature>& out) {
  if (j == bounds.size()) {
    out.push_back(Signature{upper.n - 1, current});
    return;
  }
  for (HalfInt x = bounds[j].second; x >= bounds[j].first; x = x - 1) {
    current[j] = x;
    branch_rec(upper, bounds, j + 1, current, out);
  }
}

void enumerate_rec(std::vector<Signature>& stack, std::vector<GTPattern>& out) {
  const Signature& last = stack.back();
  if (last.n == 2) {
    out.push_back(GTPattern{stack});
    return;
  }
  for (auto& child : branch(last)) {
    stack.push_back(std::move(child));
    enumerate_rec(stack, out);
    stack.pop_back();
  }
}

using DimKey = std::pair<int, std::vector<std::int64_t>>;

std::uint64_t dimension_rec(const Signature& row, std::map<DimKey, std::uint64_t>& memo) {
  if (row.n == 2) return 1;
  DimKey key{row.n, {}};
  for (HalfInt x : row.m) key.second.push_back(x.twice());
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::uint64_t total = 0;
  for (const auto& child : branch(row)) total += dimension_rec(child, memo);
  memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

std::string Signature::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (j) s += ",";
    s += m[j].to_string();
  }
  return s + ")";
}

std::string GTPattern::to_string() const {
  std::string s;
  for (const auto& r : rows) {
    if (!s.empty()) s += " ";
    s += r.to_string();
  }
  return s;
}

SignatureCheck validate_signature(const Signature& sig) {
  using S = SignatureCheck::Status;
  if (sig.n < 2) return {S::Structural, "n must be at least 2"};
  const std::size_t p = static_cast<std::size_t>(sig.n / 2);
  if (sig.m.size() != p)
    return {S::Structural, "so_" + std::to_string(sig.n) + " needs " + std::to_string(p) +
                               " entries, got " + std::to_string(sig.m.size())};
  for (std::size_t j = 1; j < p; ++j)
    if (sig.m[j].parity() != sig.m[0].parity())
      return {S::Parity, "mixed parity: entries must be all integers or all half-integers"};

  const std::size_t ordered = sig.n % 2 == 1 ? p : p - 1;
  for (std::size_t j = 0; j + 1 < ordered; ++j)
    if (sig.m[j] < sig.m[j + 1])
      return {S::Dominance, entry_name(j) + " >= " + entry_name(j + 1) + " fails"};
  if (sig.n % 2 == 1) {
    if (sig.m[p - 1] < HalfInt{}) return {S::Dominance, entry_name(p - 1) + " >= 0 fails"};
  } else if (p >= 2) {
    if (sig.m[p - 2] < sig.m[p - 1].abs())
      return {S::Dominance, entry_name(p - 2) + " >= |" + entry_name(p - 1) + "| fails"};
  }
  return {};
}

void require_valid_signature(const Signature& sig) {
  if (auto check = validate_signature(sig); !check.ok())
    throw std::invalid_argument("invalid signature " + sig.to_string() + " for so_" +
                                std::to_string(sig.n) + ": " + check.message);
}

std::vector<Signature> branch(const Signature& sig) {
  if (sig.n < 3) throw std::invalid_argument("branch needs a row of level >= 3");
  const auto bounds = interlacing_bounds(sig);
  std::vector<Signature> out;
  std::vector<HalfInt> current(bounds.size());
  branch_rec(sig, bounds, 0, current, out);
  return out;
}

bool is_valid_pattern(const GTPattern& pattern) {
  if (pattern.rows.empty()) return false;
  if (pattern.rows.back().n != 2) return false;
  if (!validate_signature(pattern.rows.front()).ok()) return false;
  for (std::size_t i = 0; i + 1 < pattern.rows.size(); ++i)
    if (!interlaces(pattern.rows[i], pattern.rows[i + 1])) return false;
  return true;
}

std::vector<GTPattern> enumerate_patterns(const Signature& sig) {
  require_valid_signature(sig);
  std::vector<GTPattern> out;
  std::vector<Signature> stack{sig};
  enumerate_rec(stack, out);
  return out;
}

std::uint64_t dimension(const Signature& sig) {
  require_valid_signature(sig);
  std::map<DimKey, std::uint64_t> memo;
  return dimension_rec(sig, memo);
}

LRow l_coords(const Signature& row) {
  LRow out{row.n, {}};
  const std::int64_t p = row.n / 2;
  const bool odd = row.n % 2 == 1;
  for (std::size_t idx = 0; idx < row.m.size(); ++idx) {
    const std::int64_t j = static_cast<std::int64_t>(idx) + 1;
    out.l.push_back(row.m[idx] + (odd ? p - j + 1 : p - j));
  }
  return out;
}

GTPattern shifted(const GTPattern& pattern, int level, std::size_t j, int delta) {
  GTPattern out = pattern;
  auto& entry = out.row(level).m.at(j);
  entry = entry + delta;
  return out;
}

Basis::Basis(Signature top) : top_(std::move(top)), patterns_(enumerate_patterns(top_)) {
  index_.reserve(patterns_.size());
  for (std::size_t i = 0; i < patterns_.size(); ++i) index_.emplace(key_of(patterns_[i]), i);
}

std::optional<std::size_t> Basis::index_of(const GTPattern& pattern) const {
  if (pattern.rows.empty() || pattern.rows.front() != top_) return std::nullopt;
  auto it = index_.find(key_of(pattern));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Basis::KeyHash::operator()(const std::vector<std::int64_t>& key) const noexcept {
  std::size_t h = key.size();
  for (auto v : key) h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::vector<std::int64_t> Basis::key_of(const GTPattern& pattern) {
  std::vector<std::int64_t> key;
  for (const auto& r : pattern.rows) {
    key.push_back(r.n);
    for (HalfInt x : r.m) key.push_back(x.twice());
  }
  return key;
}

Signature make_signature(int n, const std::vector<std::int64_t>& twice_entries) {
  Signature s{n, {}};
  for (auto t : twice_entries) s.m.push_back(HalfInt::from_twice(t));
  return s;
}

}  // namespace qsorep
