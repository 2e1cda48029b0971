#include "qsorep/export.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qsorep {

namespace {

using nlohmann::json;

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

std::vector<std::int64_t> twice_list(const std::vector<HalfInt>& xs) {
  std::vector<std::int64_t> out;
  out.reserve(xs.size());
  for (auto x : xs) out.push_back(x.twice());
  return out;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key).get<T>();
}

}  // namespace

QMode QSpec::to_mode() const {
  if (mode == "float") return QMode::float_complex(parse_double(value));
  if (mode == "float-complex") {
    const auto comma = value.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("float-complex q needs 're,im'");
    return QMode::float_complex({parse_double(value.substr(0, comma)), parse_double(value.substr(comma + 1))});
  }
  if (mode == "polar") return QMode::polar(parse_double(value));
  if (mode == "exact") return QMode::exact(parse_rational(value));
  if (mode == "classical") return QMode::classical();
  throw std::invalid_argument("unknown q mode '" + mode + "'");
}

QSpec qspec_real(double q) { return {"float", shortest(q)}; }
QSpec qspec_complex(std::complex<double> q) { return {"float-complex", shortest(q.real()) + "," + shortest(q.imag())}; }
QSpec qspec_polar(double h) { return {"polar", shortest(h)}; }
QSpec qspec_exact(const mpq_class& s) { return {"exact", s.get_str()}; }
QSpec qspec_classical() { return {"classical", ""}; }

ExportBundle make_export(const RepBundle& bundle, const QSpec& q,
                         const std::optional<std::vector<ResidualReport>>& checks) {
  ExportBundle out;
  out.n = bundle.signature.n;
  out.signature = twice_list(bundle.signature.m);
  out.q = q;
  for (const auto& pattern : *bundle.basis) {
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& row : pattern.rows) rows.push_back(twice_list(row.m));
    out.basis.push_back(std::move(rows));
  }
  for (const auto& g : bundle.generators) {
    ExportGenerator eg{g.k(), {}};
    for (const auto& e : g.entries()) eg.entries.push_back({e.row, e.col, e.value.real(), e.value.imag()});
    out.generators.push_back(std::move(eg));
  }
  if (checks) {
    std::vector<ExportCheck> cs;
    for (const auto& r : *checks)
      cs.push_back({relation_name(r.relation), r.k_first, r.k_second, r.residual, r.tolerance, r.pass});
    out.checks = std::move(cs);
  }
  return out;
}

std::string emit_json(const ExportBundle& b) {
  json j = json::object();
  j["schema_version"] = b.schema_version;
  j["n"] = b.n;
  j["signature"] = b.signature;
  j["q"] = {{"mode", b.q.mode}, {"value", b.q.value}};
  j["basis"] = b.basis;
  json gens = json::array();
  for (const auto& g : b.generators) {
    json entries = json::array();
    for (const auto& e : g.entries) entries.push_back(json::array({e.row, e.col, e.re, e.im}));
    gens.push_back({{"k", g.k}, {"entries", std::move(entries)}});
  }
  j["generators"] = std::move(gens);
  if (b.checks) {
    json cs = json::array();
    for (const auto& c : *b.checks)
      cs.push_back({{"relation", c.relation},
                    {"k_first", c.k_first},
                    {"k_second", c.k_second},
                    {"residual", c.residual},
                    {"tolerance", c.tolerance},
                    {"pass", c.pass}});
    j["checks"] = std::move(cs);
  }
  return j.dump(1) + "\n";
}

ExportBundle parse_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  try {
    ExportBundle b;
    b.schema_version = field<std::string>(j, "schema_version");
    if (b.schema_version != kSchemaVersion)
      throw std::invalid_argument("unsupported schema_version '" + b.schema_version + "'");
    b.n = field<int>(j, "n");
    b.signature = field<std::vector<std::int64_t>>(j, "signature");
    const json& q = j.at("q");
    b.q = {field<std::string>(q, "mode"), field<std::string>(q, "value")};
    b.basis = field<std::vector<std::vector<std::vector<std::int64_t>>>>(j, "basis");
    for (const auto& g : j.at("generators")) {
      ExportGenerator eg{field<int>(g, "k"), {}};
      for (const auto& e : g.at("entries")) {
        if (!e.is_array() || e.size() != 4) throw std::invalid_argument("generator entry must be [row, col, re, im]");
        eg.entries.push_back({e[0].get<std::uint64_t>(), e[1].get<std::uint64_t>(), e[2].get<double>(),
                              e[3].get<double>()});
      }
      b.generators.push_back(std::move(eg));
    }
    if (j.contains("checks")) {
      std::vector<ExportCheck> cs;
      for (const auto& c : j.at("checks"))
        cs.push_back({field<std::string>(c, "relation"), field<int>(c, "k_first"), field<int>(c, "k_second"),
                      field<double>(c, "residual"), field<double>(c, "tolerance"), field<bool>(c, "pass")});
      b.checks = std::move(cs);
    }
    return b;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed bundle: ") + e.what());
  }
}

std::string emit_coo_text(const ExportBundle& b) {
  std::ostringstream os;
  os << "% qsorep coo-text " << b.schema_version << "\n";
  os << "% n " << b.n << " signature";
  for (auto t : b.signature) os << ' ' << t;
  os << " q " << b.q.mode;
  if (!b.q.value.empty()) os << ' ' << b.q.value;
  os << "\n% rows: row col re im (1-based)\n";
  char buf[96];
  for (const auto& g : b.generators) {
    os << "generator " << g.k << ' ' << b.dim() << ' ' << b.dim() << ' ' << g.entries.size() << "\n";
    for (const auto& e : g.entries) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g", e.re, e.im);
      os << e.row + 1 << ' ' << e.col + 1 << ' ' << buf << "\n";
    }
  }
  return os.str();
}

}  // namespace qsorep
