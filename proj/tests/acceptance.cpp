// Acceptance run: one PASS/FAIL line per criterion, details indented below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qsorep/algebra_check.hpp"
#include "qsorep/appendix_identity.hpp"
#include "qsorep/gtbasis.hpp"
#include "qsorep/qnum.hpp"
#include "qsorep/repmatrix.hpp"

using namespace qsorep;
using Clock = std::chrono::steady_clock;
using C = std::complex<double>;

namespace {

constexpr double kRelationTol = 1e-10;
constexpr double kRelationSeconds = 120.0;
constexpr double kSweepSeconds = 60.0;
constexpr double kBridgeTol = 1e-10;
constexpr std::size_t kBridgeMinContexts = 200;
constexpr std::size_t kCommutantMaxDim = 64;
constexpr double kClassicalTol = 1e-12;
constexpr double kNearOneTol = 1e-4;
constexpr std::int64_t kBatteryTwice = 20;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void fail(const std::string& why) {
    pass = false;
    details.push_back(why);
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

Signature sig_of(const oracle::GridSig& g) { return make_signature(g.n, g.twice); }

std::string label(const Signature& s) { return "n=" + std::to_string(s.n) + " " + s.to_string(); }

struct NamedMode {
  std::string name;
  QMode mode;
};

std::vector<NamedMode> grid_modes() {
  return {{"0.7", QMode::float_complex(0.7)},
          {"0.9", QMode::float_complex(0.9)},
          {"1.3", QMode::float_complex(1.3)},
          {"e^{0.3i}", QMode::polar(0.3)},
          {"e^{0.71i}", QMode::polar(0.71)}};
}

Outcome relations() {
  Outcome o;
  const auto t0 = Clock::now();
  std::map<std::string, double> worst;
  std::size_t bundles = 0, reports = 0, failed = 0;
  for (const auto& q : grid_modes())
    for (const auto& g : oracle::grid()) {
      const auto rep = build_rep(sig_of(g), q.mode);
      ++bundles;
      for (const auto& r : relation_suite(rep, kRelationTol)) {
        ++reports;
        auto& w = worst[relation_name(r.relation)];
        w = std::max(w, r.residual);
        if (!r.pass) {
          ++failed;
          o.fail(relation_name(r.relation) + " " + std::to_string(r.k_first) + "," + std::to_string(r.k_second) +
                 " at " + label(rep.signature) + " q=" + q.name + ": " + sci(r.residual));
        }
      }
    }
  const double secs = seconds_since(t0);
  if (secs > kRelationSeconds) o.fail("runtime " + std::to_string(secs) + " s over the budget");
  std::ostringstream s;
  s << bundles << " bundles, " << reports << " reports, " << failed << " over " << sci(kRelationTol) << "; worst";
  for (const auto& [name, w] : worst) s << " " << name << " " << sci(w);
  s << "; " << std::lround(secs) << " s";
  o.summary = s.str();
  return o;
}

Outcome dimensions() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& g : oracle::grid()) {
    const auto sig = sig_of(g);
    const auto brute = oracle::brute_patterns(g.n, g.twice).size();
    const auto rec = dimension(sig);
    const auto enumerated = enumerate_patterns(sig).size();
    ++checked;
    if (rec != brute || enumerated != brute)
      o.fail(label(sig) + ": recursion " + std::to_string(rec) + ", enumeration " + std::to_string(enumerated) +
             ", brute force " + std::to_string(brute));
  }
  for (std::int64_t t = 0; t <= 10; ++t) {
    const auto d = dimension(make_signature(3, {t}));
    ++checked;
    if (d != static_cast<std::uint64_t>(t + 1))
      o.fail("n=3 2j=" + std::to_string(t) + ": " + std::to_string(d));
  }
  o.summary = std::to_string(checked) + " signatures, exact";
  return o;
}

Outcome identity() {
  Outcome o;
  const auto t0 = Clock::now();
  SweepOptions opts;
  opts.p_max = 3;
  opts.samples = 0;
  opts.s_values = {mpq_class(3), mpq_class(7, 2), mpq_class(11, 5)};
  const auto report = identity_sweep(opts);
  const double secs = seconds_since(t0);
  const std::size_t pattern_configs = report.configs - report.extension_configs;
  const std::size_t defined_ext = report.extension_configs - report.undefined;
  for (const auto& f : report.failures)
    o.fail(f.config.to_string() + " at s=" + f.s + ": " + f.value);
  if (pattern_configs == 0 || defined_ext == 0) o.fail("empty sweep");
  if (secs > kSweepSeconds) o.fail("runtime " + std::to_string(secs) + " s over the budget");
  std::ostringstream s;
  s << pattern_configs << " pattern configs + " << defined_ext << " extension configs ("
    << report.undefined << " extension points 0/0, skipped), " << report.evaluations
    << " exact evaluations, " << report.failures.size() << " != 1; " << secs << " s";
  o.summary = s.str();
  return o;
}

Outcome bridge() {
  Outcome o;
  std::size_t contexts = 0;
  double worst = 0.0;
  for (const auto& q : {QMode::float_complex(0.9), QMode::float_complex(1.3), QMode::polar(0.3)})
    for (const auto& g : oracle::grid()) {
      const Basis basis(sig_of(g));
      for (const auto& pat : basis)
        for (int k = 3; k <= g.n; k += 2) {
          const auto ctx = context_at(pat, k);
          for (std::size_t r = 0; r < ctx.middle.size(); ++r) {
            const HalfInt l = ctx.middle[r];
            if (l.is_zero() || (l + 1).is_zero()) continue;
            if (!basis.index_of(shifted(pat, k - 1, r, +1))) continue;
            const C lhs = phi_via_coefficient(ctx, r, q);
            const C rhs = phi_r(config_from_context(ctx), r, q).to_complex();
            const double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
            worst = std::max(worst, rel);
            ++contexts;
            if (rel > kBridgeTol && o.details.size() < 10)
              o.fail(label(basis.signature()) + " k=" + std::to_string(k) + " r=" + std::to_string(r + 1) + ": " +
                     sci(rel));
            else if (rel > kBridgeTol)
              o.pass = false;
          }
        }
    }
  if (contexts < kBridgeMinContexts) o.fail("only " + std::to_string(contexts) + " contexts");
  o.summary = std::to_string(contexts) + " contexts, worst relative " + sci(worst);
  return o;
}

Outcome irreducibility() {
  Outcome o;
  std::size_t bundles = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (const auto& q : {NamedMode{"0.9", QMode::float_complex(0.9)}, NamedMode{"e^{0.3i}", QMode::polar(0.3)}})
    for (const auto& g : oracle::grid()) {
      const auto sig = sig_of(g);
      if (dimension(sig) > kCommutantMaxDim) continue;
      const auto res = commutant_dimension(build_rep(sig, q.mode));
      ++bundles;
      if (res.status == CommutantResult::Status::Determined) min_gap = std::min(min_gap, res.gap);
      if (!res.irreducible())
        o.fail(label(sig) + " q=" + q.name + ": " +
               (res.status == CommutantResult::Status::Indeterminate ? std::string("indeterminate")
                                                                      : "dim " + std::to_string(res.dimension)));
    }
  const auto q = QMode::float_complex(0.9);
  const auto spin1 = dense_generators(build_rep(make_signature(3, {2}), q));
  const auto spin_half = dense_generators(build_rep(make_signature(3, {1}), q));
  const auto two = commutant_dimension(direct_sum(spin1, spin_half));
  if (two.status != CommutantResult::Status::Determined || two.dimension != 2)
    o.fail("direct sum of two non-isomorphic blocks: " + std::to_string(two.dimension));
  const auto four = commutant_dimension(direct_sum(spin1, spin1));
  if (four.status != CommutantResult::Status::Determined || four.dimension != 4)
    o.fail("direct sum of two equal blocks: " + std::to_string(four.dimension) + " (block oracle 4)");
  std::ostringstream s;
  s << bundles << " bundles with dim <= " << kCommutantMaxDim << " irreducible, smallest gap " << sci(min_gap)
    << "; two-block control " << two.dimension << ", equal-block control " << four.dimension;
  o.summary = s.str();
  return o;
}

Outcome classical() {
  Outcome o;
  double worst_oracle = 0.0, worst_near = 0.0;
  std::size_t entries = 0;
  const auto near = QMode::float_complex(1.0 + 1e-6);
  for (const auto& g : oracle::grid()) {
    const auto sig = sig_of(g);
    const auto cl = build_rep(sig, QMode::classical());
    const auto fl = build_rep(sig, near);
    std::map<oracle::Pattern, std::size_t> index;
    for (std::size_t i = 0; i < cl.basis->size(); ++i) {
      oracle::Pattern key;
      for (const auto& row : (*cl.basis)[i].rows) {
        oracle::Row r;
        for (auto x : row.m) r.push_back(x.twice());
        key.push_back(r);
      }
      index[key] = i;
    }
    for (int k = 2; k <= g.n; ++k) {
      const auto ours = cl.generator(k).dense();
      Eigen::MatrixXcd ref = Eigen::MatrixXcd::Zero(ours.rows(), ours.cols());
      for (const auto& [key, v] : oracle::classical_generator(g.n, g.twice, k)) {
        ref(static_cast<Eigen::Index>(index.at(key.first)), static_cast<Eigen::Index>(index.at(key.second))) += v;
        ++entries;
      }
      const double d = (ours - ref).cwiseAbs().maxCoeff() / std::max(1.0, ref.cwiseAbs().maxCoeff());
      worst_oracle = std::max(worst_oracle, d);
      if (d > kClassicalTol) o.fail(label(sig) + " k=" + std::to_string(k) + " vs oracle: " + sci(d));
      const double e = (fl.generator(k).dense() - ours).cwiseAbs().maxCoeff();
      worst_near = std::max(worst_near, e);
      if (e > kNearOneTol) o.fail(label(sig) + " k=" + std::to_string(k) + " at q=1+1e-6: " + sci(e));
    }
  }
  o.summary = std::to_string(entries) + " oracle entries, worst " + sci(worst_oracle) + "; q=1+1e-6 worst " +
              sci(worst_near);
  return o;
}

Outcome battery() {
  Outcome o;
  std::size_t checks = 0;
  auto expect = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok && o.details.size() < 10) o.fail(what);
    if (!ok) o.pass = false;
  };
  const auto N = kBatteryTwice;
  for (const auto& s : {mpq_class(3), mpq_class(7, 2), mpq_class(11, 5)}) {
    const auto m = QMode::exact(s);
    auto b = [&](std::int64_t t) { return q_number(half(t), m).exact(); };
    const mpq_class two = q_two(m).exact();
    const std::string at = " at s=" + s.get_str();
    for (std::int64_t x = -N; x <= N; ++x) {
      const std::string xs = " x=" + half(x).to_string() + at;
      expect(b(x + 2) == two * b(x) - b(x - 2), "three-term recurrence" + xs);
      expect(b(-x) == -b(x), "oddness" + xs);
      expect(balanced_bracket(half(x), m).exact() * b(x) == b(2 * x), "{x}[x] = [2x]" + xs);
      if (x != 0) expect(b(x + 2) - b(x - 2) == b(2 * x) / b(x), "[x+1]-[x-1] = [2x]/[x]" + xs);
      for (std::int64_t y = -N; y <= N; ++y) {
        const std::string xy = " x=" + half(x).to_string() + " y=" + half(y).to_string() + at;
        expect(b(x) * b(x) - b(y) * b(y) == b(x + y) * b(x - y), "difference of squares" + xy);
        if ((x - y) % 2 == 0) {
          const mpq_class h = b((x + y) / 2), d = b((x - y) / 2);
          expect(b(x) * b(y) == h * h - d * d, "product identity" + xy);
        }
        if ((x - y) % 2 != 0) continue;
        for (std::int64_t z = -N + ((x % 2 + 2) % 2); z <= N; z += 2)
          expect((f(half(x), half(z), m) - f(half(y), half(z), m)).exact() == f(half(x), half(y) - 1, m).exact(),
                 "f difference" + xy + " z=" + half(z).to_string());
      }
    }
  }
  o.summary = std::to_string(checks) + " exact checks, |2x| <= " + std::to_string(N) + ", 3 values of s";
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qsorep_acceptance";
  fs::create_directories(dir);
  const std::vector<std::string> cases = {
      "--n 5 --weight 1,0 --q 0.9",
      "--n 6 --weight 2,1,0 --q-polar 0.3",
      "--n 6 --weight 3/2,1/2,-1/2 --q 2,1 --checks",
      "--n 4 --weight .5,1/2 --classical --format coo-text",
  };
  std::size_t compared = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "4"}) {
      const fs::path out = dir / ("run" + std::to_string(i) + "_" + std::to_string(outputs.size()));
      const std::string cmd = std::string("QSOREP_THREADS=") + threads + " '" + QSOREP_CLI_PATH + "' gen " +
                              cases[i] + " -o '" + out.string() + "' > /dev/null";
      if (std::system(cmd.c_str()) != 0) {
        o.fail("gen " + cases[i] + " failed");
        break;
      }
      outputs.push_back(slurp(out));
    }
    if (outputs.size() != 3) continue;
    ++compared;
    if (outputs[0].empty()) o.fail("gen " + cases[i] + " wrote nothing");
    if (outputs[0] != outputs[1]) o.fail("gen " + cases[i] + ": repeated runs differ");
    if (outputs[0] != outputs[2]) o.fail("gen " + cases[i] + ": 1 and 4 threads differ");
  }
  fs::remove_all(dir);
  o.summary = std::to_string(compared) + " invocations, each run twice plus once with 4 threads, byte-compared";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria = {
      {1, "defining relations and *-structure over the grid", relations},
      {2, "dimension recursion equals brute-force enumeration", dimensions},
      {3, "master identity exact over pattern configs and boundary extensions", identity},
      {4, "phi^r equals the coefficient expression", bridge},
      {5, "irreducibility and direct-sum controls", irreducibility},
      {6, "classical limit", classical},
      {7, "q-number identity battery", battery},
      {8, "deterministic gen output", determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " | " << o.summary
              << "\n";
    for (const auto& d : o.details) std::cout << "      " << d << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
