#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include <CLI11.hpp>

#include "qsorep/algebra_check.hpp"
#include "qsorep/appendix_identity.hpp"
#include "qsorep/export.hpp"
#include "qsorep/gtbasis.hpp"
#include "qsorep/repmatrix.hpp"

namespace qsorep::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  int n = 0;
  std::string weight;
  std::optional<std::string> q;
  std::optional<double> q_polar;
  std::optional<std::string> q_exact;
  bool classical = false;
};

void add_signature_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--n", c.n, "algebra so_n")->required();
  cmd->add_option("--weight", c.weight, "highest weight, comma separated (1/2 or .5 for halves)")->required();
}

void add_q_options(CLI::App* cmd, Common& c) {
  auto* g = cmd->add_option_group("q", "deformation parameter (exactly one)");
  g->add_option("--q", c.q, "q as a decimal, or re,im for complex q");
  g->add_option("--q-polar", c.q_polar, "q = exp(i h)");
  g->add_option("--q-exact", c.q_exact, "exact rational s = q^(1/2)");
  g->add_flag("--classical", c.classical, "q = 1");
  g->require_option(1);
}

Signature parse_signature(const Common& c) {
  std::vector<std::int64_t> twice;
  std::stringstream ss(c.weight);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      twice.push_back(parse_halfint(item).twice());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("weight entry '" + item + "': " + e.what());
    }
  }
  Signature sig = make_signature(c.n, twice);
  require_valid_signature(sig);
  return sig;
}

QSpec parse_qspec(const Common& c) {
  if (c.classical) return qspec_classical();
  if (c.q_polar) return qspec_polar(*c.q_polar);
  if (c.q_exact) return qspec_exact(parse_rational(*c.q_exact));
  const std::string& text = *c.q;
  QSpec spec;
  if (text.find(',') != std::string::npos) {
    spec = {"float-complex", text};
  } else {
    spec = {"float", text};
  }
  // Normalise the value through a double so equal q give equal files.
  const auto q = spec.to_mode().q();
  return spec.mode == "float" ? qspec_real(q.real()) : qspec_complex(q);
}

QMode mode_with_warning(const QSpec& spec, std::ostream& err) {
  QMode mode = spec.to_mode();
  if (auto w = mode.warning(); !w.empty()) err << "warning: " << w << "\n";
  return mode;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

int cmd_gen(const Common& c, const std::string& output, const std::string& format, bool with_checks,
            double tolerance, std::ostream& out, std::ostream& err) {
  const Signature sig = parse_signature(c);
  const QSpec spec = parse_qspec(c);
  const QMode mode = mode_with_warning(spec, err);
  const RepBundle bundle = build_rep(sig, mode);
  std::optional<std::vector<ResidualReport>> checks;
  if (with_checks) checks = relation_suite(bundle, tolerance);
  const ExportBundle exported = make_export(bundle, spec, checks);
  const std::string text = format == "coo-text" ? emit_coo_text(exported) : emit_json(exported);
  if (output.empty() || output == "-") {
    out << text;
  } else {
    write_atomically(output, text);
    out << "wrote " << output << " (dim " << bundle.dim() << ", " << bundle.generators.size() << " generators)\n";
  }
  return kPass;
}

int cmd_dim(const Common& c, std::ostream& out) {
  out << dimension(parse_signature(c)) << "\n";
  return kPass;
}

int cmd_verify(const Common& c, double tolerance, std::ostream& out, std::ostream& err) {
  const Signature sig = parse_signature(c);
  const QMode mode = mode_with_warning(parse_qspec(c), err);
  const RepBundle bundle = build_rep(sig, mode);
  const auto reports = relation_suite(bundle, tolerance);

  out << "signature " << sig.to_string() << "  q " << mode.describe() << "  dim " << bundle.dim() << "\n";
  out << std::left << std::setw(14) << "relation" << std::setw(10) << "pair" << std::setw(12) << "residual"
      << "result\n";
  for (const auto& r : reports) {
    const std::string pair = std::to_string(r.k_first) + "," + std::to_string(r.k_second);
    out << std::setw(14) << relation_name(r.relation) << std::setw(10) << pair << std::setw(12)
        << format_double(r.residual) << (r.pass ? "pass" : "FAIL") << "\n";
  }
  int code = all_pass(reports) ? kPass : kFail;

  if (bundle.dim() <= CommutantOptions{}.max_dim) {
    const auto cm = commutant_dimension(bundle);
    if (cm.status == CommutantResult::Status::Indeterminate) {
      out << "commutant     indeterminate (gap " << format_double(cm.gap) << ")\n";
      if (code == kPass) code = kIndeterminate;
    } else {
      out << "commutant     dim " << cm.dimension << (cm.irreducible() ? "     pass" : "     FAIL") << "\n";
      if (!cm.irreducible()) code = kFail;
    }
  } else {
    out << "commutant     skipped (dim > " << CommutantOptions{}.max_dim << ")\n";
  }
  return code;
}

int cmd_identity(std::size_t p_max, std::size_t samples, const std::vector<std::string>& s_text, bool extensions,
                 std::ostream& out) {
  SweepOptions opts;
  opts.p_max = p_max;
  opts.samples = samples;
  opts.include_extensions = extensions;
  if (!s_text.empty()) {
    opts.s_values.clear();
    for (const auto& s : s_text) opts.s_values.push_back(parse_rational(s));
  }
  const SweepReport report = identity_sweep(opts);
  out << "configs " << report.configs << " (extensions " << report.extension_configs << ", undefined "
      << report.undefined << ")\n";
  out << "evaluations " << report.evaluations << "\n";
  out << "laurent span bound " << report.max_span_bound << "\n";
  if (report.all_one()) {
    out << "Phi = 1 at every evaluation\n";
    return kPass;
  }
  const auto& first = report.failures.front();
  out << "failures " << report.failures.size() << "\n";
  out << "first counterexample " << first.config.to_string() << " at s = " << first.s << ": " << first.value
      << "\n";
  return kFail;
}

}  // namespace

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  fs::rename(tmp, target);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-deformed so_n representations in the Gel'fand-Tsetlin basis", "qsorep"};
  app.require_subcommand(1);

  Common gen_c, dim_c, ver_c;
  std::string output, format = "json";
  bool with_checks = false;
  double gen_tol = 1e-10, ver_tol = 1e-10;
  std::size_t p_max = 2, samples = 0;
  std::vector<std::string> s_values;
  bool no_extensions = false;

  auto* gen = app.add_subcommand("gen", "export generator matrices");
  add_signature_options(gen, gen_c);
  add_q_options(gen, gen_c);
  gen->add_option("-o,--output", output, "output file (stdout when omitted)");
  gen->add_option("--format", format, "json or coo-text")->check(CLI::IsMember({"json", "coo-text"}));
  gen->add_flag("--checks", with_checks, "embed the relation residuals");
  gen->add_option("--tolerance", gen_tol, "tolerance for embedded checks");

  auto* dim = app.add_subcommand("dim", "print the dimension");
  add_signature_options(dim, dim_c);

  auto* ver = app.add_subcommand("verify", "check relations, *-structure and irreducibility");
  add_signature_options(ver, ver_c);
  add_q_options(ver, ver_c);
  ver->add_option("--tolerance", ver_tol, "relative residual tolerance");

  auto* ident = app.add_subcommand("identity", "exact sweep of the master identity");
  ident->add_option("--p-max", p_max, "largest p (1..4)");
  ident->add_option("--samples", samples, "configs per p, drawn separately from patterns and substitutions; 0 for all");
  ident->add_option("--s", s_values, "rational evaluation point s = q^(1/2), repeatable");
  ident->add_flag("--no-extensions", no_extensions, "skip the boundary substitutions");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_c, output, format, with_checks, gen_tol, out, err);
    if (*dim) return cmd_dim(dim_c, out);
    if (*ver) return cmd_verify(ver_c, ver_tol, out, err);
    if (p_max < 1 || p_max > 4) {
      err << "error: --p-max must be between 1 and 4\n";
      return kUsage;
    }
    return cmd_identity(p_max, samples, s_values, !no_extensions, out);
  } catch (const UnsupportedMode& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
}

}  // namespace qsorep::cli
