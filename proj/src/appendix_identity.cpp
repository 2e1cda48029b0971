#include "qsorep/appendix_identity.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qsorep {

namespace {

struct FFactor {
  HalfInt x;
  HalfInt y;

  bool vanishes() const { return (x + y).is_zero() || (x - y - 1).is_zero(); }
};

QScalar product(const std::vector<FFactor>& factors, const QMode& mode) {
  QScalar out = QScalar::one(mode);
  for (const auto& fac : factors) out *= f(fac.x, fac.y, mode);
  return out;
}

std::vector<Signature> signatures_at(int level, std::int64_t max_twice) {
  const std::size_t p = static_cast<std::size_t>(level / 2);
  std::vector<Signature> out;
  for (int parity = 0; parity <= 1; ++parity) {
    std::vector<std::int64_t> values;
    for (std::int64_t t = -max_twice; t <= max_twice; ++t)
      if ((t & 1) == parity) values.push_back(t);
    std::vector<std::size_t> idx(p, 0);
    while (true) {
      Signature s{level, {}};
      for (auto i : idx) s.m.push_back(HalfInt::from_twice(values[i]));
      if (validate_signature(s).ok()) out.push_back(s);
      std::size_t pos = 0;
      while (pos < p && ++idx[pos] == values.size()) idx[pos++] = 0;
      if (pos == p) break;
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<std::size_t> sample_indices(std::size_t total, std::size_t samples) {
  std::vector<std::size_t> out;
  if (samples == 0 || samples >= total) {
    for (std::size_t i = 0; i < total; ++i) out.push_back(i);
    return out;
  }
  for (std::size_t i = 0; i < samples; ++i) out.push_back(i * total / samples);
  return out;
}

std::int64_t bracket_span(HalfInt x) { return 2 * x.abs().twice() + 4; }

std::int64_t f_span(HalfInt x, HalfInt y) { return bracket_span(x + y) + bracket_span(x - y - 1); }

std::int64_t phi_span(const LConfig& c, std::size_t r, HalfInt mr) {
  std::int64_t span = 0;
  for (std::size_t s = 0; s < c.p(); ++s) {
    span += f_span(c.triples[s].upper, mr);
    if (c.triples[s].lower) span += f_span(*c.triples[s].lower, mr);
    if (s != r) span += f_span(c.triples[s].middle, mr) + f_span(c.triples[s].middle + 1, mr);
  }
  return span;
}

using FailureList = std::vector<Counterexample>;

struct ConfigOutcome {
  FailureList failures;
  bool undefined = false;
};

ConfigOutcome evaluate_one(const LConfig& config, const std::vector<QMode>& modes,
                           const std::vector<mpq_class>& s_values, ZeroRule rule) {
  ConfigOutcome out;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    try {
      const QScalar v = big_phi(config, modes[i], rule);
      if (v.exact() != 1) out.failures.push_back({config, s_values[i].get_str(), v.exact().get_str()});
    } catch (const std::domain_error& e) {
      if (rule == ZeroRule::Strict) {
        out.undefined = true;
        out.failures.clear();
        return out;
      }
      out.failures.push_back({config, s_values[i].get_str(), std::string("error: ") + e.what()});
    }
  }
  return out;
}

std::vector<QMode> exact_modes(const std::vector<mpq_class>& s_values) {
  std::vector<QMode> modes;
  for (const auto& s : s_values) modes.push_back(QMode::exact(s));
  return modes;
}

SweepReport collect(const std::vector<LConfig>& configs, const std::vector<mpq_class>& s_values,
                    std::vector<ConfigOutcome>& outcomes) {
  SweepReport report;
  report.configs = configs.size();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (outcomes[i].undefined) {
      ++report.undefined;
      continue;
    }
    report.evaluations += s_values.size();
    report.max_span_bound = std::max(report.max_span_bound, laurent_span_bound(configs[i]));
    for (auto& ce : outcomes[i].failures) report.failures.push_back(std::move(ce));
  }
  return report;
}

void merge_into(SweepReport& total, SweepReport&& part) {
  total.configs += part.configs;
  total.undefined += part.undefined;
  total.evaluations += part.evaluations;
  total.max_span_bound = std::max(total.max_span_bound, part.max_span_bound);
  for (auto& ce : part.failures) total.failures.push_back(std::move(ce));
}

}  // namespace

std::string LConfig::to_string() const {
  std::string s;
  for (const auto& t : triples) {
    s += "{" + t.upper.to_string() + ";" + t.middle.to_string() + ";" + (t.lower ? t.lower->to_string() : ".") + "}";
  }
  return s;
}

QScalar f(HalfInt x, HalfInt y, const QMode& mode) { return q_number(x + y, mode) * q_number(x - y - 1, mode); }

QScalar phi_r(const LConfig& config, std::size_t r, const QMode& mode, ZeroRule rule) {
  const std::size_t p = config.p();
  if (r >= p) throw std::out_of_range("phi_r: index out of range");
  const HalfInt mr = config.triples[r].middle;
  std::vector<FFactor> num, den;
  std::vector<std::size_t> den_owner;
  for (std::size_t s = 0; s < p; ++s) {
    num.push_back({config.triples[s].upper, mr});
    if (config.triples[s].lower) num.push_back({*config.triples[s].lower, mr});
  }
  for (std::size_t s = 0; s < p; ++s) {
    if (s == r) continue;
    den.push_back({config.triples[s].middle, mr});
    den.push_back({config.triples[s].middle + 1, mr});
    den_owner.push_back(s);
    den_owner.push_back(s);
  }
  if (rule == ZeroRule::Forbidden &&
      std::any_of(num.begin(), num.end(), [](const FFactor& x) { return x.vanishes(); }))
    return QScalar::zero(mode);
  for (std::size_t i = 0; i < den.size(); ++i)
    if (den[i].vanishes())
      throw ZeroDenominator("phi^r denominator vanishes at (s, r) = (" + std::to_string(den_owner[i] + 1) + ", " +
                                std::to_string(r + 1) + ")",
                            den_owner[i], r);
  return product(num, mode) / product(den, mode);
}

QScalar big_phi(const LConfig& config, const QMode& mode, ZeroRule rule) {
  QScalar total = QScalar::zero(mode);
  for (std::size_t r = 0; r < config.p(); ++r) {
    const HalfInt mr = config.triples[r].middle;
    if (mr.is_zero())
      throw ZeroDenominator("[2 l_{r,2p}] vanishes at r = " + std::to_string(r + 1), r, r);
    LConfig lowered = config;
    lowered.triples[r].middle = mr - 1;
    total += (phi_r(lowered, r, mode, rule) - phi_r(config, r, mode, rule)) / q_number(mr.doubled(), mode);
  }
  return total;
}

LConfig config_from_rows(const Signature& upper, const Signature& middle, const Signature* lower) {
  const LRow u = l_coords(upper);
  const LRow m = l_coords(middle);
  const std::size_t p = m.size();
  if (u.size() != p) throw std::invalid_argument("config_from_rows: row lengths differ");
  LConfig c;
  for (std::size_t s = 0; s < p; ++s) {
    LTriple t{u[s], m[s], std::nullopt};
    if (lower && s + 1 < p) t.lower = l_coords(*lower)[s];
    c.triples.push_back(t);
  }
  return c;
}

LConfig config_from_context(const TransitionContext& ctx) {
  LConfig c;
  for (std::size_t s = 0; s < ctx.middle.size(); ++s) {
    LTriple t{ctx.upper[s], ctx.middle[s], std::nullopt};
    if (s < ctx.lower.size()) t.lower = ctx.lower[s];
    c.triples.push_back(t);
  }
  return c;
}

std::complex<double> phi_via_coefficient(const TransitionContext& ctx, std::size_t r, const QMode& mode) {
  const HalfInt l = ctx.middle[r];
  if (l.is_zero() || (l + 1).is_zero())
    throw std::domain_error("phi_via_coefficient: [l][l+1] vanishes");
  const auto a = coeff_A(ctx, r, mode).value;
  const auto factor = (q_number(l.doubled(), mode) * q_number(l.doubled() + 2, mode) /
                       (q_number(l, mode) * q_number(l + 1, mode)))
                          .to_complex();
  return factor * a * a;
}

std::vector<LConfig> pattern_configs(std::size_t p, std::int64_t max_twice) {
  if (p == 0) throw std::invalid_argument("pattern_configs: p must be positive");
  std::set<LConfig> unique;
  const int level = static_cast<int>(2 * p + 1);
  for (const auto& top : signatures_at(level, max_twice)) {
    for (const auto& middle : branch(top)) {
      auto keep = [&](const LConfig& c) {
        for (const auto& t : c.triples)
          if (t.middle.is_zero()) return false;
        return true;
      };
      if (p == 1) {
        if (auto c = config_from_rows(top, middle, nullptr); keep(c)) unique.insert(c);
        continue;
      }
      for (const auto& lower : branch(middle))
        if (auto c = config_from_rows(top, middle, &lower); keep(c)) unique.insert(c);
    }
  }
  return {unique.begin(), unique.end()};
}

std::vector<LConfig> lower_zero_extensions(const std::vector<LConfig>& configs) {
  std::set<LConfig> unique;
  for (const auto& c : configs) {
    for (std::size_t j = 0; j < c.p(); ++j) {
      if (!c.triples[j].lower) continue;
      LConfig e = c;
      e.triples[j].lower = HalfInt{};
      unique.insert(e);
    }
  }
  return {unique.begin(), unique.end()};
}

std::vector<LConfig> half_shift_extensions(std::size_t p, std::int64_t max_twice) {
  if (p == 0) throw std::invalid_argument("half_shift_extensions: p must be positive");
  const HalfInt half_one = HalfInt::from_twice(1);
  const HalfInt three_halves = HalfInt::from_twice(3);
  std::set<LConfig> unique;
  const int level = static_cast<int>(2 * p);
  auto emit = [&](const LRow& even, const LRow* odd, const LRow* below) {
    for (std::size_t j = 0; j < p; ++j) {
      LConfig c;
      for (std::size_t s = 0; s < p; ++s) {
        LTriple t;
        t.upper = s == j ? three_halves : even[s] + half_one;
        if (s + 1 < p) {
          t.middle = (*odd)[s] - half_one;
          t.lower = (*below)[s] + half_one;
        } else {
          t.middle = -half_one;
        }
        c.triples.push_back(t);
      }
      unique.insert(c);
    }
  };
  for (const auto& top : signatures_at(level, max_twice)) {
    const LRow even = l_coords(top);
    if (p == 1) {
      emit(even, nullptr, nullptr);
      continue;
    }
    for (const auto& odd_row : branch(top)) {
      const LRow odd = l_coords(odd_row);
      for (const auto& below_row : branch(odd_row)) {
        const LRow below = l_coords(below_row);
        emit(even, &odd, &below);
      }
    }
  }
  return {unique.begin(), unique.end()};
}

std::int64_t laurent_span_bound(const LConfig& config) {
  std::int64_t span = 0;
  for (std::size_t r = 0; r < config.p(); ++r) {
    const HalfInt mr = config.triples[r].middle;
    const std::int64_t two_l = bracket_span(mr.doubled());
    span += phi_span(config, r, mr) + two_l;
    span += phi_span(config, r, mr - 1) + two_l;
  }
  return span;
}

SweepReport evaluate_identity(const std::vector<LConfig>& configs, const std::vector<mpq_class>& s_values,
                              ZeroRule rule) {
  const auto modes = exact_modes(s_values);
  std::vector<ConfigOutcome> outcomes(configs.size());
  const auto count = static_cast<std::ptrdiff_t>(configs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    outcomes[static_cast<std::size_t>(i)] = evaluate_one(configs[static_cast<std::size_t>(i)], modes, s_values, rule);
  return collect(configs, s_values, outcomes);
}

SweepReport evaluate_identity_serial(const std::vector<LConfig>& configs, const std::vector<mpq_class>& s_values,
                                     ZeroRule rule) {
  const auto modes = exact_modes(s_values);
  std::vector<ConfigOutcome> outcomes;
  outcomes.reserve(configs.size());
  for (const auto& c : configs) outcomes.push_back(evaluate_one(c, modes, s_values, rule));
  return collect(configs, s_values, outcomes);
}

SweepReport identity_sweep(const SweepOptions& options) {
  if (options.p_max < 1 || options.p_max > 4)
    throw std::invalid_argument("identity sweep supports 1 <= p_max <= 4, got " + std::to_string(options.p_max));
  if (options.s_values.empty()) throw std::invalid_argument("identity sweep needs at least one s value");
  for (const auto& s : options.s_values) (void)QMode::exact(s);

  std::vector<LConfig> configs, extensions;
  for (std::size_t p = 1; p <= options.p_max; ++p) {
    const auto base = pattern_configs(p, options.max_twice);
    for (auto i : sample_indices(base.size(), options.samples)) configs.push_back(base[i]);
    if (!options.include_extensions) continue;
    std::vector<LConfig> ext = lower_zero_extensions(pattern_configs(p, options.extension_max_twice));
    const auto shifted_ext = half_shift_extensions(p, options.extension_max_twice);
    ext.insert(ext.end(), shifted_ext.begin(), shifted_ext.end());
    for (auto i : sample_indices(ext.size(), options.samples)) extensions.push_back(ext[i]);
  }
  SweepReport report = evaluate_identity(configs, options.s_values, ZeroRule::Forbidden);
  report.extension_configs = extensions.size();
  merge_into(report, evaluate_identity(extensions, options.s_values, ZeroRule::Strict));
  return report;
}

}  // namespace qsorep
