#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qsorep/repmatrix.hpp"

using namespace qsorep;
using C = std::complex<double>;

namespace {

TransitionContext ctx_of(std::initializer_list<std::int64_t> upper, int upper_level,
                         std::initializer_list<std::int64_t> middle, std::initializer_list<std::int64_t> lower) {
  auto row = [](int level, std::initializer_list<std::int64_t> l) {
    LRow r{level, {}};
    for (auto t : l) r.l.push_back(half(t));
    return r;
  };
  return {row(upper_level, upper), row(upper_level - 1, middle), row(upper_level - 2, lower)};
}

bool bits_equal(const GeneratorMatrix& a, const GeneratorMatrix& b) {
  if (a.entries().size() != b.entries().size()) return false;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    const auto& x = a.entries()[i];
    const auto& y = b.entries()[i];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

std::vector<QMode> float_modes() {
  return {QMode::float_complex(0.7), QMode::float_complex(0.9), QMode::float_complex(1.3), QMode::polar(0.3),
          QMode::classical()};
}

}  // namespace

TEST_SUITE("repmatrix") {
  TEST_CASE("so_3 spin 1") {
    const auto q = QMode::float_complex(0.9);
    const auto sig = make_signature(3, {2});
    const auto t21 = generator_matrix(sig, 2, q).dense();
    CHECK(std::abs(t21(0, 0) - C(0, 1)) < 1e-15);
    CHECK(std::abs(t21(1, 1)) == 0.0);
    CHECK(std::abs(t21(2, 2) - C(0, -1)) < 1e-15);
    CHECK((t21 - Eigen::MatrixXcd(t21.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);

    const auto t32 = generator_matrix(sig, 3, q).dense();
    CHECK(t32.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK((t32 + t32.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        if (std::abs(r - c) != 1) CHECK(t32(r, c) == C{});
    CHECK(std::abs(t32(0, 1)) > 0.1);
  }

  TEST_CASE("trivial representation") {
    for (int n = 3; n <= 7; ++n) {
      const auto rep = build_rep(make_signature(n, std::vector<std::int64_t>(static_cast<std::size_t>(n / 2), 0)),
                                 QMode::float_complex(0.9));
      CHECK(rep.dim() == 1);
      for (const auto& g : rep.generators) CHECK(g.entries().empty());
    }
  }

  TEST_CASE("bundle shapes") {
    const auto q = QMode::float_complex(0.9);
    auto check = [&](int n, std::vector<std::int64_t> w, std::size_t gens, std::size_t dim) {
      const auto rep = build_rep(make_signature(n, w), q);
      CHECK(rep.generators.size() == gens);
      CHECK(rep.dim() == dim);
      for (const auto& g : rep.generators) CHECK(g.dim() == dim);
    };
    check(3, {2}, 2, 3);
    check(5, {1, 1}, 4, 4);
    check(4, {2, 0}, 3, 4);
  }

  TEST_CASE("coefficient A for p = 1") {
    const auto q = QMode::float_complex(0.9);
    const auto exact = QMode::exact(mpq_class(3));
    for (std::int64_t u = 2; u <= 8; u += 2)
      for (std::int64_t l = -u + 2; l <= u - 2; l += 2) {
        const auto ctx = ctx_of({u}, 3, {l}, {});
        const C qq = q.q();
        auto br = [&](double x) { return oracle::bracket(x, qq); };
        const C d2 = 1.0 / ((std::pow(qq, l / 2.0) + std::pow(qq, -l / 2.0)) *
                            (std::pow(qq, l / 2.0 + 1) + std::pow(qq, -l / 2.0 - 1)));
        const C expect = std::sqrt(d2 * br((u + l) / 2.0) * br((u - l) / 2.0 - 1));
        CHECK(std::abs(coeff_A(ctx, 0, q).value - expect) < 1e-13);
        // exact squared value against the rational oracle
        const mpq_class s = 3;
        const mpq_class bal = (oracle::pow_q(s, l) + oracle::pow_q(s, -l)) *
                              (oracle::pow_q(s, l + 2) + oracle::pow_q(s, -l - 2));
        CHECK(coeff_A_squared(ctx, 0, exact).exact() ==
              oracle::bracket(u + l, s) * oracle::bracket(u - l - 2, s) / bal);
      }
  }

  TEST_CASE("A at the ceiling and d(0)") {
    const auto q = QMode::float_complex(0.9);
    // l_{1,2} = l_{1,3} - 1
    CHECK(coeff_A(ctx_of({4}, 3, {2}, {}), 0, q).value == C{});
    // l = 0: A^2 = [u][u-1] / ({0}{1}) = [u][u-1] / (2 [2])
    const auto s3 = QMode::exact(mpq_class(3));
    const auto a2 = coeff_A_squared(ctx_of({4}, 3, {0}, {}), 0, s3).exact();
    CHECK(a2 == q_number(half(4), s3).exact() * q_number(half(2), s3).exact() / (2 * q_two(s3).exact()));
  }

  TEST_CASE("coefficient B for so_4") {
    const auto s = QMode::exact(mpq_class(7, 2));
    // rows 4, 3, 2 in l-coordinates (twice units)
    const auto ctx = ctx_of({6, 2}, 4, {3}, {1});
    auto b = [&](std::int64_t t) { return q_number(half(t), s).exact(); };
    const mpq_class expect = b(6 + 3) * b(6 - 3) * b(2 + 3) * b(2 - 3) * b(1 + 3) * b(1 - 3) /
                             (b(2 * 3 + 2) * b(2 * 3 - 2) * b(3) * b(3));
    CHECK(coeff_B_squared(ctx, 0, s).exact() == expect);
    // hitting l_{1,4} = l_{1,3}
    CHECK(coeff_B_squared(ctx_of({4, 2}, 4, {4}, {1}), 0, s).is_zero());
  }

  TEST_CASE("coefficient C") {
    const auto q = QMode::float_complex(0.9);
    // p = 1: C = [l_{1,2}]
    CHECK(std::abs(coeff_C(ctx_of({4}, 2, {}, {}), q).to_complex() - q_two(q).to_complex()) < 1e-15);
    CHECK(std::abs(coeff_C(ctx_of({-2}, 2, {}, {}), q).to_complex() - C(-1.0)) < 1e-15);
    // l_{p,2p} = 0
    CHECK(coeff_C(ctx_of({4, 0}, 4, {2}, {1}), q).is_zero());
  }

  TEST_CASE("evaluate rejects a vanishing denominator only") {
    const auto q = QMode::float_complex(0.9);
    CHECK(evaluate({{half(0)}, {half(0)}, {}}, q).is_zero());
    CHECK_THROWS_AS(evaluate({{half(2)}, {half(0)}, {}}, q), InvalidTransition);
  }

  TEST_CASE("labels and modes") {
    const auto sig = make_signature(5, {2, 0});
    CHECK_THROWS_AS(generator_matrix(sig, 1, QMode::float_complex(0.9)), std::invalid_argument);
    CHECK_THROWS_AS(generator_matrix(sig, 6, QMode::float_complex(0.9)), std::invalid_argument);
    CHECK_THROWS_AS(build_rep(sig, QMode::exact(mpq_class(3))), UnsupportedMode);
  }

  TEST_CASE("structure over the grid") {
    for (const auto& g : oracle::grid()) {
      const auto sig = make_signature(g.n, g.twice);
      for (const auto& mode : float_modes()) {
        const auto rep = build_rep(sig, mode);
        const Basis& basis = *rep.basis;
        for (const auto& gen : rep.generators) {
          const int moved = gen.k() - 1;
          for (const auto& e : gen.entries()) {
            if (e.row == e.col) {
              CHECK(gen.k() % 2 == 0);
              CHECK(e.value.real() == 0.0);
              continue;
            }
            // patterns differ in exactly one entry of row k-1, by exactly 1
            int diffs = 0;
            for (std::size_t r = 0; r < basis[e.row].rows.size(); ++r) {
              const auto& a = basis[e.row].rows[r].m;
              const auto& b = basis[e.col].rows[r].m;
              for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) {
                  ++diffs;
                  CHECK(basis[e.row].rows[r].n == moved);
                  CHECK(std::abs(a[i].twice() - b[i].twice()) == 2);
                }
            }
            CHECK(diffs == 1);
          }
          // off-diagonal part antisymmetric
          Eigen::MatrixXcd d = gen.dense();
          d.diagonal().setZero();
          CHECK((d + d.transpose()).cwiseAbs().maxCoeff() == 0.0);
        }
      }
    }
  }

  TEST_CASE("boundary zero and non-singularity") {
    for (const auto& g : oracle::grid()) {
      const Basis basis(make_signature(g.n, g.twice));
      for (const auto& pat : basis)
        for (int k = 2; k <= g.n; ++k) {
          const int moved = k - 1;
          // movable entries: all p of row 2p for odd k, the p-1 of row 2p-1 for even k
          const std::size_t count = k % 2 == 1 ? static_cast<std::size_t>((k - 1) / 2)
                                               : static_cast<std::size_t>(k / 2 - 1);
          for (std::size_t j = 0; j < count; ++j) {
            const auto up = shifted(pat, moved, j, +1);
            const auto down = shifted(pat, moved, j, -1);
            auto ratio = [&](const GTPattern& at) {
              const auto ctx = context_at(at, k);
              return k % 2 == 1 ? a_squared_ratio(ctx, j) : b_squared_ratio(ctx, j);
            };
            if (basis.index_of(up)) {
              CHECK_FALSE(ratio(pat).denominator_vanishes());
            } else {
              CHECK(ratio(pat).numerator_vanishes());
            }
            if (!basis.index_of(down)) CHECK(ratio(down).numerator_vanishes());
          }
          if (k % 2 == 0 && k >= 4) {
            const auto c = c_ratio(context_at(pat, k));
            if (c.denominator_vanishes()) CHECK(c.numerator_vanishes());
          }
        }
    }
  }

  TEST_CASE("parallel assembly matches the serial reference bit for bit") {
    for (const auto& g : oracle::grid()) {
      const auto sig = make_signature(g.n, g.twice);
      const auto mode = QMode::polar(0.3);
      const auto a = build_rep(sig, mode);
      const auto b = build_rep_serial(sig, mode);
      for (std::size_t i = 0; i < a.generators.size(); ++i) CHECK(bits_equal(a.generators[i], b.generators[i]));
    }
  }

  TEST_CASE("q and 1/q give the same matrices") {
    for (const auto& g : oracle::grid()) {
      const auto sig = make_signature(g.n, g.twice);
      for (C q : {C(0.7), C(1.3), std::polar(1.0, 0.3), C(2.0, 1.0)}) {
        const auto a = build_rep(sig, QMode::float_complex(q));
        const auto b = build_rep(sig, QMode::float_complex(1.0 / q));
        for (std::size_t i = 0; i < a.generators.size(); ++i) {
          const auto da = a.generators[i].dense();
          const auto db = b.generators[i].dense();
          const double scale = std::max(1.0, da.cwiseAbs().maxCoeff());
          CHECK((da - db).cwiseAbs().maxCoeff() <= 1e-12 * scale);
        }
      }
    }
  }

  TEST_CASE("complex coefficients are flagged") {
    const auto sig = make_signature(5, {2, 0});
    CHECK_FALSE(build_rep(sig, QMode::float_complex(0.9)).generators[1].complex_coefficients());
    bool any = false;
    for (const auto& g : build_rep(sig, QMode::float_complex({2.0, 1.0})).generators) any |= g.complex_coefficients();
    CHECK(any);
  }
}
