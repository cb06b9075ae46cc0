#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "modlab/error.hpp"
#include "modlab/linalg.hpp"
#include "modlab/norms.hpp"
#include "modlab/random.hpp"
#include "test_helpers.hpp"

using namespace modlab;
using modlab::testing::real_matrix;

TEST(NormSpec, ParseAndFormat) {
  EXPECT_EQ(NormSpec::parse("op"), NormSpec::op());
  EXPECT_EQ(NormSpec::parse("tr"), NormSpec::trace());
  EXPECT_EQ(NormSpec::parse("fro"), NormSpec::frobenius());
  EXPECT_TRUE(NormSpec::parse("uin").all_uin_mode());
  EXPECT_EQ(NormSpec::parse("kyfan:3"), NormSpec::ky_fan(3));
  EXPECT_DOUBLE_EQ(NormSpec::parse("schatten:2.5").exponent(), 2.5);
  EXPECT_TRUE(std::isinf(NormSpec::parse("schatten:inf").exponent()));
  for (const char* text : {"op", "tr", "fro", "uin", "kyfan:3", "schatten:2.5", "schatten:inf"}) {
    EXPECT_EQ(NormSpec::parse(text).to_string(), text);
  }
  for (const char* bad : {"schatten:0.5", "kyfan:0", "kyfan:1.5", "schatten:x", "nuclear", ""}) {
    try {
      NormSpec::parse(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadNormParam) << bad;
    }
  }
}

TEST(Norms, KnownValues) {
  const auto a = real_matrix({{3, 0}, {0, 4}});
  EXPECT_DOUBLE_EQ(norm(a, NormSpec::op()), 4);
  EXPECT_DOUBLE_EQ(norm(a, NormSpec::trace()), 7);
  EXPECT_DOUBLE_EQ(norm(a, NormSpec::frobenius()), 5);
  EXPECT_NEAR(schatten_norm(a, 3), std::cbrt(27.0 + 64.0), 1e-13);
  EXPECT_DOUBLE_EQ(ky_fan_norm(a, 1), 4);
  EXPECT_DOUBLE_EQ(ky_fan_norm(a, 2), 7);
  EXPECT_THROW(ky_fan_norm(a, 3), Error);
  EXPECT_THROW(norm(a, NormSpec::all_uin()), Error);
  // Large exponents stay finite and approach the operator norm.
  const auto big = real_matrix({{1e200, 0}, {0, 1e200}});
  EXPECT_NEAR(schatten_norm(big, 1000) / 1e200, std::pow(2.0, 1e-3), 1e-12);
  EXPECT_NEAR(schatten_norm(a, 400), 4 * std::pow(1 + std::pow(0.75, 400), 1.0 / 400), 1e-12);
}

TEST(Norms, FrobeniusAgreesWithEntries) {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto a = ginibre(2 + t % 4, 3 + t % 3, rng);
    EXPECT_NEAR(norm(a, NormSpec::frobenius()), a.frobenius(), 1e-12 * a.frobenius());
  }
}

TEST(Norms, UnitaryInvarianceAndTriangle) {
  Rng rng(2);
  const std::vector<NormSpec> specs = {NormSpec::op(), NormSpec::trace(), NormSpec::frobenius(),
                                       NormSpec::schatten(1.5), NormSpec::schatten(7), NormSpec::ky_fan(2)};
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + t % 5;
    const auto a = ginibre(n, rng);
    const auto b = ginibre(n, rng);
    const auto u = haar_unitary(n, rng);
    const auto v = haar_unitary(n, rng);
    for (const auto& s : specs) {
      const double na = norm(a, s);
      EXPECT_NEAR(norm(u * a * v, s), na, 1e-11 * na) << s.to_string();
      EXPECT_LE(norm(a + b, s), na + norm(b, s) + 1e-12) << s.to_string();
    }
  }
}

TEST(Norms, HolderAndDuality) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + t % 4;
    const auto a = ginibre(n, rng);
    const auto b = ginibre(n, rng);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const double q = p == 1.0 ? kInfinity : p / (p - 1);
      const double holder = schatten_norm(a, p) * schatten_norm(b, q);
      EXPECT_LE(std::abs((a * b).trace()), holder * (1 + 1e-12));
      EXPECT_LE(schatten_norm(a * b, 1), holder * (1 + 1e-12));
    }
    // Dual witness: W = U diag(σ^{p-1}) V^* attains |tr(W^* A)| = ‖A‖_p ‖W‖_q.
    const double p = 3.0;
    const auto sv = svd(a);
    std::vector<double> w;
    for (double s : sv.values) w.push_back(std::pow(s, p - 1));
    const auto wit = sv.left * ComplexMatrix::diagonal(w) * sv.right.adjoint();
    EXPECT_NEAR(std::abs((wit.adjoint() * a).trace()), schatten_norm(a, p) * schatten_norm(wit, 1.5),
                1e-10 * schatten_norm(a, p) * schatten_norm(wit, 1.5));
  }
}

TEST(FanDominance, RatioAndIndex) {
  const auto a = real_matrix({{2, 0, 0}, {0, 2, 0}, {0, 0, 0}});
  const auto b = real_matrix({{3, 0, 0}, {0, 0.5, 0}, {0, 0, 0.5}});
  const auto cmp = fan_compare(a, b);
  EXPECT_DOUBLE_EQ(cmp.ratio, 4.0 / 3.5);
  EXPECT_EQ(cmp.k, 2u);
  EXPECT_DOUBLE_EQ(cmp.lhs, 4);
  EXPECT_DOUBLE_EQ(cmp.rhs, 3.5);
  // Ratio bounds every UI norm: check on Schatten family.
  for (double p : {1.0, 2.0, 4.0, kInfinity}) {
    EXPECT_LE(schatten_norm(a, p), cmp.ratio * schatten_norm(b, p) * (1 + 1e-14));
  }
}

TEST(FanDominance, Degenerate) {
  const auto zero = ComplexMatrix::zeros(2, 2);
  const auto e11 = ComplexMatrix::unit(2, 1, 1);
  EXPECT_TRUE(std::isinf(weak_major_ratio(e11, zero)));
  EXPECT_DOUBLE_EQ(weak_major_ratio(zero, e11), 0.0);
  try {
    weak_major_ratio(zero, zero);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Degenerate);
  }
  // Roundoff-level tails do not produce huge ratios.
  auto b = e11;
  b(1, 1) = 1e-15;
  auto a = e11;
  a(1, 1) = 1e-14;
  EXPECT_DOUBLE_EQ(weak_major_ratio(a, b), 1.0);
}

TEST(FanDominance, RandomConsistency) {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto a = ginibre(3, rng);
    const auto b = ginibre(3, rng);
    const double r = weak_major_ratio(a, b);
    for (std::size_t k = 1; k <= 3; ++k) {
      EXPECT_LE(ky_fan_norm(a, k), r * ky_fan_norm(b, k) * (1 + 1e-12));
    }
    EXPECT_LE(schatten_norm(a, 2.5), r * schatten_norm(b, 2.5) * (1 + 1e-12));
  }
}
