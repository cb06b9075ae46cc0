#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "modlab/catalog.hpp"
#include "modlab/error.hpp"
#include "modlab/inequalities.hpp"
#include "modlab/linalg.hpp"
#include "modlab/moduli.hpp"
#include "modlab/random.hpp"
#include "test_helpers.hpp"

using namespace modlab;
using modlab::testing::real_matrix;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

std::vector<ComplexMatrix> ginibre_list(std::size_t m, std::size_t n, Rng& rng) {
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(ginibre(n, rng));
  return out;
}

std::vector<ComplexMatrix> copies(const ComplexMatrix& a, std::size_t m) { return std::vector<ComplexMatrix>(m, a); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::BadArgument;
}

const ComplexMatrix kE12 = ComplexMatrix::unit(2, 1, 2);

}  // namespace

TEST(Report, Semantics) {
  const auto r = compare_scalars("x", 3.0, 2.0, 2.0, "d");
  EXPECT_DOUBLE_EQ(r.ratio, 0.75);
  EXPECT_DOUBLE_EQ(r.margin, 1.0);
  EXPECT_DOUBLE_EQ(r.scale, 3.0);
  EXPECT_TRUE(r.pass);
  const auto fail = compare_scalars("x", 3.0 + 1e-8, 1.5, 2.0, "d");
  EXPECT_FALSE(fail.pass);
  const auto edge = compare_scalars("x", 3.0 + 1e-9, 1.5, 2.0, "d");
  EXPECT_TRUE(edge.pass);
  EXPECT_EQ(code_of([] { compare_scalars("x", 0.0, 0.0, 1.0, "d"); }), ErrorCode::Degenerate);
  EXPECT_TRUE(std::isnan(compare_scalars("x", 0.0, 0.0, 1.0, "d", kDefaultTol, true).ratio));
  const auto j = to_json(compare_scalars("x", 0.0, 0.0, 1.0, "d", kDefaultTol, true));
  EXPECT_TRUE(j["ratio"].is_null());
  EXPECT_EQ(j.size(), 9u);
}

TEST(Equivalence, E12Tightness) {
  const auto sym = check_equiv_sym(kE12, NormSpec::op());
  EXPECT_NEAR(sym.first.ratio, 1.0, 1e-14);
  EXPECT_NEAR(sym.first.rhs, 0.5, 1e-14);
  const auto qsym_op = check_equiv_qsym(kE12, NormSpec::op());
  EXPECT_NEAR(qsym_op.first.rhs, kSqrt2 / 2, 1e-14);
  EXPECT_NEAR(qsym_op.first.ratio, 1.0, 1e-14);
  const auto qsym_tr = check_equiv_qsym(kE12, NormSpec::trace());
  EXPECT_NEAR(qsym_tr.second.lhs, kSqrt2, 1e-14);
  EXPECT_NEAR(qsym_tr.second.ratio, 1.0, 1e-14);
  const auto sq = check_sym_vs_qsym(kE12, NormSpec::op());
  EXPECT_NEAR(sq.second.ratio, 1.0, 1e-14);
}

TEST(Equivalence, NormalAndHermitianCases) {
  Rng rng(12);
  const auto u = haar_unitary(3, rng);
  ComplexMatrix d(3, 3);
  d(0, 0) = Complex(1, 1);
  d(1, 1) = Complex(-2, 0);
  d(2, 2) = Complex(0, 3);
  const auto normal = u * d * u.adjoint();
  for (const auto& spec : {NormSpec::op(), NormSpec::schatten(3), NormSpec::all_uin()}) {
    EXPECT_NEAR(check_equiv_sym(normal, spec).second.ratio, 1.0, 1e-12);
    EXPECT_NEAR(check_sym_vs_qsym(normal, spec).first.ratio, 1.0, 1e-12);
  }
  const auto h = random_hermitian(4, rng);
  const auto pair = check_equiv_qsym(h, NormSpec::frobenius());
  EXPECT_NEAR(pair.first.lhs, pair.first.rhs, 1e-12);
}

TEST(Equivalence, RandomPassesAndDegenerate) {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto z = ginibre(2 + t % 4, rng);
    for (const auto& spec : {NormSpec::schatten(3), NormSpec::all_uin(), NormSpec::ky_fan(2)}) {
      for (const auto& pair : {check_equiv_sym(z, spec), check_equiv_qsym(z, spec), check_sym_vs_qsym(z, spec)}) {
        EXPECT_TRUE(pair.first.pass) << pair.first.check_id;
        EXPECT_TRUE(pair.second.pass) << pair.second.check_id;
        // Trace-type Ky Fan norms give equality in the upper bounds.
        EXPECT_GE(pair.first.normalized_margin(), -1e-14);
        EXPECT_GE(pair.second.normalized_margin(), -1e-14);
      }
    }
  }
  EXPECT_EQ(code_of([] { check_equiv_sym(ComplexMatrix::zeros(3, 3), NormSpec::op()); }), ErrorCode::Degenerate);
  EXPECT_EQ(code_of([] { check_lee({ComplexMatrix::zeros(2, 2)}, NormSpec::all_uin()); }), ErrorCode::Degenerate);
}

TEST(Sums, LeeFamily) {
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{3, 5}, {5, 3}, {4, 4}, {1, 3}}) {
    const auto entry = lee_sharp_family(m, n);
    const auto r = check_lee(entry.matrices, NormSpec::op());
    EXPECT_NEAR(r.ratio, 1.0, 1e-12);
    EXPECT_NEAR(r.constant, std::sqrt(double(std::min(m, n))), 1e-15);
    EXPECT_NEAR(check_lee(entry.matrices, NormSpec::all_uin()).ratio, 1.0, 1e-12);
  }
  Rng rng(3);
  std::vector<ComplexMatrix> psd = {random_psd(3, rng), random_psd(3, rng)};
  EXPECT_NEAR(check_lee(psd, NormSpec::schatten(2.5)).raw_ratio(), 1.0, 1e-12);
  const auto r = check_lee(ginibre_list(4, 2, rng), NormSpec::op());
  EXPECT_DOUBLE_EQ(r.constant, kSqrt2);
  EXPECT_TRUE(r.pass);
}

TEST(Sums, SymAndQsymE12) {
  for (std::size_t m : {1, 2, 5}) {
    const auto a = copies(kE12, m);
    EXPECT_NEAR(check_sum_vs_sym(a, NormSpec::op()).ratio, 1.0, 1e-13);
    EXPECT_NEAR(check_sum_vs_qsym(a, NormSpec::op()).ratio, 1.0, 1e-13);
  }
  Rng rng(4);
  std::vector<ComplexMatrix> psd = {random_psd(3, rng), random_psd(3, rng), random_psd(3, rng)};
  EXPECT_NEAR(check_sum_vs_sym(psd, NormSpec::op()).ratio, 0.5, 1e-12);
  EXPECT_NEAR(check_sum_vs_qsym(psd, NormSpec::op()).ratio, 1 / kSqrt2, 1e-12);
}

TEST(Sums, BourinLee) {
  const auto sharp = sharp3x3();
  EXPECT_NEAR(check_bourin_lee(sharp.matrices, NormSpec::op()).ratio, 1.0, 1e-12);
  // Zero padding keeps equality.
  std::vector<ComplexMatrix> padded;
  for (const auto& m : sharp.matrices) padded.push_back(pad_zeros(m, 2));
  EXPECT_NEAR(check_bourin_lee(padded, NormSpec::op()).ratio, 1.0, 1e-12);
  Rng rng(2);
  EXPECT_NEAR(check_bourin_lee({ginibre(3, rng)}, NormSpec::schatten(1.7)).ratio, 1 / kSqrt2, 1e-12);
  const auto ex = check_bourin_lee(example_114().matrices, NormSpec::op());
  EXPECT_NEAR(ex.raw_ratio(), 1.1789471123, 1e-6);
  EXPECT_TRUE(ex.pass);
}

TEST(Sums, Corollary24) {
  const auto sharp = sharp3x3();
  const auto r = check_corollary_24(sharp.matrices, 0);
  EXPECT_NEAR(r.ratio, 1.0, 1e-10);
  EXPECT_EQ(code_of([&] { check_corollary_24(sharp.matrices, 1); }), ErrorCode::BadIndex);
  const auto zero = check_corollary_24({ComplexMatrix::zeros(4, 4), ComplexMatrix::zeros(4, 4)}, 1);
  EXPECT_TRUE(zero.pass);
  EXPECT_TRUE(std::isnan(zero.ratio));
  Rng rng(70);
  for (int t = 0; t < 30; ++t) {
    const auto a = ginibre_list(2 + t % 3, 7, rng);
    for (std::size_t j : {0, 1, 2}) EXPECT_TRUE(check_corollary_24(a, j).pass);
  }
}

TEST(Sums, QsymLeeMatchesPhiEmbedding) {
  Rng rng(16);
  for (int t = 0; t < 20; ++t) {
    const auto a = ginibre_list(2 + t % 4, 2 + t % 3, rng);
    std::vector<ComplexMatrix> phi;
    for (const auto& x : a) phi.push_back(phi_embedding(x));
    for (const auto& spec : {NormSpec::op(), NormSpec::schatten(3), NormSpec::trace()}) {
      const auto q = check_qsym_lee(a, spec);
      const auto l = check_lee(phi, spec);
      EXPECT_NEAR(q.ratio, l.ratio, 1e-9);
      EXPECT_NEAR(q.constant, l.constant, 1e-15);
      EXPECT_TRUE(q.pass);
    }
  }
  // Single matrix: qsym of itself over itself.
  const auto single = check_qsym_lee({ginibre(3, rng)}, NormSpec::op());
  EXPECT_NEAR(single.raw_ratio(), 1.0, 1e-12);
}

TEST(Schatten, SymE12IsTight) {
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.0, kInfinity}) {
    for (std::size_t m : {1, 3}) {
      const auto r = check_schatten_sym(copies(kE12, m), p);
      EXPECT_NEAR(r.ratio, 1.0, 1e-12) << p;
      EXPECT_NEAR(r.constant, std::isinf(p) ? 2.0 : std::pow(2.0, 1 - 1 / p), 1e-15);
    }
  }
  Rng rng(17);
  for (double p : {1.0, 1.7, 2.0, 4.0, kInfinity}) {
    for (int t = 0; t < 20; ++t) EXPECT_TRUE(check_schatten_sym(ginibre_list(3, 3, rng), p).pass);
  }
}

TEST(Schatten, QsymPhaseTransition) {
  for (double p : {2.0, 3.0, 5.0, kInfinity}) {
    EXPECT_NEAR(check_schatten_qsym(copies(kE12, 4), p).ratio, 1.0, 1e-9) << p;
  }
  // Below p = 2 E_12 is not extremal.
  EXPECT_LT(check_schatten_qsym(copies(kE12, 4), 1.0).ratio, 0.8);
  Rng rng(18);
  for (double p : {1.0, 1.5, 2.0}) {
    std::vector<ComplexMatrix> psd = {random_psd(3, rng), random_psd(3, rng)};
    EXPECT_NEAR(check_schatten_qsym(psd, p).ratio, 1.0, 1e-9);
  }
  for (double p : {1.0, 1.9, 2.0, 2.1, 3.0}) {
    for (int t = 0; t < 30; ++t) EXPECT_TRUE(check_schatten_qsym(ginibre_list(3, 2, rng), p).pass) << p;
  }
}

TEST(Blocks, Positivity) {
  EXPECT_TRUE(check_block_positivity(ComplexMatrix::zeros(2, 2)).pass);
  const auto block = modulus_block(kE12);
  const auto ev = eigenvalues(block);
  EXPECT_NEAR(ev[0], 2.0, 1e-14);
  EXPECT_NEAR(ev[1], 0.0, 1e-14);
  EXPECT_NEAR(ev[2], 0.0, 1e-14);
  EXPECT_NEAR(ev[3], 0.0, 1e-14);
  Rng rng(30);
  for (int t = 0; t < 50; ++t) EXPECT_TRUE(check_block_positivity(ginibre(2 + t % 5, rng)).pass);
}

TEST(Blocks, EqualDiagonalDomination) {
  Rng rng(31);
  const auto p = random_psd(3, rng);
  const auto same = check_eqdiag_dom(p, ComplexMatrix::identity(3), NormSpec::op());
  EXPECT_NEAR(same.second.ratio, 1.0, 1e-12);
  EXPECT_TRUE(same.first.pass);
  const auto zero = check_eqdiag_dom(p, ComplexMatrix::zeros(3, 3), NormSpec::trace());
  EXPECT_EQ(zero.second.lhs, 0.0);
  for (int t = 0; t < 30; ++t) {
    const auto r = check_eqdiag_dom(random_psd(4, rng), random_contraction(4, rng), NormSpec::all_uin());
    EXPECT_TRUE(r.first.pass);
    EXPECT_TRUE(r.second.pass);
    ASSERT_TRUE(r.second.kyfan_index.has_value());
  }
  EXPECT_EQ(code_of([&] { check_eqdiag_dom(p, Complex(2.0) * ComplexMatrix::identity(3), NormSpec::op()); }),
            ErrorCode::BadArgument);
}

TEST(Blocks, ExtractContraction) {
  Rng rng(32);
  const auto p = random_low_rank_psd(4, 2, rng);
  const auto proj = extract_contraction(block2(p, p, p, p));
  EXPECT_LT(proj.defect, 1e-9);
  // K is the range projection of P.
  EXPECT_LT((proj.k * proj.k - proj.k).max_abs(), 1e-9);
  EXPECT_LT((proj.k * p - p).max_abs(), 1e-9);

  for (int t = 0; t < 30; ++t) {
    const auto a = ginibre(3, rng);
    const auto c = extract_contraction(modulus_block(a));
    EXPECT_LE(norm(c.k, NormSpec::op()), 1 + 1e-8);
    EXPECT_LE(c.defect, 1e-8 * std::max(1.0, a.frobenius()));
  }
  const auto diag = extract_contraction(block2(random_psd(3, rng), ComplexMatrix::zeros(3, 3),
                                               ComplexMatrix::zeros(3, 3), random_psd(3, rng)));
  EXPECT_EQ(diag.k.max_abs(), 0.0);
  EXPECT_EQ(code_of([] { extract_contraction(real_matrix({{1, 2}, {2, 1}})); }), ErrorCode::NotPsd);
}

TEST(Scalars, OneInfTwo) {
  for (std::size_t n = 2; n <= 8; ++n) {
    EXPECT_NEAR(check_one_inf_two(lemma61_extremizer(n, 3.5).matrices[0]).ratio, 1.0, 1e-10);
  }
  const auto id = check_one_inf_two(ComplexMatrix::identity(4));
  EXPECT_DOUBLE_EQ(id.lhs, 4);
  EXPECT_DOUBLE_EQ(id.rhs, 4);
  EXPECT_TRUE(id.pass);
  EXPECT_NEAR(check_one_inf_two(lemma61_extremizer(2).matrices[0]).raw_ratio(), (1 + kSqrt2) / 2, 1e-12);
  Rng rng(40);
  for (int t = 0; t < 50; ++t) EXPECT_TRUE(check_one_inf_two(random_psd(2 + t % 5, rng)).pass);
}

TEST(Scalars, FrobeniusC2AndCp) {
  for (std::size_t d = 2; d <= 6; ++d) {
    EXPECT_NEAR(check_frob_c2(frobenius_sharp_family(d, d).matrices).ratio, 1.0, 1e-9);
    EXPECT_NEAR(check_frob_c2(frobenius_sharp_family(d + 2, d).matrices).ratio, 1.0, 1e-9);
  }
  Rng rng(41);
  const auto one = check_frob_c2({ginibre(3, rng)});
  EXPECT_NEAR(one.ratio, 1.0 / one.constant, 1e-12);
  const auto a = ginibre_list(3, 4, rng);
  EXPECT_DOUBLE_EQ(check_cp_bound(a, 1.0).constant, 1.0);
  EXPECT_NEAR(check_cp_bound(a, kInfinity).constant, check_lee(a, NormSpec::op()).constant, 1e-15);
  EXPECT_NEAR(check_cp_bound(a, kInfinity).ratio, check_lee(a, NormSpec::op()).ratio, 1e-15);
  for (int t = 0; t < 30; ++t) EXPECT_TRUE(check_cp_bound(ginibre_list(3, 3, rng), 3.0).pass);
}

TEST(Traces, CauchySchwarzAndQsym) {
  Rng rng(50);
  const auto a = ginibre(3, rng);
  const auto self = check_trace_cs(a, a);
  EXPECT_NEAR(self.second.ratio, 1.0, 1e-12);
  const auto u = haar_unitary(3, rng);
  const std::vector<double> d1 = {3, 1, 0.5}, d2 = {0.2, 2, 4};
  const auto p1 = u * ComplexMatrix::diagonal(d1) * u.adjoint();
  const auto p2 = u * ComplexMatrix::diagonal(d2) * u.adjoint();
  const auto comm = check_trace_cs(p1, p2);
  EXPECT_NEAR(comm.first.ratio, 1.0, 1e-12);
  EXPECT_NEAR(comm.second.ratio, 1.0, 1e-12);

  EXPECT_NEAR(check_trace_qsym(a, a).ratio, 1.0, 1e-12);
  const auto e = check_trace_qsym(kE12, kE12);
  EXPECT_NEAR(e.lhs, 1.0, 1e-14);
  EXPECT_NEAR(e.rhs, 1.0, 1e-14);
  for (int t = 0; t < 50; ++t) {
    const auto x = ginibre(2 + t % 4, rng);
    const auto y = ginibre(2 + t % 4, rng);
    const auto cs = check_trace_cs(x, y);
    EXPECT_TRUE(cs.first.pass);
    EXPECT_TRUE(cs.second.pass);
    EXPECT_TRUE(check_trace_qsym(x, y).pass);
  }
}

TEST(Traces, McCarthy) {
  Rng rng(51);
  const auto a = random_psd(3, rng);
  const auto b = random_psd(3, rng);
  EXPECT_NEAR(check_mccarthy(a, b, 1.0).ratio, 1.0, 1e-12);
  EXPECT_NEAR(check_mccarthy(a, ComplexMatrix::zeros(3, 3), 2.5).ratio, 1.0, 1e-12);
  for (double p : {1.5, 2.0, 3.0}) {
    for (int t = 0; t < 20; ++t) EXPECT_TRUE(check_mccarthy(random_psd(3, rng), random_psd(3, rng), p).pass);
  }
  EXPECT_EQ(code_of([&] { check_mccarthy(a, b, 0.5); }), ErrorCode::BadNormParam);
}

TEST(Functions, FamilyAndLemmas) {
  EXPECT_TRUE(FunctionSpec::sqrt().concave());
  EXPECT_FALSE(FunctionSpec::sqrt().convex());
  EXPECT_TRUE(FunctionSpec::power(2).convex());
  EXPECT_FALSE(FunctionSpec::power(2).concave());
  EXPECT_TRUE(FunctionSpec::identity().concave() && FunctionSpec::identity().convex());
  EXPECT_EQ(FunctionSpec::parse("pow:1.5").to_string(), "pow:1.5");
  EXPECT_EQ(FunctionSpec::parse("shift:2").to_string(), "shift:2");
  EXPECT_EQ(code_of([] { FunctionSpec::parse("exp"); }), ErrorCode::BadArgument);
  EXPECT_EQ(code_of([] { FunctionSpec::shift(-1); }), ErrorCode::BadArgument);

  Rng rng(52);
  const auto a = random_psd(3, rng);
  const auto b = random_psd(3, rng);
  const auto same = check_bourin_uchiyama(a, a, NormSpec::op(), FunctionSpec::sqrt());
  EXPECT_NEAR(same.ratio, 1 / kSqrt2, 1e-12);
  EXPECT_NEAR(check_bourin_uchiyama(a, b, NormSpec::trace(), FunctionSpec::identity()).ratio, 1.0, 1e-12);
  EXPECT_EQ(code_of([&] { check_bourin_uchiyama(a, b, NormSpec::op(), FunctionSpec::power(2)); }),
            ErrorCode::BadArgument);
  for (double alpha : {0.0, 1.0}) {
    EXPECT_NEAR(check_aujla_silva(a, b, alpha, NormSpec::op(), FunctionSpec::power(2)).ratio, 1.0, 1e-12);
  }
  EXPECT_NEAR(check_aujla_silva(a, b, 0.3, NormSpec::op(), FunctionSpec::identity()).ratio, 1.0, 1e-12);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_psd(3, rng);
    const auto y = random_psd(3, rng);
    EXPECT_TRUE(check_bourin_uchiyama(x, y, NormSpec::all_uin(), FunctionSpec::sqrt()).pass);
    EXPECT_TRUE(check_aujla_silva(x, y, rng.uniform(), NormSpec::schatten(3), FunctionSpec::power(2)).pass);
  }
}

TEST(Traces, Lieb) {
  Rng rng(53);
  const auto x = random_psd(3, rng);
  const auto y = random_psd(3, rng);
  EXPECT_NEAR(check_lieb(x, x, y, y).ratio, 1.0, 1e-12);
  // 1x1: sqrt(xy) is jointly concave.
  const ComplexMatrix a{{4.0}}, b{{1.0}}, c{{1.0}}, d{{9.0}};
  const auto s = check_lieb(a, b, c, d);
  EXPECT_NEAR(s.lhs, (2.0 + 3.0) / 2, 1e-14);
  EXPECT_NEAR(s.rhs, std::sqrt(2.5 * 5.0), 1e-14);
  for (int t = 0; t < 30; ++t) {
    EXPECT_TRUE(check_lieb(random_psd(3, rng), random_psd(3, rng), random_psd(3, rng), random_psd(3, rng)).pass);
  }
}

TEST(NoConstant, ClosedForm) {
  EXPECT_NEAR(check_no_constant(std::numbers::pi / 2).lhs, kSqrt2, 1e-12);
  EXPECT_NEAR(check_no_constant(std::numbers::pi / 3).lhs, 2.0, 1e-12);
  for (double theta : {1.0, 0.3, 0.1, 0.03, 0.01}) {
    const auto r = check_no_constant(theta);
    EXPECT_TRUE(r.pass) << theta;
    EXPECT_NEAR(r.lhs, std::sqrt(2 / (1 - std::cos(theta))), 1e-8 * r.rhs);
  }
  EXPECT_GT(check_no_constant(0.01).lhs, 200);
  EXPECT_EQ(code_of([] { check_no_constant(0.0); }), ErrorCode::BadArgument);
}

TEST(Endpoints, SymCurveAndC2) {
  const auto sharp = sharp3x3();
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 16.0, 256.0, kInfinity}) {
    const auto r = check_sym_endpoints(sharp.matrices, p);
    EXPECT_NEAR(r.raw_ratio(), sym_lower_curve(p), 1e-9) << p;
    EXPECT_TRUE(r.pass);
  }
  EXPECT_NEAR(sym_lower_curve(2.0), 1.0, 1e-15);
  EXPECT_NEAR(sym_lower_curve(1.0), 2 * kSqrt2 / 3, 1e-15);
  EXPECT_NEAR(sym_lower_curve(256.0), kSqrt2 * std::pow(1.0 / 3.0, 1.0 / 256), 1e-15);
  const auto c2 = check_sym_endpoints(c2_counterexample().matrices, 2.0);
  EXPECT_NEAR(c2.raw_ratio(), 1.0144, 5e-4);
  EXPECT_GT(c2.raw_ratio(), 1.0);
  Rng rng(60);
  for (int t = 0; t < 30; ++t) {
    const auto r = check_sym_endpoints(ginibre_list(3, 3, rng), 1.0);
    EXPECT_DOUBLE_EQ(r.constant, 1.0);
    EXPECT_TRUE(r.pass);
  }
}

TEST(Endpoints, QsymMatchesPhiEmbedding) {
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const auto a = ginibre_list(2 + t % 3, 2, rng);
    std::vector<ComplexMatrix> phi;
    for (const auto& x : a) phi.push_back(phi_embedding(x));
    for (double p : {1.0, 2.0, 3.0, kInfinity}) {
      const auto q = check_qsym_endpoints(a, p);
      const auto c = check_cp_bound(phi, p);
      EXPECT_NEAR(q.ratio, c.ratio, 1e-9);
      EXPECT_TRUE(q.pass);
    }
  }
  EXPECT_DOUBLE_EQ(check_qsym_endpoints(ginibre_list(2, 2, rng), 1.0).constant, 1.0);
}

TEST(Properties, ScaleInvariance) {
  Rng rng(80);
  const auto a = ginibre_list(3, 3, rng);
  for (double c : {1e-3, 1.0, 1e3}) {
    std::vector<ComplexMatrix> scaled;
    for (const auto& x : a) scaled.push_back(Complex(c) * x);
    EXPECT_NEAR(check_bourin_lee(scaled, NormSpec::op()).ratio, check_bourin_lee(a, NormSpec::op()).ratio, 1e-10);
    EXPECT_NEAR(check_lee(scaled, NormSpec::all_uin()).ratio, check_lee(a, NormSpec::all_uin()).ratio, 1e-10);
    EXPECT_NEAR(check_schatten_qsym(scaled, 3).ratio, check_schatten_qsym(a, 3).ratio, 1e-10);
  }
}

TEST(Properties, FanCoherence) {
  Rng rng(81);
  const std::vector<NormSpec> grid = {NormSpec::schatten(1),   NormSpec::schatten(1.5), NormSpec::schatten(2),
                                      NormSpec::schatten(3),   NormSpec::schatten(10),  NormSpec::op(),
                                      NormSpec::ky_fan(1),     NormSpec::ky_fan(2),     NormSpec::ky_fan(3)};
  for (int t = 0; t < 30; ++t) {
    const auto a = ginibre_list(2, 3, rng);
    const auto all = check_bourin_lee(a, NormSpec::all_uin());
    ASSERT_TRUE(all.pass);
    for (const auto& spec : grid) {
      const auto r = check_bourin_lee(a, spec);
      EXPECT_TRUE(r.pass);
      EXPECT_LE(r.ratio, all.ratio * (1 + 1e-12));
    }
  }
}
