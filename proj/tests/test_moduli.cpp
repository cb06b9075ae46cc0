#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "modlab/error.hpp"
#include "modlab/linalg.hpp"
#include "modlab/moduli.hpp"
#include "modlab/norms.hpp"
#include "modlab/random.hpp"
#include "test_helpers.hpp"

using namespace modlab;
using modlab::testing::max_entry_diff;
using modlab::testing::real_matrix;
using modlab::testing::vec;

namespace {

const double kHalfRoot2 = std::numbers::sqrt2 / 2.0;

ComplexMatrix x_theta(double theta) {
  return real_matrix({{std::cos(theta), 0.0}, {std::sin(theta), 0.0}});
}

// Cartesian-form oracle: sqrt((Re Z)^2 + (Im Z)^2).
ComplexMatrix cartesian_qsym(const ComplexMatrix& z) {
  const auto parts = cartesian(z);
  return psd_sqrt((parts.real * parts.real + parts.imag * parts.imag).hermitian_part());
}

}  // namespace

TEST(Moduli, E12) {
  const auto e12 = ComplexMatrix::unit(2, 1, 2);
  EXPECT_LT(max_entry_diff(usual_modulus(e12), real_matrix({{0, 0}, {0, 1}})), 1e-14);
  EXPECT_LT(max_entry_diff(usual_modulus(e12.adjoint()), real_matrix({{1, 0}, {0, 0}})), 1e-14);
  EXPECT_LT(max_entry_diff(sym_modulus(e12), 0.5 * ComplexMatrix::identity(2)), 1e-14);
  EXPECT_LT(max_entry_diff(qsym_modulus(e12), kHalfRoot2 * ComplexMatrix::identity(2)), 1e-14);
}

TEST(Moduli, XThetaSpectra) {
  for (double theta : {0.3, 1.0, std::numbers::pi / 2, 2.5}) {
    const auto x = x_theta(theta);
    const double c = (1 + std::cos(theta)) / 2;
    const double s = std::sin(theta / 2) * std::sin(theta / 2);
    const double plus = std::max(c, s);
    const double minus = std::min(c, s);
    const auto es = eigenvalues(sym_modulus(x));
    EXPECT_NEAR(es[0], plus, 1e-13);
    EXPECT_NEAR(es[1], minus, 1e-13);
    const auto eq = eigenvalues(qsym_modulus(x));
    EXPECT_NEAR(eq[0], std::sqrt(plus), 1e-13);
    EXPECT_NEAR(eq[1], std::sqrt(minus), 1e-13);
  }
}

TEST(Moduli, RankOneSymIsAverageOfProjections) {
  // Z = u v^* with unit u, v: |Z| = v v^*, |Z^*| = u u^*.
  const auto u = vec({1, 2, 2}, 1.0 / 3.0);
  const auto v = vec({0, 3, 4}, 1.0 / 5.0);
  const auto z = ComplexMatrix::outer(u, v);
  const auto expected = 0.5 * (ComplexMatrix::outer(u, u) + ComplexMatrix::outer(v, v));
  EXPECT_LT(max_entry_diff(sym_modulus(z), expected), 1e-13);
}

TEST(Moduli, QsymMatchesCartesianForm) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 5;
    const auto z = ginibre(n, rng);
    EXPECT_LT(max_entry_diff(qsym_modulus(z), cartesian_qsym(z)), 1e-9 * std::max(1.0, z.frobenius()));
  }
}

TEST(Moduli, CartesianReconstructs) {
  Rng rng(3);
  const auto z = ginibre(4, rng);
  const auto parts = cartesian(z);
  EXPECT_TRUE(is_hermitian(parts.real));
  EXPECT_TRUE(is_hermitian(parts.imag));
  EXPECT_LT(max_entry_diff(parts.real + Complex(0, 1) * parts.imag, z), 1e-14);
}

TEST(Moduli, OrderChainAndTrace) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 4;
    const auto z = ginibre(n, rng);
    const auto abs = usual_modulus(z);
    const auto abs_adj = usual_modulus(z.adjoint());
    const auto s = sym_modulus(z);
    const auto q = qsym_modulus(z);
    const double scale = 1e-10 * std::max(1.0, z.frobenius());
    EXPECT_GE(min_eig(q - s), -scale);
    EXPECT_GE(min_eig(std::numbers::sqrt2 * q - abs), -scale);
    EXPECT_GE(min_eig(std::numbers::sqrt2 * q - abs_adj), -scale);
    EXPECT_NEAR(s.trace().real(), abs.trace().real(), scale);
    EXPECT_NEAR(abs.trace().real(), abs_adj.trace().real(), scale);
    // tr qsym^2 = ‖Z‖_F^2
    EXPECT_NEAR((q * q).trace().real(), z.frobenius() * z.frobenius(), 1e-9 * (1 + z.frobenius() * z.frobenius()));
  }
}

TEST(Moduli, UnitaryCovariance) {
  Rng rng(8);
  const auto z = ginibre(4, rng);
  const auto u = haar_unitary(4, rng);
  const auto conj = u * z * u.adjoint();
  for (auto kind : {ModulusKind::Usual, ModulusKind::ArithmeticSym, ModulusKind::QuadraticSym}) {
    const auto lhs = modulus(conj, kind);
    const auto rhs = u * modulus(z, kind) * u.adjoint();
    EXPECT_LT(max_entry_diff(lhs, rhs), 1e-11) << to_string(kind);
  }
}

TEST(Moduli, NormalMatricesHaveEqualModuli) {
  Rng rng(9);
  const auto u = haar_unitary(3, rng);
  const std::vector<Complex> diag = {Complex(1, 2), Complex(-3, 0), Complex(0, 0.5)};
  ComplexMatrix d(3, 3);
  for (std::size_t i = 0; i < 3; ++i) d(i, i) = diag[i];
  const auto z = u * d * u.adjoint();
  const auto abs = usual_modulus(z);
  EXPECT_LT(max_entry_diff(sym_modulus(z), abs), 1e-12);
  EXPECT_LT(max_entry_diff(qsym_modulus(z), abs), 1e-12);
}

TEST(Moduli, NonSquareRejected) {
  const ComplexMatrix rect(2, 3);
  EXPECT_THROW(sym_modulus(rect), Error);
  EXPECT_THROW(qsym_modulus(rect), Error);
  try {
    sym_modulus(rect);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}

TEST(Embeddings, DilationSpectrumAndNorms) {
  const auto h = hermitian_dilation(ComplexMatrix::unit(2, 1, 2));
  const auto ev = eigenvalues(h);
  ASSERT_EQ(ev.size(), 4u);
  EXPECT_NEAR(ev[0], 1, 1e-14);
  EXPECT_NEAR(ev[1], 0, 1e-14);
  EXPECT_NEAR(ev[2], 0, 1e-14);
  EXPECT_NEAR(ev[3], -1, 1e-14);

  Rng rng(21);
  const auto a = ginibre(3, 4, rng);
  const auto ha = hermitian_dilation(a);
  EXPECT_TRUE(is_hermitian(ha));
  for (double p : {1.0, 1.5, 2.0, 3.0, 10.0}) {
    EXPECT_NEAR(schatten_norm(ha, p), std::pow(2.0, 1.0 / p) * schatten_norm(a, p), 1e-10) << p;
  }
  EXPECT_NEAR(schatten_norm(ha, kInfinity), schatten_norm(a, kInfinity), 1e-12);
}

TEST(Embeddings, PhiGivesQsym) {
  const auto phi = phi_embedding(ComplexMatrix::unit(2, 1, 2));
  auto expected = ComplexMatrix::zeros(4, 4);
  expected(0, 0) = kHalfRoot2;
  expected(1, 1) = kHalfRoot2;
  EXPECT_LT(max_entry_diff(usual_modulus(phi), expected), 1e-14);

  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto a = ginibre(3, rng);
    const auto p = phi_embedding(a);
    EXPECT_NEAR(p.frobenius(), a.frobenius(), 1e-12);
    const auto abs = usual_modulus(p);
    EXPECT_LT(max_entry_diff(abs.block(0, 0, 3, 3), qsym_modulus(a)), 1e-11);
    EXPECT_LT(abs.block(3, 0, 3, 3).max_abs(), 1e-11);
    EXPECT_LT(abs.block(3, 3, 3, 3).max_abs(), 1e-11);
  }
}
