#include "crownkit/crownkit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace crownkit;

namespace {

Vec t1(double t) { return Vec::Constant(1, t); }

CVec e(int n, int i) { return CVec::Unit(n, i); }

CMat mat2(cplx a, cplx b, cplx c, cplx d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

// Killing form of sl(2): B(X, Y) = 4 tr(XY).
double b_sl2(const CMat& x, const CMat& y) { return 4.0 * (x * y).trace().real(); }

// Composite Simpson rule for int_0^t (cos s - 1) cot s ds.
double f_i_oracle(double t) {
  const int n = 2000;
  const double h = t / n;
  auto g = [](double s) { return s == 0.0 ? 0.0 : (std::cos(s) - 1.0) * std::cos(s) / std::sin(s); };
  double sum = g(0) + g(t);
  for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * g(k * h);
  return sum * h / 3.0;
}

CVec random_cvec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  CVec z(n);
  for (int i = 0; i < n; ++i) z(i) = cplx(nd(rng), nd(rng));
  return z;
}

} // namespace

TEST(Structures, JIsMultiplicationByI) {
  const CVec z = J_apply(e(2, 0));
  EXPECT_EQ(z(0), imag_unit);
  EXPECT_EQ(J_apply(z)(0), cplx(-1.0, 0.0));
}

TEST(Structures, IAtOriginAndOnSlice) {
  const HKHandle h("sl2r");
  const CVec x = CVec(Vec::LinSpaced(2, 0.3, -1.2).cast<cplx>());
  EXPECT_LT((I_apply(h, t1(0), x) - h.so.I0.cast<cplx>() * x).cwiseAbs().maxCoeff(), 1e-15);
  const CVec ia = I_apply(h, t1(pi / 8), e(2, 0));
  EXPECT_NEAR(std::abs(ia(1) + std::cos(pi / 4)), 0.0, 1e-12);
  // K X = -i I0 X at H = 0.
  EXPECT_LT((K_apply(h, t1(0), x) + imag_unit * (h.so.I0.cast<cplx>() * x)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(I_apply(h, t1(pi / 4), x), domain_error);
}

TEST(Structures, QuaternionRelationsOnRandomVectors) {
  const HKHandle h("su21");
  const Vec t = t1(0.41);
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const CVec z = random_cvec(rng, h.np());
    EXPECT_LT((I_apply(h, t, J_apply(z)) + J_apply(I_apply(h, t, z))).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((K_apply(h, t, K_apply(h, t, z)) + z).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((I_apply(h, t, J_apply(K_apply(h, t, z))) + z).cwiseAbs().maxCoeff(), 1e-12);
    // Induced-field round trip: J acts as i on both sides.
    EXPECT_LT((from_induced(h, t, to_induced(h, t, J_apply(z))) - imag_unit * z).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Forms, Sl2Values) {
  const HKHandle h("sl2r");
  const CMat a = mat2(1, 0, 0, -1), p = mat2(0, 1, 1, 0);
  // I0 A = -P, so omega_I(A, P) = B(-P, P).
  EXPECT_NEAR(omega_I(h, e(2, 0), e(2, 1)), b_sl2(-p, p), 1e-12);
  EXPECT_NEAR(omega_I(h, e(2, 0), e(2, 1)), -8.0, 1e-12);
  EXPECT_NEAR(omega_K(h, e(2, 0), e(2, 1)), 0.0, 1e-15);
  // omega_J(A, iA) = omega_I(iA, I(iA)) = Re B(-iP, i cos(pi/4) P) = cos(pi/4) B(P, P).
  const Vec t = t1(pi / 8);
  const double expect = std::cos(pi / 4) * b_sl2(p, p);
  EXPECT_NEAR(omega_J(h, t, e(2, 0), CVec(imag_unit * e(2, 0))), expect, 1e-12);
  EXPECT_NEAR(expect, 4.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(b_sl2(a, a), h.so.C, 1e-12);
}

TEST(Forms, Antisymmetry) {
  const HKHandle h("sp4r");
  const Vec t = Vec::LinSpaced(2, 0.5, 0.15);
  std::mt19937_64 rng(9);
  const CVec z = random_cvec(rng, h.np()), w = random_cvec(rng, h.np());
  EXPECT_NEAR(omega_J(h, t, z, z), 0.0, 1e-12);
  EXPECT_NEAR(omega_can(h, t, z, z), 0.0, 1e-12);
  EXPECT_NEAR(omega_I(h, z, w) + omega_I(h, w, z), 0.0, 1e-12);
  EXPECT_NEAR(metric(h, t, z, w), omega_J(h, t, z, J_apply(w)), 1e-10);
}

TEST(Forms, OmegaJVanishesOnPAndJIP) {
  const HKHandle h("su21");
  const Vec t = t1(0.3);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  Vec x(h.np()), v(h.np());
  for (int i = 0; i < h.np(); ++i) {
    x(i) = nd(rng);
    v(i) = nd(rng);
  }
  EXPECT_NEAR(omega_J(h, t, x.cast<cplx>(), J_apply(CVec(imag_unit * v.cast<cplx>()))), 0.0, 1e-12);
}

TEST(Forms, PulledBackBaseFormOnImaginaryDirections) {
  const HKHandle h("sl2r");
  EXPECT_NEAR(omega_0_pullback(h, t1(0), CVec(imag_unit * e(2, 0)), CVec(imag_unit * e(2, 1))), 0.0, 1e-15);
  EXPECT_NEAR(omega_0_pullback(h, t1(0), e(2, 0), e(2, 1)), -8.0, 1e-12);
}

TEST(Metric, GramAtOriginAndNearBoundary) {
  const HKHandle h("sl2r");
  auto gram = [&](double t) {
    const Mat g = form_matrix(h, FormKind::omega_I, t1(t)) * I_real(h, t1(t));
    return Mat(0.5 * (g + g.transpose()));
  };
  EXPECT_LT((gram(0) - h.so.C * Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
  for (double t : {0.6, 0.7, 0.75}) {
    const double min_eig = Eigen::SelfAdjointEigenSolver<Mat>(gram(t)).eigenvalues().minCoeff();
    EXPECT_NEAR(min_eig, h.so.C * std::cos(2 * t), 1e-10);
  }
}

TEST(Potentials, Sl2Values) {
  const HKHandle h("sl2r");
  EXPECT_NEAR(rho_J(h, t1(0)), -2.0, 1e-14);
  EXPECT_NEAR(rho_J(h, t1(pi / 8)), -std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(rho_can(h, t1(pi / 8)), pi * pi / 16, 1e-14);
  EXPECT_EQ(f_I(0.0), 0.0);
  EXPECT_NEAR(f_I(pi / 4), f_i_oracle(pi / 4), 1e-10);
  EXPECT_NEAR(f_I(pi / 4), -0.13454, 1e-5);
  EXPECT_NEAR(f_I(-1.2), f_i_oracle(-1.2), 1e-10);
  EXPECT_NEAR(rho_I(h, t1(pi / 8)), -2.0 * f_i_oracle(pi / 4), 1e-10);
  EXPECT_NEAR(rho_I(h, t1(pi / 8)), 0.26909, 1e-5);
  EXPECT_THROW(f_I(pi / 2), domain_error);
  EXPECT_THROW(f_I_prime(-2.0), domain_error);
}

TEST(MomentMaps, Sl2Values) {
  const HKHandle h("sl2r");
  const auto& m = h.so.model;
  const ChartPoint p = slice_point(h.so, t1(pi / 8));
  const Vec a = h.so.A.col(0);
  EXPECT_NEAR(mu_J(h, p, a), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(mu_can(h, p, a), pi, 1e-12);
  // (1/2) f~(pi/4) B(K, [I0 A, H]) with f~(s) = (cos s - 1)/s and [I0 A, H] = (pi/4) K.
  const Vec k = m.coords(mat2(0, 1, -1, 0)).real();
  const CMat kmat = mat2(0, 1, -1, 0);
  const double ft = (std::cos(pi / 4) - 1.0) / (pi / 4);
  const double expect = 0.5 * ft * b_sl2(kmat, CMat((pi / 4) * kmat));
  const std::function<double(double)> fip = [](double s) { return f_I_prime(s); };
  EXPECT_NEAR(mu_general(h, p, k, fip), expect, 1e-12);
  EXPECT_NEAR(expect, 4.0 - 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_THROW(mu_general(h, slice_point(h.so, t1(0)), k, fip), singularity_error);
}

TEST(MomentMaps, VanishingCases) {
  const HKHandle h("su21");
  const auto& m = h.so.model;
  ASSERT_GT(h.so.roots.m_basis.cols(), 0);
  const Vec mx = h.so.roots.m_basis.col(0);
  const ChartPoint p = slice_point(h.so, t1(0.37));
  const std::function<double(double)> zero = [](double) { return 0.0; };
  const std::function<double(double)> fip = [](double s) { return f_I_prime(s); };
  EXPECT_NEAR(mu_general(h, p, mx, fip), 0.0, 1e-12);
  EXPECT_NEAR(mu_J(h, p, mx), 0.0, 1e-12);
  EXPECT_EQ(mu_general(h, p, Vec::Ones(m.dim), zero), 0.0);
  Vec kx = Vec::Zero(m.dim);
  kx.head(m.dim_k).setOnes();
  EXPECT_NEAR(mu_J(h, slice_point(h.so, t1(0.37)), kx), 0.0, 1e-12);
}

TEST(Projection, SliceDirections) {
  const HKHandle h("sp4r");
  const Vec t = Vec::LinSpaced(2, 0.45, 0.2);
  const Mat f = f_a(h.so, h.cell(t)).matrix;
  const Vec y = Vec::LinSpaced(h.np(), -1.0, 2.0);
  EXPECT_LT(p_star(h, t, CVec(f.cast<cplx>() * (imag_unit * y.cast<cplx>()))).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((p_star(h, t, CVec(f.cast<cplx>() * y.cast<cplx>())) - y).cwiseAbs().maxCoeff(), 1e-14);
  const CMat base = project_base(h, slice_point(h.so, t));
  EXPECT_LT((base - CMat::Identity(base.rows(), base.cols())).cwiseAbs().maxCoeff(), 1e-14);
}
