#include "crownkit/crownkit.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace crownkit;

namespace {

int column_of(const SOSystem& so, int e1, int e2) {
  for (int i = so.rank; i < so.dim_p; ++i)
    if (so.column_roots(i, 0) == e1 && so.column_roots(i, 1) == e2) return i;
  return -1;
}

Vec t1(double t) { return Vec::Constant(1, t); }

Vec t2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

} // namespace

TEST(Cell, Membership) {
  const auto so = build_so_system("sl2r");
  const auto origin = cell_contains(so, t1(0.0));
  EXPECT_FALSE(origin.regular);
  const auto c = cell_contains(so, t1(pi / 8));
  EXPECT_TRUE(c.regular);
  EXPECT_NEAR(c.min_root, pi / 4, 1e-15);
  EXPECT_THROW(cell_contains(so, t1(pi / 4)), domain_error);
  try {
    cell_contains(so, t1(-pi / 4));
    FAIL();
  } catch (const domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("2e1"), std::string::npos);
  }
}

TEST(Operators, IdentityAtOrigin) {
  for (const auto& name : {"sl2r", "su21", "sp4r"}) {
    const auto so = build_so_system(name);
    const auto c = cell_contains(so, Vec::Zero(so.rank));
    const Mat id = Mat::Identity(so.dim_p, so.dim_p);
    EXPECT_LT((f_a(so, c).matrix - id).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((e_a(so, c).matrix - id).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((psi_star(so, c).matrix - id).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((l_a(so, c).matrix - so.I0).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(psi(so, Vec::Zero(so.dim_p)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Operators, Sl2Values) {
  const auto so = build_so_system("sl2r");
  const auto c = cell_contains(so, t1(pi / 8));
  EXPECT_NEAR(f_a(so, c).matrix(1, 1), 0.70711, 1e-5);
  EXPECT_NEAR(f_a(so, c).matrix(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(e_a(so, c).matrix(1, 1), 0.90032, 1e-5);
  EXPECT_NEAR(e_a(so, c).matrix(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(psi_on_a(so, t1(pi / 8))(0), 0.35355, 1e-5);
  EXPECT_NEAR(psi_star(so, c).matrix(0, 0), std::cos(pi / 4), 1e-12);
  // L_a A = -cos(pi/4) P and L_a(iA) = +i cos(pi/4) P.
  const auto l = l_a(so, c);
  const CVec la = l.apply(CVec(Vec::Unit(2, 0).cast<cplx>()));
  EXPECT_NEAR(std::abs(la(1) + std::cos(pi / 4)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(la(0)), 0.0, 1e-12);
  const CVec lia = l.apply(CVec(imag_unit * Vec::Unit(2, 0).cast<cplx>()));
  EXPECT_NEAR(std::abs(lia(1) - imag_unit * std::cos(pi / 4)), 0.0, 1e-12);
}

TEST(Operators, ClosedFormsAgreeWithExponentials) {
  for (const auto& name : supported_spaces()) {
    const auto so = build_so_system(name);
    const Vec t = Vec::LinSpaced(so.rank, 0.61, 0.23);
    const auto c = cell_contains(so, t);
    EXPECT_LT((f_a_definition(so, c) - f_a(so, c).matrix.cast<cplx>()).cwiseAbs().maxCoeff(), 1e-10) << name;
    EXPECT_LT((e_a_series(so, c) - e_a(so, c).matrix.cast<cplx>()).cwiseAbs().maxCoeff(), 1e-10) << name;
    EXPECT_LT((psi_star_fd(so, c) - psi_star(so, c).matrix).cwiseAbs().maxCoeff(), 1e-6) << name;
    EXPECT_LT((l_a(so, c).matrix - l_a_via_psi(so, c).matrix).cwiseAbs().maxCoeff(), 1e-10) << name;
  }
}

TEST(Operators, Sp4CrossRoots) {
  const auto so = build_so_system("sp4r");
  const auto c = cell_contains(so, t2(pi / 8, pi / 16));
  const int minus = column_of(so, 1, -1), plus = column_of(so, 1, 1);
  ASSERT_GE(minus, 0);
  ASSERT_GE(plus, 0);
  EXPECT_NEAR(f_a(so, c).matrix(minus, minus), std::cos(pi / 16), 1e-12);
  EXPECT_NEAR(f_a_definition(so, c)(minus, minus).real(), std::cos(pi / 16), 1e-10);
  const double expect = (std::sin(pi / 4) / 2 + std::sin(pi / 8) / 2) / (pi / 8 + pi / 16);
  EXPECT_NEAR(psi_star(so, c).matrix(plus, plus), expect, 1e-12);
  EXPECT_NEAR(psi_star_fd(so, c)(plus, plus), expect, 1e-7);
}

TEST(Operators, PsiStarLimitNearVanishingRoot) {
  // On the wall e1 = e2 the quotient branch is replaced by its limit.
  const auto so = build_so_system("sp4r");
  const auto c = cell_contains(so, t2(0.3, 0.3 - 2e-5));
  EXPECT_LT((psi_star_fd(so, c) - psi_star(so, c).matrix).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Operators, PsiEquivariance) {
  const auto so = build_so_system("su21");
  const auto& m = so.model;
  Vec kv = Vec::Zero(m.dim);
  kv.head(m.dim_k) = Vec::LinSpaced(m.dim_k, -0.7, 0.9);
  const Mat adk = expm(Mat(m.ad(kv)));
  Vec h = Vec::Zero(so.dim_p);
  h(0) = 0.4;
  const Vec lhs = psi(so, so.project(Vec(adk * so.p_embed(h))));
  const Vec rhs = so.project(Vec(adk * so.p_embed(psi(so, h))));
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Operators, SliceKComponent) {
  const auto so = build_so_system("sl2r");
  const Vec p = Vec::Unit(2, 1);
  EXPECT_NEAR(slice_k_component(so, cell_contains(so, t1(pi / 8)), p)(0), -1.0, 1e-12);
  EXPECT_NEAR(slice_k_component(so, cell_contains(so, t1(pi / 6)), p)(0), -1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(slice_k_component(so, cell_contains(so, t1(pi / 8)), Vec::Unit(2, 0))(0), 0.0, 0.0);
  EXPECT_THROW(slice_k_component(so, cell_contains(so, t1(0.0)), p), singularity_error);
}

TEST(Operators, DomainErrorsOutsideCell) {
  const auto so = build_so_system("sp4r");
  EXPECT_THROW(cell_contains(so, t2(0.8, 0.2)), domain_error);  // 2e1(H) = 1.6
  EXPECT_NO_THROW(cell_contains(so, t2(0.5, 0.4)));
}
