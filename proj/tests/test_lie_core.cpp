#include "crownkit/crownkit.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace crownkit;

namespace {

// B(X, Y) = c tr(XY) on the defining representation: 2n for sl(n) and its
// real forms su(p,q), 2n+2 for sp(2n).
double trace_factor(const std::string& name) {
  if (name == "sp4r") return 6.0;
  const LieAlgebraModel m = build_algebra(name);
  return 2.0 * m.matrix_size;
}

struct Expected {
  int dim, dim_k, rank;
  SystemType type;
  std::map<std::string, int> mult;
};

// Classification of the restricted roots: su(p,q), p <= q, has 2e_j (1),
// e_k +- e_l (2) and e_j (2(q - p)); sp(4,R) is split.
const std::map<std::string, Expected>& expected() {
  static const std::map<std::string, Expected> e{
      {"sl2r", {3, 1, 1, SystemType::C, {{"2e1", 1}}}},
      {"su11", {3, 1, 1, SystemType::C, {{"2e1", 1}}}},
      {"su21", {8, 4, 1, SystemType::BC, {{"2e1", 1}, {"e1", 2}}}},
      {"su12", {8, 4, 1, SystemType::BC, {{"2e1", 1}, {"e1", 2}}}},
      {"su31", {15, 9, 1, SystemType::BC, {{"2e1", 1}, {"e1", 4}}}},
      {"su13", {15, 9, 1, SystemType::BC, {{"2e1", 1}, {"e1", 4}}}},
      {"su22", {15, 7, 2, SystemType::C, {{"2e1", 1}, {"2e2", 1}, {"e1-e2", 2}, {"e1+e2", 2}}}},
      {"sp4r", {10, 4, 2, SystemType::C, {{"2e1", 1}, {"2e2", 1}, {"e1-e2", 1}, {"e1+e2", 1}}}},
  };
  return e;
}

CMat mat2(cplx a, cplx b, cplx c, cplx d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

} // namespace

class EverySpace : public ::testing::TestWithParam<std::string> {};

TEST_P(EverySpace, DimensionsMatchClassification) {
  const auto m = build_algebra(GetParam());
  const auto& e = expected().at(GetParam());
  EXPECT_EQ(m.dim, e.dim);
  EXPECT_EQ(m.dim_k, e.dim_k);
}

TEST_P(EverySpace, KillingFormIsTraceMultiple) {
  const auto m = build_algebra(GetParam());
  const double c = trace_factor(GetParam());
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int rep = 0; rep < 5; ++rep) {
    Vec x(m.dim), y(m.dim);
    for (int i = 0; i < m.dim; ++i) {
      x(i) = nd(rng);
      y(i) = nd(rng);
    }
    const cplx tr = (m.matrix(x) * m.matrix(y)).trace();
    EXPECT_NEAR(m.killing_form(x, y), c * tr.real(), 1e-10);
    EXPECT_NEAR(tr.imag(), 0.0, 1e-12);
  }
}

TEST_P(EverySpace, CartanInvolutionIsMinusAdjoint) {
  const auto m = build_algebra(GetParam());
  for (int i = 0; i < m.dim; ++i) {
    const Vec e = Vec::Unit(m.dim, i);
    const CMat lhs = m.matrix(Vec(m.theta * e));
    const CMat rhs = -m.matrix(e).adjoint();
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST_P(EverySpace, ModelInvariants) {
  const auto c = check_model(build_algebra(GetParam()));
  EXPECT_LT(c.theta_involution, 1e-12);
  EXPECT_LT(c.killing_trace, 1e-10);
  EXPECT_LT(c.theta_isometry, 1e-10);
  EXPECT_LT(c.k_max_eigenvalue, 0.0);
  EXPECT_GT(c.p_min_eigenvalue, 0.0);
}

TEST_P(EverySpace, RestrictedRootsMatchClassification) {
  const auto so = build_so_system(GetParam());
  const auto& e = expected().at(GetParam());
  EXPECT_EQ(so.rank, e.rank);
  EXPECT_EQ(so.roots.type, e.type);
  std::map<std::string, int> got;
  for (const auto& r : so.roots.positive) got[r.label()] = r.multiplicity;
  EXPECT_EQ(got, e.mult);
  const auto rc = check_roots(so.model, so.roots);
  EXPECT_LT(rc.eigen_residual, 1e-10);
  EXPECT_EQ(rc.dimension_total, e.dim);
  EXPECT_TRUE(rc.blocks_balanced);
}

TEST_P(EverySpace, StronglyOrthogonalSystem) {
  const auto so = build_so_system(GetParam());
  const auto c = check_so_system(so);
  EXPECT_LT(c.triple_bracket, 1e-12);
  EXPECT_LT(c.strong_orthogonality, 1e-12);
  EXPECT_LT(c.i0_on_triples, 1e-10);
  EXPECT_LT(c.i0_blocks, 1e-10);
  EXPECT_LT(c.z0_decomposition, 1e-10);
  EXPECT_LT(c.i0_square, 1e-10);
  EXPECT_LT(c.z0_central, 1e-10);
  // C = B(A_j, A_j), with B from the trace oracle.
  const double f = trace_factor(GetParam());
  for (int j = 0; j < so.rank; ++j) {
    const CMat a = so.model.matrix(Vec(so.A.col(j)));
    EXPECT_NEAR(so.C, f * (a * a).trace().real(), 1e-10);
  }
}

TEST_P(EverySpace, DecompositionReconstructs) {
  const auto so = build_so_system(GetParam());
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  Vec z(so.dim_p);
  for (int i = 0; i < so.dim_p; ++i) z(i) = nd(rng);
  const Vec x = so.p_embed(z);
  const auto d = decompose_p_vector(so, x);
  Vec sum = d.x_a;
  for (const auto& p : d.p_parts) sum += p;
  EXPECT_LT((sum - x).cwiseAbs().maxCoeff(), 1e-10);
  const Vec t = Vec::LinSpaced(so.rank, 0.3, 0.1);
  for (std::size_t a = 0; a < d.p_parts.size(); ++a) {
    const double alpha = so.roots.positive[a].e.cast<double>().dot(t);
    EXPECT_LT((so.model.bracket(so.h_of(t), d.p_parts[a]) - alpha * d.k_parts[a]).cwiseAbs().maxCoeff(), 1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(Spaces, EverySpace, ::testing::ValuesIn(supported_spaces()));

TEST(LieCore, UnsupportedNameIsConfigurationError) {
  EXPECT_THROW(build_algebra("so5"), configuration_error);
  EXPECT_THROW(build_algebra("su(3,2)"), configuration_error);
}

TEST(LieCore, ParenthesizedNameAccepted) { EXPECT_EQ(build_algebra("su(2,1)").dim, 8); }

TEST(LieCore, Sl2TripleAndComplexStructure) {
  const auto so = build_so_system("sl2r");
  const auto& m = so.model;
  const CMat a = m.matrix(Vec(so.A.col(0)));
  EXPECT_LT((a - mat2(1, 0, 0, -1)).cwiseAbs().maxCoeff(), 1e-12);
  const CMat z0 = m.matrix(so.Z0);
  EXPECT_LT((z0 - 0.5 * mat2(0, 1, -1, 0)).cwiseAbs().maxCoeff(), 1e-12);
  const CMat p = mat2(0, 1, 1, 0);
  EXPECT_LT((z0 * p - p * z0 - a).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(so.S.norm(), 0.0, 1e-14);
  EXPECT_NEAR(so.C, 8.0, 1e-12);
}

TEST(LieCore, DecomposeExamples) {
  const auto so = build_so_system("sl2r");
  const auto& m = so.model;
  const Vec p = m.coords(mat2(0, 1, 1, 0)).real();
  const auto d = decompose_p_vector(so, p);
  EXPECT_NEAR(d.x_a.norm(), 0.0, 1e-12);
  EXPECT_LT((m.matrix(d.p_parts[0]) - mat2(0, 1, 1, 0)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((m.matrix(d.k_parts[0]) - mat2(0, 1, -1, 0)).cwiseAbs().maxCoeff(), 1e-12);

  const auto a = decompose_p_vector(so, Vec(so.A.col(0)));
  EXPECT_LT((a.x_a - so.A.col(0)).norm(), 1e-12);
  EXPECT_NEAR(a.p_parts[0].norm(), 0.0, 1e-12);

  const auto zero = decompose_p_vector(so, Vec::Zero(m.dim));
  EXPECT_NEAR(zero.x_a.norm() + zero.p_parts[0].norm() + zero.k_parts[0].norm(), 0.0, 0.0);

  EXPECT_THROW(decompose_p_vector(so, so.Z0), domain_error);
}
