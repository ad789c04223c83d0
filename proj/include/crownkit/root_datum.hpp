#pragma once

// Restricted root decomposition of g with respect to a maximal abelian
// subspace a of p, the choice of positive system and the blocks k[alpha],
// p[alpha].

#include "crownkit/errors.hpp"
#include "crownkit/lie_model.hpp"
#include "crownkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace crownkit {

enum class SystemType { C, BC };

inline std::string to_string(SystemType t) { return t == SystemType::C ? "C" : "BC"; }

struct RestrictedRoot {
  /// alpha(H_k) on the seed basis of a.
  Vec on_seed;
  /// Coefficients in the e_j basis: alpha = sum_j e[j] e_j.
  Eigen::VectorXi e;
  int multiplicity = 0;
  /// B_theta-orthonormal basis of the root space g^alpha (columns, coords).
  Mat space;
  /// For positive roots: B_theta-orthonormal bases of p[alpha] and k[alpha],
  /// paired so that [H, p_block.col(i)] = alpha(H) k_block.col(i).
  Mat p_block;
  Mat k_block;

  std::string label() const {
    std::string out;
    for (Eigen::Index j = 0; j < e.size(); ++j) {
      if (e(j) == 0) continue;
      const int c = e(j);
      if (c < 0) out += "-";
      else if (!out.empty()) out += "+";
      if (std::abs(c) != 1) out += std::to_string(std::abs(c));
      out += "e" + std::to_string(j + 1);
    }
    return out.empty() ? "0" : out;
  }
};

struct RootDatum {
  int rank = 0;
  SystemType type = SystemType::C;
  /// Seed basis of a (columns, coords), B-orthogonal.
  Mat a_seed;
  /// Generic element of a used to order roots.
  Vec h_generic;
  /// Basis of m, the centralizer of a in k.
  Mat m_basis;
  /// Long roots lambda_j = 2 e_j, in order.
  std::vector<RestrictedRoot> lambdas;
  /// Positive roots ordered as 2e_j, e_k - e_l, e_k + e_l, e_j.
  std::vector<RestrictedRoot> positive;
  /// Every root in Sigma.
  std::vector<RestrictedRoot> all;
  /// Coordinates of an element of a in the seed basis.
  Mat seed_solver;

  Vec seed_coords(const Vec& h) const { return seed_solver * h; }
  double value(const RestrictedRoot& root, const Vec& h) const { return root.on_seed.dot(seed_coords(h)); }
};

namespace detail {

/// Symmetric square root of an SPD matrix and its inverse.
inline std::pair<Mat, Mat> spd_sqrt(const Mat& g) {
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  const Vec s = es.eigenvalues().cwiseSqrt();
  const Mat v = es.eigenvectors();
  return {v * s.asDiagonal() * v.transpose(), v * s.cwiseInverse().asDiagonal() * v.transpose()};
}

inline bool is_root_vector(const LieAlgebraModel& m, const Mat& seeds, const Vec& v, const Vec& values, double tol) {
  for (Eigen::Index k = 0; k < seeds.cols(); ++k)
    if ((m.ad(Vec(seeds.col(k))) * v - values(k) * v).norm() > tol * std::max(1.0, v.norm())) return false;
  return true;
}

inline std::vector<Eigen::VectorXi> expected_positive(int r, SystemType type) {
  std::vector<Eigen::VectorXi> out;
  auto unit = [r](int j) {
    Eigen::VectorXi v = Eigen::VectorXi::Zero(r);
    v(j) = 1;
    return v;
  };
  for (int j = 0; j < r; ++j) out.push_back(2 * unit(j));
  for (int k = 0; k < r; ++k)
    for (int l = k + 1; l < r; ++l) {
      out.push_back(unit(k) - unit(l));
      out.push_back(unit(k) + unit(l));
    }
  if (type == SystemType::BC)
    for (int j = 0; j < r; ++j) out.push_back(unit(j));
  return out;
}

} // namespace detail

/// Simultaneous eigenspace decomposition of ad(a) and the positive system.
inline RootDatum restricted_root_decomposition(const LieAlgebraModel& m) {
  RootDatum rd;
  const int d = m.dim;
  const int r = static_cast<int>(m.cartan_seed.size());
  if (r == 0) throw decomposition_error("empty Cartan seed for " + m.name);
  rd.rank = r;
  rd.a_seed = Mat(d, r);
  for (int k = 0; k < r; ++k) rd.a_seed.col(k) = m.cartan_seed[static_cast<std::size_t>(k)];
  rd.seed_solver = rd.a_seed.completeOrthogonalDecomposition().pseudoInverse();

  for (int k = 0; k < r; ++k)
    for (int l = 0; l < r; ++l) {
      if (m.bracket(Vec(rd.a_seed.col(k)), Vec(rd.a_seed.col(l))).norm() > 1e-10)
        throw decomposition_error("Cartan seed is not abelian");
      if (k != l && std::abs(m.killing_form(Vec(rd.a_seed.col(k)), Vec(rd.a_seed.col(l)))) > 1e-10)
        throw decomposition_error("Cartan seed is not B-orthogonal");
    }

  static const double primes[] = {2.0, 3.0, 5.0, 7.0, 11.0, 13.0};
  rd.h_generic = Vec::Zero(d);
  for (int k = 0; k < r; ++k) rd.h_generic += (primes[k] / 10.0) * rd.a_seed.col(k);

  const Mat g_theta = m.theta_inner();
  const auto [w, w_inv] = detail::spd_sqrt(g_theta);
  const Mat sym = w * m.ad(rd.h_generic) * w_inv;
  if ((sym - sym.transpose()).norm() > 1e-10 * std::max(1.0, sym.norm()))
    throw decomposition_error("ad(H) is not B_theta-symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (sym + sym.transpose()));
  const Vec ev = es.eigenvalues();
  const Mat evec = w_inv * es.eigenvectors();

  // Cluster sorted eigenvalues.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
  for (Eigen::Index i = 0; i < d;) {
    Eigen::Index j = i + 1;
    while (j < d && std::abs(ev(j) - ev(i)) < 1e-8) ++j;
    clusters.emplace_back(i, j);
    i = j;
  }

  Mat zero_space;
  const Mat ga = rd.a_seed.transpose() * m.killing * rd.a_seed;
  const Mat ga_inv = ga.inverse();
  for (const auto& [b, e] : clusters) {
    const Mat space = evec.middleCols(b, e - b);
    if (std::abs(ev(b)) < 1e-8) {
      zero_space = space;
      continue;
    }
    RestrictedRoot root;
    root.on_seed = Vec(r);
    const Vec v0 = space.col(0);
    for (int k = 0; k < r; ++k)
      root.on_seed(k) = v0.dot(g_theta * (m.ad(Vec(rd.a_seed.col(k))) * v0)) / v0.dot(g_theta * v0);
    for (Eigen::Index c = 0; c < space.cols(); ++c)
      if (!detail::is_root_vector(m, rd.a_seed, space.col(c), root.on_seed, 1e-10))
        throw decomposition_error("eigenspace of ad(H) is not a joint root space");
    root.space = orthonormalize(space, g_theta);
    root.multiplicity = static_cast<int>(root.space.cols());
    rd.all.push_back(root);
  }

  // g^0 = a + m.
  const Mat proj_k = 0.5 * (Mat::Identity(d, d) + m.theta);
  const Mat proj_p = 0.5 * (Mat::Identity(d, d) - m.theta);
  const Mat a_part = orthonormalize(proj_p * zero_space, g_theta, 1e-8);
  if (a_part.cols() != r) throw decomposition_error("Cartan seed is not maximal abelian in p");
  rd.m_basis = orthonormalize(proj_k * zero_space, g_theta, 1e-8);

  int total = r + static_cast<int>(rd.m_basis.cols());
  for (const auto& root : rd.all) total += root.multiplicity;
  if (total != d) throw decomposition_error("root decomposition does not exhaust g");

  // Long positive roots.
  auto length2 = [&](const RestrictedRoot& root) { return root.on_seed.dot(ga_inv * root.on_seed); };
  auto gen_value = [&](const RestrictedRoot& root) { return rd.value(root, rd.h_generic); };
  double longest = 0;
  for (const auto& root : rd.all) longest = std::max(longest, length2(root));
  for (const auto& root : rd.all)
    if (std::abs(length2(root) - longest) < 1e-8 * longest && gen_value(root) > 0) rd.lambdas.push_back(root);
  if (static_cast<int>(rd.lambdas.size()) != r) throw structure_error("number of long positive roots differs from the rank");
  std::sort(rd.lambdas.begin(), rd.lambdas.end(),
            [&](const RestrictedRoot& x, const RestrictedRoot& y) { return gen_value(x) > gen_value(y); });

  Mat lam(r, r);
  for (int j = 0; j < r; ++j) lam.row(j) = rd.lambdas[static_cast<std::size_t>(j)].on_seed.transpose();
  const Mat lam_inv_t = lam.transpose().inverse();
  bool has_short = false;
  for (auto& root : rd.all) {
    const Vec c = 2.0 * lam_inv_t * root.on_seed;
    root.e = Eigen::VectorXi(r);
    for (int j = 0; j < r; ++j) {
      root.e(j) = static_cast<int>(std::lround(c(j)));
      if (std::abs(c(j) - root.e(j)) > 1e-8) throw decomposition_error("root is not an integral combination of e_j");
    }
    if (root.e.cwiseAbs().sum() == 1) has_short = true;
  }
  for (auto& lj : rd.lambdas) lj.e = Eigen::VectorXi::Zero(r);
  for (int j = 0; j < r; ++j) rd.lambdas[static_cast<std::size_t>(j)].e(j) = 2;
  rd.type = has_short ? SystemType::BC : SystemType::C;

  for (const auto& target : detail::expected_positive(r, rd.type)) {
    const RestrictedRoot* found = nullptr;
    for (const auto& root : rd.all)
      if (root.e == target) found = &root;
    if (found == nullptr || gen_value(*found) <= 0)
      throw decomposition_error("positive system does not match the C_r/BC_r list");
    RestrictedRoot pos = *found;
    // P = X - theta X, K = X + theta X with X of B_theta-norm 1/sqrt(2).
    const Mat x = pos.space / std::sqrt(2.0);
    pos.p_block = x - m.theta * x;
    pos.k_block = x + m.theta * x;
    rd.positive.push_back(pos);
  }
  const std::size_t expected_count = 2 * rd.positive.size();
  if (rd.all.size() != expected_count) throw decomposition_error("unexpected number of roots");
  for (int j = 0; j < r; ++j) rd.lambdas[static_cast<std::size_t>(j)] = rd.positive[static_cast<std::size_t>(j)];
  return rd;
}

/// Residuals of the root decomposition invariants.
struct RootCheck {
  double eigen_residual = 0;       // |[H, X] - alpha(H) X|
  double block_orthogonality = 0;  // cross-block B pairings
  int dimension_total = 0;
  bool blocks_balanced = true;     // dim k[alpha] == dim p[alpha]
};

inline RootCheck check_roots(const LieAlgebraModel& m, const RootDatum& rd) {
  RootCheck c;
  c.dimension_total = rd.rank + static_cast<int>(rd.m_basis.cols());
  for (const auto& root : rd.all) {
    c.dimension_total += root.multiplicity;
    for (Eigen::Index k = 0; k < rd.a_seed.cols(); ++k) {
      const Vec h = rd.a_seed.col(k);
      const Mat res = m.ad(h) * root.space - root.on_seed(k) * root.space;
      c.eigen_residual = std::max(c.eigen_residual, res.cwiseAbs().maxCoeff());
    }
  }
  // Blocks of k: m, k[alpha]; blocks of p: a, p[alpha].
  std::vector<Mat> kb{rd.m_basis}, pb{rd.a_seed};
  for (const auto& root : rd.positive) {
    kb.push_back(root.k_block);
    pb.push_back(root.p_block);
    if (root.k_block.cols() != root.p_block.cols()) c.blocks_balanced = false;
  }
  auto cross = [&](const std::vector<Mat>& blocks) {
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        if (blocks[i].cols() == 0 || blocks[j].cols() == 0) continue;
        const Mat g = blocks[i].transpose() * m.killing * blocks[j];
        c.block_orthogonality = std::max(c.block_orthogonality, g.cwiseAbs().maxCoeff());
      }
  };
  cross(kb);
  cross(pb);
  return c;
}

} // namespace crownkit
