#pragma once

// Strongly orthogonal sl(2)-triples, the central element Z0 of k, the complex
// structure I0 = ad(Z0)|p and an adapted block frame of p.
//
// Block coordinates: an element of p^C is a complex vector z of length dim p
// in the frame [A_1..A_r, then bases of p[alpha] for alpha in Sigma+].  Every
// frame vector v satisfies B(v, v) = C, and the bases of p[e_k - e_l] are the
// I0-images of those of p[e_k + e_l].

#include "crownkit/errors.hpp"
#include "crownkit/lie_model.hpp"
#include "crownkit/linalg.hpp"
#include "crownkit/root_datum.hpp"

#include <cmath>
#include <vector>

namespace crownkit {

struct PBlock {
  int offset = 0;
  int size = 0;
  /// e-coefficients of the root; zero for the a-blocks.
  Eigen::VectorXi e;
  /// Index of the block holding I0 of this block.
  int partner = -1;
  /// Index into RootDatum::positive, or -1 for an a-block.
  int root = -1;
  bool is_a() const { return root < 0; }
};

struct SOSystem {
  LieAlgebraModel model;
  RootDatum roots;
  int rank = 0;
  int dim_p = 0;
  /// Triples, columns j = 1..r (coords in g).
  Mat E, thetaE, A, K, P;
  Vec Z0;
  Vec S;
  double C = 0;
  /// ad(Z0) on g.
  Mat ad_Z0;
  /// Block frame of p (d x dim_p) and the paired frame of k_perp (d x (dim_p - r)).
  Mat p_frame;
  Mat k_frame;
  std::vector<PBlock> blocks;
  /// Per column of p_frame: e-coefficients of the root of its block.
  Eigen::MatrixXi column_roots;  // dim_p x r
  /// I0 in block coordinates.
  Mat I0;
  /// Projection g^C -> p^C along k^C, landing in block coordinates.
  Mat pi_sharp;
  /// B on p in block coordinates (diagonal, = C Id).
  Mat gram_p;
  /// Column of the partner block for each column of p_frame under I0 (for
  /// scalar bookkeeping only).
  std::vector<int> column_partner;
  /// alpha(H_generic) per column of p_frame.
  Vec generic_values;

  int dim_k_perp() const { return dim_p - rank; }

  /// alpha(H) for each column of the p frame, with H = sum t_j A_j.
  Vec column_values(const Vec& t) const { return column_roots.cast<double>() * t; }

  /// Element H = sum t_j A_j of a (coords in g).
  Vec h_of(const Vec& t) const { return A * t; }

  Vec p_embed(const Vec& z) const { return p_frame * z; }
  CVec p_embed(const CVec& z) const { return p_frame.cast<cplx>() * z; }
  Vec k_embed(const Vec& c) const { return k_frame * c; }

  Vec project(const Vec& x) const { return pi_sharp * x; }
  CVec project(const CVec& x) const { return pi_sharp.cast<cplx>() * x; }

  /// Complex-bilinear B on p^C in block coordinates.
  cplx B(const CVec& z, const CVec& w) const { return (z.transpose() * gram_p.cast<cplx>() * w)(0, 0); }
  double B(const Vec& z, const Vec& w) const { return z.dot(gram_p * w); }
};

namespace detail {

inline Vec center_of_k(const LieAlgebraModel& m) {
  const int dk = m.dim_k;
  Mat stacked(m.dim * dk, dk);
  for (int i = 0; i < dk; ++i) stacked.middleRows(static_cast<Eigen::Index>(i) * m.dim, m.dim) = m.structure[static_cast<std::size_t>(i)].leftCols(dk);
  const Mat ns = null_space(stacked, 1e-10);
  if (ns.cols() != 1) throw not_hermitian_error(m.name + ": center of k is not one-dimensional");
  Vec z = Vec::Zero(m.dim);
  z.head(dk) = ns.col(0);
  return z;
}

} // namespace detail

/// Normalized triples, Z0, S, C and the block frame.
inline SOSystem build_so_system(const LieAlgebraModel& m, const RootDatum& rd) {
  SOSystem so;
  so.model = m;
  so.roots = rd;
  const int r = rd.rank;
  const int d = m.dim;
  so.rank = r;
  so.dim_p = m.dim_p();
  so.E = Mat(d, r);
  so.thetaE = Mat(d, r);
  so.A = Mat(d, r);
  const Mat gt = m.theta_inner();

  for (int j = 0; j < r; ++j) {
    const RestrictedRoot& lj = rd.lambdas[static_cast<std::size_t>(j)];
    if (lj.multiplicity != 1) throw structure_error("root space of a long root is not one-dimensional");
    const Vec e = lj.space.col(0);
    const Vec te = m.theta * e;
    const Vec a = m.bracket(te, e);
    const Vec ae = m.bracket(a, e);
    const double mu = e.dot(gt * ae) / e.dot(gt * e);
    if (!(mu > 0)) throw structure_error("non-positive normalization of a long root vector");
    so.E.col(j) = std::sqrt(2.0 / mu) * e;
    // Sign: first non-negligible matrix entry (row-major) has positive real
    // part, or positive imaginary part if it is imaginary. For sl2r this is
    // E = [[0,1],[0,0]], so that Z0 = K/2.
    const CMat em = m.matrix(Vec(so.E.col(j)));
    for (Eigen::Index row = 0; row < em.rows(); ++row) {
      bool done = false;
      for (Eigen::Index col = 0; col < em.cols() && !done; ++col) {
        const cplx v = em(row, col);
        if (std::abs(v) < 1e-9) continue;
        const double key = std::abs(v.real()) > 1e-9 ? v.real() : v.imag();
        if (key < 0) so.E.col(j) *= -1.0;
        done = true;
      }
      if (done) break;
    }
  }

  // Z0 spans the center of k; (ad Z0)^2 = -Id on p and [Z0, P^1] = +A_1.
  Vec z = detail::center_of_k(m);
  {
    const Mat adz = m.ad(z);
    const Mat sq = (adz * adz).bottomRightCorner(so.dim_p, so.dim_p);
    const double s = -sq.trace() / so.dim_p;
    if (!(s > 0)) throw not_hermitian_error(m.name + ": ad of the center is nilpotent on p");
    z /= std::sqrt(s);
  }
  auto triple = [&](int j) {
    so.thetaE.col(j) = m.theta * so.E.col(j);
    so.A.col(j) = m.bracket(Vec(so.thetaE.col(j)), Vec(so.E.col(j)));
  };
  for (int j = 0; j < r; ++j) triple(j);
  so.K = so.E + so.thetaE;
  so.P = so.E - so.thetaE;
  if (m.killing_form(m.bracket(z, Vec(so.P.col(0))), Vec(so.A.col(0))) < 0) z = -z;
  for (int j = 1; j < r; ++j)
    if (m.killing_form(m.bracket(z, Vec(so.P.col(j))), Vec(so.A.col(j))) < 0) so.E.col(j) *= -1.0;
  for (int j = 0; j < r; ++j) triple(j);
  so.K = so.E + so.thetaE;
  so.P = so.E - so.thetaE;
  so.Z0 = z;
  so.ad_Z0 = m.ad(z);
  so.S = z - 0.5 * so.K.rowwise().sum();
  so.C = m.killing_form(Vec(so.A.col(0)), Vec(so.A.col(0)));

  // Block frame of p.
  const double sc = std::sqrt(so.C);
  std::vector<Mat> bases(rd.positive.size());
  auto find_root = [&](const Eigen::VectorXi& e) -> int {
    for (std::size_t i = 0; i < rd.positive.size(); ++i)
      if (rd.positive[i].e == e) return static_cast<int>(i);
    return -1;
  };
  for (std::size_t i = 0; i < rd.positive.size(); ++i) {
    const auto& root = rd.positive[i];
    if (i < static_cast<std::size_t>(r)) {
      bases[i] = so.P.col(static_cast<Eigen::Index>(i));
      continue;
    }
    const Eigen::VectorXi e = root.e;
    const bool minus = (e.array() < 0).any();
    if (!minus) bases[i] = sc * root.p_block;
  }
  for (std::size_t i = 0; i < rd.positive.size(); ++i) {
    const auto& root = rd.positive[i];
    if (!(root.e.array() < 0).any()) continue;
    const int plus = find_root(root.e.cwiseAbs());
    if (plus < 0) throw structure_error("missing e_k + e_l partner");
    bases[i] = so.ad_Z0 * bases[static_cast<std::size_t>(plus)];
  }

  so.p_frame = Mat(d, so.dim_p);
  so.column_roots = Eigen::MatrixXi::Zero(so.dim_p, r);
  so.p_frame.leftCols(r) = so.A;
  for (int j = 0; j < r; ++j) {
    PBlock b;
    b.offset = j;
    b.size = 1;
    b.e = Eigen::VectorXi::Zero(r);
    so.blocks.push_back(b);
  }
  int off = r;
  for (std::size_t i = 0; i < rd.positive.size(); ++i) {
    PBlock b;
    b.offset = off;
    b.size = static_cast<int>(bases[i].cols());
    b.e = rd.positive[i].e;
    b.root = static_cast<int>(i);
    so.p_frame.middleCols(off, b.size) = bases[i];
    for (int c = 0; c < b.size; ++c) so.column_roots.row(off + c) = b.e.transpose();
    off += b.size;
    so.blocks.push_back(b);
  }
  if (off != so.dim_p) throw structure_error("block frame does not span p");

  // Partners under I0.
  const int nb = static_cast<int>(so.blocks.size());
  for (int j = 0; j < r; ++j) {
    so.blocks[static_cast<std::size_t>(j)].partner = r + j;
    so.blocks[static_cast<std::size_t>(r + j)].partner = j;
  }
  for (int bi = 2 * r; bi < nb; ++bi) {
    auto& b = so.blocks[static_cast<std::size_t>(bi)];
    const Eigen::VectorXi e = b.e;
    Eigen::VectorXi target = e;
    if (e.cwiseAbs().sum() == 2) {
      // e_k - e_l <-> e_k + e_l
      target = e.cwiseAbs();
      if (!(e.array() < 0).any())
        for (Eigen::Index j = e.size() - 1; j >= 0; --j)
          if (e(j) != 0) {
            target(j) = -target(j);
            break;
          }
    }
    for (int bj = 0; bj < nb; ++bj)
      if (so.blocks[static_cast<std::size_t>(bj)].root >= 0 && so.blocks[static_cast<std::size_t>(bj)].e == target) b.partner = bj;
    if (b.partner < 0) throw structure_error("no I0 partner block");
  }

  // pi_sharp: x -> block coordinates of the p-component of x.
  const Mat proj_p = 0.5 * (Mat::Identity(d, d) - m.theta);
  so.gram_p = so.p_frame.transpose() * m.killing * so.p_frame;
  so.pi_sharp = so.gram_p.inverse() * so.p_frame.transpose() * m.killing * proj_p;
  so.I0 = so.pi_sharp * so.ad_Z0 * so.p_frame;

  // k_perp frame paired with the root columns: K = [H, P] / alpha(H).
  const Vec hg = rd.h_generic;
  const Vec tg = so.pi_sharp.topRows(r) * hg;
  so.generic_values = so.column_values(tg);
  so.k_frame = Mat(d, so.dim_k_perp());
  for (int c = r; c < so.dim_p; ++c)
    so.k_frame.col(c - r) = m.bracket(hg, Vec(so.p_frame.col(c))) / so.generic_values(c);

  so.column_partner.assign(static_cast<std::size_t>(so.dim_p), -1);
  for (const auto& b : so.blocks)
    for (int c = 0; c < b.size; ++c) {
      const Vec img = so.I0.col(b.offset + c);
      const auto& pb = so.blocks[static_cast<std::size_t>(b.partner)];
      Eigen::Index best = 0;
      img.segment(pb.offset, pb.size).cwiseAbs().maxCoeff(&best);
      so.column_partner[static_cast<std::size_t>(b.offset + c)] = pb.offset + static_cast<int>(best);
    }
  return so;
}

inline SOSystem build_so_system(const std::string& name) {
  const LieAlgebraModel m = build_algebra(name);
  return build_so_system(m, restricted_root_decomposition(m));
}

/// Residuals of the triple, Z0 and I0 identities.
struct SOCheck {
  double triple_bracket = 0;      // [A_j, E^j] - 2 E^j
  double strong_orthogonality = 0;  // [E^k, E^l], [E^k, theta E^l], lambda_l(A_k) - 2 delta
  double i0_on_triples = 0;       // I0 P^j - A_j, I0 A_j + P^j
  double i0_blocks = 0;           // I0 p[alpha] inside p[beta]
  double z0_decomposition = 0;    // S in m: theta S - S, [S, a]
  double i0_square = 0;           // I0^2 + Id on p
  double z0_central = 0;          // [Z0, k]
  double c_spread = 0;            // |B(A_j, A_j) - C|
  double frame_gram = 0;          // block frame B-orthogonal, B(v, v) = C
};

inline SOCheck check_so_system(const SOSystem& so) {
  const auto& m = so.model;
  SOCheck c;
  const int r = so.rank;
  auto upd = [](double& slot, double v) { slot = std::max(slot, v); };
  for (int j = 0; j < r; ++j) {
    const Vec Ej = so.E.col(j), Aj = so.A.col(j), Pj = so.P.col(j);
    upd(c.triple_bracket, (m.bracket(Aj, Ej) - 2.0 * Ej).cwiseAbs().maxCoeff());
    for (int k = 0; k < r; ++k) {
      const double lam = so.roots.value(so.roots.lambdas[static_cast<std::size_t>(j)], Vec(so.A.col(k)));
      upd(c.strong_orthogonality, std::abs(lam - (j == k ? 2.0 : 0.0)));
      if (k == j) continue;
      upd(c.strong_orthogonality, m.bracket(Ej, Vec(so.E.col(k))).cwiseAbs().maxCoeff());
      upd(c.strong_orthogonality, m.bracket(Ej, Vec(so.thetaE.col(k))).cwiseAbs().maxCoeff());
    }
    upd(c.i0_on_triples, (m.bracket(so.Z0, Pj) - Aj).cwiseAbs().maxCoeff());
    upd(c.i0_on_triples, (m.bracket(so.Z0, Aj) + Pj).cwiseAbs().maxCoeff());
    upd(c.c_spread, std::abs(m.killing_form(Aj, Aj) - so.C));
  }
  for (const auto& b : so.blocks) {
    const auto& pb = so.blocks[static_cast<std::size_t>(b.partner)];
    for (int col = b.offset; col < b.offset + b.size; ++col) {
      Vec img = so.I0.col(col);
      // Residual of the image outside the partner block, plus the part of the
      // true image outside p.
      const Vec full = so.ad_Z0 * so.p_frame.col(col);
      upd(c.i0_blocks, (full - so.p_frame * img).cwiseAbs().maxCoeff());
      img.segment(pb.offset, pb.size).setZero();
      upd(c.i0_blocks, img.cwiseAbs().maxCoeff());
    }
  }
  upd(c.z0_decomposition, (m.theta * so.S - so.S).cwiseAbs().maxCoeff());
  for (int j = 0; j < r; ++j) upd(c.z0_decomposition, m.bracket(so.S, Vec(so.A.col(j))).cwiseAbs().maxCoeff());
  c.i0_square = (so.I0 * so.I0 + Mat::Identity(so.dim_p, so.dim_p)).cwiseAbs().maxCoeff();
  for (int i = 0; i < m.dim_k; ++i) upd(c.z0_central, m.bracket(so.Z0, Vec(Vec::Unit(m.dim, i))).cwiseAbs().maxCoeff());
  c.frame_gram = (so.gram_p - so.C * Mat::Identity(so.dim_p, so.dim_p)).cwiseAbs().maxCoeff();
  return c;
}

/// Decomposition of X in p as X_a + sum_alpha P^alpha with partners K^alpha.
struct PDecomposition {
  Vec x_a;
  std::vector<Vec> p_parts;  // indexed like RootDatum::positive
  std::vector<Vec> k_parts;
};

inline PDecomposition decompose_p_vector(const SOSystem& so, const Vec& x) {
  const auto& m = so.model;
  if ((m.theta * x + x).norm() > 1e-10 * std::max(1.0, x.norm())) throw domain_error("vector is not in p");
  const Vec z = so.project(x);
  PDecomposition out;
  out.x_a = so.A * z.head(so.rank);
  for (std::size_t i = 0; i < so.roots.positive.size(); ++i) {
    const auto& b = so.blocks[static_cast<std::size_t>(so.rank) + i];
    out.p_parts.push_back(so.p_frame.middleCols(b.offset, b.size) * z.segment(b.offset, b.size));
    out.k_parts.push_back(so.k_frame.middleCols(b.offset - so.rank, b.size) * z.segment(b.offset, b.size));
  }
  return out;
}

} // namespace crownkit
