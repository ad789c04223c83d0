#pragma once

// Dense linear-algebra helpers shared by every module: type aliases, the
// matrix exponential, the dexp series and a few subspace utilities.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace crownkit {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr cplx imag_unit{0.0, 1.0};
inline constexpr double pi = 3.14159265358979323846;

/// Matrix exponential (scaling and squaring with a degree-13 Pade approximant).
inline CMat expm(const CMat& m) { return m.exp(); }
inline Mat expm(const Mat& m) { return m.exp(); }

/// Left-trivialized differential of exp:
///   sum_{n>=0} (-1)^n / (n+1)! M^n  =  (1 - e^{-M}) / M.
/// The series stops once the next term is below 1e-16 relative to the sum.
template <class Matrix>
Matrix dexp_series(const Matrix& m) {
  const Eigen::Index n = m.rows();
  Matrix sum = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k < 200; ++k) {
    term = (-1.0 / static_cast<double>(k + 1)) * (term * m);
    sum += term;
    if (term.norm() <= 1e-16 * sum.norm()) break;
  }
  return sum;
}

/// sin(x)/x with a Taylor branch near zero.
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

/// Orthonormal basis (columns) of the null space of `m`, singular values below
/// `tol * max(1, sigma_max)` counted as zero.
template <class Matrix>
Matrix null_space(const Matrix& m, double tol = 1e-10) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * scale) ++rank;
  const Eigen::Index cols = m.cols();
  return svd.matrixV().rightCols(cols - rank);
}

/// Modified Gram-Schmidt of the columns of `vectors` with respect to the SPD
/// Gram matrix `gram`; dependent columns (residual norm < tol) are dropped.
inline Mat orthonormalize(const Mat& vectors, const Mat& gram, double tol = 1e-10) {
  std::vector<Vec> kept;
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Vec v = vectors.col(c);
    const double n0 = std::sqrt(std::max(0.0, v.dot(gram * v)));
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& q : kept) v -= q.dot(gram * v) * q;
    const double n = std::sqrt(std::max(0.0, v.dot(gram * v)));
    if (n > tol * std::max(1.0, n0)) kept.push_back(v / n);
  }
  Mat out(vectors.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = kept[i];
  return out;
}

/// Stack real and imaginary parts: z -> [Re z; Im z].
inline Vec to_real(const CVec& z) {
  Vec out(2 * z.size());
  out << z.real(), z.imag();
  return out;
}

inline CVec from_real(const Vec& x) {
  const Eigen::Index n = x.size() / 2;
  return x.head(n).cast<cplx>() + imag_unit * x.tail(n).cast<cplx>();
}

/// Real 2n x 2n matrix of the C-linear map z -> M z.
inline Mat realify_linear(const CMat& m) {
  const Eigen::Index n = m.rows();
  Mat out(2 * n, 2 * m.cols());
  out << m.real(), -m.imag(), m.imag(), m.real();
  return out;
}

/// Real 2n x 2n matrix of the anti-linear map z -> M conj(z).
inline Mat realify_antilinear(const CMat& m) {
  const Eigen::Index n = m.rows();
  Mat out(2 * n, 2 * m.cols());
  out << m.real(), m.imag(), m.imag(), -m.real();
  return out;
}

/// 2-norm condition number.
inline double condition_number(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0.0;
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

} // namespace crownkit
