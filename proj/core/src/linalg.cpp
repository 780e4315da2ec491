#include "sklyanin/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace skl {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_lattice: return "invalid-lattice";
    case Errc::unsupported_torsion: return "unsupported-torsion";
    case Errc::degenerate_input: return "degenerate-input";
    case Errc::calibration_failure: return "calibration-failure";
    case Errc::special_line: return "special-line";
    case Errc::inconsistency: return "inconsistency";
    case Errc::precondition: return "precondition";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::family_mismatch: return "family-mismatch";
    case Errc::wrong_central_element: return "wrong-central-element";
  }
  return "unknown";
}

}  // namespace skl

namespace skl::la {
namespace {

using Svd = Eigen::BDCSVD<Mat>;

int rank_from(const Eigen::VectorXd& sv, double rel_tol, double scale = 0.0) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = rel_tol * std::max(sv(0), scale);
  return static_cast<int>(std::count_if(sv.begin(), sv.end(), [cut](double x) { return x > cut; }));
}

}  // namespace

Eigen::VectorXd singular_values(const Mat& a) {
  if (a.size() == 0) return {};
  return Svd(a).singularValues();
}

int rank(const Mat& a, double rel_tol) { return rank_from(singular_values(a), rel_tol); }

Mat null_space(const Mat& a, double rel_tol, double scale) {
  const auto n = a.cols();
  if (a.rows() == 0 || n == 0) return Mat::Identity(n, n);
  Svd svd(a, Eigen::ComputeFullV);
  const int r = rank_from(svd.singularValues(), rel_tol, scale);
  return svd.matrixV().rightCols(n - r);
}

Mat range(const Mat& a, double rel_tol) {
  if (a.size() == 0) return Mat(a.rows(), 0);
  Svd svd(a, Eigen::ComputeThinU);
  const int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

Mat complement_rows(const Mat& basis, Eigen::Index n) {
  if (basis.cols() == 0) return Mat::Identity(n, n);
  Svd svd(basis, Eigen::ComputeFullU);
  const int r = rank_from(svd.singularValues(), kDefaultRankTol);
  return svd.matrixU().rightCols(n - r).adjoint();
}

double proj_dist(const Vec& a, const Vec& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  // sine of the angle, via the rejection to stay accurate near 0
  const Vec ua = a / na, ub = b / nb;
  return std::min(1.0, (ua - ub * ub.dot(ua)).norm());
}

double subspace_dist(const Mat& a, const Mat& b) {
  const Mat qa = range(a), qb = range(b);
  const Mat diff = qa * qa.adjoint() - qb * qb.adjoint();
  if (diff.size() == 0) return 0.0;
  return singular_values(diff)(0);
}

Vec canonical_projective(const Vec& v, double eps) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const double m = std::abs(v(imax));
  if (m == 0.0) return v;
  Vec w = v / m;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (std::abs(w(i)) > eps) {
      w *= std::conj(w(i)) / std::abs(w(i));
      break;
    }
  }
  return w;
}

double rel_residual(const Mat& a, const Vec& x) {
  const double den = a.norm() * x.norm();
  return den == 0.0 ? 0.0 : (a * x).norm() / den;
}

}  // namespace skl::la
