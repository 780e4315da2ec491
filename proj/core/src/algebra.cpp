#include "sklyanin/algebra.hpp"

#include "sklyanin/linalg.hpp"

namespace skl {

int RelationSet::span_dim(double rel_tol) const {
  Mat M(16, 6);
  for (int r = 0; r < 6; ++r) M.col(r) = Eigen::Map<const Eigen::Matrix<cplx, 16, 1>>(rels[r].data());
  return la::rank(M, rel_tol);
}

RelationSet build_relations(const StructureConstants& J) {
  RelationSet R;
  const std::array<std::array<int, 3>, 3> cyc{{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}};
  const std::array<cplx, 3> Jbc{J.J23, J.J31, J.J12};
  for (int t = 0; t < 3; ++t) {
    const auto [a, b, c] = cyc[t];
    Mat4 r1 = Mat4::Zero();
    r1(0, a) += 1.0;
    r1(a, 0) -= 1.0;
    r1(b, c) -= kI * Jbc[t];
    r1(c, b) -= kI * Jbc[t];
    Mat4 r2 = Mat4::Zero();
    r2(a, b) += 1.0;
    r2(b, a) -= 1.0;
    r2(0, c) -= kI;
    r2(c, 0) -= kI;
    R.rels[t] = r1;
    R.rels[3 + t] = r2;
  }
  return R;
}

GradedAlgebra::GradedAlgebra(const RelationSet& rels, int dmax, double tol_rank) : rels_(rels) {
  AlgebraComponent a0;
  a0.degree = 0;
  a0.dim = 1;
  a0.quot = Mat::Identity(1, 1);
  comps_.push_back(a0);
  AlgebraComponent a1;
  a1.degree = 1;
  a1.dim = 4;
  a1.quot = Mat::Identity(4, 4);
  comps_.push_back(a1);
  for (int i = 0; i < 4; ++i) comps_[0].left[i] = Mat::Identity(4, 4).col(i);

  for (int d = 1; d < dmax; ++d) {
    // relation image in F_1 ⊗ A_d: r ⊗ w -> sum_ij r_ij e_i ⊗ (x_j w)
    const auto& prev = comps_[d - 1];
    const auto& cur = comps_[d];
    const int dimF = 4 * cur.dim;
    Mat K(dimF, 6 * prev.dim);
    K.setZero();
    for (int r = 0; r < 6; ++r) {
      for (int w = 0; w < prev.dim; ++w) {
        Vec col = Vec::Zero(dimF);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            const cplx c = rels_.rels[r](i, j);
            if (c == 0.0) continue;
            col.segment(i * cur.dim, cur.dim) += c * prev.left[j].col(w);
          }
        K.col(r * prev.dim + w) = col;
      }
    }
    Eigen::BDCSVD<Mat> svd(K, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    const double cut = tol_rank * (sv.size() ? sv(0) : 0.0);
    int rk = 0;
    while (rk < sv.size() && sv(rk) > cut) ++rk;
    AlgebraComponent next;
    next.degree = d + 1;
    next.dim = dimF - rk;
    next.quot = svd.matrixU().rightCols(next.dim).adjoint();
    next.smallest_kept = rk > 0 ? sv(rk - 1) : 0.0;
    next.largest_discarded = rk < sv.size() ? sv(rk) : 0.0;
    for (int i = 0; i < 4; ++i) comps_[d].left[i] = next.quot.middleCols(i * cur.dim, cur.dim);
    comps_.push_back(std::move(next));
  }
}

Vec GradedAlgebra::left_mult(int i, const Vec& v, int d) const { return comps_.at(d).left[i] * v; }

Vec GradedAlgebra::multiply(const Vec& a, int da, const Vec& b, int db) const {
  if (da == 0) return a(0) * b;
  // lift a to F_1 ⊗ A_{da-1} and recurse on each tensor factor
  const auto& ca = comps_.at(da);
  const Vec lifted = ca.quot.adjoint() * a;
  const int sub = comps_.at(da - 1).dim;
  Vec out = Vec::Zero(comps_.at(da + db).dim);
  for (int i = 0; i < 4; ++i) {
    const Vec part = multiply(lifted.segment(i * sub, sub), da - 1, b, db);
    out += left_mult(i, part, da + db - 1);
  }
  return out;
}

Vec GradedAlgebra::word(const std::vector<int>& letters) const {
  Vec v = Vec::Ones(1);
  int d = 0;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) v = left_mult(*it, v, d++);
  return v;
}

Mat4 GradedAlgebra::lift2(const Vec& a2) const {
  const Vec lifted = comps_.at(2).quot.adjoint() * a2;  // F_1 ⊗ A_1 = F_2
  Mat4 w;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w(i, j) = lifted(i * 4 + j);
  return w;
}

double commutator_residual(const GradedAlgebra& A, const Vec& omega) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec xi = Vec::Unit(4, i);
    const Vec c = A.multiply(omega, 2, xi, 1) - A.multiply(xi, 1, omega, 2);
    worst = std::max(worst, c.norm() / omega.norm());
  }
  return worst;
}

CentralElement make_central(const GradedAlgebra& A, const Vec& coeffs) {
  CentralElement c;
  c.coeffs = coeffs;
  c.word = A.lift2(coeffs);
  c.commutator_residual = commutator_residual(A, coeffs);
  return c;
}

std::vector<CentralElement> center_degree2(const GradedAlgebra& A, double tol_rank) {
  if (A.dmax() < 3) throw Error(Errc::precondition, "center_degree2 needs A_3");
  const int d2 = A.component(2).dim, d3 = A.component(3).dim;
  Mat C(4 * d3, d2);
  for (int b = 0; b < d2; ++b) {
    const Vec e = Vec::Unit(d2, b);
    for (int i = 0; i < 4; ++i) {
      const Vec xi = Vec::Unit(4, i);
      C.block(i * d3, b, d3, 1) = A.multiply(e, 2, xi, 1) - A.multiply(xi, 1, e, 2);
    }
  }
  const Mat ker = la::null_space(C, tol_rank);
  std::vector<CentralElement> out;
  for (Eigen::Index k = 0; k < ker.cols(); ++k) out.push_back(make_central(A, ker.col(k)));
  return out;
}

}  // namespace skl
