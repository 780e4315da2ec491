#include "sklyanin/modules.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sklyanin/linalg.hpp"

namespace skl {

Mat GradedModuleRep::form(const Vec4& u, int d) const {
  Mat out = Mat::Zero(dims.at(d + 1), dims.at(d));
  for (int i = 0; i < 4; ++i)
    if (u(i) != 0.0) out += u(i) * act.at(d)[i];
  return out;
}

Mat GradedModuleRep::quadratic(const Mat4& w, int d) const {
  Mat out = Mat::Zero(dims.at(d + 2), dims.at(d));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (w(i, j) != 0.0) out += w(i, j) * act.at(d + 1)[i] * act.at(d)[j];
  return out;
}

double relation_residual(const GradedModuleRep& M, const RelationSet& R) {
  double worst = 0.0;
  for (int d = 0; d + 2 <= M.top(); ++d) {
    for (const auto& r : R.rels) {
      Mat sum = Mat::Zero(M.dims[d + 2], M.dims[d]);
      double scale = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          if (r(i, j) == 0.0) continue;
          const Mat t = M.act[d + 1][i] * M.act[d][j];
          sum += r(i, j) * t;
          scale += std::abs(r(i, j)) * t.norm();
        }
      if (scale > 0.0) worst = std::max(worst, sum.norm() / scale);
    }
  }
  return worst;
}

namespace {

Vec4 up_coeff(const Curve& curve, cplx ph, cplx qh, double m) {
  const cplx th = curve.tau().approx;
  return curve.g(qh + m * th) / theta(ThetaChar::c11, ph - qh - 2.0 * m * th, curve.lattice());
}

Vec4 right_coeff(const Curve& curve, cplx ph, cplx qh, double m) {
  const cplx th = curve.tau().approx;
  return -curve.g(ph - m * th) / theta(ThetaChar::c11, ph - qh - 2.0 * m * th, curve.lattice());
}

}  // namespace

Vec2 LineScaling::to_balanced(int s, const Vec2& raw) const {
  return la::canonical_projective(Vec2(raw(0) * std::exp(-a * s), raw(1) * std::exp(-b * s)));
}

Vec2 LineScaling::to_raw(int s, const Vec2& balanced) const {
  return la::canonical_projective(Vec2(balanced(0) * std::exp(a * s), balanced(1) * std::exp(b * s)));
}

LineScaling line_scaling(const Curve& curve, const CurvePoint& p, const CurvePoint& q) {
  const int n = curve.n();
  LineScaling sc;
  for (int m = -n; m <= n; ++m) {
    sc.a += std::log(up_coeff(curve, p.approx, q.approx, m).norm());
    sc.b += std::log(right_coeff(curve, p.approx, q.approx, m).norm());
  }
  sc.a /= 2 * n + 1;
  sc.b /= 2 * n + 1;
  return sc;
}

GradedModuleRep line_module(const Curve& curve, const CurvePoint& p, const CurvePoint& q, int D, bool balanced) {
  if (curve.is_special_pair(p, q))
    throw Error(Errc::special_line, "p - q lies in 2Z·tau + Λ; no basis formula for this line module");
  const cplx ph = p.approx, qh = q.approx;
  const LineScaling sc = balanced ? line_scaling(curve, p, q) : LineScaling{};
  const double ua = std::exp(-sc.a), ub = std::exp(-sc.b);
  GradedModuleRep M;
  M.meta = "line(" + p.str() + ", " + q.str() + ")";
  for (int d = 0; d <= D; ++d) M.dims.push_back(d + 1);
  for (int d = 0; d < D; ++d) {
    std::array<Mat, 4> X;
    for (auto& x : X) x = Mat::Zero(d + 2, d + 1);
    for (int i = 0; i <= d; ++i) {
      const double ij = 2 * i - d;
      const Vec4 a = up_coeff(curve, ph, qh, ij) * ua;
      const Vec4 b = right_coeff(curve, ph, qh, ij) * ub;
      for (int k = 0; k < 4; ++k) {
        X[k](i, i) = a(k);
        X[k](i + 1, i) = b(k);
      }
    }
    M.act.push_back(std::move(X));
  }
  return M;
}

namespace {

CurvePoint auxiliary_partner(const Curve& curve, const CurvePoint& p) {
  const CurvePoint off = curve.point(RatPair{Rational(311, 1009), Rational(577, 1009)});
  CurvePoint q = p + off;
  if (curve.is_special_pair(p, q)) q = p + 2 * off;
  return q;
}

}  // namespace

GradedModuleRep point_module(const Curve& curve, const CurvePoint& p, int D) {
  const GradedModuleRep L = line_module(curve, p, auxiliary_partner(curve, p), D);
  Mat gen = Mat::Zero(2, 1);
  gen(0, 0) = 1.0;  // e_01
  auto Q = quotient(L, 1, gen, 1e-8, "point(" + p.str() + ")");
  return std::move(Q.module);
}

GradedModuleRep vertex_module(int i, int D) {
  GradedModuleRep M;
  M.meta = "vertex(e" + std::to_string(i) + ")";
  M.dims.assign(D + 1, 1);
  for (int d = 0; d < D; ++d) {
    std::array<Mat, 4> X;
    for (int k = 0; k < 4; ++k) X[k] = Mat::Constant(1, 1, k == i ? 1.0 : 0.0);
    M.act.push_back(X);
  }
  return M;
}

QuotientResult quotient(const GradedModuleRep& M, int deg, const Mat& gens, double tol_rank, std::string meta) {
  const int D = M.top();
  std::vector<Mat> sub(D + 1);
  for (int d = 0; d <= D; ++d) sub[d] = Mat(M.dims[d], 0);
  sub[deg] = la::range(gens, tol_rank);
  for (int d = deg; d < D; ++d) {
    Mat img(M.dims[d + 1], 4 * sub[d].cols());
    for (int i = 0; i < 4; ++i) img.middleCols(i * sub[d].cols(), sub[d].cols()) = M.act[d][i] * sub[d];
    sub[d + 1] = la::range(img, tol_rank);
  }
  QuotientResult out;
  out.module.meta = std::move(meta);
  for (int d = 0; d <= D; ++d) {
    out.maps.push_back(la::complement_rows(sub[d], M.dims[d]));
    out.sub_dims.push_back(static_cast<int>(sub[d].cols()));
    out.module.dims.push_back(static_cast<int>(out.maps.back().rows()));
  }
  for (int d = 0; d < D; ++d) {
    std::array<Mat, 4> X;
    for (int i = 0; i < 4; ++i) X[i] = out.maps[d + 1] * M.act[d][i] * out.maps[d].adjoint();
    out.module.act.push_back(std::move(X));
  }
  return out;
}

HomSpace hom_from_perp(const Mat& perp, int shift, const GradedModuleRep& N, double tol_rank) {
  if (shift < 0 || shift + 1 > N.top())
    throw Error(Errc::precondition, "hom_from_cyclic: shift " + std::to_string(shift) + " outside the truncation");
  const int k = static_cast<int>(perp.cols());
  const int rows = N.dims[shift + 1];
  Mat A(k * rows, N.dims[shift]);
  std::vector<Mat> forms;
  // blocks are scaled by ||u||·max ||x_i||, so a form that vanishes on N stays small
  std::vector<double> scales;
  for (int c = 0; c < k; ++c) {
    forms.push_back(N.form(perp.col(c), shift));
    double sc = 0.0;
    for (int i = 0; i < 4; ++i) sc = std::max(sc, N.act[shift][i].norm());
    sc *= perp.col(c).norm();
    scales.push_back(sc);
    A.middleRows(c * rows, rows) = sc > 0.0 ? Mat(forms.back() / sc) : forms.back();
  }
  HomSpace H;
  H.shift = shift;
  H.basis = la::null_space(A, tol_rank, 1.0);
  for (Eigen::Index b = 0; b < H.basis.cols(); ++b)
    for (int c = 0; c < k; ++c)
      if (scales[c] > 0.0)
        H.residual = std::max(H.residual, (forms[c] * H.basis.col(b)).norm() / (scales[c] * H.basis.col(b).norm()));
  return H;
}

HomSpace hom_from_line(const SecantLine& src, int shift, const GradedModuleRep& N, double tol_rank) {
  return hom_from_perp(src.perp, shift, N, tol_rank);
}

Mat point_perp(const Curve& curve, const CurvePoint& p) {
  const Vec4 v = curve.g(p.approx);
  const Mat row = (v / v.norm()).transpose();
  return la::null_space(row);
}

HomSpace hom_from_point(const Curve& curve, const CurvePoint& p, int shift, const GradedModuleRep& N,
                        double tol_rank) {
  return hom_from_perp(point_perp(curve, p), shift, N, tol_rank);
}

bool lies_on(const Curve& curve, const GradedModuleRep& C, int multiplicity, const CurvePoint& p2,
             const CurvePoint& q2, double tol_rank) {
  const int e = multiplicity;
  const SecantLine l = curve.secant_perp(p2 + curve.tau_multiple(e - 1), q2 - curve.tau_multiple(e - 1));
  return hom_from_line(l, e - 1, C, tol_rank).dim() > 0;
}

Vec f_lambda(int s, const Vec2& lambda) {
  Vec f = Vec::Zero(s + 1);
  f(0) = lambda(0);  // e_{0s}
  f(s) = lambda(1);  // e_{s0}
  return f;
}

QuotientResult clambda(const Curve& curve, const CurvePoint& p, const CurvePoint& q, const Vec2& lambda, int D) {
  const int s = curve.s();
  const GradedModuleRep M = line_module(curve, p, q, D);
  return quotient(M, s, f_lambda(s, lambda), 1e-8, "C^lambda");
}

namespace {

// λ with λ0·a + λ1·b = 0, if the two images are parallel.
std::optional<NoncriticalLambda> root_of(const Vec& a, const Vec& b, std::string name) {
  Mat AB(a.size(), 2);
  AB.col(0) = a;
  AB.col(1) = b;
  const Mat ker = la::null_space(AB, 1e-8);
  if (ker.cols() != 1) return std::nullopt;
  NoncriticalLambda nl;
  nl.lambda = la::canonical_projective(ker.col(0));
  nl.quotient = std::move(name);
  const double scale = std::abs(nl.lambda(0)) * a.norm() + std::abs(nl.lambda(1)) * b.norm();
  nl.vanishing = scale > 0.0 ? (nl.lambda(0) * a + nl.lambda(1) * b).norm() / scale : 0.0;
  return nl;
}

}  // namespace

std::vector<NoncriticalLambda> noncritical_lambdas(const Curve& curve, const CurvePoint& p, const CurvePoint& q,
                                                   int D) {
  const int s = curve.s();
  const int Dm = std::max(D, s + 1);
  const GradedModuleRep M = line_module(curve, p, q, Dm);
  const Vec e0s = Vec::Unit(s + 1, 0), es0 = Vec::Unit(s + 1, s);
  std::vector<NoncriticalLambda> out;
  auto push = [&](std::optional<NoncriticalLambda> nl) {
    if (!nl) return;
    for (const auto& o : out)
      if (la::proj_dist(o.lambda, nl->lambda) < 1e-6) return;
    out.push_back(*nl);
  };
  for (int which = 0; which < 2; ++which) {
    Mat gen = Mat::Zero(2, 1);
    gen(which == 0 ? 0 : 1, 0) = 1.0;  // e_01 gives M(p), e_10 gives M(q)
    const auto Q = quotient(M, 1, gen);
    push(root_of(Q.maps[s] * e0s, Q.maps[s] * es0, which == 0 ? "M(p)" : "M(q)"));
  }
  if (const auto wk = curve.e2_plus_ktau(p + q); wk && wk->second <= s - 2) {
    const int k = wk->second;
    const SecantLine src =
        curve.secant_perp(p - curve.tau_multiple(k + 1), q - curve.tau_multiple(k + 1));
    const HomSpace H = hom_from_line(src, k + 1, M);
    if (H.dim() != 1)
      throw Error(Errc::inconsistency, "intermediate Hom space has dim " + std::to_string(H.dim()));
    const auto Q = quotient(M, k + 1, H.basis);
    push(root_of(Q.maps[s] * e0s, Q.maps[s] * es0, "F(w+" + std::to_string(k) + "tau)"));
  }
  return out;
}

FatPointBuild intermediate_fatpoint(const Curve& curve, int omega_index, int k, const CurvePoint& p, int D) {
  if (k < 0 || k > curve.s() - 2) throw Error(Errc::precondition, "k must lie in 0..s-2");
  const auto e2 = two_torsion(curve.lattice());
  FatPointBuild fb;
  fb.omega_index = omega_index;
  fb.k = k;
  fb.p = p;
  fb.q = e2.at(omega_index) + curve.tau_multiple(k) - p;
  const int Dm = std::max(D, k + 2);
  const GradedModuleRep M = line_module(curve, fb.p, fb.q, Dm);
  const SecantLine src = curve.secant_perp(fb.p - curve.tau_multiple(k + 1), fb.q - curve.tau_multiple(k + 1));
  const HomSpace H = hom_from_line(src, k + 1, M);
  if (H.dim() != 1)
    throw Error(Errc::inconsistency, "Hom(M(p-(k+1)tau, q-(k+1)tau)(-k-1), M(p,q)) has dim " + std::to_string(H.dim()));
  fb.hom_vector = H.basis.col(0);
  fb.quotient = quotient(M, k + 1, H.basis, 1e-8,
                         "F(w" + std::to_string(omega_index) + "+" + std::to_string(k) + "tau)");
  return fb;
}

FatPointBuild intermediate_fatpoint(const Curve& curve, int omega_index, int k, std::mt19937_64& rng, int D) {
  const auto e2 = two_torsion(curve.lattice());
  for (int attempt = 0; attempt < 100; ++attempt) {
    const CurvePoint p = curve.random_point(rng);
    const CurvePoint q = e2.at(omega_index) + curve.tau_multiple(k) - p;
    if (curve.is_special_pair(p, q)) continue;
    return intermediate_fatpoint(curve, omega_index, k, p, D);
  }
  throw Error(Errc::degenerate_input, "no generic point found for the intermediate family");
}

double relation_residual(const FiniteDimModule& W, const RelationSet& R) {
  double worst = 0.0;
  for (const auto& r : R.rels) {
    Mat sum = Mat::Zero(W.dim, W.dim);
    double scale = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (r(i, j) == 0.0) continue;
        const Mat t = W.mats[i] * W.mats[j];
        sum += r(i, j) * t;
        scale += std::abs(r(i, j)) * t.norm();
      }
    if (scale > 0.0) worst = std::max(worst, sum.norm() / scale);
  }
  return worst;
}

double central_residual(const FiniteDimModule& W, const Mat4& w) {
  Mat P = Mat::Zero(W.dim, W.dim);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) P += w(i, j) * W.mats[i] * W.mats[j];
  const double pn = P.norm();
  if (pn == 0.0) return 1.0;
  double worst = (P - W.omega_value * Mat::Identity(W.dim, W.dim)).norm() / pn;
  for (const auto& x : W.mats) {
    const double xn = x.norm();
    if (xn > 0.0) worst = std::max(worst, (P * x - x * P).norm() / (pn * xn));
  }
  return worst;
}

FiniteDimModule degrade(const GradedModuleRep& C, const Mat4& w, cplx nu, int d0, const RelationSet& R) {
  if (d0 < 0 || d0 + 2 > C.top()) throw Error(Errc::precondition, "degrade: window outside the truncation");
  const Mat O = C.quadratic(w, d0);
  if (O.rows() != O.cols())
    throw Error(Errc::precondition, "degrade: Hilbert function not stable at d0 = " + std::to_string(d0));
  const auto sv = la::singular_values(O);
  double scale = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (w(i, j) != 0.0) scale += std::abs(w(i, j)) * (C.act[d0 + 1][i] * C.act[d0][j]).norm();
  if (sv.size() == 0 || sv(0) < 1e-10 * scale)
    throw Error(Errc::wrong_central_element, "the central element annihilates the module");
  if (sv(sv.size() - 1) < 1e-8 * sv(0))
    throw Error(Errc::precondition, "central element not invertible on the window at d0 = " + std::to_string(d0));
  const Mat Oinv = O.fullPivLu().inverse();
  const int n0 = C.dims[d0], n1 = C.dims[d0 + 1];
  FiniteDimModule W;
  W.dim = n0 + n1;
  W.omega_value = nu;
  for (int i = 0; i < 4; ++i) {
    Mat m = Mat::Zero(W.dim, W.dim);
    m.block(0, n0, n0, n1) = nu * Oinv * C.act[d0 + 1][i];
    m.block(n0, 0, n1, n0) = C.act[d0][i];
    W.mats[i] = m;
  }
  W.residual = relation_residual(W, R);
  return W;
}

FiniteDimModule twist(const FiniteDimModule& W, cplx lambda) {
  FiniteDimModule out = W;
  for (auto& m : out.mats) m *= lambda;
  out.omega_value *= lambda * lambda;
  return out;
}

FiniteDimModule restrict_to(const FiniteDimModule& W, const Mat& V, const RelationSet& R) {
  FiniteDimModule out;
  out.dim = static_cast<int>(V.cols());
  out.omega_value = W.omega_value;
  for (int i = 0; i < 4; ++i) out.mats[i] = V.adjoint() * W.mats[i] * V;
  out.residual = relation_residual(out, R);
  return out;
}

namespace {

Mat kron(const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

// Linear map vec(T) -> (vec(T ρ1(x_i) - ρ2(x_i) T))_i for T of size n2 x n1 (column-major vec).
Mat sylvester(const FiniteDimModule& W1, const FiniteDimModule& W2) {
  const int n1 = W1.dim, n2 = W2.dim, nn = n1 * n2;
  Mat S(4 * nn, nn);
  const Mat I1 = Mat::Identity(n1, n1), I2 = Mat::Identity(n2, n2);
  for (int i = 0; i < 4; ++i) {
    const double sc = std::max(1.0, std::max(W1.mats[i].norm(), W2.mats[i].norm()));
    S.middleRows(i * nn, nn) = (kron(W1.mats[i].transpose(), I2) - kron(I1, W2.mats[i])) / sc;
  }
  return S;
}

Mat unvec(const Vec& v, int rows, int cols) { return Eigen::Map<const Mat>(v.data(), rows, cols); }

}  // namespace

Mat intertwiners(const FiniteDimModule& W1, const FiniteDimModule& W2, double tol_rank) {
  return la::null_space(sylvester(W1, W2), tol_rank);
}

Commutant commutant(const FiniteDimModule& W, std::uint64_t seed, double tol_rank) {
  Commutant out;
  const Mat ker = intertwiners(W, W, tol_rank);
  out.dim = static_cast<int>(ker.cols());
  for (Eigen::Index k = 0; k < ker.cols(); ++k) out.basis.push_back(unvec(ker.col(k), W.dim, W.dim));
  if (out.dim <= 1) return out;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Mat T = Mat::Zero(W.dim, W.dim);
  for (const auto& b : out.basis) T += cplx(nd(rng), nd(rng)) * b;
  Eigen::ComplexEigenSolver<Mat> es(T);
  std::vector<cplx> distinct;
  const double scale = std::max(1.0, T.norm());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const cplx ev = es.eigenvalues()(i);
    if (std::none_of(distinct.begin(), distinct.end(), [&](cplx d) { return std::abs(d - ev) < 1e-6 * scale; }))
      distinct.push_back(ev);
  }
  for (const cplx ev : distinct) {
    const Mat V = la::null_space(T - ev * Mat::Identity(W.dim, W.dim), 1e-6);
    if (V.cols() == 0 || V.cols() == W.dim) continue;
    const Mat P = Mat::Identity(W.dim, W.dim) - V * V.adjoint();
    for (const auto& x : W.mats) {
      const double xn = x.norm();
      if (xn > 0.0) out.witness_residual = std::max(out.witness_residual, (P * x * V).norm() / xn);
    }
    out.witnesses.push_back(V);
  }
  return out;
}

Mat generated_algebra_span(const FiniteDimModule& W, double tol_rank) {
  const int n = W.dim;
  auto vec = [n](const Mat& m) { return Vec(Eigen::Map<const Vec>(m.data(), n * n)); };
  Mat span = vec(Mat::Identity(n, n));
  std::vector<Mat> frontier{Mat::Identity(n, n)};
  int dim = 1;
  for (int len = 0; len < 4 * n && dim < n * n; ++len) {
    std::vector<Mat> next;
    for (const auto& f : frontier)
      for (const auto& x : W.mats) next.push_back(x * f);
    Mat cand(n * n, span.cols() + static_cast<Eigen::Index>(next.size()));
    cand.leftCols(span.cols()) = span;
    for (std::size_t k = 0; k < next.size(); ++k) {
      const Mat& m = next[k];
      const double mn = m.norm();
      cand.col(span.cols() + static_cast<Eigen::Index>(k)) = mn > 0.0 ? Vec(vec(m) / mn) : vec(m);
    }
    span = la::range(cand, tol_rank);
    const int nd = static_cast<int>(span.cols());
    // keep a spanning frontier of bounded size
    frontier.clear();
    for (int c = 0; c < nd; ++c) frontier.push_back(unvec(span.col(c), n, n));
    if (nd == dim && len > 0) break;
    dim = nd;
  }
  return span;
}

int generated_algebra_dim(const FiniteDimModule& W, double tol_rank) {
  return static_cast<int>(generated_algebra_span(W, tol_rank).cols());
}

double standard_identity_cost(int m) { return std::tgamma(m + 1.0); }

Mat standard_polynomial(const std::vector<Mat>& a) {
  const int m = static_cast<int>(a.size());
  if (m == 0) return Mat();
  const auto n = a[0].rows();
  std::vector<Mat> F(std::size_t{1} << m);
  F[0] = Mat::Identity(n, n);
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    Mat acc = Mat::Zero(n, n);
    for (int i = 0; i < m; ++i) {
      if (!(mask & (1u << i))) continue;
      const int below = std::popcount(mask & ((1u << i) - 1u));
      const Mat t = a[i] * F[mask ^ (1u << i)];
      if (below % 2 == 0)
        acc += t;
      else
        acc -= t;
    }
    F[mask] = std::move(acc);
  }
  return F.back();
}

double standard_identity_residual(const FiniteDimModule& W, int m, int trials, std::uint64_t seed, double budget) {
  const double cost = standard_identity_cost(m);
  if (cost > budget)
    throw Error(Errc::budget_exceeded, "S_" + std::to_string(m) + " visits " + std::to_string(cost) +
                                           " permutations, budget " + std::to_string(budget));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  auto rand_form = [&] {
    Mat x = Mat::Zero(W.dim, W.dim);
    for (const auto& g : W.mats) x += cplx(nd(rng), nd(rng)) * g;
    return x;
  };
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<Mat> a;
    double prod = 1.0;
    for (int i = 0; i < m; ++i) {
      a.push_back(rand_form() + rand_form() * rand_form());
      prod *= la::singular_values(a.back())(0);
    }
    if (prod == 0.0) continue;
    worst = std::max(worst, la::singular_values(standard_polynomial(a))(0) / prod);
  }
  return worst;
}

double standard_identity_witness(const FiniteDimModule& W, int m, std::uint64_t seed, double tol_rank) {
  const int n = W.dim;
  if (m > 2 * n - 2) throw Error(Errc::precondition, "the staircase has at most 2n-2 matrix units");
  const Mat span = generated_algebra_span(W, tol_rank);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Mat r = Mat::Zero(n, n);
  for (const auto& g : W.mats) r += cplx(nd(rng), nd(rng)) * g;
  const Mat U = Eigen::ComplexSchur<Mat>(r).matrixU();
  // e11, e12, e22, e23, ...: only the given order has a non-zero product
  std::vector<Mat> a;
  double prod = 1.0;
  for (int k = 0; k < m; ++k) {
    Mat e = Mat::Zero(n, n);
    e(k / 2, (k + 1) / 2) = 1.0;
    const Mat unit = U * e * U.adjoint();
    const Vec v = Eigen::Map<const Vec>(unit.data(), n * n);
    a.push_back(unvec(span * (span.adjoint() * v), n, n));
    prod *= la::singular_values(a.back())(0);
  }
  return prod > 0.0 ? la::singular_values(standard_polynomial(a))(0) / prod : 0.0;
}

}  // namespace skl
