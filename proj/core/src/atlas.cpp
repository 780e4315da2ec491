#include "sklyanin/atlas.hpp"

#include <algorithm>

#include "sklyanin/linalg.hpp"

namespace skl {
namespace {

cplx X_at(const Curve& curve, const Vec4& X, cplx w) { return X.cwiseProduct(curve.g(w)).sum(); }

}  // namespace

DagMatrix dag_matrix(const Curve& curve, const Vec4& X, const CurvePoint& p, const CurvePoint& q, int m,
                     const Vec2& lambda, double tol_rank) {
  const GradedModuleRep M = line_module(curve, p, q, m + 1, false);
  const Mat XA = M.form(X, m);  // (m+2) x (m+1), α coordinates
  const cplx ph = p.approx, qh = q.approx, th = curve.tau().approx;

  DagMatrix dm;
  dm.X = X;
  dm.p = p;
  dm.q = q;
  dm.m = m;
  dm.lambda = lambda;
  dm.scaling = line_scaling(curve, p, q);
  dm.alpha_scale = Vec(m + 1);
  for (int k = 0; k <= m; ++k)
    dm.alpha_scale(k) = theta(ThetaChar::c11, ph - qh - 2.0 * (2.0 * k - m) * th, curve.lattice());

  Mat alpha_rows(m + 1, m + 1);
  alpha_rows.row(0) = lambda(1) * XA.row(0) - lambda(0) * XA.row(m + 1);
  for (int k = 1; k <= m; ++k) alpha_rows.row(k) = XA.row(k);
  dm.entries = alpha_rows * dm.alpha_scale.asDiagonal();

  auto pk = [&](int k) { return ph + double(m - 2 * k + 2) * th; };
  auto zpk = [&](int k) { return qh + double(2 * k - m) * th; };
  dm.closed_form = Mat::Zero(m + 1, m + 1);
  dm.closed_form(0, 0) += lambda(1) * X_at(curve, X, zpk(0));
  dm.closed_form(0, m) += lambda(0) * X_at(curve, X, pk(m + 1));
  for (int k = 1; k <= m; ++k) {
    dm.closed_form(k, k - 1) = -X_at(curve, X, pk(k));
    dm.closed_form(k, k) = X_at(curve, X, zpk(k));
  }
  cplx a = 1.0, b = 1.0;
  for (int k = 0; k <= m; ++k) a *= X_at(curve, X, zpk(k));
  for (int k = 1; k <= m + 1; ++k) b *= X_at(curve, X, pk(k));
  dm.det_closed = lambda(1) * a + lambda(0) * b;

  // β_k = t_k α~_k / θ_k with t_k = exp(b·k + a·(m-k)) up to a common factor
  Vec to_beta(m + 1);
  for (int k = 0; k <= m; ++k)
    to_beta(k) = std::exp((dm.scaling.b - dm.scaling.a) * k) / dm.alpha_scale(k);
  // rows are normalized by the size of their terms, so a row that cancels stays small
  Mat terms = Mat::Zero(m + 1, m + 1);
  terms(0, 0) += std::abs(lambda(1) * X_at(curve, X, zpk(0)));
  terms(0, m) += std::abs(lambda(0) * X_at(curve, X, pk(m + 1)));
  for (int k = 1; k <= m; ++k) {
    terms(k, k - 1) = std::abs(dm.closed_form(k, k - 1));
    terms(k, k) = std::abs(dm.closed_form(k, k));
  }
  dm.term_scale = terms.norm();
  Mat K = dm.closed_form * to_beta.asDiagonal();
  const Mat Kt = terms * to_beta.cwiseAbs().asDiagonal();
  for (int r = 0; r <= m; ++r)
    if (Kt.row(r).norm() > 0.0) K.row(r) /= Kt.row(r).norm();
  dm.kernel = la::null_space(K, tol_rank, 1.0);
  return dm;
}

Vec2 dag_root(const Curve& curve, const Vec4& X, const CurvePoint& p, const CurvePoint& q, int m) {
  const cplx ph = p.approx, qh = q.approx, th = curve.tau().approx;
  cplx a = 1.0, b = 1.0;
  for (int k = 0; k <= m; ++k) a *= X_at(curve, X, qh + double(2 * k - m) * th);
  for (int k = 1; k <= m + 1; ++k) b *= X_at(curve, X, ph + double(m - 2 * k + 2) * th);
  return la::canonical_projective(Vec2(a, -b));
}

Mat direct_dag_solutions(const Curve& curve, const Vec4& X, const CurvePoint& p, const CurvePoint& q, int m,
                         const Vec2& lambda, double tol_rank) {
  // X·e ∈ C·f  <=>  (I - P_f) X e = 0 in M_{m+1}
  const GradedModuleRep M = line_module(curve, p, q, m + 1);
  const Mat XA = M.form(X, m);
  const Vec f = f_lambda(m + 1, line_scaling(curve, p, q).to_balanced(m + 1, lambda)).normalized();
  const Mat P = Mat::Identity(m + 2, m + 2) - f * f.adjoint();
  return la::null_space(P * XA, tol_rank, XA.norm());
}

namespace {

CommonFatPoint twisted_fatpoint(const Curve& curve, const LinePair& l1, const LinePair& l2, int D, double tol_rank) {
  const auto& [p, q] = l1;
  const auto& [p2, q2] = l2;
  const int s = curve.s(), m = s - 1;
  CommonFatPoint out;
  for (const CurvePoint& x : {p2, q2})
    for (int j = 0; j < s; ++j)
      if (same_point(x, p + curve.tau_multiple(2 * j)) || same_point(x, q + curve.tau_multiple(2 * j))) {
        out.status = "exceptional";
        return out;
      }

  const SecantLine twisted = curve.secant_perp(p2 + curve.tau_multiple(s - 1), q2 - curve.tau_multiple(s - 1));
  const LineScaling sc = line_scaling(curve, p, q);
  auto root = [&](const Vec4& X) { return sc.to_balanced(s, dag_root(curve, X, p, q, m)); };
  out.lambda_u = root(twisted.perp.col(0));
  out.lambda_v = root(twisted.perp.col(1));
  out.uv_distance = la::proj_dist(out.lambda_u, out.lambda_v);
  const Vec2 lam = out.lambda_u;

  for (const auto& nl : noncritical_lambdas(curve, p, q, std::max(D, s + 1)))
    if (la::proj_dist(nl.lambda, lam) < 1e-6) {
      out.status = "noncritical";
      return out;
    }

  const auto C = clambda(curve, p, q, lam, std::max(D, s + 1));
  const HomSpace H = hom_from_line(twisted, s - 1, C.module, tol_rank);
  out.certificate_dim = H.dim();
  out.certificate_residual = H.residual;
  if (H.dim() == 0) {
    out.status = "no-certificate";
    return out;
  }
  out.status = "ok";
  out.lambda = lam;
  return out;
}

}  // namespace

CommonFatPoint common_fatpoint(const Curve& curve, const LinePair& l1, const LinePair& l2, int D, double tol_rank) {
  const CurvePoint z0 = l1.first + l1.second;
  if (curve.e2_plus_ktau(z0)) throw Error(Errc::family_mismatch, "p+q lies in E[2] + Z·tau");
  if (curve.is_special_pair(l1.first, l1.second)) throw Error(Errc::family_mismatch, "l1 is a special line");
  if (!same_point(l2.first + l2.second, -z0 - curve.tau_multiple(2)))
    throw Error(Errc::family_mismatch, "l2 is not in L(-p-q-2tau)");
  return twisted_fatpoint(curve, l1, l2, D, tol_rank);
}

CommonFatPoint boundary_fatpoint(const Curve& curve, const LinePair& l1, const LinePair& l2, int D,
                                 double tol_rank) {
  const CurvePoint z0 = l1.first + l1.second;
  const CurvePoint shifted = z0 + curve.tau_multiple(1);
  if (!shifted.exact || !is_zero(2 * shifted)) throw Error(Errc::family_mismatch, "p+q is not in E[2] - tau");
  if (curve.is_special_pair(l1.first, l1.second)) throw Error(Errc::family_mismatch, "l1 is a special line");
  if (!same_point(l2.first + l2.second, z0)) throw Error(Errc::family_mismatch, "l2 is not in L(p+q)");
  return twisted_fatpoint(curve, l1, l2, D, tol_rank);
}

bool same_line(const LinePair& a, const LinePair& b) {
  return (same_point(a.first, b.first) && same_point(a.second, b.second)) ||
         (same_point(a.first, b.second) && same_point(a.second, b.first));
}

bool class_contains(const LineClass& c, const LinePair& l) {
  return std::any_of(c.members.begin(), c.members.end(), [&](const LinePair& m) { return same_line(m, l); });
}

LineClass line_class(const Curve& curve, const CurvePoint& p, const CurvePoint& q) {
  LineClass c;
  c.rep = {p, q};
  c.family = p + q;
  c.special = curve.e2_plus_ktau(c.family);
  const int s = curve.s();
  auto add = [&](const LinePair& l) {
    if (!class_contains(c, l)) c.members.push_back(l);
  };
  for (int i = 0; i < s; ++i) add({p + curve.tau_multiple(2 * i), q - curve.tau_multiple(2 * i)});
  if (c.special) {
    const int k = c.special->second;
    for (int i = 0; i < s; ++i) add({p + curve.tau_multiple(2 * i), q - curve.tau_multiple(2 * (k + i + 1))});
  }
  return c;
}

namespace {

bool pair_less(const LinePair& a, const LinePair& b) {
  if (!(*a.first.exact == *b.first.exact)) return *a.first.exact < *b.first.exact;
  return *a.second.exact < *b.second.exact;
}

}  // namespace

LinePair canonical_pair(const Curve& curve, const LinePair& l) {
  if (!l.first.exact || !l.second.exact) throw Error(Errc::precondition, "canonical_pair needs exact points");
  LinePair best = l;
  bool first = true;
  for (int i = 0; i < curve.s(); ++i) {
    const CurvePoint a = l.first + curve.tau_multiple(2 * i);
    const CurvePoint b = l.second - curve.tau_multiple(2 * i);
    for (const LinePair& cand : {LinePair{a, b}, LinePair{b, a}}) {
      if (first || pair_less(cand, best)) best = cand;
      first = false;
    }
  }
  return best;
}

TPoint canonical_tpoint(const Curve& curve, const LinePair& l1, const LinePair& l2) {
  LinePair a = canonical_pair(curve, l1), b = canonical_pair(curve, l2);
  if (pair_less(b, a)) std::swap(a, b);
  return TPoint{{a.first, a.second}, {b.first, b.second}};
}

bool same_tpoint(const TPoint& a, const TPoint& b) {
  return same_point(a.pair1[0], b.pair1[0]) && same_point(a.pair1[1], b.pair1[1]) &&
         same_point(a.pair2[0], b.pair2[0]) && same_point(a.pair2[1], b.pair2[1]);
}

TPoint t_coordinates(const Curve& curve, const LinePair& l1, const LinePair& l2) {
  const CurvePoint total = l1.first + l1.second + l2.first + l2.second + curve.tau_multiple(2);
  if (!curve.in_two_tau_orbit(total))
    throw Error(Errc::inconsistency, "p+q+p'+q' is not in -2tau + <2tau>");
  return canonical_tpoint(curve, l1, l2);
}

std::vector<IncidenceRow> incidence_scan(const Curve& curve, const GradedModuleRep& C, int multiplicity,
                                         const std::vector<LinePair>& candidates, double tol_rank) {
  std::vector<IncidenceRow> rows;
  for (const auto& l : candidates) rows.push_back({l, lies_on(curve, C, multiplicity, l.first, l.second, tol_rank)});
  return rows;
}

}  // namespace skl
