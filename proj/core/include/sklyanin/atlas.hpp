#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sklyanin/modules.hpp"

namespace skl {

/// The linear system "X·e ∈ C·f_λ" for e = sum_k α_k e_{k,m-k} in M(p,q)_m, written in
/// the rescaled unknowns β_k = α_k / θ11(p - q - 2(2k-m)τ).
struct DagMatrix {
  Vec4 X;
  CurvePoint p, q;
  int m = 0;
  Vec2 lambda;
  Mat entries;      // assembled from the line-module action
  Mat closed_form;  // row 0: λ1·X(z-p_0) at column 0, λ0·X(p_{m+1}) at column m;
                    // row k >= 1: -X(p_k) at column k-1, X(z-p_k) at column k
  Vec alpha_scale;  // α_k = alpha_scale_k · β_k
  cplx det_closed = 0.0;  // λ1·prod_{k=0..m} X(z-p_k) + λ0·prod_{k=1..m+1} X(p_k)
  double term_scale = 0.0;  // Frobenius norm of the entrywise term sizes of closed_form
  LineScaling scaling;
  Mat kernel;  // kernel of closed_form, mapped to balanced module coordinates
};

/// Nodes: z = p+q+2τ, p_k = p + (m-2k+2)τ, so z - p_k = q + (2k-m)τ.
/// λ and α refer to the raw basis e_ij here; `kernel` is converted to the balanced one.
DagMatrix dag_matrix(const Curve& curve, const Vec4& X, const CurvePoint& p, const CurvePoint& q, int m,
                     const Vec2& lambda, double tol_rank = 1e-8);

/// The λ (raw basis) at which the closed-form determinant vanishes.
Vec2 dag_root(const Curve& curve, const Vec4& X, const CurvePoint& p, const CurvePoint& q, int m);

/// Elements e ∈ M(p,q)_m with X·e ∈ C·f_λ, found from the module action alone;
/// λ is raw, the returned columns are in balanced coordinates.
Mat direct_dag_solutions(const Curve& curve, const Vec4& X, const CurvePoint& p, const CurvePoint& q, int m,
                         const Vec2& lambda, double tol_rank = 1e-8);

using LinePair = std::pair<CurvePoint, CurvePoint>;

struct CommonFatPoint {
  std::string status;  // "ok", "noncritical", "exceptional", "no-certificate"
  std::optional<Vec2> lambda;  // balanced basis, as for clambda
  Vec2 lambda_u, lambda_v;
  double uv_distance = 1.0;
  int certificate_dim = 0;
  double certificate_residual = 0.0;
};

/// The unique C^λ on l1 = l_pq that also lies on l2 = l_{p'q'} ∈ L(-p-q-2τ).
/// Throws Errc::family_mismatch on precondition violations.
CommonFatPoint common_fatpoint(const Curve& curve, const LinePair& l1, const LinePair& l2, int D,
                               double tol_rank = 1e-8);

/// The same construction when p+q ∈ E[2] - τ, where L(p+q) = L(-p-q-2τ) and l2 is taken
/// from L(p+q). common_fatpoint excludes this family; it is kept apart so its results are
/// never mixed with the generic ones.
CommonFatPoint boundary_fatpoint(const Curve& curve, const LinePair& l1, const LinePair& l2, int D,
                                 double tol_rank = 1e-8);

struct LineClass {
  LinePair rep;
  std::vector<LinePair> members;
  CurvePoint family;  // p + q
  std::optional<std::pair<int, int>> special;  // (ω index, k) when p+q = ω + kτ
};

LineClass line_class(const Curve& curve, const CurvePoint& p, const CurvePoint& q);

/// Same line as an unordered pair of exact points.
bool same_line(const LinePair& a, const LinePair& b);
bool class_contains(const LineClass& c, const LinePair& l);

/// Canonical representative of (p,q) modulo (2τ,-2τ) and the swap.
LinePair canonical_pair(const Curve& curve, const LinePair& l);
TPoint canonical_tpoint(const Curve& curve, const LinePair& l1, const LinePair& l2);
bool same_tpoint(const TPoint& a, const TPoint& b);

/// Throws Errc::inconsistency unless p+q+p'+q' ∈ -2τ + <2τ>.
TPoint t_coordinates(const Curve& curve, const LinePair& l1, const LinePair& l2);

struct IncidenceRow {
  LinePair line;
  bool incident = false;
};

/// Tests each candidate line with lies_on.
std::vector<IncidenceRow> incidence_scan(const Curve& curve, const GradedModuleRep& C, int multiplicity,
                                         const std::vector<LinePair>& candidates, double tol_rank = 1e-8);

}  // namespace skl
