#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sklyanin/point.hpp"
#include "sklyanin/theta.hpp"

namespace skl {

/// Homogeneous coordinates (x0..x3), canonically normalized: max modulus 1 and
/// the first non-negligible coordinate positive real.
struct ProjPoint {
  Vec4 coords = Vec4::Zero();

  static ProjPoint from(const Vec4& v);
  double dist(const ProjPoint& other) const;
};

/// An element of A_1, i.e. a linear form on P^3. Coefficient j multiplies x_j.
struct LinearForm {
  Vec4 mu = Vec4::Zero();
};

/// Secant line l_pq with a basis of the forms vanishing on it (columns of perp).
struct SecantLine {
  CurvePoint p, q;
  Eigen::Matrix<cplx, 4, 2> perp;
};

struct Quadric {
  Mat4 gram = Mat4::Zero();
};

/// Which theta function feeds which coordinate, and the constant in front of it:
///   g_j(z) = gamma_j · c_j · theta_{chars_j}(2z),  gamma = (i, i, 1, 1).
struct Calibration {
  std::array<ThetaChar, 4> chars{ThetaChar::c11, ThetaChar::c00, ThetaChar::c01, ThetaChar::c10};
  std::array<cplx, 4> c{1.0, 1.0, 1.0, 1.0};
  std::string base = "1";
  std::array<int, 4> phase{0, 0, 0, 0};  // c_j = base_j · i^phase_j
  double residual = -1.0;                 // line-module relation residual, -1 if never measured
};

inline constexpr std::array<cplx, 4> kGamma{cplx(0, 1), cplx(0, 1), cplx(1, 0), cplx(1, 0)};

/// A point of the 3-fold T: two unordered pairs with p+q+p'+q' in -2·tau + <2·tau>.
struct TPoint {
  std::array<CurvePoint, 2> pair1;
  std::array<CurvePoint, 2> pair2;
};

struct ChartValue {
  Eigen::Vector3cd h_point;  // projective coordinates on the hyperplane H
  RatPair pm_sum;            // canonical representative of ±(p+q) in E'/±, in E' coordinates
};

/// The isogenous curve E' = C/Λ' with Λ' = Λ + Z·2τ, embedded in P^3 by theta_ab(2z').
class IsogenousCurve {
 public:
  IsogenousCurve(const LatticeParam& lat, const RatPair& tau);

  /// Coordinates of a point of E (given as a rational pair over (1, T)) in the
  /// basis (w1, w2) of Λ', reduced to [0,1)^2.
  RatPair coords(const RatPair& r) const;
  bool same(const RatPair& a, const RatPair& b) const { return coords(a) == coords(b); }
  Vec4 embed(const RatPair& r) const;
  Vec4 embed_deriv(const RatPair& r) const;
  const LatticeParam& lattice() const { return lat_prime_; }
  cplx omega1() const { return w1c_; }

 private:
  LatticeParam lat_;
  LatticeParam lat_prime_;
  RatPair w1_, w2_;  // basis of Λ' over (1, T)
  cplx w1c_;
};

class Curve {
 public:
  Curve(const LatticeParam& lat, const RatPair& tau, Calibration cal = {});

  const LatticeParam& lattice() const { return lat_; }
  const CurvePoint& tau() const { return tau_; }
  int n() const { return n_; }
  int s() const { return s_; }
  const Calibration& calibration() const { return cal_; }
  const StructureConstants& J() const { return J_; }
  Curve with_calibration(Calibration cal) const { return Curve(lat_, *tau_.exact, std::move(cal)); }

  CurvePoint point(const RatPair& r) const { return reduce(r, lat_); }
  CurvePoint point(cplx z) const { return reduce(z, lat_); }
  CurvePoint tau_multiple(std::int64_t k) const { return k * tau_; }

  /// Raw embedding coordinates at a complex lift z (not normalized).
  Vec4 g(cplx z) const;
  Vec4 g_deriv(cplx z) const;
  ProjPoint embed(const CurvePoint& p) const { return ProjPoint::from(g(p.approx)); }
  /// sum_j mu_j g_j(z), evaluated at the fundamental-domain lift of z.
  cplx eval_form(const LinearForm& X, const CurvePoint& z) const { return X.mu.cwiseProduct(g(z.approx)).sum(); }

  /// Forms vanishing on l_pq. For p = q the second condition is the tangent direction.
  SecantLine secant_perp(const CurvePoint& p, const CurvePoint& q) const;

  /// x ∈ 2Zτ + Λ (exact). Approx-only points answer false ("generic").
  bool in_two_tau_orbit(const CurvePoint& x) const;
  /// x = ω + kτ with ω ∈ E[2] (index into two_torsion) and 0 <= k < s.
  std::optional<std::pair<int, int>> e2_plus_ktau(const CurvePoint& x) const;
  bool is_special_pair(const CurvePoint& p, const CurvePoint& q) const { return in_two_tau_orbit(p - q); }

  /// Rational point with coordinates in (1/den)Z, drawn uniformly.
  CurvePoint random_point(std::mt19937_64& rng, std::int64_t den = 1009) const;

  /// Fixed hyperplane H of the chart (coefficients of h·x = 0).
  const Vec4& chart_hyperplane() const { return h_; }
  const IsogenousCurve& isogenous() const { return iso_; }

 private:
  LatticeParam lat_;
  CurvePoint tau_;
  int n_ = 0;
  int s_ = 0;
  Calibration cal_;
  StructureConstants J_{};
  Vec4 h_;
  IsogenousCurve iso_;
};

/// Coordinates on the dense subset of T used by the rationality argument.
/// Throws Errc::precondition when p+q ∈ E[2] + Zτ (singular quadric).
ChartValue chart_f(const Curve& curve, const TPoint& t);
double chart_distance(const ChartValue& a, const ChartValue& b);

CurvePoint isogeny_image(const Curve& curve, const CurvePoint& p);

std::vector<Quadric> quadric_pencil(const Curve& curve, int samples = 40);

struct SingularMember {
  Quadric quadric;
  int rank = 0;
  ProjPoint vertex;
  double coordinate_defect = 1.0;  // distance of the vertex from the nearest coordinate point
  int coordinate_index = -1;
};

/// The singular members of the pencil: roots of det(Q1 + t·Q2).
std::vector<SingularMember> singular_members(const std::vector<Quadric>& pencil);

/// The pencil member containing l_{p, z-p}, fitted from two choices of p.
Quadric quadric_at(const Curve& curve, const CurvePoint& z, double* fit_residual = nullptr);

/// Quadric value x^T Q x relative to ||Q|| ||x||^2.
double quadric_value(const Quadric& Q, const Vec4& x);

/// The common point of two secant lines, or nullopt if they are skew.
/// Throws Errc::degenerate_input if they coincide.
std::optional<ProjPoint> line_intersection(const SecantLine& l1, const SecantLine& l2,
                                           double rel_tol = 1e-8);

int numerical_rank_of_points(const Curve& curve, const std::array<CurvePoint, 4>& pts, double rel_tol = 1e-8);

}  // namespace skl
