#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sklyanin/algebra.hpp"
#include "sklyanin/curve.hpp"

namespace skl {

/// Truncated graded left module: bases of M_0..M_D and the action of each x_i
/// as a matrix M_d -> M_{d+1} for d < D.
struct GradedModuleRep {
  std::vector<int> dims;
  std::vector<std::array<Mat, 4>> act;
  std::string meta;

  int top() const { return static_cast<int>(dims.size()) - 1; }
  /// sum_i u_i x_i : M_d -> M_{d+1}
  Mat form(const Vec4& u, int d) const;
  /// sum_ij w_ij x_i x_j : M_d -> M_{d+2}
  Mat quadratic(const Mat4& w, int d) const;
};

/// Max over relations and degrees of ||r·M_d|| relative to the size of its terms.
double relation_residual(const GradedModuleRep& M, const RelationSet& R);

/// Mean log-size of the coefficients x·e_ij -> e_{i,j+1} (a) and x·e_ij -> e_{i+1,j} (b).
/// Theta growth in the imaginary direction makes these differ by tens of units, so
/// the raw basis is rescaled to e~_ij = exp(b·i + a·j) e_ij before any rank decision.
struct LineScaling {
  double a = 0.0;
  double b = 0.0;
  /// λ relative to (e_0s, e_s0) -> λ relative to (e~_0s, e~_s0).
  Vec2 to_balanced(int s, const Vec2& raw) const;
  Vec2 to_raw(int s, const Vec2& balanced) const;
};
LineScaling line_scaling(const Curve& curve, const CurvePoint& p, const CurvePoint& q);

/// Line module M(p,q), basis e_ij with i+j = d (stored at index i), rescaled as in
/// LineScaling unless `balanced` is false. Throws Errc::special_line when p - q ∈ 2Zτ + Λ.
GradedModuleRep line_module(const Curve& curve, const CurvePoint& p, const CurvePoint& q, int D,
                            bool balanced = true);

/// M(p) as M(p,q)/A·e_01 for a fixed auxiliary q.
GradedModuleRep point_module(const Curve& curve, const CurvePoint& p, int D);

/// The module C[x_i] attached to the vertex e_i of a singular quadric.
GradedModuleRep vertex_module(int i, int D);

struct QuotientResult {
  GradedModuleRep module;
  std::vector<Mat> maps;     // maps[d]: M_d -> (M/N)_d, orthonormal rows
  std::vector<int> sub_dims; // dim N_d
};

/// M / A·gens where the columns of `gens` lie in M_deg.
QuotientResult quotient(const GradedModuleRep& M, int deg, const Mat& gens, double tol_rank = 1e-8,
                        std::string meta = "quotient");

struct HomSpace {
  int shift = 0;
  Mat basis;             // columns in N_shift
  double residual = 0.0; // max ||u·v|| / (||u|| max ||x_i|| ||v||) over basis vectors
  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Hom(A/A·perp, N(shift)) = {v ∈ N_shift : u·v = 0 for every column u of perp}.
HomSpace hom_from_perp(const Mat& perp, int shift, const GradedModuleRep& N, double tol_rank = 1e-8);
HomSpace hom_from_line(const SecantLine& src, int shift, const GradedModuleRep& N, double tol_rank = 1e-8);
/// The point source uses the 3 forms vanishing at p.
HomSpace hom_from_point(const Curve& curve, const CurvePoint& p, int shift, const GradedModuleRep& N,
                        double tol_rank = 1e-8);

/// Forms vanishing at p (4x3).
Mat point_perp(const Curve& curve, const CurvePoint& p);

/// Whether a multiplicity-e quotient C of a line module lies on l_{p'q'}:
/// Hom(M(p'+(e-1)τ, q'-(e-1)τ), C(e-1)) != 0.
bool lies_on(const Curve& curve, const GradedModuleRep& C, int multiplicity, const CurvePoint& p2,
             const CurvePoint& q2, double tol_rank = 1e-8);

/// f_lambda = lambda0 e_{0s} + lambda1 e_{s0} in M(p,q)_s (balanced basis).
Vec f_lambda(int s, const Vec2& lambda);

/// C^λ = M(p,q) / A f_λ.
QuotientResult clambda(const Curve& curve, const CurvePoint& p, const CurvePoint& q, const Vec2& lambda, int D);

struct NoncriticalLambda {
  Vec2 lambda;
  std::string quotient;  // "M(p)", "M(q)" or "F(w+k tau)"
  double vanishing = 0.0; // |image of f_λ| relative to the images of e_{0s}, e_{s0}
};

std::vector<NoncriticalLambda> noncritical_lambdas(const Curve& curve, const CurvePoint& p, const CurvePoint& q,
                                                   int D);

struct FatPointBuild {
  QuotientResult quotient;
  CurvePoint p, q;
  int omega_index = 0;
  int k = 0;
  Vec hom_vector;  // generator image of M(p-(k+1)τ, q-(k+1)τ)(-k-1) in M(p,q)_{k+1}
};

/// F(ω+kτ) as the cokernel of the unique map M(p-(k+1)τ, q-(k+1)τ)(-k-1) -> M(p,q)
/// with q = ω + kτ - p. Throws Errc::inconsistency if that Hom space is not 1-dimensional.
FatPointBuild intermediate_fatpoint(const Curve& curve, int omega_index, int k, const CurvePoint& p, int D);
FatPointBuild intermediate_fatpoint(const Curve& curve, int omega_index, int k, std::mt19937_64& rng, int D);

/// Finite-dimensional module given by the images of x_0..x_3.
struct FiniteDimModule {
  int dim = 0;
  std::array<Mat, 4> mats;
  cplx omega_value{1.0, 0.0};
  double residual = 0.0;
};

double relation_residual(const FiniteDimModule& W, const RelationSet& R);
/// ||ρ(Ω) - ν I|| / ||ρ(Ω)|| plus max ||[ρ(Ω), ρ(x_i)]||.
double central_residual(const FiniteDimModule& W, const Mat4& omega_word);

/// W = C_{d0} ⊕ C_{d0+1} with x·(u,v) = (ν Ω^{-1}(x·v), x·u).
FiniteDimModule degrade(const GradedModuleRep& C, const Mat4& omega_word, cplx nu, int d0, const RelationSet& R);

/// ρ_λ(x_i) = λ ρ(x_i).
FiniteDimModule twist(const FiniteDimModule& W, cplx lambda);

/// The submodule spanned by the orthonormal columns of V (assumed invariant).
FiniteDimModule restrict_to(const FiniteDimModule& W, const Mat& V, const RelationSet& R);

struct Commutant {
  int dim = 0;
  std::vector<Mat> basis;
  std::vector<Mat> witnesses;  // orthonormal bases of proper invariant subspaces
  double witness_residual = 0.0;
};

Commutant commutant(const FiniteDimModule& W, std::uint64_t seed = 7, double tol_rank = 1e-8);

/// Solutions T of T·ρ1(x_i) = ρ2(x_i)·T.
Mat intertwiners(const FiniteDimModule& W1, const FiniteDimModule& W2, double tol_rank = 1e-8);

/// Orthonormal basis (columns, vectorized column-major) of the algebra generated by ρ(x_i).
Mat generated_algebra_span(const FiniteDimModule& W, double tol_rank = 1e-8);
/// Dimension of the algebra generated by ρ(x_i) (Burnside: N^2 for a simple module).
int generated_algebra_dim(const FiniteDimModule& W, double tol_rank = 1e-8);

/// Number of permutations the naive signed sum would visit (m!).
double standard_identity_cost(int m);

/// max over trials of ||S_m(a_1..a_m)|| / prod ||a_i|| (operator norms) with a_i random elements
/// ρ(l) + ρ(l')ρ(l''). Throws Errc::budget_exceeded when m! > budget.
double standard_identity_residual(const FiniteDimModule& W, int m, int trials, std::uint64_t seed,
                                  double budget = 3628800.0);

/// ||S_m|| / prod ||a_i|| on the first m matrix units of the staircase e11, e12, e22, ...
/// in the Schur basis of a random element, each projected onto ρ(A). Non-zero for
/// m <= 2N-2 exactly when the projection is faithful, e.g. when ρ(A) is all of M_N.
double standard_identity_witness(const FiniteDimModule& W, int m, std::uint64_t seed, double tol_rank = 1e-8);
/// S_m of explicit matrices, by dynamic programming over subsets.
Mat standard_polynomial(const std::vector<Mat>& a);

}  // namespace skl
