#pragma once

#include <array>
#include <vector>

#include "sklyanin/theta.hpp"

namespace skl {

/// The six quadratic relations, each a 4x4 coefficient matrix: r(i,j) multiplies x_i x_j.
struct RelationSet {
  std::array<Mat4, 6> rels;

  /// Rank of the six relations as vectors in F_2 = C^16.
  int span_dim(double rel_tol = 1e-8) const;
};

/// [x0, xa] - i J_bc {xb, xc}  and  [xa, xb] - i {x0, xc}, (a,b,c) cyclic in (1,2,3).
RelationSet build_relations(const StructureConstants& J);

/// A_d with an orthonormal basis. `quot` maps F_1 ⊗ A_{d-1} = C^{4·dim A_{d-1}} onto A_d;
/// `left[i]` is the action of x_i from A_d to A_{d+1}.
struct AlgebraComponent {
  int degree = 0;
  int dim = 0;
  Mat quot;
  std::array<Mat, 4> left;
  double smallest_kept = 0.0;       // smallest singular value counted in the relation image
  double largest_discarded = 0.0;   // largest singular value treated as zero
};

inline constexpr long long expected_dim(int d) { return (d + 1LL) * (d + 2) * (d + 3) / 6; }

class GradedAlgebra {
 public:
  /// Builds A_0..A_dmax degree by degree: A_{d+1} is the cokernel of
  /// R ⊗ A_{d-1} -> F_1 ⊗ A_d. Dimensions are recorded as observed, not enforced.
  GradedAlgebra(const RelationSet& rels, int dmax, double tol_rank = 1e-8);

  int dmax() const { return static_cast<int>(comps_.size()) - 1; }
  const AlgebraComponent& component(int d) const { return comps_.at(d); }
  const RelationSet& relations() const { return rels_; }
  bool hilbert_ok(int d) const { return comps_.at(d).dim == expected_dim(d); }

  /// x_i · v for v in A_d.
  Vec left_mult(int i, const Vec& v, int d) const;
  /// Product a·b with a in A_da, b in A_db; requires da + db <= dmax.
  Vec multiply(const Vec& a, int da, const Vec& b, int db) const;
  /// A_d element of a word x_{w0} x_{w1} ... (leftmost letter first).
  Vec word(const std::vector<int>& letters) const;
  /// Coefficients w(i,j) in F_2 with a = sum w(i,j) x_i x_j.
  Mat4 lift2(const Vec& a2) const;

 private:
  RelationSet rels_;
  std::vector<AlgebraComponent> comps_;
};

struct CentralElement {
  Vec coeffs;  // in A_2
  Mat4 word;   // lift to F_2, used to act on modules
  double commutator_residual = 0.0;
};

/// Null space of A_2 -> (A_3)^4, Omega -> ([Omega, x_i])_i. Needs dmax >= 3.
std::vector<CentralElement> center_degree2(const GradedAlgebra& A, double tol_rank = 1e-8);

/// Max over the 4 generators of ||[Omega, x_i]|| / ||Omega||.
double commutator_residual(const GradedAlgebra& A, const Vec& omega);

CentralElement make_central(const GradedAlgebra& A, const Vec& coeffs);

}  // namespace skl
