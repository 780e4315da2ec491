#pragma once

#include "sklyanin/types.hpp"

// Thin SVD-based helpers. Every rank decision uses a threshold relative to the
// largest singular value of the matrix at hand.
namespace skl::la {

inline constexpr double kDefaultRankTol = 1e-8;

Eigen::VectorXd singular_values(const Mat& a);

int rank(const Mat& a, double rel_tol = kDefaultRankTol);

/// Orthonormal basis (columns) of ker(a). Singular values below rel_tol·max(σ_max, scale)
/// count as zero; pass the size of the terms of `a` as `scale` when they may cancel.
Mat null_space(const Mat& a, double rel_tol = kDefaultRankTol, double scale = 0.0);

/// Orthonormal basis (columns) of the column space of a.
Mat range(const Mat& a, double rel_tol = kDefaultRankTol);

/// Rows forming an orthonormal basis of the orthogonal complement of the
/// column space of `basis` inside C^n. Applied to a vector this is a quotient map.
Mat complement_rows(const Mat& basis, Eigen::Index n);

/// sin of the angle between two lines through the origin.
double proj_dist(const Vec& a, const Vec& b);

/// Spectral norm of the difference of the orthogonal projectors onto two column spaces.
double subspace_dist(const Mat& a, const Mat& b);

/// Scale so that the largest modulus is 1 and the first coordinate with modulus
/// above `eps` is positive real.
Vec canonical_projective(const Vec& v, double eps = 1e-8);

/// Relative residual ||a x|| / (||a|| ||x||), zero for zero input.
double rel_residual(const Mat& a, const Vec& x);

}  // namespace skl::la
