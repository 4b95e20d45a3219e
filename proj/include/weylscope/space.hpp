#pragma once

#include <stdexcept>
#include <string>

namespace weylscope {

// Oriented Euclidean vector space with its standard orthonormal frame
// e_1..e_n.  Every tensor in the algebra modules carries its components
// with respect to this frame, so the metric is the identity matrix and
// index raising/lowering is free.
struct EuclideanSpace {
  int dim;

  explicit EuclideanSpace(int n) : dim(n) {
    if (n < 3 || n > 8)
      throw std::invalid_argument("EuclideanSpace: dim must be in [3,8], got " +
                                  std::to_string(n));
  }
};

// Tolerance conventions used across the library.
//
// Inner products are plain component sums everywhere: for rank-2 tensors
// this is the End-trace convention <A,B> = sum_i <A e_i, B e_i>
// = trace(A^T B), and for higher ranks the full component sum.  Under this
// convention |e_i ^ e_j| = sqrt(2) and the Kaehler-type forms
// e_1^e_2 +- e_3^e_4 have norm exactly 2.
struct Tol {
  // Absolute tolerance for exact-zero assertions on O(1) algebra.
  static constexpr double kZero = 1e-12;
  // Scale-relative residual tolerance: ||r|| <= kRel * (1 + ||inputs||).
  static constexpr double kRel = 1e-10;
  // Singular values below kRankCut * sigma_max count as zero in kernel
  // computations.
  static constexpr double kRankCut = 1e-9;
};

}  // namespace weylscope
