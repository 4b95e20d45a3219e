#pragma once

#include <Eigen/Dense>

#include "weylscope/space.hpp"

namespace weylscope {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Rank-2 tensors are stored as endomorphism matrices acting on column
// vectors of frame components.  The associated bilinear form is
// beta(x,y) = <M x, y>, so the form-component array is M^T; for symmetric
// tensors the two coincide and for 2-forms they differ by sign.
//
//   Endo        : any n x n matrix
//   SymBilinear : M^T ==  M
//   TwoForm     : M^T == -M
using Endo = Mat;
using SymBilinear = Mat;
using TwoForm = Mat;

inline double form_value(const Mat& m, const Vec& x, const Vec& y) {
  return y.dot(m * x);
}

// e_i ^ e_j as a skew endomorphism: maps e_i -> e_j, e_j -> -e_i, so the
// associated form satisfies (e_i ^ e_j)(e_i, e_j) = +1.
inline TwoForm wedge(const EuclideanSpace& sp, int i, int j) {
  Mat f = Mat::Zero(sp.dim, sp.dim);
  f(j, i) = 1.0;
  f(i, j) = -1.0;
  return f;
}

inline TwoForm wedge_vectors(const Vec& v, const Vec& w) {
  return w * v.transpose() - v * w.transpose();
}

// Orthogonal projections of End(V) = S^2 + Lambda^2.
inline SymBilinear proj_sym(const Endo& h) { return 0.5 * (h + h.transpose()); }
inline TwoForm proj_skew(const Endo& h) { return 0.5 * (h - h.transpose()); }

// End-trace inner product <A,B> = sum_i <A e_i, B e_i> = trace(A^T B),
// identical to the plain component sum.
inline double inner(const Mat& a, const Mat& b) {
  return (a.array() * b.array()).sum();
}

inline double norm2(const Mat& a) { return a.norm(); }

inline SymBilinear trace_free(const SymBilinear& s) {
  const int n = static_cast<int>(s.rows());
  return s - (s.trace() / n) * Mat::Identity(n, n);
}

inline bool is_symmetric(const Mat& m, double tol = Tol::kZero) {
  return (m - m.transpose()).norm() <= tol * (1.0 + m.norm());
}

inline bool is_skew(const Mat& m, double tol = Tol::kZero) {
  return (m + m.transpose()).norm() <= tol * (1.0 + m.norm());
}

}  // namespace weylscope
