#pragma once

#include <array>
#include <utility>

#include "weylscope/weyl.hpp"

namespace weylscope {

// Everything in this header is specific to n = 4 with the fixed positive
// orientation e_1 ^ e_2 ^ e_3 ^ e_4.

// Hodge star on two-forms; an involution on Lambda^2.
TwoForm hodge_star(const TwoForm& f);

// The standard quaternionic bases of Lambda^+ and Lambda^-; every element
// has norm 2 and squares to -Id as an endomorphism.
struct SDBasis {
  std::array<TwoForm, 3> plus;
  std::array<TwoForm, 3> minus;
};
SDBasis standard_sd_basis();

// W as a symmetric 6x6 operator on Lambda^2 in the orthonormal basis
// {e_i ^ e_j / sqrt(2), i < j}, and the inverse identification.
Eigen::Matrix<double, 6, 6> lambda2_matrix(const AlgWeyl& w);
Tensor4 tensor_from_lambda2_matrix(const Eigen::Matrix<double, 6, 6>& a);

struct WeylSplit {
  AlgWeyl plus;
  AlgWeyl minus;
};

// W = W^+ + W^- along Lambda^2 = Lambda^+ + Lambda^-.
WeylSplit split_weyl(const AlgWeyl& w);

// Eigen-decomposition of W^+/W^- on Lambda^{+/-}: eigenvalues (ascending,
// each triple summing to zero), eigenforms of norm 2 and the associated
// g-compatible almost complex structures.
struct WeylSpectrum {
  Eigen::Vector3d lambda_plus;
  Eigen::Vector3d lambda_minus;
  std::array<TwoForm, 3> omega_plus;
  std::array<TwoForm, 3> omega_minus;
  std::array<Endo, 3> j_plus;
  std::array<Endo, 3> j_minus;
};

WeylSpectrum spectrum(const AlgWeyl& w);

// sigma[i][j] = J^+_i J^-_j: nine symmetric trace-free orthogonal
// involutions forming an orthogonal basis of S^2_0(V), each of norm 2.
struct SigmaBasis {
  std::array<std::array<Endo, 3>, 3> sigma;
};

SigmaBasis sigma_basis(const WeylSpectrum& s);

// Worst defect over all structural invariants of a spectrum: J^2 = -Id,
// quaternion relations, [J^+,J^-] = 0, eigenform property, zero-sum.
double spectrum_invariant_defect(const AlgWeyl& w, const WeylSpectrum& s);
double sigma_invariant_defect(const SigmaBasis& sb);

// Principal generator of controlled-degeneracy Weyl tensors.  Both triples
// must sum to zero.  An optional rotation conjugates the construction away
// from the standard frame.
AlgWeyl build_weyl_from_spectra(const Eigen::Vector3d& lambda_plus,
                                const Eigen::Vector3d& lambda_minus,
                                const Mat* frame_rotation = nullptr);

// max_{i,j} || W(sigma_ij) - (lambda_i^+ + lambda_j^-) sigma_ij ||
double check_eigsym(const AlgWeyl& w, const WeylSpectrum& s, const SigmaBasis& sb);

// Residuals of the two four-dimensional derivation identities
//   W{F,G} = {W(F),G}_0 + {F,W(G)}_0      (trace-free anticommutators)
//   -W[F,G] = [W(F),G] + [F,W(G)]
std::pair<double, double> check_supersym(const AlgWeyl& w, const TwoForm& f,
                                         const TwoForm& g);

// E_W assembled from its four-dimensional splitting: S_W from the deg1
// kernel on S^2 and A_W as the two-forms annihilated by W.
SymmetrySpaceBasis ew_split_4d(const AlgWeyl& w, double rank_cut = Tol::kRankCut);

// Kernel structure report for trace-free symmetric h with W(h)=0.
struct SymkerReport {
  bool precond_ok = false;
  double deg1_residual = 0.0;
  double extend_residual = 0.0;
  double trace_abs = 0.0;
  double h_norm = 0.0;
  Eigen::Vector3d lambda_plus;
  Eigen::Vector3d lambda_minus;
  int ker_dim_plus = 0;
  int ker_dim_minus = 0;
  bool wplus_nonzero = false;
  bool wminus_nonzero = false;
  // h != 0 with W^{+-} != 0 forces both restricted kernels 1-dimensional.
  bool consistent = true;
};

SymkerReport symker_report(const AlgWeyl& w, const SymBilinear& h,
                           double tol = 1e-8);

// max_{X,Y} | <W_X, W_Y> - ||W||^2/4 delta_XY | with W_X = W(X,.,.,.).
double check_4id(const AlgWeyl& w);

// Singular values of the map X -> W_X; for any 4D algebraic Weyl tensor
// all four equal ||W||/2.
std::pair<double, double> weyl_nullity_singular_values(const AlgWeyl& w);

}  // namespace weylscope
