#pragma once

#include <string>
#include <vector>

#include "weylscope/space.hpp"
#include "weylscope/tensor_ops.hpp"

namespace weylscope {

// Algebraic Weyl curvature tensor: pair antisymmetry, pair-swap symmetry,
// first Bianchi identity, vanishing Ricci contraction.  The invariants are
// verified on construction.
class AlgWeyl {
 public:
  explicit AlgWeyl(Tensor4 t, double tol = Tol::kRel);

  static AlgWeyl zero(int n) { return AlgWeyl(Tensor4(n), 0.0); }

  const Tensor4& tensor() const { return t_; }
  int dim() const { return t_.dim(); }
  double norm() const { return t_.norm(); }
  double operator()(int x, int y, int z, int u) const { return t_(x, y, z, u); }

 private:
  Tensor4 t_;
};

struct WeylProjection {
  AlgWeyl weyl;
  // n < 4: the space of algebraic Weyl tensors is zero, result is the zero
  // tensor.
  bool trivial_dimension = false;
};

// Orthogonal projection of an arbitrary rank-4 array onto algebraic Weyl
// tensors: antisymmetrize pairs, symmetrize the pair swap, remove the
// Lambda^4 (Bianchi-violating) part, then subtract k.g built from the
// Ricci contraction.
WeylProjection project_to_weyl(const Tensor4& t);

// Extension of W to a map End(V) -> End(V):
// W(h) = sum_i W(e_i, . , h e_i, . ), returned as an endomorphism matrix.
// Preserves the splitting of End(V) into symmetric and skew parts, and
// W(Id) = 0 by trace-freeness.
Endo extend(const AlgWeyl& w, const Endo& h);

// Restriction to two-forms via the Bianchi identity:
// W(alpha) = 1/2 sum_i W(e_i, F e_i); agrees with extend() on skew input.
Endo extend_lambda2(const AlgWeyl& w, const TwoForm& f);

// Rank-4 residual of the E_W membership equation:
// (x,y,z,u) -> W(x,y,hz,u) + W(y,z,hx,u) + W(z,x,hy,u)
Tensor4 residual_deg1_tensor(const AlgWeyl& w, const Endo& h);
double residual_deg1(const AlgWeyl& w, const Endo& h);

// W(hx,y,z,u) + W(x,hy,z,u) - W(x,y,hz,u) - W(x,y,z,hu)
Tensor4 residual_deg11_tensor(const AlgWeyl& w, const Endo& h);
double residual_deg11(const AlgWeyl& w, const Endo& h);

// Four-slot derivation action, zero exactly on the Lie algebra g_W:
// W(hx,y,z,u) + W(x,hy,z,u) + W(x,y,hz,u) + W(x,y,z,hu)
Tensor4 residual_lie_tensor(const AlgWeyl& w, const Endo& h);
double residual_lie(const AlgWeyl& w, const Endo& h);

// Operator identities quantified over a basis of Lambda^2 (resp. S^2);
// each returns the maximal residual norm over the basis.
//   deg+      : W(hF - F h*) = W(F) h - h* W(F)
//   deg-      : W(hF + F h*) = W(F) h + h* W(F)
//   mainalg   : W(hF) = W(F) h
//   eqvlie    : W(hF + F h*) = -W(F) h - h* W(F)
//   deg+ sym  : W(hS - S h*) = W(S) h - h* W(S)   over S in S^2
double residual_degplus(const AlgWeyl& w, const Endo& h);
double residual_degminus(const AlgWeyl& w, const Endo& h);
double residual_mainalg(const AlgWeyl& w, const Endo& h);
double residual_eqvlie(const AlgWeyl& w, const Endo& h);
double residual_degplus_sym(const AlgWeyl& w, const Endo& h);

enum class SpaceTag { EW, SW, AW, GW };

std::string to_string(SpaceTag tag);

// Orthonormal basis of one of the symmetry spaces of W, computed as the
// numerical kernel of the corresponding residual operator.
struct SymmetrySpaceBasis {
  SpaceTag tag;
  std::vector<Endo> basis;
  int dimension = 0;
};

SymmetrySpaceBasis solve_space(const AlgWeyl& w, SpaceTag tag,
                               double rank_cut = Tol::kRankCut);

// Kernel of h -> residual tensor for an arbitrary residual choice,
// restricted to a given list of (orthonormal) domain elements.  Used by the
// equivalence-lattice tests and by solve_space itself.
enum class ResidualKind { Deg1, Deg11, Lie, DegPlus, DegMinus, Mainalg, DegPlusSym, Eqvlie };

std::vector<Endo> residual_kernel(const AlgWeyl& w, ResidualKind kind,
                                  const std::vector<Endo>& domain,
                                  double rank_cut = Tol::kRankCut);

// Full End(V) elementary basis and orthonormal bases of S^2 and Lambda^2.
std::vector<Endo> endo_basis(int n);
std::vector<Endo> sym_basis(int n);
std::vector<Endo> skew_basis(int n);

// Largest principal angle between the spans of two orthonormal families.
double max_principal_angle(const std::vector<Endo>& a, const std::vector<Endo>& b);

// residual_lie of the commutator (Prop: [E_W, E_W] in g_W).
double check_bracket_closure(const AlgWeyl& w, const Endo& h1, const Endo& h2);
// residual_deg1 of the anticommutator (Prop: {E_W, E_W} in E_W).
double check_anticommutator_closure(const AlgWeyl& w, const Endo& h1, const Endo& h2);
// max over basis F of || W(h F h*) - h* W(F) h ||.
double check_cor1(const AlgWeyl& w, const Endo& h);

// Lemma-ker style obstruction report: skew parts of E_W annihilate W on
// Lambda^2, symmetric parts of g_W annihilate W on S^2.
struct KernelObstructionReport {
  double max_ew_skew_residual = 0.0;  // ||W(pi^- h)|| over E_W basis
  double max_gw_sym_residual = 0.0;   // ||W(pi^+ h)|| over g_W basis
  int dim_ew = 0;
  int dim_gw = 0;
  int dim_ker_lambda2 = 0;  // kernel of W restricted to Lambda^2
  int dim_ker_s2 = 0;       // kernel of W restricted to S^2
};

KernelObstructionReport check_kernel_obstructions(const AlgWeyl& w,
                                                  double rank_cut = Tol::kRankCut);

}  // namespace weylscope
