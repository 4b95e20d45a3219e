#pragma once

#include <functional>
#include <string>

#include "weylscope/curvature.hpp"
#include "weylscope/four_dim.hpp"

namespace weylscope {

enum class CSpaceStatus { Solved, WeylZeroCottonZero, WeylZeroCottonNonzero, Obstructed };

std::string to_string(CSpaceStatus s);

struct CSpaceSolution {
  Vec zeta;  // frame components
  double residual = 0.0;
  CSpaceStatus status = CSpaceStatus::WeylZeroCottonZero;
  bool conditioning_warning = false;
};

// Closed-form pointwise solve of W(zeta,.,.,.) + C = 0 in dimension 4.
// Pairing the equation with W_X and using <W_X,W_Y> = |W|^2/4 <X,Y> gives
// zeta_d = -(4/|W|^2) <W_d, C>; the returned residual decides solvability.
// The index contract is C(u,x,y) against W(zeta,u,x,y), the slot order
// fixed by dW = -(n-3) C on the curvature side.
CSpaceSolution solve_zeta(const AlgWeyl& w, const Tensor3& c, double tol = 1e-8,
                          double weyl_zero_tol = 1e-10);

// |W|^2 C - 4 (W.C).W, which equals |W|^2 times the residual tensor of the
// closed-form solve; vanishing is equivalent to pointwise solvability
// whenever W != 0.
Tensor3 obstruction(const AlgWeyl& w, const Tensor3& c);

// Coordinate covector field x -> zeta-flat obtained by solving pointwise.
using CovectorField = std::function<Vec(const Vec&)>;

CovectorField pointwise_zeta_field(const ChartMetric& m, double solve_tol = 1e-8);

// Finite-difference options for derivatives of solved fields (two FD
// layers compound, hence the larger default step).
struct FieldFd {
  double step = 1e-2;
  bool richardson = true;
};

// h_zeta = h - nabla(zeta) + zeta (x) zeta at x, as a frame endomorphism.
Endo h_zeta(const ChartMetric& m, const CovectorField& zeta, const Vec& x,
            const FieldFd& fd = {});

// residual_deg1(W(x), h_zeta(x)): membership of h_zeta in E_W.
double check_gnl(const ChartMetric& m, const CovectorField& zeta, const Vec& x,
                 const FieldFd& fd = {});

struct EWResidual {
  double best_f = 0.0;        // minimizing trace part
  double residual_sym = 0.0;  // trace-free symmetric part of the defect
  double dzeta_norm = 0.0;
};

EWResidual einstein_weyl_residual(const ChartMetric& m, const CovectorField& zeta,
                                  const Vec& x, const FieldFd& fd = {});

struct BachConsequenceReport {
  double bach_norm = 0.0;
  double extend_hzeta_norm = 0.0;   // ||W(h_zeta)||
  double deg1_hzeta_residual = 0.0;
  double dzeta_norm = 0.0;
  bool fd_warning = false;
};

BachConsequenceReport bach_consequence_check(const ChartMetric& m,
                                             const CovectorField& zeta, const Vec& x,
                                             const FieldFd& fd = {});

struct DivCReport {
  bool precond_ok = false;      // pointwise C-space data at x
  double solve_residual = 0.0;  // residual of the pointwise solve
  double residual = 0.0;        // || hat-delta C + W(nabla zeta + (n-3) zeta (x) zeta) ||
  double skew_norm = 0.0;       // asymmetry of hat-delta C
};

DivCReport div_cotton_identity_check(const ChartMetric& m, const CovectorField& zeta,
                                     const Vec& x, const FieldFd& fd = {});

struct ClassifyOptions {
  double zero_tol = 1e-6;        // ||W||, ||C|| considered zero below this
  double solve_tol = 1e-8;
  double probe_tol = 1e-3;       // d(zeta) anomaly threshold
  double stencil_radius = 1e-2;  // FD step for the zeta-field probes
  bool need_bach = true;
  bool probe_zeta_field = true;
};

struct PointDiagnostics {
  Vec point;
  int dim = 0;
  std::string classification;
  CSpaceStatus status = CSpaceStatus::WeylZeroCottonZero;

  double w_norm = 0.0;
  double wplus_norm = 0.0;
  double wminus_norm = 0.0;
  double c_norm = 0.0;
  double b_norm = 0.0;
  double scalar = 0.0;
  double deltaw_cotton_residual = 0.0;

  Vec zeta;
  double zeta_norm = 0.0;
  double zeta_residual = 0.0;
  double obstruction_norm = 0.0;

  bool probed = false;  // zeta-field probes below are filled
  double dzeta_norm = 0.0;
  double ew_best_f = 0.0;
  double ew_residual_sym = 0.0;
  double gnl_residual = 0.0;

  bool mainlocal_anomaly = false;
  bool conditioning_warning = false;
  bool fd_warning = false;
  bool has_bach = false;
};

PointDiagnostics classify_point(const ChartMetric& m, const Vec& x,
                                const ClassifyOptions& opts = {});

}  // namespace weylscope
