#pragma once

#include "weylscope/chart.hpp"
#include "weylscope/weyl.hpp"

namespace weylscope {

// Orthonormal frame at a point: g = L L^T, frame vectors are the columns
// of E = L^{-T} in chart coordinates.
struct Frame {
  Mat l;
  Mat e;
};

Frame orthonormal_frame(const Mat& g);

// Transport of covariant tensor components from coordinates to the frame.
Mat to_frame_rank2(const Mat& t, const Frame& f);
Tensor3 to_frame_rank3(const Tensor3& t, const Frame& f);
Tensor4 to_frame_rank4(const Tensor4& t, const Frame& f);
Tensor5 to_frame_rank5(const Tensor5& t, const Frame& f);

// Christoffel symbols Gamma(k;i,j) = Gamma^k_ij in chart coordinates.
Tensor3 christoffel(const ChartMetric& m, const Vec& x);

// Riemann tensor in the orthonormal frame, with the sign convention fixed
// so that the unit round sphere has R(e1,e2,e1,e2) = +1.
Tensor4 riemann(const ChartMetric& m, const Vec& x);

// Reduced Ricci tensor h = (Ric - s/(2(n-1)) g)/(n-2), coordinate
// components, and the Cotton tensor C(u,x,y) = (D_x h)(y,u) - (D_y h)(x,u).
Mat reduced_ricci_coord(const ChartMetric& m, const Vec& x);
Tensor3 cotton_coord(const ChartMetric& m, const Vec& x);

struct BundleOptions {
  bool need_bach = true;
  bool need_bianchi2 = true;
  double classify_tol = 1e-6;
};

struct CurvatureBundle {
  int dim = 0;
  Vec point;
  Frame frame;

  // orthonormal-frame components
  Tensor4 riemann;
  SymBilinear ricci;
  double scalar = 0.0;
  SymBilinear reduced_ricci;  // h
  Tensor4 schouten;           // h . g
  Tensor4 weyl_raw;           // R - h . g
  AlgWeyl weyl;               // weyl_raw projected onto exact algebraic Weyl
  double weyl_projection_defect = 0.0;
  Tensor3 cotton;   // C(u,x,y)
  Tensor3 delta_w;  // -sum_i (D_{e_i} W)(e_i,.,.,.)
  SymBilinear bach;

  double deltaw_cotton_residual = 0.0;  // || dW + (n-3) C ||
  double bianchi2_residual = 0.0;       // cyclic DW + Cotton correction
  bool has_bach = false;
  bool fd_warning = false;  // nested finite differences behind Bach
};

CurvatureBundle curvature_bundle(const ChartMetric& m, const Vec& x,
                                 const BundleOptions& opts = {});

// Covariant derivatives of tensor fields given as point functions in chart
// coordinates, by central differences plus Christoffel corrections at x.
Mat cov_deriv_covector(const std::function<Vec(const Vec&)>& field,
                       const Tensor3& gamma, const Vec& x, const FdOptions& o);
Tensor4 cov_deriv_rank3(const std::function<Tensor3(const Vec&)>& field,
                        const Tensor3& gamma, const Vec& x, const FdOptions& o);

}  // namespace weylscope
