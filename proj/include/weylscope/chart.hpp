#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weylscope/tensor2.hpp"
#include "weylscope/tensor4.hpp"

namespace weylscope {

struct Box {
  Vec lo, hi;

  bool contains(const Vec& x, double slack = 0.0) const {
    for (int i = 0; i < x.size(); ++i)
      if (x(i) < lo(i) - slack || x(i) > hi(i) + slack) return false;
    return true;
  }
  Vec center() const { return 0.5 * (lo + hi); }

  static Box cube(int n, double half_width) {
    Box b;
    b.lo = Vec::Constant(n, -half_width);
    b.hi = Vec::Constant(n, half_width);
    return b;
  }
};

struct FdOptions {
  double step = 1e-3;       // base step per coordinate
  bool richardson = true;   // one extrapolation level for first derivatives
};

// Value and partial derivatives of the metric components at a point, in
// chart coordinates.  dg(k;i,j) = d_k g_ij, d2g(k,l;i,j), d3g(k,l,m;i,j).
struct MetricJet {
  Mat g;
  Tensor3 dg;
  Tensor4 d2g;
  Tensor5 d3g;
};

// Scalar function with optional closed-form derivatives; used for
// conformal factors.
struct ScalarField {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;       // may be empty
  std::function<Mat(const Vec&)> hess;       // may be empty
  std::function<Tensor3(const Vec&)> third;  // may be empty

  bool analytic() const { return grad && hess && third; }
};

struct ConformalRecord {
  std::string description;
  ScalarField factor;  // the exponent f in e^{2f}
};

// Metric components as callable functions on a coordinate box.  Positive
// definiteness is checked wherever the metric is evaluated through jet().
// Derivatives come from closed-form callbacks when present, central finite
// differences otherwise.
class ChartMetric {
 public:
  using GFn = std::function<Mat(const Vec&)>;
  using DgFn = std::function<Tensor3(const Vec&)>;
  using D2gFn = std::function<Tensor4(const Vec&)>;
  using D3gFn = std::function<Tensor5(const Vec&)>;

  ChartMetric(int dim, Box box, GFn g);
  ChartMetric(int dim, Box box, GFn g, DgFn dg, D2gFn d2g, D3gFn d3g);

  int dim() const { return dim_; }
  const Box& box() const { return box_; }
  bool analytic() const { return static_cast<bool>(dg_); }
  const FdOptions& fd() const { return fd_; }
  void set_fd(const FdOptions& o) { fd_ = o; }

  // metric value with symmetry/positive-definiteness checks
  Mat metric(const Vec& x) const;
  // metric value and derivatives through third order
  MetricJet jet(const Vec& x) const;

  const std::optional<ConformalRecord>& conformal() const { return conformal_; }
  void set_conformal(ConformalRecord r) { conformal_ = std::move(r); }

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

 private:
  int dim_;
  Box box_;
  GFn g_;
  DgFn dg_;
  D2gFn d2g_;
  D3gFn d3g_;
  FdOptions fd_;
  std::optional<ConformalRecord> conformal_;
  std::string name_;
};

// e^{2f} g with the factor recorded; derivative callbacks are rebuilt by
// the Leibniz rule when both inputs are analytic, otherwise the result
// falls back to finite differences.
ChartMetric conformal_rescale(const ChartMetric& m, const ScalarField& f,
                              const std::string& description = "rescaled");

// Pullback by a constant invertible linear map: g'(y) = A^T g(Ay) A.
ChartMetric pullback_linear(const ChartMetric& m, const Mat& a);

// Builtin catalog.  Keys: flat, diag-poly (any dim 3..5); round-s4,
// s2xs2, round-s4-conformal, s2xs2-conformal (dim 4).  All entries carry
// closed-form derivative callbacks.
ChartMetric catalog_metric(const std::string& key, int dim = 4);
std::vector<std::string> catalog_keys();
bool is_catalog_key(const std::string& key);

// Seeded random polynomial perturbation of the flat metric on a small box;
// positive definite by construction (the perturbation is scaled down until
// Cholesky succeeds on a sample grid).  Used as a negative control.
ChartMetric random_polynomial_metric(std::uint64_t seed, int dim = 4);

// Central-difference stencils for scalar functions (exposed for tests).
double fd_d1(const std::function<double(const Vec&)>& f, const Vec& x, int k,
             const FdOptions& o);
double fd_d2(const std::function<double(const Vec&)>& f, const Vec& x, int k, int l,
             const FdOptions& o);
double fd_d3(const std::function<double(const Vec&)>& f, const Vec& x, int k, int l,
             int m, const FdOptions& o);

}  // namespace weylscope
