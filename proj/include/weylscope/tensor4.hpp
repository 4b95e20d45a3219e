#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace weylscope {

// Dense rank-3 array T(a,b,c) over the standard frame, n <= 8.
// Cotton-type tensors live here with slot order (vector; form, form):
// C(u,x,y) antisymmetric in (x,y).
class Tensor3 {
 public:
  Tensor3() : n_(0) {}
  explicit Tensor3(int n) : n_(n), v_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int dim() const { return n_; }

  double& operator()(int a, int b, int c) { return v_[idx(a, b, c)]; }
  double operator()(int a, int b, int c) const { return v_[idx(a, b, c)]; }

  Tensor3& operator+=(const Tensor3& o);
  Tensor3& operator-=(const Tensor3& o);
  Tensor3& operator*=(double s);
  Tensor3 operator+(const Tensor3& o) const { Tensor3 r(*this); r += o; return r; }
  Tensor3 operator-(const Tensor3& o) const { Tensor3 r(*this); r -= o; return r; }
  Tensor3 operator*(double s) const { Tensor3 r(*this); r *= s; return r; }

  double norm() const;
  double max_abs() const;

  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

 private:
  std::size_t idx(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
  }
  int n_;
  std::vector<double> v_;
};

// Dense rank-4 array T(x,y,z,u).  Curvature-type tensors (pair
// antisymmetry in (x,y) and (z,u)) and the rank-4 residuals of the
// algebra module both use this storage; invariants are checked by the
// wrappers that need them, not here.
class Tensor4 {
 public:
  Tensor4() : n_(0) {}
  explicit Tensor4(int n)
      : n_(n), v_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int dim() const { return n_; }

  double& operator()(int x, int y, int z, int u) { return v_[idx(x, y, z, u)]; }
  double operator()(int x, int y, int z, int u) const { return v_[idx(x, y, z, u)]; }

  Tensor4& operator+=(const Tensor4& o);
  Tensor4& operator-=(const Tensor4& o);
  Tensor4& operator*=(double s);
  Tensor4 operator+(const Tensor4& o) const { Tensor4 r(*this); r += o; return r; }
  Tensor4 operator-(const Tensor4& o) const { Tensor4 r(*this); r -= o; return r; }
  Tensor4 operator*(double s) const { Tensor4 r(*this); r *= s; return r; }

  double norm() const;
  double max_abs() const;

  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

  void check_same_dim(const Tensor4& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Tensor4: dimension mismatch");
  }

 private:
  std::size_t idx(int x, int y, int z, int u) const {
    return ((static_cast<std::size_t>(x) * n_ + y) * n_ + z) * n_ + u;
  }
  int n_;
  std::vector<double> v_;
};

// Dense rank-5 array, used for third metric derivatives (k,l,m; i,j) and
// covariant derivatives of curvature tensors (m; x,y,z,u).
class Tensor5 {
 public:
  Tensor5() : n_(0) {}
  explicit Tensor5(int n)
      : n_(n), v_(static_cast<std::size_t>(n) * n * n * n * n, 0.0) {}

  int dim() const { return n_; }

  double& operator()(int a, int b, int c, int d, int e) { return v_[idx(a, b, c, d, e)]; }
  double operator()(int a, int b, int c, int d, int e) const { return v_[idx(a, b, c, d, e)]; }

  Tensor5& operator-=(const Tensor5& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }

  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

 private:
  std::size_t idx(int a, int b, int c, int d, int e) const {
    return (((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d) * n_ + e;
  }
  int n_;
  std::vector<double> v_;
};

}  // namespace weylscope
