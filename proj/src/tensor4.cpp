#include "weylscope/tensor4.hpp"

#include <cmath>

namespace weylscope {

Tensor3& Tensor3::operator+=(const Tensor3& o) {
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}
Tensor3& Tensor3::operator-=(const Tensor3& o) {
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}
Tensor3& Tensor3::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}
double Tensor3::norm() const {
  double s = 0.0;
  for (double x : v_) s += x * x;
  return std::sqrt(s);
}
double Tensor3::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::fabs(x));
  return m;
}

Tensor4& Tensor4::operator+=(const Tensor4& o) {
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}
Tensor4& Tensor4::operator-=(const Tensor4& o) {
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}
Tensor4& Tensor4::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}
double Tensor4::norm() const {
  double s = 0.0;
  for (double x : v_) s += x * x;
  return std::sqrt(s);
}
double Tensor4::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace weylscope
