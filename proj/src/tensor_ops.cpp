#include "weylscope/tensor_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace weylscope {

Tensor4 kulkarni_nomizu(const SymBilinear& h, const SymBilinear& k) {
  if (h.rows() != k.rows())
    throw std::invalid_argument("kulkarni_nomizu: dimension mismatch");
  const int n = static_cast<int>(h.rows());
  Tensor4 r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int t = 0; t < n; ++t)
          r(x, y, z, t) = h(x, z) * k(y, t) + h(y, t) * k(x, z) -
                          h(x, t) * k(y, z) - h(y, z) * k(x, t);
  return r;
}

Tensor4 bianchi_map(const Tensor4& t) {
  const int n = t.dim();
  Tensor4 r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int u = 0; u < n; ++u)
          r(x, y, z, u) = t(x, y, z, u) + t(y, z, x, u) + t(z, x, y, u);
  return r;
}

SymBilinear ricci_contraction(const Tensor4& t) {
  const int n = t.dim();
  Mat r = Mat::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += t(x, i, z, i);
      r(x, z) = s;
    }
  return r;
}

double total_trace(const Tensor4& t) { return ricci_contraction(t).trace(); }

double inner(const Tensor3& a, const Tensor3& b) {
  double s = 0.0;
  const auto& va = a.data();
  const auto& vb = b.data();
  for (std::size_t i = 0; i < va.size(); ++i) s += va[i] * vb[i];
  return s;
}

double inner(const Tensor4& a, const Tensor4& b) {
  a.check_same_dim(b);
  double s = 0.0;
  const auto& va = a.data();
  const auto& vb = b.data();
  for (std::size_t i = 0; i < va.size(); ++i) s += va[i] * vb[i];
  return s;
}

Tensor4 antisymmetrize_pairs(const Tensor4& t) {
  const int n = t.dim();
  Tensor4 r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int u = 0; u < n; ++u)
          r(x, y, z, u) = 0.25 * (t(x, y, z, u) - t(y, x, z, u) -
                                  t(x, y, u, z) + t(y, x, u, z));
  return r;
}

Tensor4 symmetrize_pair_swap(const Tensor4& t) {
  const int n = t.dim();
  Tensor4 r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int u = 0; u < n; ++u)
          r(x, y, z, u) = 0.5 * (t(x, y, z, u) + t(z, u, x, y));
  return r;
}

Tensor4 rotate_all_slots(const Tensor4& t, const Mat& q) {
  const int n = t.dim();
  // contract one slot at a time to keep this O(n^5)
  Tensor4 a(n), b(n);
  a = t;
  for (int slot = 0; slot < 4; ++slot) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (int u = 0; u < n; ++u) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
              switch (slot) {
                case 0: s += a(i, y, z, u) * q(i, x); break;
                case 1: s += a(x, i, z, u) * q(i, y); break;
                case 2: s += a(x, y, i, u) * q(i, z); break;
                default: s += a(x, y, z, i) * q(i, u); break;
              }
            }
            b(x, y, z, u) = s;
          }
    a = b;
  }
  return a;
}

Tensor3 rotate_all_slots(const Tensor3& t, const Mat& q) {
  const int n = t.dim();
  Tensor3 a = t, b(n);
  for (int slot = 0; slot < 3; ++slot) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          double s = 0.0;
          for (int i = 0; i < n; ++i) {
            switch (slot) {
              case 0: s += a(i, y, z) * q(i, x); break;
              case 1: s += a(x, i, z) * q(i, y); break;
              default: s += a(x, y, i) * q(i, z); break;
            }
          }
          b(x, y, z) = s;
        }
    a = b;
  }
  return a;
}

double pair_antisym_defect(const Tensor4& t) {
  return (t - antisymmetrize_pairs(t)).max_abs();
}

double pair_swap_defect(const Tensor4& t) {
  return (t - symmetrize_pair_swap(t)).max_abs();
}

}  // namespace weylscope
