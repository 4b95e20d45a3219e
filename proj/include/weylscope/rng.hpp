#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

namespace weylscope {

// Deterministic uniform generator.  std::uniform_real_distribution is
// implementation-defined, so reports seeded with the same value would not
// be byte-identical across standard libraries; this mapping is portable.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  // splitmix64 step
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [-1,1)
  double next_sym() { return 2.0 * next01() - 1.0; }

  Eigen::MatrixXd matrix(int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = next_sym();
    return m;
  }

  Eigen::VectorXd vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = next_sym();
    return v;
  }

  // Haar-ish random rotation: QR of a generic matrix, sign-fixed columns,
  // determinant forced to +1.
  Eigen::MatrixXd rotation(int n) {
    Eigen::MatrixXd a = matrix(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
      if (r(j, j) < 0) q.col(j) *= -1.0;
    if (q.determinant() < 0) q.col(n - 1) *= -1.0;
    return q;
  }

 private:
  std::uint64_t state_;
};

}  // namespace weylscope
