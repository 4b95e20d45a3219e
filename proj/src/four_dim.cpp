#include "weylscope/four_dim.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace weylscope {

namespace {

void require_dim4(int n, const char* who) {
  if (n != 4) throw std::invalid_argument(std::string(who) + ": requires n = 4");
}

// index pairs (i<j) in lexicographic order
constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

int pair_index(int i, int j) {
  for (int a = 0; a < 6; ++a)
    if (kPairs[a][0] == i && kPairs[a][1] == j) return a;
  throw std::logic_error("pair_index: bad pair");
}

int levi_civita4(int a, int b, int c, int d) {
  int p[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) {
        std::swap(p[i], p[j]);
        sign = -sign;
      }
    }
  return sign;
}

// Coordinates of the standard self-dual / anti-self-dual forms, divided by
// 2, in the orthonormal wedge basis {w_a / sqrt(2)}: unit 6-vectors.
Eigen::Matrix<double, 6, 3> sd_coords(bool plus) {
  // omega_1 = w01 +- w23, omega_2 = w02 -+ w13, omega_3 = +-w03 + w12
  Eigen::Matrix<double, 6, 3> u = Eigen::Matrix<double, 6, 3>::Zero();
  const double r = 1.0 / std::sqrt(2.0);
  const double s = plus ? 1.0 : -1.0;
  u(0, 0) = r;      u(5, 0) = s * r;   // w01, w23
  u(1, 1) = r;      u(4, 1) = -s * r;  // w02, w13
  u(2, 2) = s * r;  u(3, 2) = r;       // w03, w12
  return u;
}

}  // namespace

TwoForm hodge_star(const TwoForm& f) {
  require_dim4(static_cast<int>(f.rows()), "hodge_star");
  Mat out = Mat::Zero(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) s += levi_civita4(a, b, c, d) * f(c, d);
      out(a, b) = 0.5 * s;
    }
  return out;
}

SDBasis standard_sd_basis() {
  const EuclideanSpace sp(4);
  SDBasis b;
  b.plus[0] = wedge(sp, 0, 1) + wedge(sp, 2, 3);
  b.plus[1] = wedge(sp, 0, 2) - wedge(sp, 1, 3);
  b.plus[2] = wedge(sp, 0, 3) + wedge(sp, 1, 2);
  b.minus[0] = wedge(sp, 0, 1) - wedge(sp, 2, 3);
  b.minus[1] = wedge(sp, 0, 2) + wedge(sp, 1, 3);
  b.minus[2] = wedge(sp, 1, 2) - wedge(sp, 0, 3);
  return b;
}

Eigen::Matrix<double, 6, 6> lambda2_matrix(const AlgWeyl& w) {
  require_dim4(w.dim(), "lambda2_matrix");
  Eigen::Matrix<double, 6, 6> a;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      a(p, q) = w(kPairs[p][0], kPairs[p][1], kPairs[q][0], kPairs[q][1]);
  return a;
}

Tensor4 tensor_from_lambda2_matrix(const Eigen::Matrix<double, 6, 6>& a) {
  Tensor4 t(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const int p = (i < j) ? pair_index(i, j) : pair_index(j, i);
      const double si = (i < j) ? 1.0 : -1.0;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          if (k == l) continue;
          const int q = (k < l) ? pair_index(k, l) : pair_index(l, k);
          const double sk = (k < l) ? 1.0 : -1.0;
          t(i, j, k, l) = si * sk * a(p, q);
        }
    }
  return t;
}

WeylSplit split_weyl(const AlgWeyl& w) {
  require_dim4(w.dim(), "split_weyl");
  const Eigen::Matrix<double, 6, 6> a = lambda2_matrix(w);
  const Eigen::Matrix<double, 6, 3> up = sd_coords(true);
  const Eigen::Matrix<double, 6, 3> um = sd_coords(false);
  const Eigen::Matrix<double, 6, 6> pp = up * up.transpose();
  const Eigen::Matrix<double, 6, 6> pm = um * um.transpose();
  return {AlgWeyl(tensor_from_lambda2_matrix(pp * a * pp)),
          AlgWeyl(tensor_from_lambda2_matrix(pm * a * pm))};
}

WeylSpectrum spectrum(const AlgWeyl& w) {
  require_dim4(w.dim(), "spectrum");
  const Eigen::Matrix<double, 6, 6> a = lambda2_matrix(w);
  const SDBasis sd = standard_sd_basis();
  WeylSpectrum out;

  for (int side = 0; side < 2; ++side) {
    const bool plus = (side == 0);
    const Eigen::Matrix<double, 6, 3> u = sd_coords(plus);
    const Eigen::Matrix3d block = u.transpose() * a * u;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(block);
    Eigen::Matrix3d v = es.eigenvectors();
    if (v.determinant() < 0) v.col(2) *= -1.0;  // keep the triple oriented

    const auto& base = plus ? sd.plus : sd.minus;
    for (int k = 0; k < 3; ++k) {
      Mat omega = Mat::Zero(4, 4);
      for (int l = 0; l < 3; ++l) omega += v(l, k) * base[l];
      if (plus) {
        out.lambda_plus(k) = es.eigenvalues()(k);
        out.omega_plus[k] = omega;
        out.j_plus[k] = omega;  // norm-2 self-dual forms square to -Id
      } else {
        out.lambda_minus(k) = es.eigenvalues()(k);
        out.omega_minus[k] = omega;
        out.j_minus[k] = omega;
      }
    }
  }
  return out;
}

SigmaBasis sigma_basis(const WeylSpectrum& s) {
  SigmaBasis sb;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) sb.sigma[i][j] = s.j_plus[i] * s.j_minus[j];
  return sb;
}

double spectrum_invariant_defect(const AlgWeyl& w, const WeylSpectrum& s) {
  const Mat id = Mat::Identity(4, 4);
  double worst = 0.0;
  auto upd = [&](double x) { worst = std::max(worst, x); };

  upd(std::fabs(s.lambda_plus.sum()));
  upd(std::fabs(s.lambda_minus.sum()));
  for (int k = 0; k < 3; ++k) {
    upd((s.j_plus[k] * s.j_plus[k] + id).norm());
    upd((s.j_minus[k] * s.j_minus[k] + id).norm());
    // eigenform property under the Lambda^2 action
    upd((extend_lambda2(w, s.omega_plus[k]) - s.lambda_plus(k) * s.omega_plus[k]).norm());
    upd((extend_lambda2(w, s.omega_minus[k]) - s.lambda_minus(k) * s.omega_minus[k]).norm());
    // hodge type
    upd((hodge_star(s.omega_plus[k]) - s.omega_plus[k]).norm());
    upd((hodge_star(s.omega_minus[k]) + s.omega_minus[k]).norm());
    upd(std::fabs(inner(s.omega_plus[k], s.omega_plus[k]) - 4.0));
    upd(std::fabs(inner(s.omega_minus[k], s.omega_minus[k]) - 4.0));
  }
  // quaternion identities and cross-commutation
  upd((s.j_plus[0] * s.j_plus[1] + s.j_plus[1] * s.j_plus[0]).norm());
  upd((s.j_minus[0] * s.j_minus[1] + s.j_minus[1] * s.j_minus[0]).norm());
  upd((s.j_plus[0] * s.j_plus[1] - s.j_plus[2]).norm());
  upd((s.j_minus[0] * s.j_minus[1] - s.j_minus[2]).norm());
  for (int k = 0; k < 3; ++k)
    for (int p = 0; p < 3; ++p)
      upd((s.j_plus[k] * s.j_minus[p] - s.j_minus[p] * s.j_plus[k]).norm());
  return worst;
}

double sigma_invariant_defect(const SigmaBasis& sb) {
  double worst = 0.0;
  auto upd = [&](double x) { worst = std::max(worst, x); };
  const Mat id = Mat::Identity(4, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Mat& s = sb.sigma[i][j];
      upd((s - s.transpose()).norm());            // symmetric
      upd((s * s - id).norm());                   // involution
      upd(std::fabs(s.trace()));                  // trace-free
      upd(std::fabs(inner(s, s) - 4.0));          // |sigma| = 2
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          if (k != i || l != j) upd(std::fabs(inner(s, sb.sigma[k][l])));
    }
  return worst;
}

AlgWeyl build_weyl_from_spectra(const Eigen::Vector3d& lambda_plus,
                                const Eigen::Vector3d& lambda_minus,
                                const Mat* frame_rotation) {
  if (std::fabs(lambda_plus.sum()) > 1e-12 || std::fabs(lambda_minus.sum()) > 1e-12)
    throw std::invalid_argument("build_weyl_from_spectra: triples must sum to zero");
  const Eigen::Matrix<double, 6, 3> up = sd_coords(true);
  const Eigen::Matrix<double, 6, 3> um = sd_coords(false);
  Eigen::Matrix<double, 6, 6> a = Eigen::Matrix<double, 6, 6>::Zero();
  for (int k = 0; k < 3; ++k) {
    a += lambda_plus(k) * up.col(k) * up.col(k).transpose();
    a += lambda_minus(k) * um.col(k) * um.col(k).transpose();
  }
  Tensor4 t = tensor_from_lambda2_matrix(a);
  if (frame_rotation) t = rotate_all_slots(t, *frame_rotation);
  return AlgWeyl(std::move(t));
}

double check_eigsym(const AlgWeyl& w, const WeylSpectrum& s, const SigmaBasis& sb) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double lam = s.lambda_plus(i) + s.lambda_minus(j);
      worst = std::max(worst, (extend(w, sb.sigma[i][j]) - lam * sb.sigma[i][j]).norm());
    }
  return worst;
}

std::pair<double, double> check_supersym(const AlgWeyl& w, const TwoForm& f,
                                         const TwoForm& g) {
  const int n = w.dim();
  auto tf = [n](const Mat& m) {
    return Mat(m - (m.trace() / n) * Mat::Identity(n, n));
  };
  const Mat wf = extend(w, f);
  const Mat wg = extend(w, g);
  const Mat anti = extend(w, f * g + g * f) - tf(wf * g + g * wf) - tf(f * wg + wg * f);
  const Mat comm = extend(w, f * g - g * f) + (wf * g - g * wf) + (f * wg - wg * f);
  return {anti.norm(), comm.norm()};
}

SymmetrySpaceBasis ew_split_4d(const AlgWeyl& w, double rank_cut) {
  require_dim4(w.dim(), "ew_split_4d");
  SymmetrySpaceBasis out;
  out.tag = SpaceTag::EW;

  // S_W: deg1 kernel over symmetric endomorphisms.
  out.basis = residual_kernel(w, ResidualKind::Deg1, sym_basis(4), rank_cut);

  // A_W: two-forms annihilated by the Lambda^2 action.
  const std::vector<Endo> skews = skew_basis(4);
  Eigen::MatrixXd op(16, 6);
  for (int c = 0; c < 6; ++c) {
    const Mat m = extend(w, skews[c]);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) op(i * 4 + j, c) = m(i, j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeFullV);
  const double smax = svd.singularValues()(0);
  for (int c = 0; c < 6; ++c) {
    const double s = c < svd.singularValues().size() ? svd.singularValues()(c) : 0.0;
    if (smax == 0.0 || s <= rank_cut * smax) {
      Mat m = Mat::Zero(4, 4);
      for (int k = 0; k < 6; ++k) m += svd.matrixV()(k, c) * skews[k];
      out.basis.push_back(m);
    }
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

SymkerReport symker_report(const AlgWeyl& w, const SymBilinear& h, double tol) {
  require_dim4(w.dim(), "symker_report");
  SymkerReport rep;
  rep.deg1_residual = residual_deg1(w, h);
  rep.extend_residual = extend(w, h).norm();
  rep.trace_abs = std::fabs(h.trace());
  rep.h_norm = h.norm();
  const double scale = tol * (1.0 + w.norm()) * (1.0 + h.norm());
  rep.precond_ok = rep.deg1_residual <= scale && rep.extend_residual <= scale &&
                   rep.trace_abs <= scale;

  const WeylSpectrum s = spectrum(w);
  rep.lambda_plus = s.lambda_plus;
  rep.lambda_minus = s.lambda_minus;

  auto side = [&](const Eigen::Vector3d& lam, int& kdim, bool& nonzero) {
    const double lmax = lam.cwiseAbs().maxCoeff();
    nonzero = lmax > tol * (1.0 + w.norm());
    kdim = 0;
    for (int k = 0; k < 3; ++k)
      if (std::fabs(lam(k)) <= (nonzero ? Tol::kRankCut * lmax : lmax + 1.0)) ++kdim;
  };
  side(s.lambda_plus, rep.ker_dim_plus, rep.wplus_nonzero);
  side(s.lambda_minus, rep.ker_dim_minus, rep.wminus_nonzero);

  const bool h_nonzero = rep.h_norm > tol;
  if (rep.precond_ok && h_nonzero) {
    if (rep.wplus_nonzero && rep.ker_dim_plus != 1) rep.consistent = false;
    if (rep.wminus_nonzero && rep.ker_dim_minus != 1) rep.consistent = false;
  }
  return rep;
}

double check_4id(const AlgWeyl& w) {
  require_dim4(w.dim(), "check_4id");
  const double w2 = w.norm() * w.norm();
  double worst = 0.0;
  for (int x = 0; x < 4; ++x)
    for (int y = x; y < 4; ++y) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int c = 0; c < 4; ++c) s += w(x, a, b, c) * w(y, a, b, c);
      const double target = (x == y) ? 0.25 * w2 : 0.0;
      worst = std::max(worst, std::fabs(s - target));
    }
  return worst;
}

std::pair<double, double> weyl_nullity_singular_values(const AlgWeyl& w) {
  require_dim4(w.dim(), "weyl_nullity_singular_values");
  Eigen::MatrixXd m(64, 4);
  for (int x = 0; x < 4; ++x) {
    int r = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) m(r++, x) = w(x, a, b, c);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  return {sv(sv.size() - 1), sv(0)};
}

}  // namespace weylscope
