#include "weylscope/weyl.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace weylscope {

AlgWeyl::AlgWeyl(Tensor4 t, double tol) : t_(std::move(t)) {
  if (tol <= 0.0) return;
  const double scale = tol * (1.0 + t_.norm());
  if (pair_antisym_defect(t_) > scale)
    throw std::invalid_argument("AlgWeyl: pair antisymmetry violated");
  if (pair_swap_defect(t_) > scale)
    throw std::invalid_argument("AlgWeyl: pair-swap symmetry violated");
  if (bianchi_map(t_).max_abs() > scale)
    throw std::invalid_argument("AlgWeyl: first Bianchi identity violated");
  if (ricci_contraction(t_).norm() > scale)
    throw std::invalid_argument("AlgWeyl: Ricci contraction nonzero");
}

WeylProjection project_to_weyl(const Tensor4& t) {
  const int n = t.dim();
  if (n < 4) return {AlgWeyl::zero(n), true};

  Tensor4 s = symmetrize_pair_swap(antisymmetrize_pairs(t));
  // The Bianchi sum of a pair-symmetric tensor is totally antisymmetric and
  // spans the orthogonal complement of curvature-type tensors inside
  // S^2(Lambda^2); subtracting a third of it is the orthogonal projection.
  s -= bianchi_map(s) * (1.0 / 3.0);

  const Mat ric = ricci_contraction(s);
  const Mat g = Mat::Identity(n, n);
  const Mat k = (ric - (ric.trace() / (2.0 * (n - 1))) * g) / (n - 2.0);
  s -= kulkarni_nomizu(k, g);
  return {AlgWeyl(std::move(s)), false};
}

Endo extend(const AlgWeyl& w, const Endo& h) {
  const int n = w.dim();
  Mat m = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) s += w(i, b, k, a) * h(k, i);
      m(a, b) = s;
    }
  return m;
}

Endo extend_lambda2(const AlgWeyl& w, const TwoForm& f) {
  const int n = w.dim();
  // 1/2 sum_i W(e_i, F e_i) with W(x,y) the endomorphism
  // <W(x,y) z, u> = W(x,y,z,u).
  Mat m = Mat::Zero(n, n);
  for (int u = 0; u < n; ++u)
    for (int z = 0; z < n; ++z) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += f(j, i) * w(i, j, z, u);
      m(u, z) = 0.5 * s;
    }
  return m;
}

Tensor4 residual_deg1_tensor(const AlgWeyl& w, const Endo& h) {
  const int n = w.dim();
  Tensor4 r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int u = 0; u < n; ++u) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            s += w(x, y, m, u) * h(m, z) + w(y, z, m, u) * h(m, x) +
                 w(z, x, m, u) * h(m, y);
          r(x, y, z, u) = s;
        }
  return r;
}

double residual_deg1(const AlgWeyl& w, const Endo& h) {
  return residual_deg1_tensor(w, h).norm();
}

Tensor4 residual_deg11_tensor(const AlgWeyl& w, const Endo& h) {
  const int n = w.dim();
  Tensor4 r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int u = 0; u < n; ++u) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            s += w(m, y, z, u) * h(m, x) + w(x, m, z, u) * h(m, y) -
                 w(x, y, m, u) * h(m, z) - w(x, y, z, m) * h(m, u);
          r(x, y, z, u) = s;
        }
  return r;
}

double residual_deg11(const AlgWeyl& w, const Endo& h) {
  return residual_deg11_tensor(w, h).norm();
}

Tensor4 residual_lie_tensor(const AlgWeyl& w, const Endo& h) {
  const int n = w.dim();
  Tensor4 r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int u = 0; u < n; ++u) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            s += w(m, y, z, u) * h(m, x) + w(x, m, z, u) * h(m, y) +
                 w(x, y, m, u) * h(m, z) + w(x, y, z, m) * h(m, u);
          r(x, y, z, u) = s;
        }
  return r;
}

double residual_lie(const AlgWeyl& w, const Endo& h) {
  return residual_lie_tensor(w, h).norm();
}

namespace {

double max_over_basis(const AlgWeyl& w, const Endo& h,
                      const std::vector<Endo>& fs, bool plus_sign, bool lie_sign) {
  const Mat ht = h.transpose();
  double worst = 0.0;
  for (const Endo& f : fs) {
    const Mat wf = extend(w, f);
    Mat lhs, rhs;
    if (lie_sign) {
      lhs = extend(w, h * f + f * ht);
      rhs = -(wf * h) - ht * wf;
    } else if (plus_sign) {
      lhs = extend(w, h * f - f * ht);
      rhs = wf * h - ht * wf;
    } else {
      lhs = extend(w, h * f + f * ht);
      rhs = wf * h + ht * wf;
    }
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

}  // namespace

double residual_degplus(const AlgWeyl& w, const Endo& h) {
  return max_over_basis(w, h, skew_basis(w.dim()), true, false);
}

double residual_degminus(const AlgWeyl& w, const Endo& h) {
  return max_over_basis(w, h, skew_basis(w.dim()), false, false);
}

double residual_eqvlie(const AlgWeyl& w, const Endo& h) {
  return max_over_basis(w, h, skew_basis(w.dim()), false, true);
}

double residual_degplus_sym(const AlgWeyl& w, const Endo& h) {
  return max_over_basis(w, h, sym_basis(w.dim()), true, false);
}

double residual_mainalg(const AlgWeyl& w, const Endo& h) {
  double worst = 0.0;
  for (const Endo& f : skew_basis(w.dim())) {
    const Mat lhs = extend(w, h * f);
    const Mat rhs = extend(w, f) * h;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

std::string to_string(SpaceTag tag) {
  switch (tag) {
    case SpaceTag::EW: return "E_W";
    case SpaceTag::SW: return "S_W";
    case SpaceTag::AW: return "A_W";
    case SpaceTag::GW: return "g_W";
  }
  return "?";
}

std::vector<Endo> endo_basis(int n) {
  std::vector<Endo> b;
  b.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat e = Mat::Zero(n, n);
      e(i, j) = 1.0;
      b.push_back(e);
    }
  return b;
}

std::vector<Endo> sym_basis(int n) {
  std::vector<Endo> b;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    Mat e = Mat::Zero(n, n);
    e(i, i) = 1.0;
    b.push_back(e);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat e = Mat::Zero(n, n);
      e(i, j) = e(j, i) = r;
      b.push_back(e);
    }
  return b;
}

std::vector<Endo> skew_basis(int n) {
  std::vector<Endo> b;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat e = Mat::Zero(n, n);
      e(j, i) = r;
      e(i, j) = -r;
      b.push_back(e);
    }
  return b;
}

namespace {

Tensor4 residual_for(const AlgWeyl& w, ResidualKind kind, const Endo& h,
                     const std::vector<Endo>& fs, const std::vector<Endo>& ss) {
  switch (kind) {
    case ResidualKind::Deg1: return residual_deg1_tensor(w, h);
    case ResidualKind::Deg11: return residual_deg11_tensor(w, h);
    case ResidualKind::Lie: return residual_lie_tensor(w, h);
    default: break;
  }
  // Basis-quantified identities: stack the endomorphism residuals for each
  // basis element into one rank-4 slab (slot 0 indexes the basis element,
  // padded with zero rows when the basis is smaller than n^2).
  const int n = w.dim();
  const std::vector<Endo>& basis =
      (kind == ResidualKind::DegPlusSym) ? ss : fs;
  Tensor4 r(n);
  const Mat ht = h.transpose();
  int slot = 0;
  for (const Endo& f : basis) {
    const Mat wf = extend(w, f);
    Mat res;
    switch (kind) {
      case ResidualKind::DegPlus:
      case ResidualKind::DegPlusSym:
        res = extend(w, h * f - f * ht) - (wf * h - ht * wf);
        break;
      case ResidualKind::DegMinus:
        res = extend(w, h * f + f * ht) - (wf * h + ht * wf);
        break;
      case ResidualKind::Mainalg:
        res = extend(w, h * f) - wf * h;
        break;
      case ResidualKind::Eqvlie:
        res = extend(w, h * f + f * ht) + wf * h + ht * wf;
        break;
      default:
        throw std::logic_error("residual_for: unreachable");
    }
    const int a = slot / n, b = slot % n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(a, b, i, j) = res(i, j);
    ++slot;
  }
  return r;
}

}  // namespace

std::vector<Endo> residual_kernel(const AlgWeyl& w, ResidualKind kind,
                                  const std::vector<Endo>& domain,
                                  double rank_cut) {
  const int n = w.dim();
  const std::size_t rows = static_cast<std::size_t>(n) * n * n * n;
  const int d = static_cast<int>(domain.size());
  const std::vector<Endo> fs = skew_basis(n);
  const std::vector<Endo> ss = sym_basis(n);

  Eigen::MatrixXd op(rows, d);
  for (int c = 0; c < d; ++c) {
    const Tensor4 r = residual_for(w, kind, domain[c], fs, ss);
    for (std::size_t i = 0; i < rows; ++i) op(static_cast<Eigen::Index>(i), c) = r.data()[i];
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cut = rank_cut * smax;

  std::vector<Endo> kernel;
  for (int c = 0; c < d; ++c) {
    const double s = c < sv.size() ? sv(c) : 0.0;
    if (smax == 0.0 || s <= cut) {
      Mat m = Mat::Zero(n, n);
      for (int k = 0; k < d; ++k) m += svd.matrixV()(k, c) * domain[k];
      kernel.push_back(m);
    }
  }
  return kernel;
}

SymmetrySpaceBasis solve_space(const AlgWeyl& w, SpaceTag tag, double rank_cut) {
  const int n = w.dim();
  SymmetrySpaceBasis out;
  out.tag = tag;
  switch (tag) {
    case SpaceTag::EW:
      out.basis = residual_kernel(w, ResidualKind::Deg1, endo_basis(n), rank_cut);
      break;
    case SpaceTag::SW:
      out.basis = residual_kernel(w, ResidualKind::Deg1, sym_basis(n), rank_cut);
      break;
    case SpaceTag::AW:
      out.basis = residual_kernel(w, ResidualKind::Deg1, skew_basis(n), rank_cut);
      break;
    case SpaceTag::GW:
      out.basis = residual_kernel(w, ResidualKind::Lie, endo_basis(n), rank_cut);
      break;
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

double max_principal_angle(const std::vector<Endo>& a, const std::vector<Endo>& b) {
  if (a.size() != b.size()) return M_PI / 2.0;
  if (a.empty()) return 0.0;
  const int da = static_cast<int>(a.size());
  Eigen::MatrixXd gram(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) gram(i, j) = inner(a[i], b[j]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  double worst = 0.0;
  for (int i = 0; i < da; ++i) {
    const double c = std::min(1.0, std::max(-1.0, svd.singularValues()(i)));
    worst = std::max(worst, std::acos(c));
  }
  return worst;
}

double check_bracket_closure(const AlgWeyl& w, const Endo& h1, const Endo& h2) {
  return residual_lie(w, h1 * h2 - h2 * h1);
}

double check_anticommutator_closure(const AlgWeyl& w, const Endo& h1, const Endo& h2) {
  return residual_deg1(w, h1 * h2 + h2 * h1);
}

double check_cor1(const AlgWeyl& w, const Endo& h) {
  const Mat ht = h.transpose();
  double worst = 0.0;
  for (const Endo& f : skew_basis(w.dim())) {
    const Mat lhs = extend(w, h * f * ht);
    const Mat rhs = ht * extend(w, f) * h;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

KernelObstructionReport check_kernel_obstructions(const AlgWeyl& w, double rank_cut) {
  KernelObstructionReport rep;
  const int n = w.dim();

  const SymmetrySpaceBasis ew = solve_space(w, SpaceTag::EW, rank_cut);
  const SymmetrySpaceBasis gw = solve_space(w, SpaceTag::GW, rank_cut);
  rep.dim_ew = ew.dimension;
  rep.dim_gw = gw.dimension;

  for (const Endo& h : ew.basis)
    rep.max_ew_skew_residual =
        std::max(rep.max_ew_skew_residual, extend(w, proj_skew(h)).norm());
  for (const Endo& h : gw.basis)
    rep.max_gw_sym_residual =
        std::max(rep.max_gw_sym_residual, extend(w, proj_sym(h)).norm());

  // Kernel dimensions of the extension restricted to Lambda^2 and S^2.
  auto kernel_dim = [&](const std::vector<Endo>& domain) {
    const int d = static_cast<int>(domain.size());
    Eigen::MatrixXd op(n * n, d);
    for (int c = 0; c < d; ++c) {
      const Mat m = extend(w, domain[c]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) op(i * n + j, c) = m(i, j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op);
    const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    int dim = 0;
    for (int c = 0; c < std::min<int>(d, svd.singularValues().size()); ++c)
      if (smax == 0.0 || svd.singularValues()(c) <= rank_cut * smax) ++dim;
    if (smax == 0.0) dim = d;
    return dim;
  };
  rep.dim_ker_lambda2 = kernel_dim(skew_basis(n));
  rep.dim_ker_s2 = kernel_dim(sym_basis(n));
  return rep;
}

}  // namespace weylscope
