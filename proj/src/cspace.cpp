#include "weylscope/cspace.hpp"

#include <cmath>
#include <stdexcept>

namespace weylscope {

std::string to_string(CSpaceStatus s) {
  switch (s) {
    case CSpaceStatus::Solved: return "solved";
    case CSpaceStatus::WeylZeroCottonZero: return "weyl_zero_cotton_zero";
    case CSpaceStatus::WeylZeroCottonNonzero: return "weyl_zero_cotton_nonzero";
    case CSpaceStatus::Obstructed: return "obstructed";
  }
  return "?";
}

namespace {

Vec weyl_cotton_pairing(const AlgWeyl& w, const Tensor3& c) {
  const int n = w.dim();
  Vec kappa = Vec::Zero(n);
  for (int d = 0; d < n; ++d) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) s += w(d, i, j, k) * c(i, j, k);
    kappa(d) = s;
  }
  return kappa;
}

Tensor3 insert_vector(const AlgWeyl& w, const Vec& zeta) {
  const int n = w.dim();
  Tensor3 out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int d = 0; d < n; ++d) s += zeta(d) * w(d, a, b, c);
        out(a, b, c) = s;
      }
  return out;
}

Endo endo_of_form(const Mat& b) { return b.transpose(); }
Mat form_of_endo(const Endo& m) { return m.transpose(); }

}  // namespace

CSpaceSolution solve_zeta(const AlgWeyl& w, const Tensor3& c, double tol,
                          double weyl_zero_tol) {
  if (w.dim() != 4) throw std::invalid_argument("solve_zeta: requires n = 4");
  if (c.dim() != 4) throw std::invalid_argument("solve_zeta: shape mismatch");
  const double wn = w.norm();
  CSpaceSolution out;
  out.zeta = Vec::Zero(4);

  if (wn <= weyl_zero_tol) {
    out.residual = c.norm();
    out.status = (c.norm() <= tol) ? CSpaceStatus::WeylZeroCottonZero
                                   : CSpaceStatus::WeylZeroCottonNonzero;
    return out;
  }

  const Vec kappa = weyl_cotton_pairing(w, c);
  out.zeta = -4.0 / (wn * wn) * kappa;
  Tensor3 resid = insert_vector(w, out.zeta);
  resid += c;
  out.residual = resid.norm();
  out.status = (out.residual <= tol * (1.0 + c.norm())) ? CSpaceStatus::Solved
                                                        : CSpaceStatus::Obstructed;
  out.conditioning_warning = wn < 1e-6;
  return out;
}

Tensor3 obstruction(const AlgWeyl& w, const Tensor3& c) {
  if (w.dim() != 4) throw std::invalid_argument("obstruction: requires n = 4");
  const double w2 = w.norm() * w.norm();
  const Vec kappa = weyl_cotton_pairing(w, c);
  Tensor3 out = c;
  out *= w2;
  const int n = 4;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc) {
        double s = 0.0;
        for (int d = 0; d < n; ++d) s += kappa(d) * w(d, a, b, cc);
        out(a, b, cc) -= 4.0 * s;
      }
  return out;
}

CovectorField pointwise_zeta_field(const ChartMetric& m, double solve_tol) {
  BundleOptions opts;
  opts.need_bach = false;
  opts.need_bianchi2 = false;
  return [m, opts, solve_tol](const Vec& y) {
    const CurvatureBundle b = curvature_bundle(m, y, opts);
    const CSpaceSolution sol = solve_zeta(b.weyl, b.cotton, solve_tol);
    // zeta-flat in coordinates: lower the frame components through L
    return Vec(b.frame.l * sol.zeta);
  };
}

namespace {

struct HzetaParts {
  Mat hz_form_frame;   // h - nabla zeta + zeta (x) zeta, frame form components
  Mat nabla_z_frame;   // frame form components of nabla zeta
  Vec zeta_frame;
  Mat dz_frame;        // d zeta as a frame 2-form array
  Mat h_frame;
  Frame frame;
};

HzetaParts hzeta_parts(const ChartMetric& m, const CovectorField& zeta, const Vec& x,
                       const FieldFd& fd) {
  const Tensor3 gamma = christoffel(m, x);
  const Mat h = reduced_ricci_coord(m, x);
  FdOptions fo;
  fo.step = fd.step;
  fo.richardson = fd.richardson;
  const Mat nz = cov_deriv_covector(zeta, gamma, x, fo);  // (m;i)
  const Vec zf = zeta(x);

  HzetaParts p;
  p.frame = orthonormal_frame(m.metric(x));
  p.h_frame = to_frame_rank2(h, p.frame);
  p.nabla_z_frame = to_frame_rank2(nz, p.frame);
  p.zeta_frame = p.frame.e.transpose() * zf;
  p.dz_frame = p.nabla_z_frame - p.nabla_z_frame.transpose();
  p.hz_form_frame =
      p.h_frame - p.nabla_z_frame + p.zeta_frame * p.zeta_frame.transpose();
  return p;
}

}  // namespace

Endo h_zeta(const ChartMetric& m, const CovectorField& zeta, const Vec& x,
            const FieldFd& fd) {
  return endo_of_form(hzeta_parts(m, zeta, x, fd).hz_form_frame);
}

double check_gnl(const ChartMetric& m, const CovectorField& zeta, const Vec& x,
                 const FieldFd& fd) {
  const HzetaParts p = hzeta_parts(m, zeta, x, fd);
  BundleOptions opts;
  opts.need_bach = false;
  opts.need_bianchi2 = false;
  const CurvatureBundle b = curvature_bundle(m, x, opts);
  return residual_deg1(b.weyl, endo_of_form(p.hz_form_frame));
}

EWResidual einstein_weyl_residual(const ChartMetric& m, const CovectorField& zeta,
                                  const Vec& x, const FieldFd& fd) {
  const HzetaParts p = hzeta_parts(m, zeta, x, fd);
  const int n = m.dim();
  const Mat sym_nz = 0.5 * (p.nabla_z_frame + p.nabla_z_frame.transpose());
  const Mat defect = p.h_frame - sym_nz + p.zeta_frame * p.zeta_frame.transpose();
  EWResidual r;
  r.best_f = defect.trace() / n;
  r.residual_sym = (defect - r.best_f * Mat::Identity(n, n)).norm();
  r.dzeta_norm = p.dz_frame.norm();
  return r;
}

BachConsequenceReport bach_consequence_check(const ChartMetric& m,
                                             const CovectorField& zeta, const Vec& x,
                                             const FieldFd& fd) {
  const HzetaParts p = hzeta_parts(m, zeta, x, fd);
  BundleOptions opts;
  opts.need_bianchi2 = false;
  const CurvatureBundle b = curvature_bundle(m, x, opts);
  BachConsequenceReport rep;
  rep.bach_norm = b.bach.norm();
  const Endo hz = endo_of_form(p.hz_form_frame);
  rep.extend_hzeta_norm = extend(b.weyl, hz).norm();
  rep.deg1_hzeta_residual = residual_deg1(b.weyl, hz);
  rep.dzeta_norm = p.dz_frame.norm();
  rep.fd_warning = b.fd_warning;
  return rep;
}

DivCReport div_cotton_identity_check(const ChartMetric& m, const CovectorField& zeta,
                                     const Vec& x, const FieldFd& fd) {
  const int n = m.dim();
  DivCReport rep;

  BundleOptions opts;
  opts.need_bach = false;
  opts.need_bianchi2 = false;
  const CurvatureBundle b = curvature_bundle(m, x, opts);
  const CSpaceSolution sol = solve_zeta(b.weyl, b.cotton);
  rep.solve_residual = sol.residual;
  rep.precond_ok = sol.status == CSpaceStatus::Solved;
  if (!rep.precond_ok) return rep;  // identity only claimed on C-space data

  const Tensor3 gamma = christoffel(m, x);
  FdOptions fo;
  fo.step = fd.step;
  fo.richardson = fd.richardson;
  auto cotton_field = [&m](const Vec& y) { return cotton_coord(m, y); };
  const Tensor4 nc = cov_deriv_rank3(cotton_field, gamma, x, fo);  // (m; u,x,y)

  const Mat ginv = m.metric(x).inverse();
  Mat hat_delta_c = Mat::Zero(n, n);
  for (int u = 0; u < n; ++u)
    for (int y = 0; y < n; ++y) {
      double s = 0.0;
      for (int mm = 0; mm < n; ++mm)
        for (int xx = 0; xx < n; ++xx) s += ginv(mm, xx) * nc(mm, u, xx, y);
      hat_delta_c(u, y) = s;
    }
  const HzetaParts p = hzeta_parts(m, zeta, x, fd);
  const Mat hdc_frame = to_frame_rank2(hat_delta_c, p.frame);

  const Mat arg_form =
      p.nabla_z_frame + (n - 3.0) * p.zeta_frame * p.zeta_frame.transpose();
  const Mat rhs = form_of_endo(extend(b.weyl, endo_of_form(arg_form)));

  rep.residual = (hdc_frame + rhs).norm();
  rep.skew_norm = (hdc_frame - hdc_frame.transpose()).norm();
  return rep;
}

PointDiagnostics classify_point(const ChartMetric& m, const Vec& x,
                                const ClassifyOptions& opts) {
  const int n = m.dim();
  PointDiagnostics d;
  d.point = x;
  d.dim = n;

  BundleOptions bo;
  bo.need_bach = opts.need_bach;
  bo.need_bianchi2 = false;
  const CurvatureBundle b = curvature_bundle(m, x, bo);

  d.w_norm = b.weyl.norm();
  d.c_norm = b.cotton.norm();
  d.scalar = b.scalar;
  d.deltaw_cotton_residual = b.deltaw_cotton_residual;
  d.fd_warning = b.fd_warning;
  d.has_bach = b.has_bach;
  if (b.has_bach) d.b_norm = b.bach.norm();
  d.zeta = Vec::Zero(n);

  const bool weyl_zero = d.w_norm <= opts.zero_tol;
  const bool cotton_zero = d.c_norm <= opts.zero_tol;

  if (n == 4) {
    const WeylSplit split = split_weyl(b.weyl);
    d.wplus_norm = split.plus.norm();
    d.wminus_norm = split.minus.norm();

    const CSpaceSolution sol =
        solve_zeta(b.weyl, b.cotton, opts.solve_tol, opts.zero_tol);
    d.status = sol.status;
    d.zeta = sol.zeta;
    d.zeta_norm = sol.zeta.norm();
    d.zeta_residual = sol.residual;
    d.conditioning_warning = sol.conditioning_warning;
    d.obstruction_norm = obstruction(b.weyl, b.cotton).norm();

    if (opts.probe_zeta_field && sol.status == CSpaceStatus::Solved && !weyl_zero) {
      const CovectorField zf = pointwise_zeta_field(m, opts.solve_tol);
      FieldFd fd;
      fd.step = opts.stencil_radius;
      const EWResidual ew = einstein_weyl_residual(m, zf, x, fd);
      d.probed = true;
      d.dzeta_norm = ew.dzeta_norm;
      d.ew_best_f = ew.best_f;
      d.ew_residual_sym = ew.residual_sym;
      d.gnl_residual = check_gnl(m, zf, x, fd);
      d.mainlocal_anomaly = d.dzeta_norm > opts.probe_tol;
    }
  }

  if (weyl_zero && cotton_zero) {
    d.classification = "conformally_flat";
    if (n == 4) d.status = CSpaceStatus::WeylZeroCottonZero;
  } else if (weyl_zero && n == 4) {
    d.classification = "weyl_zero_cotton_nonzero";
  } else if (n != 4) {
    d.classification = cotton_zero ? "cotton_space" : "cotton_nonzero";
  } else if (d.status == CSpaceStatus::Solved) {
    d.classification =
        (d.zeta_norm <= opts.zero_tol * 10.0) ? "cotton_space" : "conformal_cspace";
  } else {
    d.classification = "obstructed";
  }
  return d;
}

}  // namespace weylscope
