#include "weylscope/curvature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace weylscope {

Frame orthonormal_frame(const Mat& g) {
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("orthonormal_frame: metric not positive definite");
  Frame f;
  f.l = llt.matrixL();
  f.e = f.l.transpose().inverse();
  return f;
}

Mat to_frame_rank2(const Mat& t, const Frame& f) {
  return f.e.transpose() * t * f.e;
}

Tensor3 to_frame_rank3(const Tensor3& t, const Frame& f) {
  return rotate_all_slots(t, f.e);
}

Tensor4 to_frame_rank4(const Tensor4& t, const Frame& f) {
  return rotate_all_slots(t, f.e);
}

Tensor5 to_frame_rank5(const Tensor5& t, const Frame& f) {
  const int n = t.dim();
  const Mat& e = f.e;
  Tensor5 a = t, b(n);
  for (int slot = 0; slot < 5; ++slot) {
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s)
            for (int u = 0; u < n; ++u) {
              double acc = 0.0;
              for (int i = 0; i < n; ++i) {
                switch (slot) {
                  case 0: acc += a(i, q, r, s, u) * e(i, p); break;
                  case 1: acc += a(p, i, r, s, u) * e(i, q); break;
                  case 2: acc += a(p, q, i, s, u) * e(i, r); break;
                  case 3: acc += a(p, q, r, i, u) * e(i, s); break;
                  default: acc += a(p, q, r, s, i) * e(i, u); break;
                }
              }
              b(p, q, r, s, u) = acc;
            }
    a = b;
  }
  return a;
}

namespace {

// Coordinate-level curvature chain at one point, derived algebraically
// from the metric jet.  Third metric derivatives enter through dGamma^2,
// which both the Cotton tensor and nabla W require.
struct CoordChain {
  int n;
  Mat g, ginv;
  Tensor3 gamma;  // (k;i,j)
  Tensor4 riem;   // R(i,j,k,u), lowered, unit-sphere-positive convention
  Mat ric;
  double scal = 0.0;
  Mat h;
  Tensor3 nabla_h;  // (m;i,j)
  Tensor3 cotton;   // C(u,x,y)
  Tensor4 weyl;
  Tensor5 nabla_w;  // (m; i,j,k,u), filled only on request
  Tensor3 delta_w;  // filled only on request
};

CoordChain coord_chain(const ChartMetric& metric, const Vec& x, bool need_nabla_w) {
  const int n = metric.dim();
  const MetricJet jet = metric.jet(x);
  CoordChain c;
  c.n = n;
  c.g = jet.g;
  c.ginv = jet.g.inverse();

  auto dg_mat = [&](int k) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = jet.dg(k, i, j);
    return m;
  };
  auto d2g_mat = [&](int k, int l) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = jet.d2g(k, l, i, j);
    return m;
  };

  std::vector<Mat> dginv(n);
  for (int k = 0; k < n; ++k) dginv[k] = -c.ginv * dg_mat(k) * c.ginv;
  std::vector<std::vector<Mat>> d2ginv(n, std::vector<Mat>(n));
  for (int m = 0; m < n; ++m)
    for (int q = 0; q < n; ++q)
      d2ginv[m][q] = -(dginv[q] * dg_mat(m) * c.ginv + c.ginv * d2g_mat(m, q) * c.ginv +
                       c.ginv * dg_mat(m) * dginv[q]);

  auto brk = [&](int l, int i, int j) {
    return 0.5 * (jet.dg(i, j, l) + jet.dg(j, i, l) - jet.dg(l, i, j));
  };
  auto dbrk = [&](int m, int l, int i, int j) {
    return 0.5 * (jet.d2g(m, i, j, l) + jet.d2g(m, j, i, l) - jet.d2g(m, l, i, j));
  };
  auto d2brk = [&](int m, int q, int l, int i, int j) {
    return 0.5 * (jet.d3g(m, q, i, j, l) + jet.d3g(m, q, j, i, l) -
                  jet.d3g(m, q, l, i, j));
  };

  c.gamma = Tensor3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += c.ginv(k, l) * brk(l, i, j);
        c.gamma(k, i, j) = s;
      }

  Tensor4 dgamma(n);  // (m,k,i,j)
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l)
            s += dginv[m](k, l) * brk(l, i, j) + c.ginv(k, l) * dbrk(m, l, i, j);
          dgamma(m, k, i, j) = s;
        }

  Tensor5 d2gamma(n);  // (m,q,k,i,j)
  for (int m = 0; m < n; ++m)
    for (int q = 0; q < n; ++q)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int l = 0; l < n; ++l)
              s += d2ginv[m][q](k, l) * brk(l, i, j) + dginv[m](k, l) * dbrk(q, l, i, j) +
                   dginv[q](k, l) * dbrk(m, l, i, j) + c.ginv(k, l) * d2brk(m, q, l, i, j);
            d2gamma(m, q, k, i, j) = s;
          }

  Tensor4 rup(n);  // R^l_{kij} as (l,k,i,j)
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = dgamma(i, l, j, k) - dgamma(j, l, i, k);
          for (int p = 0; p < n; ++p)
            s += c.gamma(l, i, p) * c.gamma(p, j, k) -
                 c.gamma(l, j, p) * c.gamma(p, i, k);
          rup(l, k, i, j) = s;
        }

  c.riem = Tensor4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int u = 0; u < n; ++u) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += c.g(u, l) * rup(l, k, i, j);
          c.riem(i, j, k, u) = -s;
        }

  c.ric = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += c.ginv(i, j) * c.riem(a, i, b, j);
      c.ric(a, b) = s;
    }
  c.scal = (c.ginv.array() * c.ric.array()).sum();
  c.h = (c.ric - (c.scal / (2.0 * (n - 1))) * c.g) / (n - 2.0);

  // per-direction partial derivatives of R, Ric, s, h
  std::vector<Mat> dh(n);
  if (need_nabla_w) c.nabla_w = Tensor5(n);
  Tensor5 driem(n);
  for (int m = 0; m < n; ++m) {
    Tensor4 drup_m(n);
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double s = d2gamma(m, i, l, j, k) - d2gamma(m, j, l, i, k);
            for (int p = 0; p < n; ++p)
              s += dgamma(m, l, i, p) * c.gamma(p, j, k) +
                   c.gamma(l, i, p) * dgamma(m, p, j, k) -
                   dgamma(m, l, j, p) * c.gamma(p, i, k) -
                   c.gamma(l, j, p) * dgamma(m, p, i, k);
            drup_m(l, k, i, j) = s;
          }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int u = 0; u < n; ++u) {
            double s = 0.0;
            for (int l = 0; l < n; ++l)
              s += jet.dg(m, u, l) * rup(l, k, i, j) + c.g(u, l) * drup_m(l, k, i, j);
            driem(m, i, j, k, u) = -s;
          }
    Mat dric = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            s += dginv[m](i, j) * c.riem(a, i, b, j) + c.ginv(i, j) * driem(m, a, i, b, j);
        dric(a, b) = s;
      }
    const double dscal = (dginv[m].array() * c.ric.array()).sum() +
                         (c.ginv.array() * dric.array()).sum();
    dh[m] = (dric - (dscal * c.g + c.scal * dg_mat(m)) / (2.0 * (n - 1))) / (n - 2.0);
  }

  c.nabla_h = Tensor3(n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = dh[m](i, j);
        for (int p = 0; p < n; ++p)
          s -= c.gamma(p, m, i) * c.h(p, j) + c.gamma(p, m, j) * c.h(i, p);
        c.nabla_h(m, i, j) = s;
      }

  c.cotton = Tensor3(n);
  for (int u = 0; u < n; ++u)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        c.cotton(u, a, b) = c.nabla_h(a, b, u) - c.nabla_h(b, a, u);

  c.weyl = c.riem - kulkarni_nomizu(c.h, c.g);

  if (need_nabla_w) {
    for (int m = 0; m < n; ++m) {
      Mat nh(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) nh(i, j) = c.nabla_h(m, i, j);
      const Tensor4 corr = kulkarni_nomizu(nh, c.g);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int u = 0; u < n; ++u) {
              double s = driem(m, i, j, k, u);
              for (int p = 0; p < n; ++p)
                s -= c.gamma(p, m, i) * c.riem(p, j, k, u) +
                     c.gamma(p, m, j) * c.riem(i, p, k, u) +
                     c.gamma(p, m, k) * c.riem(i, j, p, u) +
                     c.gamma(p, m, u) * c.riem(i, j, k, p);
              c.nabla_w(m, i, j, k, u) = s - corr(i, j, k, u);
            }
    }

    c.delta_w = Tensor3(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            for (int i = 0; i < n; ++i) s += c.ginv(m, i) * c.nabla_w(m, i, a, b, d);
          c.delta_w(a, b, d) = -s;
        }
  }

  return c;
}

Tensor3 delta_w_coord_at(const ChartMetric& m, const Vec& x) {
  return coord_chain(m, x, true).delta_w;
}

}  // namespace

Tensor3 christoffel(const ChartMetric& m, const Vec& x) {
  return coord_chain(m, x, false).gamma;
}

Tensor4 riemann(const ChartMetric& m, const Vec& x) {
  const CoordChain c = coord_chain(m, x, false);
  return to_frame_rank4(c.riem, orthonormal_frame(c.g));
}

Mat reduced_ricci_coord(const ChartMetric& m, const Vec& x) {
  return coord_chain(m, x, false).h;
}

Tensor3 cotton_coord(const ChartMetric& m, const Vec& x) {
  return coord_chain(m, x, false).cotton;
}

Mat cov_deriv_covector(const std::function<Vec(const Vec&)>& field,
                       const Tensor3& gamma, const Vec& x, const FdOptions& o) {
  const int n = static_cast<int>(x.size());
  Mat out(n, n);
  for (int m = 0; m < n; ++m) {
    auto diff = [&](double h) {
      Vec xp = x, xm = x;
      xp(m) += h;
      xm(m) -= h;
      return Vec((field(xp) - field(xm)) / (2.0 * h));
    };
    Vec d = diff(o.step);
    if (o.richardson) d = (4.0 * diff(0.5 * o.step) - d) / 3.0;
    for (int i = 0; i < n; ++i) out(m, i) = d(i);
  }
  const Vec z = field(x);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < n; ++p) out(m, i) -= gamma(p, m, i) * z(p);
  return out;
}

Tensor4 cov_deriv_rank3(const std::function<Tensor3(const Vec&)>& field,
                        const Tensor3& gamma, const Vec& x, const FdOptions& o) {
  const int n = static_cast<int>(x.size());
  Tensor4 out(n);
  for (int d = 0; d < n; ++d) {
    auto diff = [&](double h) {
      Vec xp = x, xm = x;
      xp(d) += h;
      xm(d) -= h;
      Tensor3 t = field(xp);
      t -= field(xm);
      t *= 1.0 / (2.0 * h);
      return t;
    };
    Tensor3 dd = diff(o.step);
    if (o.richardson) {
      Tensor3 dh2 = diff(0.5 * o.step);
      dh2 *= 4.0;
      dh2 -= dd;
      dh2 *= 1.0 / 3.0;
      dd = dh2;
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int cc = 0; cc < n; ++cc) out(d, a, b, cc) = dd(a, b, cc);
  }
  const Tensor3 t0 = field(x);
  for (int d = 0; d < n; ++d)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int cc = 0; cc < n; ++cc) {
          double s = out(d, a, b, cc);
          for (int p = 0; p < n; ++p)
            s -= gamma(p, d, a) * t0(p, b, cc) + gamma(p, d, b) * t0(a, p, cc) +
                 gamma(p, d, cc) * t0(a, b, p);
          out(d, a, b, cc) = s;
        }
  return out;
}

CurvatureBundle curvature_bundle(const ChartMetric& m, const Vec& x,
                                 const BundleOptions& opts) {
  if (m.fd().step <= 1e-8)
    throw std::invalid_argument("curvature_bundle: FD step underflow");
  const int n = m.dim();
  const bool heavy = opts.need_bach || opts.need_bianchi2;
  const CoordChain c = coord_chain(m, x, heavy);

  CurvatureBundle out;
  out.dim = n;
  out.point = x;
  out.frame = orthonormal_frame(c.g);

  out.riemann = to_frame_rank4(c.riem, out.frame);
  out.ricci = to_frame_rank2(c.ric, out.frame);
  out.scalar = c.scal;
  out.reduced_ricci = to_frame_rank2(c.h, out.frame);
  out.schouten = kulkarni_nomizu(out.reduced_ricci, Mat::Identity(n, n));
  out.weyl_raw = out.riemann - out.schouten;
  WeylProjection proj = project_to_weyl(out.weyl_raw);
  out.weyl_projection_defect = (out.weyl_raw - proj.weyl.tensor()).norm();
  out.weyl = std::move(proj.weyl);
  out.cotton = to_frame_rank3(c.cotton, out.frame);

  if (heavy) {
    out.delta_w = to_frame_rank3(c.delta_w, out.frame);
    Tensor3 resid = out.delta_w;
    Tensor3 scaled_c = out.cotton;
    scaled_c *= static_cast<double>(n - 3);
    resid += scaled_c;
    out.deltaw_cotton_residual = resid.norm();
  }

  if (opts.need_bianchi2) {
    const Tensor5 nw = to_frame_rank5(c.nabla_w, out.frame);
    const Tensor3& cf = out.cotton;
    auto del = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    double worst = 0.0;
    for (int X = 0; X < n; ++X)
      for (int Y = 0; Y < n; ++Y)
        for (int Z = 0; Z < n; ++Z)
          for (int U = 0; U < n; ++U)
            for (int T = 0; T < n; ++T) {
              double s = nw(X, Y, Z, U, T) + nw(Y, Z, X, U, T) + nw(Z, X, Y, U, T);
              s += cf(U, X, Y) * del(T, Z) + cf(U, Y, Z) * del(T, X) +
                   cf(U, Z, X) * del(T, Y);
              s -= cf(T, X, Y) * del(U, Z) + cf(T, Y, Z) * del(U, X) +
                   cf(T, Z, X) * del(U, Y);
              worst = std::max(worst, std::fabs(s));
            }
    out.bianchi2_residual = worst;
  }

  if (opts.need_bach) {
    out.fd_warning = !m.analytic();
    // nabla(dW) needs fourth metric derivatives: one finite-difference
    // layer over the delta_w point function.
    auto dw_field = [&m](const Vec& y) { return delta_w_coord_at(m, y); };
    const Tensor4 ndw = cov_deriv_rank3(dw_field, c.gamma, x, m.fd());

    Mat b = Mat::Zero(n, n);
    for (int X = 0; X < n; ++X)
      for (int Y = 0; Y < n; ++Y) {
        double s = 0.0;
        for (int mm = 0; mm < n; ++mm)
          for (int i = 0; i < n; ++i) s += c.ginv(mm, i) * ndw(mm, X, i, Y);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l)
                s += c.ginv(i, j) * c.ginv(k, l) * c.h(l, j) * c.weyl(X, i, k, Y);
        b(X, Y) = s;
      }
    out.bach = to_frame_rank2(b, out.frame);
    out.has_bach = true;
  }

  return out;
}

}  // namespace weylscope
