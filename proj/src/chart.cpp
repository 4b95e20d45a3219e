#include "weylscope/chart.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "weylscope/rng.hpp"

namespace weylscope {

namespace {

void check_dim(int n) {
  if (n < 3 || n > 8) throw std::invalid_argument("ChartMetric: dim must be in [3,8]");
}

}  // namespace

ChartMetric::ChartMetric(int dim, Box box, GFn g)
    : dim_(dim), box_(std::move(box)), g_(std::move(g)) {
  check_dim(dim_);
}

ChartMetric::ChartMetric(int dim, Box box, GFn g, DgFn dg, D2gFn d2g, D3gFn d3g)
    : dim_(dim),
      box_(std::move(box)),
      g_(std::move(g)),
      dg_(std::move(dg)),
      d2g_(std::move(d2g)),
      d3g_(std::move(d3g)) {
  check_dim(dim_);
}

Mat ChartMetric::metric(const Vec& x) const {
  if (x.size() != dim_) throw std::invalid_argument("ChartMetric: point has wrong dimension");
  if (!box_.contains(x, 0.1))
    throw std::domain_error("ChartMetric: point outside the coordinate box");
  Mat g = g_(x);
  if ((g - g.transpose()).norm() > 1e-10 * (1.0 + g.norm()))
    throw std::domain_error("ChartMetric: metric not symmetric at evaluation point");
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("ChartMetric: metric not positive definite at evaluation point");
  return g;
}

// ---------------------------------------------------------------------------
// finite-difference stencils

double fd_d1(const std::function<double(const Vec&)>& f, const Vec& x, int k,
             const FdOptions& o) {
  auto diff = [&](double h) {
    Vec xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    return (f(xp) - f(xm)) / (2.0 * h);
  };
  const double d = diff(o.step);
  if (!o.richardson) return d;
  return (4.0 * diff(0.5 * o.step) - d) / 3.0;
}

double fd_d2(const std::function<double(const Vec&)>& f, const Vec& x, int k, int l,
             const FdOptions& o) {
  const double h = o.step;
  if (k == l) {
    Vec xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    return (f(xp) - 2.0 * f(x) + f(xm)) / (h * h);
  }
  Vec a = x, b = x, c = x, d = x;
  a(k) += h; a(l) += h;
  b(k) += h; b(l) -= h;
  c(k) -= h; c(l) += h;
  d(k) -= h; d(l) -= h;
  return (f(a) - f(b) - f(c) + f(d)) / (4.0 * h * h);
}

double fd_d3(const std::function<double(const Vec&)>& f, const Vec& x, int k, int l,
             int m, const FdOptions& o) {
  const double h = o.step;
  int idx[3] = {k, l, m};
  std::sort(idx, idx + 3);
  const int a = idx[0], b = idx[1], c = idx[2];
  auto at = [&](double da, double db, double dc) {
    Vec y = x;
    y(a) += da;
    y(b) += db;
    y(c) += dc;
    return f(y);
  };
  if (a == b && b == c) {
    Vec p2 = x, p1 = x, m1 = x, m2 = x;
    p2(a) += 2 * h; p1(a) += h; m1(a) -= h; m2(a) -= 2 * h;
    return (f(p2) - 2.0 * f(p1) + 2.0 * f(m1) - f(m2)) / (2.0 * h * h * h);
  }
  if (a == b) {  // d^2/da^2 d/dc
    return (at(h, 0, h) - 2.0 * at(0, 0, h) + at(-h, 0, h) - at(h, 0, -h) +
            2.0 * at(0, 0, -h) - at(-h, 0, -h)) /
           (2.0 * h * h * h);
  }
  if (b == c) {  // d/da d^2/db^2
    return (at(h, h, 0) - 2.0 * at(h, 0, 0) + at(h, -h, 0) - at(-h, h, 0) +
            2.0 * at(-h, 0, 0) - at(-h, -h, 0)) /
           (2.0 * h * h * h);
  }
  double s = 0.0;
  for (int sa = -1; sa <= 1; sa += 2)
    for (int sb = -1; sb <= 1; sb += 2)
      for (int sc = -1; sc <= 1; sc += 2) s += sa * sb * sc * at(sa * h, sb * h, sc * h);
  return s / (8.0 * h * h * h);
}

// ---------------------------------------------------------------------------

namespace {

// Finite-difference jet with a shared evaluation cache: stencil points are
// integer multiples of step/2 away from x.
struct CachedEval {
  const ChartMetric::GFn& f;
  Vec x;
  double half;
  std::map<std::vector<int>, Mat> cache;

  Mat at(const std::vector<int>& off) {
    auto it = cache.find(off);
    if (it != cache.end()) return it->second;
    Vec y = x;
    for (std::size_t i = 0; i < off.size(); ++i) y(static_cast<int>(i)) += off[i] * half;
    Mat g = f(y);
    cache.emplace(off, g);
    return g;
  }
};

}  // namespace

MetricJet ChartMetric::jet(const Vec& x) const {
  const int n = dim_;
  MetricJet j;
  j.g = metric(x);
  j.dg = Tensor3(n);
  j.d2g = Tensor4(n);
  j.d3g = Tensor5(n);

  if (analytic()) {
    Tensor3 dg = dg_(x);
    Tensor4 d2g = d2g_(x);
    Tensor5 d3g = d3g_(x);
    j.dg = std::move(dg);
    j.d2g = std::move(d2g);
    j.d3g = std::move(d3g);
    return j;
  }

  CachedEval ev{g_, x, 0.5 * fd_.step, {}};
  auto off = [n](std::initializer_list<std::pair<int, int>> deltas) {
    std::vector<int> o(n, 0);
    for (auto [k, d] : deltas) o[k] += d;
    return o;
  };
  const double h = fd_.step;

  // first derivatives, one Richardson level
  for (int k = 0; k < n; ++k) {
    Mat d_h = (ev.at(off({{k, 2}})) - ev.at(off({{k, -2}}))) / (2.0 * h);
    Mat d;
    if (fd_.richardson) {
      Mat d_h2 = (ev.at(off({{k, 1}})) - ev.at(off({{k, -1}}))) / h;
      d = (4.0 * d_h2 - d_h) / 3.0;
    } else {
      d = d_h;
    }
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj) j.dg(k, i, jj) = d(i, jj);
  }

  // second derivatives
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      Mat d;
      if (k == l) {
        d = (ev.at(off({{k, 2}})) - 2.0 * ev.at(off({})) + ev.at(off({{k, -2}}))) / (h * h);
      } else {
        d = (ev.at(off({{k, 2}, {l, 2}})) - ev.at(off({{k, 2}, {l, -2}})) -
             ev.at(off({{k, -2}, {l, 2}})) + ev.at(off({{k, -2}, {l, -2}}))) /
            (4.0 * h * h);
      }
      for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
          j.d2g(k, l, i, jj) = d(i, jj);
          j.d2g(l, k, i, jj) = d(i, jj);
        }
    }

  // third derivatives
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c) {
        Mat d;
        if (a == b && b == c) {
          d = (ev.at(off({{a, 4}})) - 2.0 * ev.at(off({{a, 2}})) +
               2.0 * ev.at(off({{a, -2}})) - ev.at(off({{a, -4}}))) /
              (2.0 * h * h * h);
        } else if (a == b) {
          d = (ev.at(off({{a, 2}, {c, 2}})) - 2.0 * ev.at(off({{c, 2}})) +
               ev.at(off({{a, -2}, {c, 2}})) - ev.at(off({{a, 2}, {c, -2}})) +
               2.0 * ev.at(off({{c, -2}})) - ev.at(off({{a, -2}, {c, -2}}))) /
              (2.0 * h * h * h);
        } else if (b == c) {
          d = (ev.at(off({{a, 2}, {b, 2}})) - 2.0 * ev.at(off({{a, 2}})) +
               ev.at(off({{a, 2}, {b, -2}})) - ev.at(off({{a, -2}, {b, 2}})) +
               2.0 * ev.at(off({{a, -2}})) - ev.at(off({{a, -2}, {b, -2}}))) /
              (2.0 * h * h * h);
        } else {
          d = Mat::Zero(n, n);
          for (int sa = -1; sa <= 1; sa += 2)
            for (int sb = -1; sb <= 1; sb += 2)
              for (int sc = -1; sc <= 1; sc += 2)
                d += sa * sb * sc *
                     ev.at(off({{a, 2 * sa}, {b, 2 * sb}, {c, 2 * sc}}));
          d /= (8.0 * h * h * h);
        }
        const int perms[6][3] = {{a, b, c}, {a, c, b}, {b, a, c},
                                 {b, c, a}, {c, a, b}, {c, b, a}};
        for (const auto& p : perms)
          for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj) j.d3g(p[0], p[1], p[2], i, jj) = d(i, jj);
      }
  return j;
}

// ---------------------------------------------------------------------------
// conformal rescaling

ChartMetric conformal_rescale(const ChartMetric& m, const ScalarField& f,
                              const std::string& description) {
  const int n = m.dim();
  auto base_g = [m](const Vec& x) { return m.metric(x); };
  auto fval = f.value;
  ChartMetric::GFn g_new = [base_g, fval](const Vec& x) {
    return Mat(std::exp(2.0 * fval(x)) * base_g(x));
  };

  ScalarField total = f;
  std::string desc = description;
  if (m.conformal()) {
    // composition of rescalings multiplies the factors (adds exponents)
    const ScalarField prev = m.conformal()->factor;
    desc = m.conformal()->description + " * " + description;
    ScalarField sum;
    sum.value = [prev, f](const Vec& x) { return prev.value(x) + f.value(x); };
    if (prev.analytic() && f.analytic()) {
      sum.grad = [prev, f](const Vec& x) { return Vec(prev.grad(x) + f.grad(x)); };
      sum.hess = [prev, f](const Vec& x) { return Mat(prev.hess(x) + f.hess(x)); };
      sum.third = [prev, f](const Vec& x) {
        Tensor3 t = prev.third(x);
        t += f.third(x);
        return t;
      };
    }
    total = sum;
  }

  ChartMetric out = [&]() -> ChartMetric {
    if (!(m.analytic() && f.analytic())) return {n, m.box(), g_new};

    auto dg_new = [m, f, n](const Vec& x) {
      const MetricJet j = m.jet(x);
      const double phi = std::exp(2.0 * f.value(x));
      const Vec fg = f.grad(x);
      Tensor3 out(n);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int jj = 0; jj < n; ++jj)
            out(k, i, jj) = phi * (2.0 * fg(k) * j.g(i, jj) + j.dg(k, i, jj));
      return out;
    };
    auto d2g_new = [m, f, n](const Vec& x) {
      const MetricJet j = m.jet(x);
      const double phi = std::exp(2.0 * f.value(x));
      const Vec fg = f.grad(x);
      const Mat fh = f.hess(x);
      Tensor4 out(n);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double pk = 2.0 * fg(k), pl = 2.0 * fg(l);
          const double pkl = 4.0 * fg(k) * fg(l) + 2.0 * fh(k, l);
          for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj)
              out(k, l, i, jj) =
                  phi * (pkl * j.g(i, jj) + pk * j.dg(l, i, jj) +
                         pl * j.dg(k, i, jj) + j.d2g(k, l, i, jj));
        }
      return out;
    };
    auto d3g_new = [m, f, n](const Vec& x) {
      const MetricJet j = m.jet(x);
      const double phi = std::exp(2.0 * f.value(x));
      const Vec fg = f.grad(x);
      const Mat fh = f.hess(x);
      const Tensor3 f3 = f.third(x);
      Tensor5 out(n);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int mm = 0; mm < n; ++mm) {
            const double pk = 2.0 * fg(k), pl = 2.0 * fg(l), pm = 2.0 * fg(mm);
            const double pkl = 4.0 * fg(k) * fg(l) + 2.0 * fh(k, l);
            const double pkm = 4.0 * fg(k) * fg(mm) + 2.0 * fh(k, mm);
            const double plm = 4.0 * fg(l) * fg(mm) + 2.0 * fh(l, mm);
            const double pklm = 8.0 * fg(k) * fg(l) * fg(mm) +
                                4.0 * (fh(k, l) * fg(mm) + fh(k, mm) * fg(l) +
                                       fh(l, mm) * fg(k)) +
                                2.0 * f3(k, l, mm);
            for (int i = 0; i < n; ++i)
              for (int jj = 0; jj < n; ++jj)
                out(k, l, mm, i, jj) =
                    phi * (pklm * j.g(i, jj) + pkl * j.dg(mm, i, jj) +
                           pkm * j.dg(l, i, jj) + plm * j.dg(k, i, jj) +
                           pk * j.d2g(l, mm, i, jj) + pl * j.d2g(k, mm, i, jj) +
                           pm * j.d2g(k, l, i, jj) + j.d3g(k, l, mm, i, jj));
          }
      return out;
    };
    return {n, m.box(), g_new, dg_new, d2g_new, d3g_new};
  }();

  out.set_fd(m.fd());
  out.set_conformal(ConformalRecord{desc, total});
  out.set_name(m.name().empty() ? description : m.name() + "+" + description);
  return out;
}

ChartMetric pullback_linear(const ChartMetric& m, const Mat& a) {
  const int n = m.dim();
  const Mat at = a.transpose();
  auto gfn = [m, a, at](const Vec& y) { return Mat(at * m.metric(a * y) * a); };

  // conservative box: scale the original cube by the max row sum of |A|
  double row = 0.0;
  for (int i = 0; i < n; ++i) row = std::max(row, a.cwiseAbs().row(i).sum());
  const double hw = (m.box().hi(0) - m.box().lo(0)) * 0.5 / std::max(1.0, row);
  Box box = Box::cube(n, hw);

  if (!m.analytic()) return {n, box, gfn};

  auto sandwich = [n, at, a](const Mat& g) { return Mat(at * g * a); };
  auto dg_new = [m, a, n, sandwich](const Vec& y) {
    const MetricJet j = m.jet(a * y);
    Tensor3 out(n);
    for (int k = 0; k < n; ++k) {
      Mat d = Mat::Zero(n, n);
      for (int p = 0; p < n; ++p) {
        if (a(p, k) == 0.0) continue;
        Mat dp(n, n);
        for (int i = 0; i < n; ++i)
          for (int jj = 0; jj < n; ++jj) dp(i, jj) = j.dg(p, i, jj);
        d += a(p, k) * dp;
      }
      d = sandwich(d);
      for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) out(k, i, jj) = d(i, jj);
    }
    return out;
  };
  auto d2g_new = [m, a, n, sandwich](const Vec& y) {
    const MetricJet j = m.jet(a * y);
    Tensor4 out(n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        Mat d = Mat::Zero(n, n);
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) {
            const double c = a(p, k) * a(q, l);
            if (c == 0.0) continue;
            for (int i = 0; i < n; ++i)
              for (int jj = 0; jj < n; ++jj) d(i, jj) += c * j.d2g(p, q, i, jj);
          }
        d = sandwich(d);
        for (int i = 0; i < n; ++i)
          for (int jj = 0; jj < n; ++jj) out(k, l, i, jj) = d(i, jj);
      }
    return out;
  };
  auto d3g_new = [m, a, n, sandwich](const Vec& y) {
    const MetricJet j = m.jet(a * y);
    Tensor5 out(n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int mm = 0; mm < n; ++mm) {
          Mat d = Mat::Zero(n, n);
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              for (int r = 0; r < n; ++r) {
                const double c = a(p, k) * a(q, l) * a(r, mm);
                if (c == 0.0) continue;
                for (int i = 0; i < n; ++i)
                  for (int jj = 0; jj < n; ++jj)
                    d(i, jj) += c * j.d3g(p, q, r, i, jj);
              }
          d = sandwich(d);
          for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj) out(k, l, mm, i, jj) = d(i, jj);
        }
    return out;
  };
  ChartMetric out(n, box, gfn, dg_new, d2g_new, d3g_new);
  out.set_fd(m.fd());
  out.set_name(m.name() + "+pullback");
  return out;
}

// ---------------------------------------------------------------------------
// builtin catalog

namespace {

// conformal-to-flat factor c = 4 / (1 + sum_{k in coords} x_k^2)^2 and its
// partial derivatives with respect to the listed coordinates
struct SphereFactor {
  std::vector<int> coords;

  double s(const Vec& x) const {
    double r2 = 0.0;
    for (int k : coords) r2 += x(k) * x(k);
    return 1.0 + r2;
  }
  bool uses(int k) const {
    return std::find(coords.begin(), coords.end(), k) != coords.end();
  }
  double value(const Vec& x) const {
    const double t = s(x);
    return 4.0 / (t * t);
  }
  double d1(const Vec& x, int k) const {
    if (!uses(k)) return 0.0;
    const double t = s(x);
    return -16.0 * x(k) / (t * t * t);
  }
  double d2(const Vec& x, int k, int l) const {
    if (!uses(k) || !uses(l)) return 0.0;
    const double t = s(x);
    const double t3 = t * t * t, t4 = t3 * t;
    return -16.0 * (k == l ? 1.0 : 0.0) / t3 + 96.0 * x(k) * x(l) / t4;
  }
  double d3(const Vec& x, int k, int l, int m) const {
    if (!uses(k) || !uses(l) || !uses(m)) return 0.0;
    const double t = s(x);
    const double t4 = t * t * t * t, t5 = t4 * t;
    const double dkl = (k == l) ? 1.0 : 0.0;
    const double dkm = (k == m) ? 1.0 : 0.0;
    const double dlm = (l == m) ? 1.0 : 0.0;
    return 96.0 * (dkl * x(m) + dkm * x(l) + dlm * x(k)) / t4 -
           768.0 * x(k) * x(l) * x(m) / t5;
  }
};

// diagonal metric with per-entry conformal-to-flat factors:
// g_ii = factor[block(i)]
ChartMetric sphere_block_metric(int n, const std::vector<SphereFactor>& factors,
                                const std::vector<int>& block_of, double half_width) {
  auto gfn = [n, factors, block_of](const Vec& x) {
    Mat g = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = factors[block_of[i]].value(x);
    return g;
  };
  auto dgfn = [n, factors, block_of](const Vec& x) {
    Tensor3 t(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) t(k, i, i) = factors[block_of[i]].d1(x, k);
    return t;
  };
  auto d2gfn = [n, factors, block_of](const Vec& x) {
    Tensor4 t(n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i) t(k, l, i, i) = factors[block_of[i]].d2(x, k, l);
    return t;
  };
  auto d3gfn = [n, factors, block_of](const Vec& x) {
    Tensor5 t(n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          for (int i = 0; i < n; ++i)
            t(k, l, m, i, i) = factors[block_of[i]].d3(x, k, l, m);
    return t;
  };
  return {n, Box::cube(n, half_width), gfn, dgfn, d2gfn, d3gfn};
}

ScalarField catalog_conformal_factor() {
  ScalarField f;
  f.value = [](const Vec& x) {
    return 0.3 * x(0) + 0.2 * x(1) * x(3) - 0.15 * x(2) * x(2);
  };
  f.grad = [](const Vec& x) {
    Vec g(4);
    g << 0.3, 0.2 * x(3), -0.3 * x(2), 0.2 * x(1);
    return g;
  };
  f.hess = [](const Vec&) {
    Mat h = Mat::Zero(4, 4);
    h(1, 3) = h(3, 1) = 0.2;
    h(2, 2) = -0.3;
    return h;
  };
  f.third = [](const Vec&) { return Tensor3(4); };
  return f;
}

ChartMetric flat_metric(int n) {
  auto gfn = [n](const Vec&) { return Mat(Mat::Identity(n, n)); };
  auto dgfn = [n](const Vec&) { return Tensor3(n); };
  auto d2gfn = [n](const Vec&) { return Tensor4(n); };
  auto d3gfn = [n](const Vec&) { return Tensor5(n); };
  return {n, Box::cube(n, 1.0), gfn, dgfn, d2gfn, d3gfn};
}

// g_ii = 1 + x_{i+1 mod n}^2: diagonal with cross-coordinate dependence,
// curvature does not vanish
ChartMetric diag_poly_metric(int n) {
  auto nxt = [n](int i) { return (i + 1) % n; };
  auto gfn = [n, nxt](const Vec& x) {
    Mat g = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = 1.0 + x(nxt(i)) * x(nxt(i));
    return g;
  };
  auto dgfn = [n, nxt](const Vec& x) {
    Tensor3 t(n);
    for (int i = 0; i < n; ++i) t(nxt(i), i, i) = 2.0 * x(nxt(i));
    return t;
  };
  auto d2gfn = [n, nxt](const Vec&) {
    Tensor4 t(n);
    for (int i = 0; i < n; ++i) t(nxt(i), nxt(i), i, i) = 2.0;
    return t;
  };
  auto d3gfn = [n](const Vec&) { return Tensor5(n); };
  return {n, Box::cube(n, 0.8), gfn, dgfn, d2gfn, d3gfn};
}

}  // namespace

ChartMetric catalog_metric(const std::string& key, int dim) {
  if (key == "flat") {
    ChartMetric m = flat_metric(dim);
    m.set_name("flat");
    return m;
  }
  if (key == "diag-poly") {
    ChartMetric m = diag_poly_metric(dim);
    m.set_name("diag-poly");
    return m;
  }
  if (key == "round-s4" || key == "round-s4-conformal") {
    if (dim != 4) throw std::invalid_argument("catalog: " + key + " requires dim 4");
    SphereFactor full{{0, 1, 2, 3}};
    ChartMetric m = sphere_block_metric(4, {full}, {0, 0, 0, 0}, 0.7);
    m.set_name("round-s4");
    if (key == "round-s4-conformal")
      return conformal_rescale(m, catalog_conformal_factor(), "catalog-factor");
    return m;
  }
  if (key == "s2xs2" || key == "s2xs2-conformal") {
    if (dim != 4) throw std::invalid_argument("catalog: " + key + " requires dim 4");
    SphereFactor first{{0, 1}};
    SphereFactor second{{2, 3}};
    ChartMetric m = sphere_block_metric(4, {first, second}, {0, 0, 1, 1}, 0.7);
    m.set_name("s2xs2");
    if (key == "s2xs2-conformal")
      return conformal_rescale(m, catalog_conformal_factor(), "catalog-factor");
    return m;
  }
  throw std::invalid_argument("catalog: unknown key '" + key + "'");
}

std::vector<std::string> catalog_keys() {
  return {"flat", "diag-poly", "round-s4", "round-s4-conformal", "s2xs2",
          "s2xs2-conformal"};
}

bool is_catalog_key(const std::string& key) {
  for (const auto& k : catalog_keys())
    if (k == key) return true;
  return false;
}

ChartMetric random_polynomial_metric(std::uint64_t seed, int dim) {
  UniformRng rng(seed);
  const int n = dim;
  struct Coeffs {
    int n;
    std::vector<double> lin;   // (i,j,k)
    std::vector<double> quad;  // (i,j,k,l), k<=l
    std::vector<double> cub;   // (i,j,k,l,m), k<=l<=m
    double scale = 1.0;
  };
  auto coeffs = std::make_shared<Coeffs>();
  coeffs->n = n;
  coeffs->lin.resize(n * n * n);
  coeffs->quad.resize(n * n * n * n);
  coeffs->cub.resize(n * n * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double c = 0.25 * rng.next_sym();
        coeffs->lin[(i * n + j) * n + k] = c;
        coeffs->lin[(j * n + i) * n + k] = c;
      }
      for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l) {
          const double c = 0.35 * rng.next_sym();
          coeffs->quad[((i * n + j) * n + k) * n + l] = c;
          coeffs->quad[((j * n + i) * n + k) * n + l] = c;
        }
      for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l)
          for (int m = l; m < n; ++m) {
            const double c = 0.25 * rng.next_sym();
            coeffs->cub[(((i * n + j) * n + k) * n + l) * n + m] = c;
            coeffs->cub[(((j * n + i) * n + k) * n + l) * n + m] = c;
          }
    }

  auto perturbation = [coeffs](const Vec& x) {
    const int nn = coeffs->n;
    Mat p = Mat::Zero(nn, nn);
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j < nn; ++j) {
        double v = 0.0;
        for (int k = 0; k < nn; ++k) {
          v += coeffs->lin[(i * nn + j) * nn + k] * x(k);
          for (int l = k; l < nn; ++l) {
            v += coeffs->quad[((i * nn + j) * nn + k) * nn + l] * x(k) * x(l);
            for (int m = l; m < nn; ++m)
              v += coeffs->cub[(((i * nn + j) * nn + k) * nn + l) * nn + m] * x(k) *
                   x(l) * x(m);
          }
        }
        p(i, j) = v;
      }
    return p;
  };

  const Box box = Box::cube(n, 0.3);
  // enforce positive definiteness over a sample grid by scaling the
  // perturbation down if needed
  double min_eig = 1.0;
  for (int corner = 0; corner < (1 << n); ++corner) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = (corner >> i & 1) ? box.hi(i) : box.lo(i);
    const Mat g = Mat::Identity(n, n) + perturbation(x);
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    min_eig = std::min(min_eig, es.eigenvalues()(0));
  }
  if (min_eig < 0.35) coeffs->scale = 0.6 / (1.0 - min_eig + 1e-9);

  auto gfn = [coeffs, perturbation](const Vec& x) {
    const int nn = coeffs->n;
    return Mat(Mat::Identity(nn, nn) + coeffs->scale * perturbation(x));
  };

  // Random metrics use the finite-difference strategy; they are negative
  // controls with tolerances far above FD noise.
  ChartMetric m(n, box, gfn);
  FdOptions fd;
  fd.step = 1e-3;
  m.set_fd(fd);
  m.set_name("random-poly-" + std::to_string(seed));
  return m;
}

}  // namespace weylscope
