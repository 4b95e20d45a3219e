#include "weylscope/metric_spec.hpp"

#include <json.hpp>
#include <memory>
#include <stdexcept>

#include "weylscope/expr.hpp"

namespace weylscope {

using nlohmann::json;

std::vector<Vec> sample_grid(const Box& box, int per_axis) {
  const int n = static_cast<int>(box.lo.size());
  std::vector<Vec> pts;
  if (per_axis < 1) per_axis = 1;
  const Vec c = box.center();
  const Vec half = 0.3 * (box.hi - box.lo);  // inner 60%
  std::vector<int> idx(n, 0);
  const long total = static_cast<long>(std::pow(per_axis, n));
  for (long t = 0; t < total; ++t) {
    long r = t;
    Vec x(n);
    for (int i = 0; i < n; ++i) {
      const int k = static_cast<int>(r % per_axis);
      r /= per_axis;
      x(i) = (per_axis == 1)
                 ? c(i)
                 : c(i) - half(i) + 2.0 * half(i) * k / (per_axis - 1.0);
    }
    pts.push_back(x);
  }
  return pts;
}

MetricSpec metric_spec_from_catalog(const std::string& key, int dim) {
  MetricSpec spec;
  spec.dim = dim;
  spec.metric = catalog_metric(key, dim);
  spec.name = spec.metric.name();
  spec.points = {spec.metric.box().center()};
  return spec;
}

namespace {

MetricSpec from_expressions(const json& doc) {
  const int dim = doc.at("dim").get<int>();
  if (dim < 3 || dim > 8) throw std::invalid_argument("metric spec: dim must be in [3,8]");

  const auto& rows = doc.at("g");
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    throw std::invalid_argument("metric spec: 'g' must be a dim x dim matrix of expressions");

  auto exprs = std::make_shared<std::vector<Expr>>();
  exprs->reserve(dim * dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw std::invalid_argument("metric spec: row " + std::to_string(i) +
                                  " of 'g' has wrong length");
    for (int j = 0; j < dim; ++j) {
      const std::string text = row[j].get<std::string>();
      Expr e = Expr::parse(text);  // ExprError carries line/column
      if (e.max_var() > dim)
        throw std::invalid_argument("metric spec: entry g[" + std::to_string(i + 1) +
                                    "][" + std::to_string(j + 1) + "] references x" +
                                    std::to_string(e.max_var()) +
                                    " but dim = " + std::to_string(dim));
      exprs->push_back(std::move(e));
    }
  }

  Box box = Box::cube(dim, 0.5);
  if (doc.contains("box")) {
    const auto& b = doc.at("box");
    if (!b.is_array() || static_cast<int>(b.size()) != dim)
      throw std::invalid_argument("metric spec: 'box' must list [lo,hi] per coordinate");
    box.lo = Vec(dim);
    box.hi = Vec(dim);
    for (int i = 0; i < dim; ++i) {
      box.lo(i) = b[i].at(0).get<double>();
      box.hi(i) = b[i].at(1).get<double>();
      if (!(box.lo(i) < box.hi(i)))
        throw std::invalid_argument("metric spec: empty box in coordinate " +
                                    std::to_string(i + 1));
    }
  }

  auto gfn = [exprs, dim](const Vec& x) {
    Mat g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = (*exprs)[i * dim + j].eval(x);
    return g;
  };

  // symmetry check at a handful of box points
  for (const Vec& x : sample_grid(box, 2)) {
    const Mat g = gfn(x);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        if (std::abs(g(i, j) - g(j, i)) > 1e-12 * (1.0 + std::abs(g(i, j))))
          throw std::invalid_argument("metric spec: g[" + std::to_string(i + 1) + "][" +
                                      std::to_string(j + 1) + "] != g[" +
                                      std::to_string(j + 1) + "][" +
                                      std::to_string(i + 1) + "]");
  }

  MetricSpec spec;
  spec.dim = dim;
  spec.metric = ChartMetric(dim, box, gfn);
  spec.name = doc.value("name", std::string("expression-metric"));
  spec.metric.set_name(spec.name);
  return spec;
}

}  // namespace

MetricSpec parse_metric_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("metric spec: JSON parse error: ") + e.what());
  }

  MetricSpec spec = [&]() {
    if (doc.contains("catalog")) {
      const std::string key = doc.at("catalog").get<std::string>();
      const int dim = doc.value("dim", 4);
      MetricSpec s = metric_spec_from_catalog(key, dim);
      if (doc.contains("name")) s.name = doc.at("name").get<std::string>();
      return s;
    }
    if (doc.contains("g")) return from_expressions(doc);
    throw std::invalid_argument("metric spec: need either 'catalog' or 'g'");
  }();

  if (doc.contains("sample_points")) {
    const auto& sp = doc.at("sample_points");
    spec.points.clear();
    if (sp.is_object() && sp.contains("grid")) {
      spec.points = sample_grid(spec.metric.box(), sp.at("grid").get<int>());
    } else if (sp.is_array()) {
      for (const auto& p : sp) {
        if (static_cast<int>(p.size()) != spec.dim)
          throw std::invalid_argument("metric spec: sample point has wrong dimension");
        Vec x(spec.dim);
        for (int i = 0; i < spec.dim; ++i) x(i) = p[i].get<double>();
        spec.points.push_back(x);
      }
    } else {
      throw std::invalid_argument("metric spec: sample_points must be {\"grid\":k} or a list");
    }
  }
  if (spec.points.empty()) spec.points = {spec.metric.box().center()};
  return spec;
}

}  // namespace weylscope
