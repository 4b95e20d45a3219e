#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace weylscope {

struct ExprError : std::runtime_error {
  ExprError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " +
                           std::to_string(col_)),
        line(line_),
        col(col_) {}
  int line;
  int col;
};

// Minimal arithmetic expressions over variables x1..xn:
// literals, + - * / ^, unary minus, exp, sin, cos, parentheses.
class Expr {
 public:
  static Expr parse(const std::string& text);

  double eval(const Eigen::VectorXd& x) const;
  // highest variable index referenced (1-based); 0 for constant expressions
  int max_var() const;
  const std::string& text() const { return text_; }

 private:
  struct Node;
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace weylscope
