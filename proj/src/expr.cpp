#include "weylscope/expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace weylscope {

struct Expr::Node {
  enum class Kind { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Sin, Cos };
  Kind kind;
  double value = 0.0;
  int var = 0;  // 0-based
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

struct Token {
  enum class Type { Number, Var, Func, Op, LParen, RParen, End };
  Type type;
  double number = 0.0;
  int var = 0;
  char op = 0;
  std::string func;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) bump();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.type = Token::Type::End;
      return;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t end = pos_;
      while (end < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.'))
        ++end;
      if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
        std::size_t e = end + 1;
        if (e < s_.size() && (s_[e] == '+' || s_[e] == '-')) ++e;
        if (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) {
          while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) ++e;
          end = e;
        }
      }
      try {
        tok_.number = std::stod(s_.substr(pos_, end - pos_));
      } catch (const std::exception&) {
        throw ExprError("malformed number", line_, col_);
      }
      tok_.type = Token::Type::Number;
      while (pos_ < end) bump();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
        ++end;
      const std::string word = s_.substr(pos_, end - pos_);
      if (word.size() >= 2 && word[0] == 'x') {
        bool digits = true;
        for (std::size_t i = 1; i < word.size(); ++i)
          digits = digits && std::isdigit(static_cast<unsigned char>(word[i]));
        if (digits) {
          const int idx = std::stoi(word.substr(1));
          if (idx < 1) throw ExprError("variable index must be >= 1", line_, col_);
          tok_.type = Token::Type::Var;
          tok_.var = idx - 1;
          while (pos_ < end) bump();
          return;
        }
      }
      if (word == "exp" || word == "sin" || word == "cos") {
        tok_.type = Token::Type::Func;
        tok_.func = word;
        while (pos_ < end) bump();
        return;
      }
      throw ExprError("unknown identifier '" + word + "'", line_, col_);
    }
    switch (c) {
      case '+': case '-': case '*': case '/': case '^':
        tok_.type = Token::Type::Op;
        tok_.op = c;
        bump();
        return;
      case '(':
        tok_.type = Token::Type::LParen;
        bump();
        return;
      case ')':
        tok_.type = Token::Type::RParen;
        bump();
        return;
      default:
        throw ExprError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void bump() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : lex_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    const Token& t = lex_.peek();
    if (t.type != Token::Type::End)
      throw ExprError("unexpected trailing input", t.line, t.col);
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr left = term();
    while (lex_.peek().type == Token::Type::Op &&
           (lex_.peek().op == '+' || lex_.peek().op == '-')) {
      const char op = lex_.take().op;
      NodePtr right = term();
      left = make(op == '+' ? Kind::Add : Kind::Sub, left, right);
    }
    return left;
  }

  NodePtr term() {
    NodePtr left = factor();
    while (lex_.peek().type == Token::Type::Op &&
           (lex_.peek().op == '*' || lex_.peek().op == '/')) {
      const char op = lex_.take().op;
      NodePtr right = factor();
      left = make(op == '*' ? Kind::Mul : Kind::Div, left, right);
    }
    return left;
  }

  NodePtr factor() {
    if (lex_.peek().type == Token::Type::Op && lex_.peek().op == '-') {
      lex_.take();
      return make(Kind::Neg, factor());
    }
    if (lex_.peek().type == Token::Type::Op && lex_.peek().op == '+') {
      lex_.take();
      return factor();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (lex_.peek().type == Token::Type::Op && lex_.peek().op == '^') {
      lex_.take();
      return make(Kind::Pow, base, factor());
    }
    return base;
  }

  NodePtr atom() {
    const Token t = lex_.take();
    switch (t.type) {
      case Token::Type::Number: {
        auto n = std::make_shared<Expr::Node>();
        n->kind = Kind::Const;
        n->value = t.number;
        return n;
      }
      case Token::Type::Var: {
        auto n = std::make_shared<Expr::Node>();
        n->kind = Kind::Var;
        n->var = t.var;
        return n;
      }
      case Token::Type::Func: {
        const Token open = lex_.take();
        if (open.type != Token::Type::LParen)
          throw ExprError("expected '(' after " + t.func, open.line, open.col);
        NodePtr arg = expr();
        const Token close = lex_.take();
        if (close.type != Token::Type::RParen)
          throw ExprError("expected ')'", close.line, close.col);
        const Kind k = t.func == "exp" ? Kind::Exp : t.func == "sin" ? Kind::Sin : Kind::Cos;
        return make(k, arg);
      }
      case Token::Type::LParen: {
        NodePtr inner = expr();
        const Token close = lex_.take();
        if (close.type != Token::Type::RParen)
          throw ExprError("expected ')'", close.line, close.col);
        return inner;
      }
      default:
        throw ExprError("expected a value", t.line, t.col);
    }
  }

  Lexer lex_;
};

double eval_node(const Expr::Node& n, const Eigen::VectorXd& x) {
  switch (n.kind) {
    case Kind::Const: return n.value;
    case Kind::Var:
      if (n.var >= x.size())
        throw std::out_of_range("expression references x" + std::to_string(n.var + 1) +
                                " beyond the point dimension");
      return x(n.var);
    case Kind::Add: return eval_node(*n.a, x) + eval_node(*n.b, x);
    case Kind::Sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
    case Kind::Mul: return eval_node(*n.a, x) * eval_node(*n.b, x);
    case Kind::Div: return eval_node(*n.a, x) / eval_node(*n.b, x);
    case Kind::Pow: return std::pow(eval_node(*n.a, x), eval_node(*n.b, x));
    case Kind::Neg: return -eval_node(*n.a, x);
    case Kind::Exp: return std::exp(eval_node(*n.a, x));
    case Kind::Sin: return std::sin(eval_node(*n.a, x));
    case Kind::Cos: return std::cos(eval_node(*n.a, x));
  }
  return 0.0;
}

int max_var_node(const Expr::Node& n) {
  int m = 0;
  if (n.kind == Kind::Var) m = n.var + 1;
  if (n.a) m = std::max(m, max_var_node(*n.a));
  if (n.b) m = std::max(m, max_var_node(*n.b));
  return m;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.root_ = Parser(text).parse();
  e.text_ = text;
  return e;
}

double Expr::eval(const Eigen::VectorXd& x) const { return eval_node(*root_, x); }

int Expr::max_var() const { return max_var_node(*root_); }

}  // namespace weylscope
