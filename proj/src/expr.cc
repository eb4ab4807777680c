// Copyright 2026 The rangepriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rangepriv/expr.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <system_error>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "rangepriv/numfmt.h"

namespace rangepriv {

enum class Op { kNumber, kVar, kNeg, kAdd, kSub, kMul, kDiv, kPow, kMin, kMax, kSqrt, kAbs };

struct BoundaryExpr::Node {
  Op op = Op::kNumber;
  double value = 0.0;
  int var = 0;  // 1-based
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const BoundaryExpr::Node>;

enum class Tok { kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kComma, kEnd };

struct Token {
  Tok kind;
  std::size_t pos;  // 1-based
  std::string text;
  double number = 0.0;
};

absl::Status ErrorAt(std::size_t pos, const std::string& what) {
  return absl::InvalidArgumentError(
      absl::StrCat("syntax error at position ", pos, ": ", what));
}

absl::StatusOr<std::vector<Token>> Lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    const std::size_t pos = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      double v = 0.0;
      auto [end, ec] = std::from_chars(src.data() + i, src.data() + j, v);
      if (ec != std::errc() || end != src.data() + j || !std::isfinite(v)) {
        return ErrorAt(pos, absl::StrCat("malformed number \"", std::string(src.substr(i, j - i)), "\""));
      }
      out.push_back({Tok::kNumber, pos, std::string(src.substr(i, j - i)), v});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::kIdent, pos, std::string(src.substr(i, j - i))});
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::kPlus; break;
      case '-': kind = Tok::kMinus; break;
      case '*': kind = Tok::kStar; break;
      case '/': kind = Tok::kSlash; break;
      case '^': kind = Tok::kCaret; break;
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      case ',': kind = Tok::kComma; break;
      default:
        return ErrorAt(pos, absl::StrCat("unexpected character '", std::string(1, c), "'"));
    }
    out.push_back({kind, pos, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::kEnd, src.size() + 1, ""});
  return out;
}

NodePtr Make(Op op, std::vector<NodePtr> args) {
  auto n = std::make_shared<BoundaryExpr::Node>();
  n->op = op;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, int dim) : toks_(std::move(toks)), dim_(dim) {}

  absl::StatusOr<NodePtr> ParseAll() {
    absl::StatusOr<NodePtr> e = Expr();
    if (!e.ok()) return e;
    if (Peek().kind != Tok::kEnd) {
      return ErrorAt(Peek().pos, absl::StrCat("unexpected '", Peek().text, "'"));
    }
    return e;
  }

 private:
  const Token& Peek() const { return toks_[at_]; }
  const Token& Next() { return toks_[at_++]; }

  absl::StatusOr<NodePtr> Expr() {
    absl::StatusOr<NodePtr> lhs = Term();
    if (!lhs.ok()) return lhs;
    while (Peek().kind == Tok::kPlus || Peek().kind == Tok::kMinus) {
      const Op op = Next().kind == Tok::kPlus ? Op::kAdd : Op::kSub;
      absl::StatusOr<NodePtr> rhs = Term();
      if (!rhs.ok()) return rhs;
      lhs = Make(op, {*lhs, *rhs});
    }
    return lhs;
  }

  absl::StatusOr<NodePtr> Term() {
    absl::StatusOr<NodePtr> lhs = Unary();
    if (!lhs.ok()) return lhs;
    while (Peek().kind == Tok::kStar || Peek().kind == Tok::kSlash) {
      const Op op = Next().kind == Tok::kStar ? Op::kMul : Op::kDiv;
      absl::StatusOr<NodePtr> rhs = Unary();
      if (!rhs.ok()) return rhs;
      lhs = Make(op, {*lhs, *rhs});
    }
    return lhs;
  }

  absl::StatusOr<NodePtr> Unary() {
    if (Peek().kind == Tok::kMinus) {
      Next();
      absl::StatusOr<NodePtr> operand = Unary();
      if (!operand.ok()) return operand;
      return Make(Op::kNeg, {*operand});
    }
    return Power();
  }

  absl::StatusOr<NodePtr> Power() {
    absl::StatusOr<NodePtr> base = Primary();
    if (!base.ok()) return base;
    if (Peek().kind != Tok::kCaret) return base;
    Next();
    absl::StatusOr<NodePtr> exponent = Unary();
    if (!exponent.ok()) return exponent;
    return Make(Op::kPow, {*base, *exponent});
  }

  absl::StatusOr<NodePtr> Primary() {
    const Token& t = Peek();
    switch (t.kind) {
      case Tok::kNumber: {
        Next();
        auto n = std::make_shared<BoundaryExpr::Node>();
        n->op = Op::kNumber;
        n->value = t.number;
        return NodePtr(n);
      }
      case Tok::kLParen: {
        Next();
        absl::StatusOr<NodePtr> inner = Expr();
        if (!inner.ok()) return inner;
        if (Peek().kind != Tok::kRParen) return ErrorAt(Peek().pos, "expected ')'");
        Next();
        return inner;
      }
      case Tok::kIdent:
        return Identifier();
      case Tok::kEnd:
        return ErrorAt(t.pos, "expected an operand, found end of input");
      default:
        return ErrorAt(t.pos, absl::StrCat("expected an operand, found '", t.text, "'"));
    }
  }

  absl::StatusOr<NodePtr> Identifier() {
    const Token t = Next();
    if (t.text.size() >= 2 && t.text[0] == 'x' &&
        std::all_of(t.text.begin() + 1, t.text.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      int index = 0;
      auto [end, ec] = std::from_chars(t.text.data() + 1, t.text.data() + t.text.size(), index);
      if (ec != std::errc() || index < 1 || index > dim_) {
        return ErrorAt(t.pos, absl::StrCat("variable ", t.text, " is out of range for dimension ", dim_));
      }
      auto n = std::make_shared<BoundaryExpr::Node>();
      n->op = Op::kVar;
      n->var = index;
      return NodePtr(n);
    }
    Op op;
    std::size_t min_args = 1;
    std::size_t max_args = 1;
    if (t.text == "min") {
      op = Op::kMin;
      min_args = 2;
      max_args = SIZE_MAX;
    } else if (t.text == "max") {
      op = Op::kMax;
      min_args = 2;
      max_args = SIZE_MAX;
    } else if (t.text == "sqrt") {
      op = Op::kSqrt;
    } else if (t.text == "abs") {
      op = Op::kAbs;
    } else {
      return ErrorAt(t.pos, absl::StrCat("unknown identifier \"", t.text, "\""));
    }
    if (Peek().kind != Tok::kLParen) {
      return ErrorAt(Peek().pos, absl::StrCat("expected '(' after ", t.text));
    }
    Next();
    std::vector<NodePtr> args;
    while (true) {
      absl::StatusOr<NodePtr> a = Expr();
      if (!a.ok()) return a;
      args.push_back(*a);
      if (Peek().kind == Tok::kComma) {
        Next();
        continue;
      }
      if (Peek().kind == Tok::kRParen) {
        Next();
        break;
      }
      return ErrorAt(Peek().pos, "expected ',' or ')'");
    }
    if (args.size() < min_args || args.size() > max_args) {
      return ErrorAt(t.pos, absl::StrCat(t.text, " takes ",
                                         max_args == 1 ? "1 argument" : "at least 2 arguments",
                                         ", got ", args.size()));
    }
    return Make(op, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  int dim_;
};

absl::StatusOr<double> EvalNode(const BoundaryExpr::Node& n, std::span<const double> x) {
  auto arg = [&](std::size_t k) { return EvalNode(*n.args[k], x); };
  switch (n.op) {
    case Op::kNumber:
      return n.value;
    case Op::kVar:
      return x[n.var - 1];
    case Op::kNeg: {
      absl::StatusOr<double> a = arg(0);
      if (!a.ok()) return a;
      return -*a;
    }
    case Op::kSqrt:
    case Op::kAbs: {
      absl::StatusOr<double> a = arg(0);
      if (!a.ok()) return a;
      if (n.op == Op::kAbs) return std::abs(*a);
      if (*a < 0.0) {
        return absl::InvalidArgumentError(
            absl::StrCat("sqrt of negative value ", FormatReal(*a)));
      }
      return std::sqrt(*a);
    }
    case Op::kMin:
    case Op::kMax: {
      absl::StatusOr<double> acc = arg(0);
      if (!acc.ok()) return acc;
      for (std::size_t k = 1; k < n.args.size(); ++k) {
        absl::StatusOr<double> v = arg(k);
        if (!v.ok()) return v;
        acc = n.op == Op::kMin ? std::min(*acc, *v) : std::max(*acc, *v);
      }
      return acc;
    }
    default:
      break;
  }
  absl::StatusOr<double> a = arg(0);
  if (!a.ok()) return a;
  absl::StatusOr<double> b = arg(1);
  if (!b.ok()) return b;
  double r = 0.0;
  switch (n.op) {
    case Op::kAdd:
      r = *a + *b;
      break;
    case Op::kSub:
      r = *a - *b;
      break;
    case Op::kMul:
      r = *a * *b;
      break;
    case Op::kDiv:
      if (*b == 0.0) return absl::InvalidArgumentError("division by zero");
      r = *a / *b;
      break;
    case Op::kPow:
      r = std::pow(*a, *b);
      break;
    default:
      return absl::InternalError("unhandled operator");
  }
  if (!std::isfinite(r)) {
    return absl::InvalidArgumentError("expression produced a non-finite value");
  }
  return r;
}

int Precedence(Op op) {
  switch (op) {
    case Op::kAdd:
    case Op::kSub:
      return 1;
    case Op::kMul:
    case Op::kDiv:
      return 2;
    case Op::kNeg:
      return 3;
    case Op::kPow:
      return 4;
    default:
      return 5;
  }
}

void Print(const BoundaryExpr::Node& n, int min_prec, std::string* out) {
  const int p = Precedence(n.op);
  const bool paren = p < min_prec;
  if (paren) out->push_back('(');
  switch (n.op) {
    case Op::kNumber:
      out->append(FormatReal(n.value));
      break;
    case Op::kVar:
      absl::StrAppend(out, "x", n.var);
      break;
    case Op::kNeg:
      out->push_back('-');
      Print(*n.args[0], 3, out);
      break;
    case Op::kAdd:
    case Op::kSub:
    case Op::kMul:
    case Op::kDiv: {
      static constexpr char kSym[] = {'+', '-', '*', '/'};
      const char sym = kSym[static_cast<int>(n.op) - static_cast<int>(Op::kAdd)];
      Print(*n.args[0], p, out);
      out->push_back(sym);
      Print(*n.args[1], p + 1, out);
      break;
    }
    case Op::kPow:
      Print(*n.args[0], 5, out);
      out->push_back('^');
      Print(*n.args[1], 3, out);
      break;
    case Op::kMin:
    case Op::kMax:
    case Op::kSqrt:
    case Op::kAbs: {
      out->append(n.op == Op::kMin   ? "min("
                  : n.op == Op::kMax ? "max("
                  : n.op == Op::kSqrt ? "sqrt("
                                      : "abs(");
      for (std::size_t k = 0; k < n.args.size(); ++k) {
        if (k > 0) out->append(", ");
        Print(*n.args[k], 0, out);
      }
      out->push_back(')');
      break;
    }
  }
  if (paren) out->push_back(')');
}

bool SameTree(const BoundaryExpr::Node& a, const BoundaryExpr::Node& b) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  if (a.op == Op::kNumber && a.value != b.value) return false;
  if (a.op == Op::kVar && a.var != b.var) return false;
  for (std::size_t k = 0; k < a.args.size(); ++k) {
    if (!SameTree(*a.args[k], *b.args[k])) return false;
  }
  return true;
}

void CollectVars(const BoundaryExpr::Node& n, std::set<int>* vars) {
  if (n.op == Op::kVar) vars->insert(n.var);
  for (const auto& a : n.args) CollectVars(*a, vars);
}

}  // namespace

absl::StatusOr<BoundaryExpr> BoundaryExpr::Parse(std::string_view src, int dim) {
  if (dim < 0) {
    return absl::InvalidArgumentError("dimension must be nonnegative");
  }
  absl::StatusOr<std::vector<Token>> toks = Lex(src);
  if (!toks.ok()) return toks.status();
  if (toks->size() == 1) return ErrorAt(1, "empty expression");
  Parser parser(*std::move(toks), dim);
  absl::StatusOr<NodePtr> root = parser.ParseAll();
  if (!root.ok()) return root.status();
  return BoundaryExpr(*root, dim);
}

absl::StatusOr<double> BoundaryExpr::Eval(std::span<const double> point) const {
  if (point.size() != static_cast<std::size_t>(dim_)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expression expects ", dim_, " coordinates, got ", point.size()));
  }
  return EvalNode(*root_, point);
}

std::vector<int> BoundaryExpr::Variables() const {
  std::set<int> vars;
  CollectVars(*root_, &vars);
  return {vars.begin(), vars.end()};
}

std::string BoundaryExpr::ToString() const {
  std::string out;
  Print(*root_, 0, &out);
  return out;
}

bool operator==(const BoundaryExpr& a, const BoundaryExpr& b) {
  return a.dim_ == b.dim_ && SameTree(*a.root_, *b.root_);
}

}  // namespace rangepriv
