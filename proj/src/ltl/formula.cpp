#include "vcsmc/ltl/formula.hpp"

#include <stdexcept>

namespace vcsmc::ltl {

FormulaRef make_atom(sem::ExprRef expr, std::string text) {
  auto f = std::make_shared<Formula>();
  f->op = LtlOp::Atom;
  f->atom = std::move(expr);
  f->text = std::move(text);
  return f;
}

FormulaRef make_true() {
  static const FormulaRef t = [] {
    auto f = std::make_shared<Formula>();
    f->op = LtlOp::True;
    return f;
  }();
  return t;
}

FormulaRef make_false() {
  static const FormulaRef t = [] {
    auto f = std::make_shared<Formula>();
    f->op = LtlOp::False;
    return f;
  }();
  return t;
}

FormulaRef make_unary(LtlOp op, FormulaRef a) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->kids.push_back(std::move(a));
  return f;
}

FormulaRef make_binary(LtlOp op, FormulaRef a, FormulaRef b) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->kids.push_back(std::move(a));
  f->kids.push_back(std::move(b));
  return f;
}

FormulaRef make_bounded(LtlOp op, int lo, int hi, FormulaRef a) {
  if (lo < 0 || lo > hi) throw std::invalid_argument("bounded window must satisfy 0 <= lo <= hi");
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->lo = lo;
  f->hi = hi;
  f->kids.push_back(std::move(a));
  return f;
}

bool is_past(LtlOp op) { return op == LtlOp::O || op == LtlOp::Y || op == LtlOp::H; }

bool is_temporal(LtlOp op) {
  switch (op) {
    case LtlOp::X:
    case LtlOp::U:
    case LtlOp::R:
    case LtlOp::F:
    case LtlOp::G:
    case LtlOp::BoundedF:
    case LtlOp::BoundedG: return true;
    default: return false;
  }
}

bool contains_past(const Formula& f) {
  if (is_past(f.op)) return true;
  for (const auto& k : f.kids)
    if (contains_past(*k)) return true;
  return false;
}

bool contains_future(const Formula& f) {
  if (is_temporal(f.op)) return true;
  for (const auto& k : f.kids)
    if (contains_future(*k)) return true;
  return false;
}

std::string to_string(const Formula& f) {
  auto un = [&](const char* op) { return std::string(op) + " (" + to_string(*f.kids[0]) + ")"; };
  auto bin = [&](const char* op) {
    return "(" + to_string(*f.kids[0]) + ") " + op + " (" + to_string(*f.kids[1]) + ")";
  };
  auto window = [&](const char* op) {
    return std::string(op) + "[" + std::to_string(f.lo) + "," + std::to_string(f.hi) + "] (" +
           to_string(*f.kids[0]) + ")";
  };
  switch (f.op) {
    case LtlOp::Atom: return f.text;
    case LtlOp::True: return "TRUE";
    case LtlOp::False: return "FALSE";
    case LtlOp::Not: return un("!");
    case LtlOp::And: return bin("&");
    case LtlOp::Or: return bin("|");
    case LtlOp::Implies: return bin("->");
    case LtlOp::X: return un("X");
    case LtlOp::U: return bin("U");
    case LtlOp::R: return bin("R");
    case LtlOp::F: return un("F");
    case LtlOp::G: return un("G");
    case LtlOp::BoundedF: return window("F");
    case LtlOp::BoundedG: return window("G");
    case LtlOp::O: return un("O");
    case LtlOp::Y: return un("Y");
    case LtlOp::H: return un("H");
  }
  return "?";
}

}  // namespace vcsmc::ltl
