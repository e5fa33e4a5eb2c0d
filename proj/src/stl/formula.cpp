#include "vfstl/stl/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace vfstl::stl {

namespace {

void check_interval(Interval w) {
  if (w.lo < 0 || w.lo > w.hi) {
    throw std::invalid_argument("invalid interval [" + std::to_string(w.lo) + "," +
                                std::to_string(w.hi) + "]: require 0 <= t1 <= t2");
  }
}

}  // namespace

Formula Formula::predicate(std::string channel, Comparison cmp, double threshold) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Predicate;
  n->channel = std::move(channel);
  n->cmp = cmp;
  n->threshold = threshold;
  return Formula(std::move(n));
}

Formula Formula::negation(Formula operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->operands = {std::move(operand)};
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->operands = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->operands = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::until(Interval window, Formula lhs, Formula rhs) {
  check_interval(window);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Until;
  n->window = window;
  n->operands = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::eventually(Interval window, Formula operand) {
  check_interval(window);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Eventually;
  n->window = window;
  n->operands = {std::move(operand)};
  return Formula(std::move(n));
}

Formula Formula::globally(Interval window, Formula operand) {
  check_interval(window);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Globally;
  n->window = window;
  n->operands = {std::move(operand)};
  return Formula(std::move(n));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Predicate:
      return a.channel() == b.channel() && a.comparison() == b.comparison() &&
             a.threshold() == b.threshold();
    case Kind::Until:
    case Kind::Eventually:
    case Kind::Globally:
      if (a.interval() != b.interval()) return false;
      break;
    default:
      break;
  }
  return a.operands() == b.operands();
}

int horizon(const Formula& f) {
  switch (f.kind()) {
    case Kind::Predicate:
      return 0;
    case Kind::Not:
      return horizon(f.operand());
    case Kind::And:
    case Kind::Or:
      return std::max(horizon(f.operand(0)), horizon(f.operand(1)));
    case Kind::Until:
      return f.interval().hi + std::max(horizon(f.operand(0)), horizon(f.operand(1)));
    case Kind::Eventually:
    case Kind::Globally:
      return f.interval().hi + horizon(f.operand());
  }
  return 0;
}

int depth(const Formula& f) {
  int d = 0;
  for (const auto& op : f.operands()) d = std::max(d, depth(op) + 1);
  return d;
}

Formula map_predicates(const Formula& f, const std::function<Formula(const Formula&)>& fn) {
  switch (f.kind()) {
    case Kind::Predicate:
      return fn(f);
    case Kind::Not:
      return Formula::negation(map_predicates(f.operand(), fn));
    case Kind::And:
      return Formula::conjunction(map_predicates(f.operand(0), fn), map_predicates(f.operand(1), fn));
    case Kind::Or:
      return Formula::disjunction(map_predicates(f.operand(0), fn), map_predicates(f.operand(1), fn));
    case Kind::Until:
      return Formula::until(f.interval(), map_predicates(f.operand(0), fn),
                            map_predicates(f.operand(1), fn));
    case Kind::Eventually:
      return Formula::eventually(f.interval(), map_predicates(f.operand(), fn));
    case Kind::Globally:
      return Formula::globally(f.interval(), map_predicates(f.operand(), fn));
  }
  return f;
}

namespace {
void collect_channels(const Formula& f, std::vector<std::string>& out) {
  if (f.kind() == Kind::Predicate) {
    out.push_back(f.channel());
    return;
  }
  for (const auto& op : f.operands()) collect_channels(op, out);
}
}  // namespace

std::vector<std::string> channels(const Formula& f) {
  std::vector<std::string> out;
  collect_channels(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const char* comparison_symbol(Comparison cmp) {
  switch (cmp) {
    case Comparison::Greater: return ">";
    case Comparison::GreaterEqual: return ">=";
    case Comparison::Less: return "<";
    case Comparison::LessEqual: return "<=";
  }
  return "?";
}

}  // namespace vfstl::stl
