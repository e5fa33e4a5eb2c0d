#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace vfstl::stl {

enum class Comparison { Greater, GreaterEqual, Less, LessEqual };

enum class Kind { Predicate, Not, And, Or, Until, Eventually, Globally };

/// Closed integer window [lo, hi] in samples relative to the evaluation time.
struct Interval {
  int lo = 0;
  int hi = 0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Immutable STL syntax tree. Copies share structure.
///
/// Or, Eventually and Globally are kept as distinct node kinds so that
/// formatting round-trips, but they are evaluated exactly as their
/// derivations from negation, conjunction and until.
class Formula {
 public:
  static Formula predicate(std::string channel, Comparison cmp, double threshold);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula until(Interval window, Formula lhs, Formula rhs);
  static Formula eventually(Interval window, Formula operand);
  static Formula globally(Interval window, Formula operand);

  Kind kind() const { return node_->kind; }

  // Predicate fields.
  const std::string& channel() const { return node_->channel; }
  Comparison comparison() const { return node_->cmp; }
  double threshold() const { return node_->threshold; }

  // Temporal fields.
  Interval interval() const { return node_->window; }

  /// Operands in order: one for Not/F/G, two for And/Or/Until.
  const std::vector<Formula>& operands() const { return node_->operands; }
  const Formula& operand(std::size_t i = 0) const { return node_->operands.at(i); }

  /// Stable identity of the underlying node, used for memoization.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind = Kind::Predicate;
    std::string channel;
    Comparison cmp = Comparison::Greater;
    double threshold = 0.0;
    Interval window;
    std::vector<Formula> operands;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Number of future samples the formula depends on.
int horizon(const Formula& f);

/// Tree depth; a predicate has depth 0.
int depth(const Formula& f);

/// Rebuilds the tree with every predicate replaced by fn(predicate).
Formula map_predicates(const Formula& f, const std::function<Formula(const Formula&)>& fn);

/// Channel names referenced anywhere in the formula, sorted and unique.
std::vector<std::string> channels(const Formula& f);

const char* comparison_symbol(Comparison cmp);

}  // namespace vfstl::stl
