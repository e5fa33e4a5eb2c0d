#include "vfstl/stl/monitor.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <vector>

namespace vfstl::stl {

SignalTooShortError::SignalTooShortError(std::size_t needed_last, std::size_t length, int t, int h)
    : std::runtime_error("signal too short: evaluation at t=" + std::to_string(t) + " with horizon " +
                         std::to_string(h) + " needs samples [" + std::to_string(t) + ", " +
                         std::to_string(needed_last) + "], signal has " + std::to_string(length) +
                         " samples; missing [" + std::to_string(length) + ", " +
                         std::to_string(needed_last) + "]"),
      needed_last_(needed_last) {}

namespace {

void check_span(const Signal& s, const Formula& f, int t) {
  if (t < 0) throw std::invalid_argument("evaluation time must be non-negative");
  if (s.length() == 0) throw std::invalid_argument("signal is empty");
  int h = horizon(f);
  std::size_t last = static_cast<std::size_t>(t) + static_cast<std::size_t>(h);
  if (last >= s.length()) throw SignalTooShortError(last, s.length(), t, h);
}

class RowEvaluator {
 public:
  explicit RowEvaluator(const Signal& s) : signal_(s) {}

  // rho(f, t) for t in [0, length - 1 - horizon(f)].
  const std::vector<double>& row(const Formula& f) {
    if (auto it = rows_.find(f.id()); it != rows_.end()) return it->second;
    std::vector<double> r = compute(f);
    return rows_.emplace(f.id(), std::move(r)).first->second;
  }

 private:
  std::vector<double> compute(const Formula& f) {
    const std::size_t n = signal_.length() - static_cast<std::size_t>(horizon(f));
    std::vector<double> out(n);
    switch (f.kind()) {
      case Kind::Predicate: {
        const auto& x = signal_.channel(f.channel());
        const bool upper = f.comparison() == Comparison::Greater ||
                           f.comparison() == Comparison::GreaterEqual;
        for (std::size_t t = 0; t < n; ++t) out[t] = upper ? x[t] - f.threshold() : f.threshold() - x[t];
        break;
      }
      case Kind::Not: {
        const auto& a = row(f.operand());
        for (std::size_t t = 0; t < n; ++t) out[t] = -a[t];
        break;
      }
      case Kind::And: {
        const auto& a = row(f.operand(0));
        const auto& b = row(f.operand(1));
        for (std::size_t t = 0; t < n; ++t) out[t] = std::min(a[t], b[t]);
        break;
      }
      case Kind::Or: {
        const auto& a = row(f.operand(0));
        const auto& b = row(f.operand(1));
        for (std::size_t t = 0; t < n; ++t) out[t] = std::max(a[t], b[t]);
        break;
      }
      case Kind::Until: {
        const auto& a = row(f.operand(0));
        const auto& b = row(f.operand(1));
        const Interval w = f.interval();
        for (std::size_t t = 0; t < n; ++t) {
          double best = -std::numeric_limits<double>::infinity();
          double hold = std::numeric_limits<double>::infinity();
          for (std::size_t tp = t; tp <= t + static_cast<std::size_t>(w.hi); ++tp) {
            hold = std::min(hold, a[tp]);
            if (tp >= t + static_cast<std::size_t>(w.lo)) best = std::max(best, std::min(b[tp], hold));
          }
          out[t] = best;
        }
        break;
      }
      case Kind::Eventually:
      case Kind::Globally: {
        const auto& a = row(f.operand());
        const Interval w = f.interval();
        const bool ev = f.kind() == Kind::Eventually;
        for (std::size_t t = 0; t < n; ++t) {
          double acc = a[t + static_cast<std::size_t>(w.lo)];
          for (std::size_t tp = t + static_cast<std::size_t>(w.lo) + 1;
               tp <= t + static_cast<std::size_t>(w.hi); ++tp) {
            acc = ev ? std::max(acc, a[tp]) : std::min(acc, a[tp]);
          }
          out[t] = acc;
        }
        break;
      }
    }
    return out;
  }

  const Signal& signal_;
  std::unordered_map<const void*, std::vector<double>> rows_;
};

bool sat(const Signal& s, const Formula& f, std::size_t t) {
  switch (f.kind()) {
    case Kind::Predicate: {
      double x = s.channel(f.channel())[t];
      double c = f.threshold();
      switch (f.comparison()) {
        case Comparison::Greater: return x > c;
        case Comparison::GreaterEqual: return x >= c;
        case Comparison::Less: return x < c;
        case Comparison::LessEqual: return x <= c;
      }
      return false;
    }
    case Kind::Not:
      return !sat(s, f.operand(), t);
    case Kind::And:
      return sat(s, f.operand(0), t) && sat(s, f.operand(1), t);
    case Kind::Or:
      return sat(s, f.operand(0), t) || sat(s, f.operand(1), t);
    case Kind::Until: {
      const Interval w = f.interval();
      for (std::size_t tp = t + static_cast<std::size_t>(w.lo); tp <= t + static_cast<std::size_t>(w.hi); ++tp) {
        if (!sat(s, f.operand(1), tp)) continue;
        bool held = true;
        for (std::size_t tpp = t; tpp <= tp && held; ++tpp) held = sat(s, f.operand(0), tpp);
        if (held) return true;
      }
      return false;
    }
    case Kind::Eventually: {
      const Interval w = f.interval();
      for (std::size_t tp = t + static_cast<std::size_t>(w.lo); tp <= t + static_cast<std::size_t>(w.hi); ++tp) {
        if (sat(s, f.operand(), tp)) return true;
      }
      return false;
    }
    case Kind::Globally: {
      const Interval w = f.interval();
      for (std::size_t tp = t + static_cast<std::size_t>(w.lo); tp <= t + static_cast<std::size_t>(w.hi); ++tp) {
        if (!sat(s, f.operand(), tp)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

double robustness(const Signal& s, const Formula& f, int t) {
  check_span(s, f, t);
  RowEvaluator eval(s);
  return eval.row(f)[static_cast<std::size_t>(t)];
}

bool satisfies(const Signal& s, const Formula& f, int t) {
  check_span(s, f, t);
  return sat(s, f, static_cast<std::size_t>(t));
}

}  // namespace vfstl::stl
