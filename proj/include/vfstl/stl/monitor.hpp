#pragma once

#include <stdexcept>
#include <string>

#include "vfstl/stl/formula.hpp"
#include "vfstl/stl/signal.hpp"

namespace vfstl::stl {

/// The signal does not cover [t, t + horizon(f)].
class SignalTooShortError : public std::runtime_error {
 public:
  SignalTooShortError(std::size_t needed_last, std::size_t length, int t, int h);
  std::size_t needed_last() const { return needed_last_; }

 private:
  std::size_t needed_last_;
};

/// Space robustness rho(s, f, t).
///
/// Predicates give x - c for > and >=, c - x for < and <=; strictness only
/// matters for satisfies(). Every subformula is evaluated once per sample
/// (memoized rows), until windows are scanned directly.
double robustness(const Signal& s, const Formula& f, int t = 0);

/// Boolean satisfaction (s, t) |= f, evaluated by direct recursion without
/// going through robustness.
bool satisfies(const Signal& s, const Formula& f, int t = 0);

}  // namespace vfstl::stl
