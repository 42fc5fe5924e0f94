#pragma once

#include <functional>
#include <optional>
#include <string>

#include "kstar/theta_series.hpp"

namespace kstar {

/// First theta-order at which two series differ.
struct Mismatch {
  unsigned order;
  Poly lhs;
  Poly rhs;
};

/// Outcome of an exact identity check, with a witness on failure.
struct Verdict {
  bool holds = true;
  std::optional<Mismatch> mismatch;
  /// Inputs that produced the mismatch, e.g. "f = x0, g = x1".
  std::string context;
  /// Number of instances checked.
  std::size_t checked = 0;

  explicit operator bool() const { return holds; }
  std::string describe() const;
};

using PolyMap = std::function<Poly(const Poly&)>;

/// Exact coefficientwise comparison, optionally after reducing both sides.
Verdict compare_series(const ThetaSeries& lhs, const ThetaSeries& rhs,
                       const PolyMap& normal_form = nullptr);

/// Fold a per-instance verdict into a sweep verdict, keeping the first failure.
void accumulate(Verdict& total, const Verdict& one, const std::string& context);

}  // namespace kstar
