#include "kstar/verdict.hpp"

#include <set>

namespace kstar {

std::string Verdict::describe() const {
  if (holds) return "pass (" + std::to_string(checked) + " checked)";
  std::string out = "fail";
  if (!context.empty()) out += " at " + context;
  if (mismatch) {
    out += ": theta^" + std::to_string(mismatch->order) + " coefficient " + mismatch->lhs.to_string() +
           " != " + mismatch->rhs.to_string();
  }
  return out;
}

Verdict compare_series(const ThetaSeries& lhs, const ThetaSeries& rhs, const PolyMap& normal_form) {
  Verdict v;
  v.checked = 1;
  std::set<unsigned> orders;
  for (const auto& [n, p] : lhs.coefficients()) orders.insert(n);
  for (const auto& [n, p] : rhs.coefficients()) orders.insert(n);
  for (unsigned n : orders) {
    Poly a = lhs.coefficient(n);
    Poly b = rhs.coefficient(n);
    bool equal = normal_form ? normal_form(a - b).is_zero() : a == b;
    if (!equal) {
      v.holds = false;
      v.mismatch = Mismatch{n, a, b};
      return v;
    }
  }
  return v;
}

void accumulate(Verdict& total, const Verdict& one, const std::string& context) {
  total.checked += one.checked == 0 ? 1 : one.checked;
  if (!total.holds || one.holds) return;
  total.holds = false;
  total.mismatch = one.mismatch;
  total.context = one.context.empty() ? context : context + "; " + one.context;
}

}  // namespace kstar
