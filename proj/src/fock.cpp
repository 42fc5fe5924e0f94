#include "kstar/fock.hpp"

#include <numeric>

namespace kstar {

// ---------------------------------------------------------------------------
// Surd

Surd::Surd(long n) : Surd(Rational(n)) {}

Surd::Surd(const Rational& q) { add(1, q); }

Surd Surd::sqrt(unsigned long n) {
  Surd r;
  if (n == 0) return r;
  unsigned long outside = 1;
  unsigned long inside = 1;
  for (unsigned long p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      outside *= p;
    }
    if (n % p == 0) {
      n /= p;
      inside *= p;
    }
  }
  inside *= n;
  r.add(inside, Rational(outside));
  return r;
}

void Surd::add(unsigned long k, const Rational& q) {
  if (q == 0) return;
  auto [it, fresh] = parts_.try_emplace(k, q);
  if (fresh) return;
  it->second += q;
  if (it->second == 0) parts_.erase(it);
}

Surd& Surd::operator+=(const Surd& o) {
  for (const auto& [k, q] : o.parts_) add(k, q);
  return *this;
}

Surd& Surd::operator-=(const Surd& o) {
  for (const auto& [k, q] : o.parts_) add(k, -q);
  return *this;
}

Surd operator*(const Surd& a, const Surd& b) {
  Surd r;
  for (const auto& [ka, qa] : a.parts_) {
    for (const auto& [kb, qb] : b.parts_) {
      // sqrt(ka) sqrt(kb) = g sqrt(ka kb / g^2) for squarefree ka, kb
      unsigned long g = std::gcd(ka, kb);
      r.add((ka / g) * (kb / g), qa * qb * Rational(g));
    }
  }
  return r;
}

Surd& Surd::operator*=(const Surd& o) { return *this = *this * o; }

Surd Surd::operator-() const {
  Surd r;
  r -= *this;
  return r;
}

std::string Surd::to_string() const {
  if (parts_.empty()) return "0";
  std::string out;
  for (const auto& [k, q] : parts_) {
    std::string term;
    if (k == 1) {
      term = rational_to_string(q);
    } else {
      std::string root = "sqrt(" + std::to_string(k) + ")";
      if (q == 1) {
        term = root;
      } else if (q == -1) {
        term = "-" + root;
      } else {
        term = rational_to_string(q) + "*" + root;
      }
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// FockRep

FockRep::FockRep(int d, unsigned cutoff) : d_(d), cutoff_(cutoff) {
  if (d < 1) throw Error("Fock space needs at least one mode");
  if (cutoff < 2) throw Error("Fock cutoff must be >= 2, got " + std::to_string(cutoff));
  const auto modes = static_cast<std::size_t>(d);
  std::vector<unsigned> n(modes, 0);
  // Mixed radix M + 1, first mode slowest.
  while (true) {
    occupations_.push_back(n);
    std::size_t k = modes;
    while (k > 0 && n[k - 1] == cutoff) n[--k] = 0;
    if (k == 0) break;
    ++n[k - 1];
  }
  const auto size = static_cast<Eigen::Index>(occupations_.size());
  std::size_t stride = 1;
  for (std::size_t i = modes; i-- > 0;) {
    std::vector<Eigen::Triplet<Surd>> entries;
    for (Eigen::Index s = 0; s < size; ++s) {
      unsigned ni = occupations_[static_cast<std::size_t>(s)][i];
      if (ni == cutoff) continue;
      entries.emplace_back(s + static_cast<Eigen::Index>(stride), s, Surd::sqrt(ni + 1));
    }
    SurdMatrix up(size, size);
    up.setFromTriplets(entries.begin(), entries.end());
    adag_.insert(adag_.begin(), up);
    a_.insert(a_.begin(), SurdMatrix(up.transpose()));
    stride *= cutoff + 1;
  }
}

std::string FockRep::label(std::size_t state) const {
  std::string s = "|";
  for (std::size_t i = 0; i < occupations_[state].size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(occupations_[state][i]);
  }
  return s + ">";
}

bool FockRep::below_cutoff(std::size_t state) const {
  for (unsigned n : occupations_[state]) {
    if (n >= cutoff_) return false;
  }
  return true;
}

SurdMatrix FockRep::x0() const {
  const auto size = static_cast<Eigen::Index>(states());
  SurdMatrix r(size, size);
  for (int i = 1; i <= d_; ++i) r += SurdMatrix(adag(i) * a(i));
  return r;
}

namespace {

FockCheck check_zero(const FockRep& rep, const std::string& identity, const SurdMatrix& diff) {
  FockCheck c;
  c.identity = identity;
  for (Eigen::Index s = 0; s < diff.outerSize(); ++s) {
    bool zero = true;
    // cancellation can leave explicit zeros in the pattern
    for (SurdMatrix::InnerIterator it(diff, s); it && zero; ++it) zero = it.value().is_zero();
    if (zero) continue;
    auto state = static_cast<std::size_t>(s);
    c.failing_states.push_back(rep.label(state));
    if (rep.below_cutoff(state)) {
      c.holds_below_cutoff = false;
      c.failures_at_top = false;
    }
  }
  return c;
}

}  // namespace

FockReport fock_check(int d, unsigned cutoff) {
  FockRep rep(d, cutoff);
  FockReport report{d, cutoff, rep.states(), {}, true};
  const auto size = static_cast<Eigen::Index>(rep.states());
  SurdMatrix one(size, size);
  one.setIdentity();
  const SurdMatrix x0 = rep.x0();
  auto idx = [](int i) { return std::to_string(i); };
  for (int i = 1; i <= d; ++i) {
    const SurdMatrix& xi = rep.x(i);
    FockCheck c = check_zero(rep, "[X0, X" + idx(i) + "] = X" + idx(i), SurdMatrix(x0 * xi) - SurdMatrix(xi * x0) - xi);
    report.algebra_holds = report.algebra_holds && c.holds_below_cutoff && c.failures_at_top;
    report.checks.push_back(std::move(c));
  }
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      FockCheck c = check_zero(rep, "[X" + idx(i) + ", X" + idx(j) + "] = 0",
                               SurdMatrix(rep.x(i) * rep.x(j)) - SurdMatrix(rep.x(j) * rep.x(i)));
      report.algebra_holds = report.algebra_holds && c.holds_below_cutoff && c.failures_at_top;
      report.checks.push_back(std::move(c));
    }
  }
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      SurdMatrix diff = SurdMatrix(rep.a(i) * rep.adag(j)) - SurdMatrix(rep.adag(j) * rep.a(i));
      if (i == j) diff -= one;
      report.checks.push_back(check_zero(rep, "[a" + idx(i) + ", a" + idx(j) + "^dag] = " + (i == j ? "1" : "0"), diff));
    }
  }
  return report;
}

}  // namespace kstar
