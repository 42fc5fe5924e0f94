#include "kstar/forms.hpp"

namespace kstar {

VectorField VectorField::coordinate(const TablePtr& table, std::size_t mu) {
  VectorField v{std::vector<Poly>(table->size(), Poly(table))};
  v.components[mu] = Poly::constant(table, 1);
  return v;
}

VectorField VectorField::euler(const TablePtr& table) {
  VectorField v;
  for (std::size_t k = 0; k < table->size(); ++k) v.components.push_back(Poly::variable(table, k));
  return v;
}

OneForm::OneForm(TablePtr table) : table_(std::move(table)), comps_(table_->size(), Poly(table_)) {}

OneForm OneForm::basis(const TablePtr& table, std::size_t mu, const Poly& c) {
  OneForm w(table);
  w.comps_.at(mu) = c;
  return w;
}

OneForm OneForm::basis(const TablePtr& table, std::size_t mu) {
  return basis(table, mu, Poly::constant(table, 1));
}

bool OneForm::is_zero() const {
  for (const auto& c : comps_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

OneForm& OneForm::operator+=(const OneForm& o) {
  for (std::size_t k = 0; k < comps_.size(); ++k) comps_[k] += o.comps_[k];
  return *this;
}

OneForm& OneForm::operator*=(const Scalar& c) {
  for (auto& p : comps_) p *= c;
  return *this;
}

std::string OneForm::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < comps_.size(); ++k) {
    if (comps_[k].is_zero()) continue;
    std::string term = "(" + comps_[k].to_string() + ")*d" + (*table_)[k].name;
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

void TwoForm::add(std::size_t a, std::size_t b, const Poly& c) {
  if (a == b || c.is_zero()) return;
  Poly v = a < b ? c : -c;
  auto key = std::minmax(a, b);
  auto [it, inserted] = comps_.try_emplace({key.first, key.second}, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

TwoForm& TwoForm::operator+=(const TwoForm& o) {
  for (const auto& [k, c] : o.comps_) add(k.first, k.second, c);
  return *this;
}

std::string TwoForm::to_string() const {
  std::string out;
  for (const auto& [k, c] : comps_) {
    std::string term =
        "(" + c.to_string() + ")*d" + (*table_)[k.first].name + "^d" + (*table_)[k.second].name;
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

OneForm lie_derivative(const VectorField& x, const OneForm& w) {
  const auto& table = w.table();
  OneForm r(table);
  const std::size_t n = table->size();
  for (std::size_t mu = 0; mu < n; ++mu) {
    Poly acc(table);
    for (std::size_t nu = 0; nu < n; ++nu) {
      acc += x.components[nu] * partial(w[mu], nu);
      acc += w[nu] * partial(x.components[nu], mu);
    }
    r[mu] = acc;
  }
  return r;
}

TwoForm wedge(const OneForm& a, const OneForm& b) {
  TwoForm r(a.table());
  const std::size_t n = a.components().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r.add(i, j, a[i] * b[j]);
  }
  return r;
}

}  // namespace kstar
