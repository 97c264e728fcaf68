#include "sosc/biquadratic.hpp"

#include <algorithm>
#include <utility>

#include "sosc/form_ops.hpp"

namespace sosc {

BiquadKey BiquadKey::make(unsigned i, unsigned j, unsigned k, unsigned l) {
  if (i > j) std::swap(i, j);
  if (k > l) std::swap(k, l);
  return {i, j, k, l};
}

BiquadraticForm::BiquadraticForm(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidArgument("biquadratic form needs n >= 1");
}

BiquadraticForm BiquadraticForm::from_form(const Form& f, std::size_t n) {
  if (f.n_vars() != 2 * n) throw InvalidArgument("form must have 2n variables");
  BiquadraticForm b(n);
  for (const auto& [e, c] : f.terms()) {
    std::vector<unsigned> xs, ys;
    for (std::size_t v = 0; v < n; ++v)
      for (unsigned r = 0; r < e[v]; ++r) xs.push_back(static_cast<unsigned>(v));
    for (std::size_t v = 0; v < n; ++v)
      for (unsigned r = 0; r < e[n + v]; ++r) ys.push_back(static_cast<unsigned>(v));
    if (xs.size() != 2 || ys.size() != 2) throw InvalidArgument("form is not biquadratic");
    b.add(xs[0], xs[1], ys[0], ys[1], c);
  }
  return b;
}

void BiquadraticForm::check_key(const BiquadKey& key) const {
  if (key.j >= n_ || key.l >= n_) throw InvalidArgument("biquadratic index out of range");
}

Rational BiquadraticForm::coefficient(unsigned i, unsigned j, unsigned k, unsigned l) const {
  return coefficient(BiquadKey::make(i, j, k, l));
}

Rational BiquadraticForm::coefficient(const BiquadKey& key) const {
  auto it = coeffs_.find(BiquadKey::make(key.i, key.j, key.k, key.l));
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void BiquadraticForm::add(unsigned i, unsigned j, unsigned k, unsigned l, const Rational& c) {
  add(BiquadKey::make(i, j, k, l), c);
}

void BiquadraticForm::add(const BiquadKey& raw, const Rational& c) {
  BiquadKey key = BiquadKey::make(raw.i, raw.j, raw.k, raw.l);
  check_key(key);
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

Form BiquadraticForm::to_form() const {
  Form f(2 * n_, 4);
  for (const auto& [key, c] : coeffs_) {
    ExponentVector e(2 * n_);
    e[key.i] += 1;
    e[key.j] += 1;
    e[n_ + key.k] += 1;
    e[n_ + key.l] += 1;
    f.add_term(e, c);
  }
  return f;
}

BiquadraticForm& BiquadraticForm::operator+=(const BiquadraticForm& other) {
  if (n_ != other.n_) throw InvalidArgument("biquadratic forms with different block sizes");
  for (const auto& [key, c] : other.coeffs_) add(key, c);
  return *this;
}

BiquadraticForm& BiquadraticForm::operator*=(const Rational& s) {
  if (s == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [key, c] : coeffs_) c *= s;
  return *this;
}

MonomialOrdering::MonomialOrdering(std::size_t n, std::vector<BiquadKey> entries)
    : n_(n), entries_(std::move(entries)) {
  const std::size_t pairs = n * (n + 1) / 2;
  if (entries_.size() != pairs * pairs) throw InvalidArgument("ordering has the wrong number of monomials");
  for (std::size_t idx = 0; idx < entries_.size(); ++idx) {
    const auto& k = entries_[idx];
    if (k.i > k.j || k.k > k.l || k.j >= n || k.l >= n) throw InvalidArgument("ordering entry is not a normalized monomial");
    if (!index_.emplace(k, idx).second) throw InvalidArgument("ordering lists a monomial twice");
  }
}

MonomialOrdering MonomialOrdering::lex(std::size_t n) {
  if (n == 0) throw InvalidArgument("ordering needs n >= 1");
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<BiquadKey> entries;
  for (auto [i, j] : pairs)
    for (auto [k, l] : pairs) entries.push_back({i, j, k, l});
  return MonomialOrdering(n, std::move(entries));
}

const MonomialOrdering& MonomialOrdering::builtin36() {
  static const MonomialOrdering ordering = [] {
    // x-pairs and y-pairs both run x3^2, x2x3, x2^2, x1x3, x1x2, x1^2.
    const std::pair<unsigned, unsigned> pairs[] = {{2, 2}, {1, 2}, {1, 1}, {0, 2}, {0, 1}, {0, 0}};
    std::vector<BiquadKey> entries;
    for (auto [i, j] : pairs)
      for (auto [k, l] : pairs) entries.push_back({i, j, k, l});
    return MonomialOrdering(3, std::move(entries));
  }();
  return ordering;
}

std::size_t MonomialOrdering::index_of(const BiquadKey& key) const {
  auto it = index_.find(BiquadKey::make(key.i, key.j, key.k, key.l));
  if (it == index_.end()) throw InvalidArgument("monomial not in ordering");
  return it->second;
}

BiquadraticForm hessian_biquadratic(const Form& p) {
  if (p.degree() != 4) throw InvalidArgument("Hessian biquadratic form needs a quartic");
  const std::size_t n = p.n_vars();
  PolyMatrix h = hessian(p);
  BiquadraticForm b(n);
  for (unsigned r = 0; r < n; ++r)
    for (unsigned s = 0; s < n; ++s)
      for (const auto& [e, c] : h(r, s).terms()) {
        std::vector<unsigned> xs;
        for (unsigned v = 0; v < n; ++v)
          for (unsigned m = 0; m < e[v]; ++m) xs.push_back(v);
        b.add(xs[0], xs[1], r, s, c);
      }
  return b;
}

SymmetryVerdict is_symmetric(const BiquadraticForm& b) {
  for (const auto& [key, c] : b.coefficients()) {
    Rational other = b.coefficient(key.swapped());
    if (other != c) return {false, key, c, other};
  }
  return {};
}

BiquadraticForm swap_xy(const BiquadraticForm& b) {
  BiquadraticForm out(b.n());
  for (const auto& [key, c] : b.coefficients()) out.add(key.swapped(), c);
  return out;
}

Rational evaluate(const BiquadraticForm& b, std::span<const Rational> x, std::span<const Rational> y) {
  if (x.size() != b.n() || y.size() != b.n()) throw InvalidArgument("evaluation point has wrong length");
  Rational sum = 0;
  for (const auto& [key, c] : b.coefficients()) sum += c * x[key.i] * x[key.j] * y[key.k] * y[key.l];
  return sum;
}

RationalVector coefficient_vector(const BiquadraticForm& b, const MonomialOrdering& ord) {
  if (ord.n() != b.n()) throw InvalidArgument("ordering does not match block size");
  RationalVector out;
  out.reserve(ord.size());
  for (const auto& key : ord.entries()) out.push_back(b.coefficient(key));
  return out;
}

BiquadraticForm from_coefficient_vector(std::span<const Rational> coeffs, const MonomialOrdering& ord) {
  if (coeffs.size() != ord.size()) throw InvalidArgument("coefficient vector length does not match ordering");
  BiquadraticForm b(ord.n());
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) b.add(ord[idx], coeffs[idx]);
  return b;
}

std::uint64_t dim_nary(std::size_t n) {
  if (n < 1) throw InvalidArgument("dimension needs n >= 1");
  std::uint64_t pairs = n * (n + 1) / 2;
  return pairs * pairs;
}

std::uint64_t dim_symmetric(std::size_t n) {
  if (n < 1) throw InvalidArgument("dimension needs n >= 1");
  std::uint64_t pairs = n * (n + 1) / 2;
  return (pairs * pairs + pairs) / 2;
}

std::uint64_t dim_hessian(std::size_t n) {
  if (n < 1) throw InvalidArgument("dimension needs n >= 1");
  return binomial(static_cast<unsigned>(n + 3), 4).get_ui();
}

}  // namespace sosc
