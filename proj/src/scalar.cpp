#include "cmloc/scalar.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <utility>

namespace cmloc {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p, base = a % p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  return mod_from_int(t, p);
}

std::uint32_t mod_from_int(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::int64_t mod_lift(std::uint32_t a, std::uint32_t p) {
  return a > p / 2 ? static_cast<std::int64_t>(a) - p : static_cast<std::int64_t>(a);
}

void FieldElem::check(const FieldElem& o) const {
  if (modulus_ != o.modulus_) throw ModulusMismatch("field elements with different moduli");
}
FieldElem FieldElem::operator+(const FieldElem& o) const {
  check(o);
  return raw(mod_add(residue_, o.residue_, modulus_), modulus_);
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
  check(o);
  return raw(mod_sub(residue_, o.residue_, modulus_), modulus_);
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
  check(o);
  return raw(mod_mul(residue_, o.residue_, modulus_), modulus_);
}
FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inverse(); }
FieldElem FieldElem::inverse() const { return raw(mod_inv(residue_, modulus_), modulus_); }

Mat Mat::identity(std::size_t n, std::uint32_t p) {
  Mat m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % p;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t p) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Mat m(rows.size(), cols, p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = mod_from_int(rows[i][j], p);
  }
  return m;
}

Vec Mat::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<long>(i * cols_),
             data_.begin() + static_cast<long>((i + 1) * cols_));
}

void Mat::set_row(std::size_t i, const Vec& v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  std::copy(v.begin(), v.end(), data_.begin() + static_cast<long>(i * cols_));
}

Mat Mat::operator*(const Mat& o) const {
  if (p_ != o.p_) throw ModulusMismatch("matrix product with different moduli");
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Mat out(rows_, o.cols_, p_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint32_t a = at(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        out.at(i, j) = mod_add(out.at(i, j), mod_mul(a, o.at(k, j), p_), p_);
    }
  return out;
}

Vec Mat::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  Vec out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = (acc + std::uint64_t{at(i, j)} * v[j]) % p_;
    out[i] = static_cast<std::uint32_t>(acc);
  }
  return out;
}

bool Mat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint32_t x) { return x == 0; });
}

Mat transpose(const Mat& m) {
  Mat t(m.cols(), m.rows(), m.modulus());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  return t;
}

RrefResult rref(const Mat& m) {
  Mat a = m;
  const std::uint32_t p = m.modulus();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t sel = r;
    while (sel < a.rows() && a.at(sel, c) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(r, j));
    std::uint32_t inv = mod_inv(a.at(r, c), p);
    for (std::size_t j = 0; j < a.cols(); ++j) a.at(r, j) = mod_mul(a.at(r, j), inv, p);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c) == 0) continue;
      std::uint32_t f = a.at(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j)
        a.at(i, j) = mod_sub(a.at(i, j), mod_mul(f, a.at(r, j), p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Mat& m) { return rref(m).rank(); }

std::vector<Vec> kernel_basis(const Mat& m) {
  const std::uint32_t p = m.modulus();
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), 0);
    v[free] = 1 % p;
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      v[r.pivots[i]] = mod_neg(r.reduced.at(i, free), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

Echelon::Echelon(std::size_t ambient, std::uint32_t p)
    : ambient_(ambient), p_(p), pivot_row_(ambient, -1) {}

bool Echelon::reduce(Vec& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("echelon ambient mismatch");
  const std::uint64_t p = p_;
  // Lazy reduction: accumulate products and reduce only when a headroom
  // budget is spent or an entry is inspected.
  const std::uint64_t step = (p - 1) * (p - 1);
  const std::uint64_t budget = (std::numeric_limits<std::uint64_t>::max() - p) / step - 1;
  std::vector<std::uint64_t> acc(v.begin(), v.end());
  std::uint64_t used = 0;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    std::size_t pc = pivots_[k];
    std::uint64_t c = acc[pc] % p;
    if (c == 0) {
      acc[pc] = 0;
      continue;
    }
    if (used == budget) {
      for (auto& x : acc) x %= p;
      used = 0;
    }
    const std::uint64_t f = p - c;
    const Vec& row = rows_[k];
    for (std::size_t j = pc; j < ambient_; ++j)
      if (row[j]) acc[j] += f * row[j];
    acc[pc] = 0;
    ++used;
  }
  bool nonzero = false;
  for (std::size_t j = 0; j < ambient_; ++j) {
    v[j] = static_cast<std::uint32_t>(acc[j] % p);
    nonzero = nonzero || v[j] != 0;
  }
  return nonzero;
}

bool Echelon::insert(Vec v, Vec* added) {
  if (!reduce(v)) return false;
  std::size_t pc = 0;
  while (v[pc] == 0) ++pc;
  std::uint32_t inv = mod_inv(v[pc], p_);
  for (std::size_t j = pc; j < ambient_; ++j)
    if (v[j]) v[j] = mod_mul(v[j], inv, p_);
  pivot_row_[pc] = static_cast<long>(rows_.size());
  pivots_.push_back(pc);
  if (added) *added = v;
  rows_.push_back(std::move(v));
  return true;
}

Span Span::of(std::size_t ambient, std::uint32_t p, const std::vector<Vec>& gens) {
  Span s(ambient, p);
  for (const auto& g : gens) s.add(g);
  return s;
}

void Span::check(const Span& o) const {
  if (modulus() != o.modulus()) throw ModulusMismatch("subspaces over different fields");
  if (ambient() != o.ambient()) throw std::invalid_argument("subspaces of different ambient spaces");
}

bool Span::contains(const Vec& v) const { return basis_.contains(v); }

Span Span::sum(const Span& o) const {
  check(o);
  Span s = *this;
  for (const auto& v : o.basis()) s.add(v);
  return s;
}

Span Span::intersection(const Span& o) const {
  check(o);
  // Zassenhaus: rows (u | u) and (v | 0); rows whose left half vanishes
  // carry a basis of the intersection in their right half.
  const std::size_t n = ambient();
  const std::uint32_t p = modulus();
  Echelon z(2 * n, p);
  for (const auto& u : basis()) {
    Vec row(2 * n, 0);
    std::copy(u.begin(), u.end(), row.begin());
    std::copy(u.begin(), u.end(), row.begin() + static_cast<long>(n));
    z.insert(std::move(row));
  }
  for (const auto& v : o.basis()) {
    Vec row(2 * n, 0);
    std::copy(v.begin(), v.end(), row.begin());
    z.insert(std::move(row));
  }
  Span out(n, p);
  for (std::size_t k = 0; k < z.rank(); ++k) {
    if (z.pivots()[k] < n) continue;
    const Vec& row = z.rows()[k];
    out.add(Vec(row.begin() + static_cast<long>(n), row.end()));
  }
  return out;
}

bool Span::is_subspace_of(const Span& o) const {
  check(o);
  return std::all_of(basis().begin(), basis().end(), [&](const Vec& v) { return o.contains(v); });
}

std::size_t Span::quotient_dim(const Span& sub) const {
  check(sub);
  if (!sub.is_subspace_of(*this)) throw std::invalid_argument("quotient by a non-subspace");
  return dim() - sub.dim();
}

}  // namespace cmloc
