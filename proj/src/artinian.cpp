#include "cmloc/artinian.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

namespace cmloc {

RingSpec RingSpec::make(std::uint32_t p, std::vector<std::string> vars,
                        const std::vector<std::string>& ideal_text) {
  RingSpec r;
  r.p = p;
  r.vars = std::move(vars);
  for (const auto& t : ideal_text) r.ideal.push_back(r.parse(t));
  r.validate();
  return r;
}

void RingSpec::validate() const {
  if (!is_prime(p)) throw std::invalid_argument("ring modulus must be prime");
  if (p > (1u << 31)) throw std::invalid_argument("ring modulus must be below 2^31");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty()) throw std::invalid_argument("empty variable name");
    if (!seen.insert(v).second) throw std::invalid_argument("repeated variable name '" + v + "'");
  }
  for (const auto& g : ideal) {
    if (g.nvars() != nvars() || g.modulus() != p)
      throw std::invalid_argument("ideal generator lives in another ring");
    if (g.constant_term() != 0)
      throw std::invalid_argument("ideal generator " + print(g) + " has a constant term");
  }
}

std::string RingSpec::key() const {
  std::ostringstream os;
  os << p << '|';
  for (const auto& v : vars) os << v << ',';
  os << '|';
  for (const auto& g : ideal) os << print(g) << ';';
  return os.str();
}

namespace {
std::mutex cache_mutex;
std::map<std::pair<std::string, int>, std::shared_ptr<const TruncatedAlgebra>> algebra_cache;

}  // namespace

std::shared_ptr<const TruncatedAlgebra> TruncatedAlgebra::build(const RingSpec& ring, int level) {
  if (level < 1) throw std::invalid_argument("truncation level must be at least 1");
  auto key = std::make_pair(ring.key(), level);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = algebra_cache.find(key);
    if (it != algebra_cache.end()) return it->second;
  }
  auto alg = std::shared_ptr<const TruncatedAlgebra>(new TruncatedAlgebra(ring, level));
  std::lock_guard<std::mutex> lock(cache_mutex);
  return algebra_cache.emplace(key, alg).first->second;
}

TruncatedAlgebra::TruncatedAlgebra(RingSpec ring, int level)
    : ring_(std::move(ring)), level_(level) {
  ring_.validate();
  const std::size_t v = nvars();
  const std::uint32_t p = ring_.p;
  monos_ = monomials_below(v, level);
  for (std::size_t k = 0; k < monos_.size(); ++k) index_.emplace(monos_[k].exponents(), k);
  const std::size_t n = monos_.size();

  Echelon ideal_rows(n, p);
  for (const auto& g : ring_.ideal) {
    if (g.is_zero()) continue;
    const int ord = g.order();
    for (const auto& m : monos_) {
      if (m.degree() + ord >= level) break;
      Vec row(n, 0);
      for (const auto& [t, c] : g.terms()) {
        Monomial prod = t * m;
        if (prod.degree() >= level) continue;
        row[index_.at(prod.exponents())] = c;
      }
      ideal_rows.insert(std::move(row));
    }
  }

  std::vector<long> std_index(n, -1);
  for (std::size_t k = 0; k < n; ++k)
    if (!ideal_rows.has_pivot(k)) {
      std_index[k] = static_cast<long>(std_.size());
      std_.push_back(k);
    }

  // Normal forms by descending column: a pivot column equals minus the rest
  // of its row, whose columns all come later.
  std::vector<long> row_of(n, -1);
  for (std::size_t r = 0; r < ideal_rows.rank(); ++r)
    row_of[ideal_rows.pivots()[r]] = static_cast<long>(r);
  nf_.assign(n, {});
  std::vector<std::uint32_t> dense(std_.size(), 0);
  std::vector<char> marked(std_.size(), 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t k = n; k-- > 0;) {
    if (std_index[k] >= 0) {
      nf_[k] = {{static_cast<std::uint32_t>(std_index[k]), 1}};
      continue;
    }
    const Vec& row = ideal_rows.rows()[static_cast<std::size_t>(row_of[k])];
    touched.clear();
    for (std::size_t j = k + 1; j < n; ++j) {
      if (!row[j]) continue;
      const std::uint32_t c = mod_neg(row[j], p);
      for (const auto& [i, val] : nf_[j]) {
        if (!marked[i]) {
          marked[i] = 1;
          touched.push_back(i);
        }
        dense[i] = mod_add(dense[i], mod_mul(val, c, p), p);
      }
    }
    std::sort(touched.begin(), touched.end());
    SparseVec out;
    for (auto i : touched) {
      if (dense[i]) out.emplace_back(i, dense[i]);
      dense[i] = 0;
      marked[i] = 0;
    }
    nf_[k] = std::move(out);
  }

  below_.assign(static_cast<std::size_t>(level) + 1, 0);
  for (std::size_t s = 0; s < std_.size(); ++s)
    for (int d = std_degree(s) + 1; d <= level; ++d) ++below_[static_cast<std::size_t>(d)];

  mul_.assign(v, std::vector<SparseVec>(std_.size()));
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t s = 0; s < std_.size(); ++s) {
      Monomial prod = std_monomial(s) * Monomial::variable(v, i);
      if (prod.degree() < level) mul_[i][s] = nf_[index_.at(prod.exponents())];
    }
}

std::size_t TruncatedAlgebra::count_below(int d) const {
  if (d <= 0) return 0;
  if (d >= level_) return std_.size();
  return below_[static_cast<std::size_t>(d)];
}

SparseVec TruncatedAlgebra::normal_form(const Monomial& m) const {
  if (m.nvars() != nvars()) throw std::invalid_argument("monomial in a different ring");
  if (m.degree() >= level_) return {};
  return nf_[index_.at(m.exponents())];
}

Vec TruncatedAlgebra::coords(const Poly& f) const {
  if (f.nvars() != nvars() || f.modulus() != modulus())
    throw std::invalid_argument("polynomial lives in another ring");
  Vec out(dim(), 0);
  const std::uint32_t p = modulus();
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() >= level_) break;
    for (const auto& [s, v] : nf_[index_.at(m.exponents())])
      out[s] = mod_add(out[s], mod_mul(v, c, p), p);
  }
  return out;
}

Poly TruncatedAlgebra::to_poly(const Vec& coords) const {
  Poly f(nvars(), modulus());
  for (std::size_t s = 0; s < coords.size(); ++s)
    if (coords[s]) f.add_term(std_monomial(s), coords[s]);
  return f;
}

Vec FreeSpace::coords(const PolyVec& v) const {
  if (v.size() != rank_) throw std::invalid_argument("vector length does not match free rank");
  Vec out(dim(), 0);
  for (std::size_t j = 0; j < rank_; ++j) {
    Vec c = alg_->coords(v[j]);
    for (std::size_t s = 0; s < c.size(); ++s) out[s * rank_ + j] = c[s];
  }
  return out;
}

PolyVec FreeSpace::to_polyvec(const Vec& coords) const {
  PolyVec out;
  for (std::size_t j = 0; j < rank_; ++j) {
    Vec c(alg_->dim(), 0);
    for (std::size_t s = 0; s < c.size(); ++s) c[s] = coords[s * rank_ + j];
    out.push_back(alg_->to_poly(c));
  }
  return out;
}

Vec FreeSpace::mul_var(std::size_t i, const Vec& v) const {
  const std::uint32_t p = modulus();
  Vec out(dim(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k]) continue;
    const std::size_t s = k / rank_, j = k % rank_;
    for (const auto& [t, c] : alg_->mul_var(i, s)) {
      auto& o = out[t * rank_ + j];
      o = mod_add(o, mod_mul(c, v[k], p), p);
    }
  }
  return out;
}

Vec FreeSpace::mul_poly(const Poly& f, const Vec& v) const {
  const std::uint32_t p = modulus();
  Vec out(dim(), 0);
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() >= level()) break;
    Vec term = v;
    for (std::size_t i = 0; i < m.nvars(); ++i)
      for (int e = 0; e < m[i]; ++e) term = mul_var(i, term);
    for (std::size_t k = 0; k < out.size(); ++k)
      if (term[k]) out[k] = mod_add(out[k], mod_mul(term[k], c, p), p);
  }
  return out;
}

Echelon close_under_variables(const FreeSpace& space, Echelon basis, std::vector<Vec> pending) {
  const std::size_t v = space.alg().nvars();
  while (!pending.empty()) {
    Vec cur = std::move(pending.back());
    pending.pop_back();
    for (std::size_t i = 0; i < v; ++i) {
      Vec added;
      if (basis.insert(space.mul_var(i, cur), &added)) pending.push_back(std::move(added));
    }
  }
  return basis;
}

TruncatedSubmodule::TruncatedSubmodule(FreeSpace space, const std::vector<Vec>& gens)
    : space_(std::move(space)), basis_(space_.dim(), space_.modulus()) {
  std::vector<Vec> pending;
  for (const auto& g : gens) {
    if (g.size() != space_.dim()) throw std::invalid_argument("generator length mismatch");
    Vec added;
    if (basis_.insert(g, &added)) pending.push_back(std::move(added));
  }
  basis_ = close_under_variables(space_, std::move(basis_), std::move(pending));
}

TruncatedSubmodule TruncatedSubmodule::span(FreeSpace space, const std::vector<PolyVec>& gens) {
  std::vector<Vec> coords;
  for (const auto& g : gens) coords.push_back(space.coords(g));
  return TruncatedSubmodule(std::move(space), coords);
}

std::size_t TruncatedSubmodule::dim_at_least(int n) const {
  std::size_t count = 0;
  for (auto pc : basis_.pivots())
    if (space_.degree(pc) >= n) ++count;
  return count;
}

Echelon TruncatedSubmodule::filtration_piece(int n) const {
  if (n < 0) throw std::invalid_argument("negative filtration index");
  if (n >= level() && dim() > 0)
    throw std::out_of_range("filtration index " + std::to_string(n) + " not below level " +
                            std::to_string(level()));
  Echelon cur = basis_;
  const std::size_t v = space_.alg().nvars();
  for (int j = 0; j < n; ++j) {
    Echelon next(space_.dim(), space_.modulus());
    for (const auto& row : cur.rows())
      for (std::size_t i = 0; i < v; ++i) next.insert(space_.mul_var(i, row));
    cur = std::move(next);
  }
  return cur;
}

std::vector<std::size_t> TruncatedSubmodule::filtration_dims(int max_n) const {
  std::vector<std::size_t> out;
  Echelon cur = basis_;
  const std::size_t v = space_.alg().nvars();
  for (int j = 0; j <= max_n; ++j) {
    out.push_back(cur.rank());
    if (j == max_n) break;
    Echelon next(space_.dim(), space_.modulus());
    for (const auto& row : cur.rows())
      for (std::size_t i = 0; i < v; ++i) next.insert(space_.mul_var(i, row));
    cur = std::move(next);
  }
  return out;
}

void TruncationPolicy::validate() const {
  if (base < 1) throw std::invalid_argument("trunc-base must be at least 1");
  if (buffer < 1) throw std::invalid_argument("buffer must be at least 1");
  if (window < 2) throw std::invalid_argument("window must be at least 2");
  if (cap < 1) throw std::invalid_argument("cap must be at least 1");
}

Stabilized<std::vector<std::int64_t>> stabilized_sequence(
    const std::string& quantity, int count, const TruncationPolicy& policy, int shift,
    const std::function<std::vector<std::int64_t>(int)>& values) {
  StabilityCertificate cert;
  cert.quantity = quantity;
  cert.window = policy.window;
  std::vector<std::int64_t> out(static_cast<std::size_t>(std::max(count, 0)), 0);
  std::vector<std::int64_t> prev(out.size(), 0);
  std::vector<int> run(out.size(), 0);
  std::vector<bool> done(out.size(), false);
  std::size_t remaining = out.size();
  const auto first = [&](int n) { return std::max(policy.first_level(n, shift), n + 1); };
  int level = count > 0 ? first(0) : 0;
  for (int n = 1; n < count; ++n) level = std::min(level, first(n));
  for (; remaining > 0; ++level) {
    const auto v = values(level);
    cert.levels.push_back(level);
    for (int n = 0; n < count && n < level; ++n) {
      const auto k = static_cast<std::size_t>(n);
      if (done[k] || level < first(n)) continue;
      if (level > policy.last_level(n, shift))
        throw UnstableError(quantity + " at index " + std::to_string(n) +
                                " did not stabilize by level " + std::to_string(level - 1),
                            cert);
      run[k] = (run[k] > 0 && prev[k] == v[k]) ? run[k] + 1 : 1;
      prev[k] = v[k];
      if (run[k] >= policy.window) {
        out[k] = v[k];
        done[k] = true;
        --remaining;
        cert.accepted_level = std::max(cert.accepted_level, level - policy.window + 1);
      }
    }
  }
  cert.values = out;
  return {std::move(out), std::move(cert)};
}

}  // namespace cmloc
