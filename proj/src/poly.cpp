#include "cmloc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace cmloc {

Monomial::Monomial(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    degree_ += e;
  }
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
  std::vector<int> e(nvars, 0);
  e.at(i) = 1;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (nvars() != o.nvars()) throw std::invalid_argument("monomials in different rings");
  std::vector<int> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.exps_[i];
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  std::vector<int> e(o.exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= exps_[i];
  return Monomial(std::move(e));
}

bool DegLex::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.exponents() > b.exponents();
}

bool Lex::operator()(const Monomial& a, const Monomial& b) const {
  return a.exponents() < b.exponents();
}

namespace {
void enumerate(std::size_t nvars, int degree, std::size_t pos, std::vector<int>& cur,
               std::vector<Monomial>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = degree;
    out.emplace_back(cur);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur[pos] = e;
    enumerate(nvars, degree - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}
}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(std::vector<int>{});
    return out;
  }
  std::vector<int> cur(nvars, 0);
  enumerate(nvars, degree, 0, cur, out);
  return out;
}

std::vector<Monomial> monomials_below(std::size_t nvars, int bound) {
  std::vector<Monomial> out;
  for (int d = 0; d < bound; ++d) {
    auto part = monomials_of_degree(nvars, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Poly Poly::constant(std::size_t nvars, std::uint32_t p, std::int64_t c) {
  Poly f(nvars, p);
  f.add_term(Monomial(nvars), mod_from_int(c, p));
  return f;
}

Poly Poly::variable(std::size_t nvars, std::uint32_t p, std::size_t i) {
  return monomial(Monomial::variable(nvars, i), p);
}

Poly Poly::monomial(const Monomial& m, std::uint32_t p, std::uint32_t coeff) {
  Poly f(m.nvars(), p);
  f.add_term(m, coeff % p);
  return f;
}

std::uint32_t Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void Poly::add_term(const Monomial& m, std::uint32_t c) {
  if (m.nvars() != nvars_) throw std::invalid_argument("monomial in a different ring");
  c %= p_;
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second = mod_add(it->second, c, p_);
    if (it->second == 0) terms_.erase(it);
  }
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int Poly::order() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

std::uint32_t Poly::constant_term() const { return coeff(Monomial(nvars_)); }

Poly Poly::initial_form() const {
  if (is_zero()) throw std::domain_error("initial form of the zero polynomial");
  return homogeneous_part(order());
}

Poly Poly::homogeneous_part(int d) const {
  Poly out(nvars_, p_);
  for (const auto& [m, c] : terms_)
    if (m.degree() == d) out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

Poly Poly::truncated(int bound) const {
  Poly out(nvars_, p_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() >= bound) break;
    out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

void Poly::check(const Poly& o) const {
  if (p_ != o.p_) throw ModulusMismatch("polynomials over different fields");
  if (nvars_ != o.nvars_) throw std::invalid_argument("polynomials in different rings");
}

Poly Poly::operator+(const Poly& o) const {
  check(o);
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = mod_neg(c, p_);
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  check(o);
  Poly out(nvars_, p_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) out.add_term(m1 * m2, mod_mul(c1, c2, p_));
  return out;
}

Poly Poly::scaled(std::uint32_t c) const {
  c %= p_;
  if (c == 0) return Poly(nvars_, p_);
  Poly out = *this;
  for (auto& [m, v] : out.terms_) v = mod_mul(v, c, p_);
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(nvars_, p_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::embed(std::size_t new_nvars, const std::vector<std::size_t>& index_map) const {
  if (index_map.size() != nvars_) throw std::invalid_argument("embedding map has wrong length");
  Poly out(new_nvars, p_);
  for (const auto& [m, c] : terms_) {
    std::vector<int> e(new_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) e.at(index_map[i]) += m[i];
    out.add_term(Monomial(std::move(e)), c);
  }
  return out;
}

std::string Poly::to_string(const std::vector<std::string>& vars) const {
  if (vars.size() != nvars_) throw std::invalid_argument("variable name count mismatch");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::int64_t v = mod_lift(c, p_);
    bool neg = v < 0;
    std::uint64_t mag = neg ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool wrote = false;
    if (mag != 1 || m.degree() == 0) {
      os << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << '*';
      os << vars[i];
      if (m[i] > 1) os << '^' << m[i];
      wrote = true;
    }
  }
  return os.str();
}

PolyVec zero_vec(std::size_t len, std::size_t nvars, std::uint32_t p) {
  return PolyVec(len, Poly(nvars, p));
}

PolyVec unit_vec(std::size_t len, std::size_t i, std::size_t nvars, std::uint32_t p) {
  PolyVec v = zero_vec(len, nvars, p);
  v.at(i) = Poly::constant(nvars, p, 1);
  return v;
}

PolyVec scaled(const PolyVec& v, const Poly& f) {
  PolyVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x * f);
  return out;
}

PolyVec add(const PolyVec& a, const PolyVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  PolyVec out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

PolyMat::PolyMat(std::size_t rows, std::size_t cols, std::size_t nvars, std::uint32_t p)
    : rows_(rows), cols_(cols), nvars_(nvars), p_(p), entries_(rows * cols, Poly(nvars, p)) {}

PolyMat PolyMat::from_columns(std::size_t rows, const std::vector<PolyVec>& cols,
                              std::size_t nvars, std::uint32_t p) {
  PolyMat m(rows, cols.size(), nvars, p);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

PolyMat PolyMat::identity(std::size_t n, std::size_t nvars, std::uint32_t p) {
  PolyMat m(n, n, nvars, p);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly::constant(nvars, p, 1);
  return m;
}

PolyMat PolyMat::scalar(std::size_t n, const Poly& f) {
  PolyMat m(n, n, f.nvars(), f.modulus());
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f;
  return m;
}

PolyVec PolyMat::column(std::size_t j) const {
  PolyVec v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

std::vector<PolyVec> PolyMat::columns() const {
  std::vector<PolyVec> out;
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

PolyMat PolyMat::operator*(const PolyMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("polynomial matrix shape mismatch");
  PolyMat out(rows_, o.cols_, nvars_, p_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o.at(k, j).is_zero()) out.at(i, j) += at(i, k) * o.at(k, j);
    }
  return out;
}

PolyMat PolyMat::operator+(const PolyMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("polynomial matrix shape mismatch");
  PolyMat out = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] += o.entries_[k];
  return out;
}

PolyVec PolyMat::apply(const PolyVec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  PolyVec out = zero_vec(rows_, nvars_, p_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
  return out;
}

PolyMat PolyMat::scaled(const Poly& f) const {
  PolyMat out = *this;
  for (auto& e : out.entries_) e = e * f;
  return out;
}

int PolyMat::max_degree() const {
  int d = 0;
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

namespace {
struct LeadingTerm {
  Monomial mono;
  std::uint32_t coeff;
};

LeadingTerm lex_leading(const Poly& f) {
  auto best = f.terms().begin();
  for (auto it = f.terms().begin(); it != f.terms().end(); ++it)
    if (Lex{}(best->first, it->first)) best = it;
  return {best->first, best->second};
}
}  // namespace

Poly lex_remainder(const Poly& f, const std::vector<Poly>& divisors) {
  const std::uint32_t p = f.modulus();
  std::vector<LeadingTerm> leads;
  for (const auto& g : divisors) {
    if (g.is_zero()) throw std::invalid_argument("division by zero polynomial");
    leads.push_back(lex_leading(g));
  }
  Poly rest = f;
  Poly rem(f.nvars(), p);
  while (!rest.is_zero()) {
    LeadingTerm lt = lex_leading(rest);
    bool divided = false;
    for (std::size_t k = 0; k < divisors.size(); ++k) {
      if (!leads[k].mono.divides(lt.mono)) continue;
      Monomial q = leads[k].mono.quotient_of(lt.mono);
      std::uint32_t c = mod_mul(lt.coeff, mod_inv(leads[k].coeff, p), p);
      rest = rest - divisors[k] * Poly::monomial(q, p, c);
      divided = true;
      break;
    }
    if (!divided) {
      rem.add_term(lt.mono, lt.coeff);
      rest = rest - Poly::monomial(lt.mono, p, lt.coeff);
    }
  }
  return rem;
}

bool is_recognized_groebner(const std::vector<Poly>& divisors) {
  if (divisors.size() <= 1) return true;
  return std::all_of(divisors.begin(), divisors.end(),
                     [](const Poly& g) { return g.size() == 1; });
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars, std::uint32_t p)
      : text_(text), vars_(vars), p_(p) {}

  Poly parse() {
    Poly f = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Poly expr() {
    Poly f = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        f = f + term();
      } else if (peek('-')) {
        ++pos_;
        f = f - term();
      } else {
        return f;
      }
    }
  }

  Poly term() {
    Poly f = unary();
    while (peek('*')) {
      ++pos_;
      f = f * unary();
    }
    return f;
  }

  Poly unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected exponent");
      std::uint64_t e = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
        if (e > 100000) fail("exponent too large");
        ++pos_;
      }
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly f = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = (v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) % p_;
        ++pos_;
      }
      return Poly::constant(vars_.size(), p_, static_cast<std::int64_t>(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Poly::variable(vars_.size(), p_, static_cast<std::size_t>(it - vars_.begin()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::uint32_t p_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const std::vector<std::string>& vars, std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
  return Parser(text, vars, p).parse();
}

}  // namespace cmloc
