#pragma once

// Multivariate polynomials over F_p, monomial enumeration and a small
// recursive-descent parser for polynomial text.

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cmloc/scalar.hpp"

namespace cmloc {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<int> exps);
  static Monomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return exps_.size(); }
  int degree() const { return degree_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// o / this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Degree-lex: lower total degree first; within a degree the
/// lexicographically larger exponent vector comes first (x^2, xy, y^2).
struct DegLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Pure lexicographic order, used only to pick leading terms in division.
struct Lex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree);
/// All monomials of degree < bound, in DegLex order.
std::vector<Monomial> monomials_below(std::size_t nvars, int bound);

class Poly {
 public:
  using Terms = std::map<Monomial, std::uint32_t, DegLex>;

  Poly(std::size_t nvars, std::uint32_t p) : nvars_(nvars), p_(p) {}
  static Poly constant(std::size_t nvars, std::uint32_t p, std::int64_t c);
  static Poly variable(std::size_t nvars, std::uint32_t p, std::size_t i);
  static Poly monomial(const Monomial& m, std::uint32_t p, std::uint32_t coeff = 1);

  std::size_t nvars() const { return nvars_; }
  std::uint32_t modulus() const { return p_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::uint32_t coeff(const Monomial& m) const;
  void add_term(const Monomial& m, std::uint32_t c);

  /// Highest total degree; -1 for zero.
  int degree() const;
  /// Lowest total degree (order at the origin); -1 for zero.
  int order() const;
  std::uint32_t constant_term() const;
  /// Lowest-degree homogeneous component. Throws on zero.
  Poly initial_form() const;
  Poly homogeneous_part(int d) const;
  /// Terms of degree < bound.
  Poly truncated(int bound) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(std::uint32_t c) const;
  Poly pow(unsigned e) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  bool operator==(const Poly& o) const {
    return nvars_ == o.nvars_ && p_ == o.p_ && terms_ == o.terms_;
  }

  /// Re-reads the polynomial in a ring with more variables: variable i
  /// becomes variable index_map[i].
  Poly embed(std::size_t new_nvars, const std::vector<std::size_t>& index_map) const;

  std::string to_string(const std::vector<std::string>& vars) const;

 private:
  void check(const Poly& o) const;
  std::size_t nvars_;
  std::uint32_t p_;
  Terms terms_;
};

using PolyVec = std::vector<Poly>;

PolyVec zero_vec(std::size_t len, std::size_t nvars, std::uint32_t p);
PolyVec unit_vec(std::size_t len, std::size_t i, std::size_t nvars, std::uint32_t p);
PolyVec scaled(const PolyVec& v, const Poly& f);
PolyVec add(const PolyVec& a, const PolyVec& b);

/// Matrix of polynomials; column j is a PolyVec.
class PolyMat {
 public:
  PolyMat(std::size_t rows, std::size_t cols, std::size_t nvars, std::uint32_t p);
  static PolyMat from_columns(std::size_t rows, const std::vector<PolyVec>& cols,
                              std::size_t nvars, std::uint32_t p);
  static PolyMat identity(std::size_t n, std::size_t nvars, std::uint32_t p);
  static PolyMat scalar(std::size_t n, const Poly& f);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }
  std::uint32_t modulus() const { return p_; }

  Poly& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Poly& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  PolyVec column(std::size_t j) const;
  std::vector<PolyVec> columns() const;

  PolyMat operator*(const PolyMat& o) const;
  PolyMat operator+(const PolyMat& o) const;
  PolyVec apply(const PolyVec& v) const;
  PolyMat scaled(const Poly& f) const;
  /// Largest entry degree (0 for an empty or zero matrix).
  int max_degree() const;
  bool operator==(const PolyMat& o) const = default;

 private:
  std::size_t rows_, cols_, nvars_;
  std::uint32_t p_;
  std::vector<Poly> entries_;
};

/// Remainder of f on division by the given polynomials, using lex leading
/// terms. f - remainder lies in the ideal they generate; the remainder is
/// canonical when the divisors form a lex Groebner basis (one polynomial,
/// or monomials).
Poly lex_remainder(const Poly& f, const std::vector<Poly>& divisors);
/// True when the divisors are a lex Groebner basis of their ideal for the
/// cases this library recognizes (a single polynomial, or all monomials).
bool is_recognized_groebner(const std::vector<Poly>& divisors);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar:
///   expr   := term (('+' | '-') term)*
///   term   := unary ('*' unary)*
///   unary  := ('-' | '+') unary | power
///   power  := atom ('^' integer)?
///   atom   := integer | name | '(' expr ')'
/// Juxtaposition (implicit multiplication) is a syntax error.
Poly parse_poly(std::string_view text, const std::vector<std::string>& vars,
                std::uint32_t p = kDefaultPrime);

}  // namespace cmloc
