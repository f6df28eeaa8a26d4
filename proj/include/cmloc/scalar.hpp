#pragma once

// Exact arithmetic over a prime field F_p and dense linear algebra kernels.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmloc {

inline constexpr std::uint32_t kDefaultPrime = 32003;

class ModulusMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::uint64_t n);

inline std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}
inline std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p - b);
}
inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}
inline std::uint32_t mod_neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }
std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);
std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p);
/// Maps a signed integer into [0, p).
std::uint32_t mod_from_int(std::int64_t v, std::uint32_t p);
/// Symmetric lift into (-p/2, p/2], used for printing.
std::int64_t mod_lift(std::uint32_t a, std::uint32_t p);

/// An element of F_p carrying its modulus.
class FieldElem {
 public:
  FieldElem(std::int64_t value, std::uint32_t modulus)
      : residue_(mod_from_int(value, modulus)), modulus_(modulus) {}

  std::uint32_t residue() const { return residue_; }
  std::uint32_t modulus() const { return modulus_; }
  bool is_zero() const { return residue_ == 0; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const { return raw(mod_neg(residue_, modulus_), modulus_); }
  FieldElem inverse() const;
  bool operator==(const FieldElem& o) const = default;

 private:
  static FieldElem raw(std::uint32_t r, std::uint32_t p) {
    FieldElem e(0, p);
    e.residue_ = r;
    return e;
  }
  void check(const FieldElem& o) const;

  std::uint32_t residue_;
  std::uint32_t modulus_;
};

using Vec = std::vector<std::uint32_t>;

/// Dense row-major matrix over F_p.
class Mat {
 public:
  Mat(std::size_t rows, std::size_t cols, std::uint32_t p = kDefaultPrime)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}
  static Mat identity(std::size_t n, std::uint32_t p = kDefaultPrime);
  static Mat from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                       std::uint32_t p = kDefaultPrime);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }

  std::uint32_t& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Vec row(std::size_t i) const;
  void set_row(std::size_t i, const Vec& v);

  Mat operator*(const Mat& o) const;
  Vec apply(const Vec& v) const;
  bool operator==(const Mat& o) const = default;
  bool is_zero() const;

 private:
  std::size_t rows_, cols_;
  std::uint32_t p_;
  std::vector<std::uint32_t> data_;
};

Mat transpose(const Mat& m);

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row-echelon form by Gauss-Jordan elimination.
RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);
/// Basis of the right null space {v : m v = 0}.
std::vector<Vec> kernel_basis(const Mat& m);

/// Incrementally built semi-echelon basis. Each stored row is monic at its
/// pivot (its first nonzero column) and vanishes at the pivots of all rows
/// inserted before it. A vector reduced against the basis vanishes at every
/// pivot, so the reduced form is a canonical representative modulo the span.
///
/// When columns are sorted by filtration degree, the number of rows whose
/// pivot has degree >= n equals dim(span ∩ {degree >= n}).
class Echelon {
 public:
  Echelon(std::size_t ambient, std::uint32_t p);

  std::size_t ambient() const { return ambient_; }
  std::uint32_t modulus() const { return p_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool has_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }

  /// Reduces v in place; returns true when a nonzero remainder is left.
  bool reduce(Vec& v) const;
  bool contains(Vec v) const { return !reduce(v); }
  /// Adds v to the span; returns the reduced monic row when the span grew.
  bool insert(Vec v, Vec* added = nullptr);

 private:
  std::size_t ambient_;
  std::uint32_t p_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<long> pivot_row_;
};

/// A subspace of F_p^n.
class Span {
 public:
  Span(std::size_t ambient, std::uint32_t p) : basis_(ambient, p) {}
  static Span of(std::size_t ambient, std::uint32_t p, const std::vector<Vec>& gens);

  std::size_t ambient() const { return basis_.ambient(); }
  std::uint32_t modulus() const { return basis_.modulus(); }
  std::size_t dim() const { return basis_.rank(); }
  const std::vector<Vec>& basis() const { return basis_.rows(); }
  bool contains(const Vec& v) const;
  bool add(const Vec& v) { return basis_.insert(v); }

  Span sum(const Span& o) const;
  Span intersection(const Span& o) const;
  bool is_subspace_of(const Span& o) const;
  /// dim(this) - dim(sub); requires sub ⊆ this.
  std::size_t quotient_dim(const Span& sub) const;

 private:
  void check(const Span& o) const;
  Echelon basis_;
};

}  // namespace cmloc
