#pragma once

// Truncation engine. A = k[x]/I is studied through the Artinian rings
// k[x]/(I + (x)^N), which are already local, so every finite-length
// quantity is a dimension count in one of these finite algebras.
//
// Coordinates are ordered by ascending degree (DegLex within a degree), and
// every echelon pivot is the lowest-degree term of its row. This makes the
// m-adic filtration visible as "support in degree >= n".

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "cmloc/poly.hpp"
#include "cmloc/scalar.hpp"

namespace cmloc {

struct RingSpec {
  std::uint32_t p = kDefaultPrime;
  std::vector<std::string> vars;
  std::vector<Poly> ideal;

  static RingSpec make(std::uint32_t p, std::vector<std::string> vars,
                       const std::vector<std::string>& ideal_text);

  std::size_t nvars() const { return vars.size(); }
  /// Throws std::invalid_argument on a non-prime modulus, repeated names,
  /// generators from another ring, or a generator with a constant term.
  void validate() const;
  /// Canonical text; two rings are the same exactly when their keys agree.
  std::string key() const;
  bool operator==(const RingSpec& o) const { return key() == o.key(); }

  Poly parse(std::string_view text) const { return parse_poly(text, vars, p); }
  Poly zero() const { return Poly(nvars(), p); }
  Poly one() const { return Poly::constant(nvars(), p, 1); }
  Poly var(std::size_t i) const { return Poly::variable(nvars(), p, i); }
  std::string print(const Poly& f) const { return f.to_string(vars); }
};

using SparseVec = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// k[x]/(I + (x)^N) with the standard monomials (non-pivot columns) as basis.
class TruncatedAlgebra {
 public:
  /// Cached per (ring, level).
  static std::shared_ptr<const TruncatedAlgebra> build(const RingSpec& ring, int level);

  const RingSpec& ring() const { return ring_; }
  int level() const { return level_; }
  std::uint32_t modulus() const { return ring_.p; }
  std::size_t nvars() const { return ring_.nvars(); }
  std::size_t dim() const { return std_.size(); }

  const Monomial& std_monomial(std::size_t s) const { return monos_[std_[s]]; }
  int std_degree(std::size_t s) const { return monos_[std_[s]].degree(); }
  /// Number of standard monomials of degree < d.
  std::size_t count_below(int d) const;

  /// Normal form over standard monomials; zero for degree >= level.
  SparseVec normal_form(const Monomial& m) const;
  const SparseVec& mul_var(std::size_t i, std::size_t s) const { return mul_[i][s]; }

  Vec coords(const Poly& f) const;
  Poly to_poly(const Vec& coords) const;

 private:
  TruncatedAlgebra(RingSpec ring, int level);

  RingSpec ring_;
  int level_;
  std::vector<Monomial> monos_;
  std::map<std::vector<int>, std::size_t> index_;
  std::vector<SparseVec> nf_;
  std::vector<std::size_t> std_;
  std::vector<std::size_t> below_;
  std::vector<std::vector<SparseVec>> mul_;
};

/// (A/m^N)^r; coordinate s*r + j is std monomial s in component j.
class FreeSpace {
 public:
  FreeSpace(std::shared_ptr<const TruncatedAlgebra> alg, std::size_t rank)
      : alg_(std::move(alg)), rank_(rank) {}

  const TruncatedAlgebra& alg() const { return *alg_; }
  std::shared_ptr<const TruncatedAlgebra> alg_ptr() const { return alg_; }
  std::size_t rank() const { return rank_; }
  std::size_t dim() const { return alg_->dim() * rank_; }
  int level() const { return alg_->level(); }
  std::uint32_t modulus() const { return alg_->modulus(); }

  int degree(std::size_t coord) const { return alg_->std_degree(coord / rank_); }
  /// Number of coordinates of degree < d.
  std::size_t count_below(int d) const { return alg_->count_below(d) * rank_; }

  Vec coords(const PolyVec& v) const;
  PolyVec to_polyvec(const Vec& coords) const;
  Vec mul_var(std::size_t i, const Vec& v) const;
  Vec mul_poly(const Poly& f, const Vec& v) const;

 private:
  std::shared_ptr<const TruncatedAlgebra> alg_;
  std::size_t rank_;
};

/// The A-submodule of (A/m^N)^r generated by a list of vectors.
class TruncatedSubmodule {
 public:
  TruncatedSubmodule(FreeSpace space, const std::vector<Vec>& gens);
  static TruncatedSubmodule span(FreeSpace space, const std::vector<PolyVec>& gens);

  const FreeSpace& space() const { return space_; }
  const Echelon& basis() const { return basis_; }
  std::size_t dim() const { return basis_.rank(); }
  int level() const { return space_.level(); }

  bool contains(const Vec& v) const { return basis_.contains(v); }
  /// dim(K ∩ D_n), D_n = coordinates of degree >= n.
  std::size_t dim_at_least(int n) const;
  /// dim of the image of K in coordinates of degree < n.
  std::size_t dim_below(int n) const { return dim() - dim_at_least(n); }

  /// Basis of m^n K.
  Echelon filtration_piece(int n) const;
  /// dim m^j K for j = 0..max_n.
  std::vector<std::size_t> filtration_dims(int max_n) const;

 private:
  FreeSpace space_;
  Echelon basis_;
};

/// Closure of gens under multiplication by the variables.
Echelon close_under_variables(const FreeSpace& space, Echelon start, std::vector<Vec> pending);

struct TruncationPolicy {
  int base = 2;
  int buffer = 2;
  int window = 2;
  int cap = 12;

  void validate() const;
  int first_level(int n, int shift = 0) const { return std::max(base, n + buffer + shift); }
  int last_level(int n, int shift = 0) const { return n + cap + shift; }
};

struct StabilityCertificate {
  std::string quantity;
  int window = 0;
  std::vector<int> levels;
  std::vector<std::int64_t> values;
  int accepted_level = -1;
};

class UnstableError : public std::runtime_error {
 public:
  UnstableError(const std::string& what, StabilityCertificate cert)
      : std::runtime_error(what), cert_(std::move(cert)) {}
  const StabilityCertificate& certificate() const { return cert_; }

 private:
  StabilityCertificate cert_;
};

template <class T>
struct Stabilized {
  T value;
  StabilityCertificate certificate;
};

/// Evaluates compute(level) for level = first, first+1, ... and accepts the
/// first value seen at `window` consecutive levels. Throws UnstableError
/// past `last`.
template <class T, class F>
Stabilized<T> stabilized(const std::string& quantity, int first, int last, int window,
                         F&& compute) {
  StabilityCertificate cert;
  cert.quantity = quantity;
  cert.window = window;
  std::optional<T> prev;
  int run = 0;
  for (int level = first; level <= last; ++level) {
    T v = compute(level);
    cert.levels.push_back(level);
    if constexpr (std::is_integral_v<T>) cert.values.push_back(static_cast<std::int64_t>(v));
    run = (prev && *prev == v) ? run + 1 : 1;
    prev = std::move(v);
    if (run >= window) {
      cert.accepted_level = level - window + 1;
      return {std::move(*prev), std::move(cert)};
    }
  }
  throw UnstableError(quantity + " did not stabilize by level " + std::to_string(last),
                      std::move(cert));
}

/// values(N) lists v_0 .. v_{N-1} computed at truncation level N. Each v_n
/// is accepted once it repeats at `window` consecutive levels starting no
/// earlier than policy.first_level(n, shift); throws UnstableError when some
/// v_n has not settled by policy.last_level(n, shift).
Stabilized<std::vector<std::int64_t>> stabilized_sequence(
    const std::string& quantity, int count, const TruncationPolicy& policy, int shift,
    const std::function<std::vector<std::int64_t>(int)>& values);

}  // namespace cmloc
