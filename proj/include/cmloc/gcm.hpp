#pragma once

// Associated graded modules G(M) = ⊕ m^n M / m^{n+1} M as explicit graded
// vector spaces with the action of linear forms.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cmloc/hilbert.hpp"
#include "cmloc/modpres.hpp"

namespace cmloc {

/// G(M) in degrees 0..max_degree. The basis of G_n is the set of free-module
/// coordinates of degree n that are not pivots of the relation module;
/// action[i][n] is the matrix of x_i : G_n -> G_{n+1}.
struct GradedModel {
  std::shared_ptr<const ModuleModel> model;
  int max_degree = 0;
  std::vector<std::vector<std::size_t>> basis;
  std::vector<std::vector<Mat>> action;
  /// Relation rows restricted to the coordinates of degree n.
  std::vector<Echelon> layers;

  std::size_t dim(int n) const { return n <= max_degree ? basis[static_cast<std::size_t>(n)].size() : 0; }
  std::vector<std::size_t> dims() const;
  std::uint32_t modulus() const { return model->space.modulus(); }
  std::size_t nvars() const { return action.size(); }

  /// First free-module coordinate of degree n.
  std::size_t offset(int n) const { return model->space.count_below(n); }
  /// Class in G_n of an element of the free module lying in m^n F.
  Vec graded_class(Vec coords, int n) const;
  /// Matrix of the linear form sum c_i x_i : G_n -> G_{n+1}.
  Mat linear_action(const std::vector<std::uint32_t>& form, int n) const;
  /// Matrix of multiplication by a homogeneous form of degree d: G_n -> G_{n+d}.
  Mat homogeneous_action(const Poly& form, int n) const;
};

GradedModel graded_model(const PresentedModule& m, int max_degree);

enum class CmVerdict { CM, NotCM, Inconclusive };
std::string to_string(CmVerdict v);

struct CmCertificate {
  CmVerdict verdict = CmVerdict::Inconclusive;
  int dim = 0;
  std::int64_t e0 = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  int max_degree = 0;
  /// l(G/(y)G) per trial; -1 when the quotient did not vanish by max_degree.
  std::vector<std::int64_t> lengths;
  std::vector<std::vector<std::vector<std::uint32_t>>> forms;
};

/// Monte-Carlo test with `dim` random linear forms per trial: CM when some
/// trial gives l(G/(y)G) = e0, not CM when every trial gives a finite
/// length above e0, inconclusive otherwise.
CmCertificate cm_certify(const GradedModel& g, int dim, std::int64_t e0, int trials,
                         std::uint64_t seed, int window);
/// Builds the graded model and reads dim and e0 from the Hilbert data.
CmCertificate cm_certify(const PresentedModule& m, const TruncationPolicy& policy, int trials,
                         std::uint64_t seed, int max_degree = 12);

struct GExactness {
  bool exact = false;
  int first_failure = -1;
  std::vector<std::size_t> dims_n, dims_e, dims_m;
  std::string detail;
};

/// dim G(E)_n = dim G(N)_n + dim G(M)_n and G(N)_n -> G(E)_n injective for
/// n = 0..D.
GExactness g_exactness(const ExtensionClass& s, int max_degree);

struct Additivity {
  bool t_split = false;
  bool passed = false;
  std::vector<std::int64_t> e_n, e_e, e_m;
  std::string detail;
};

/// e_i(E) = e_i(N) + e_i(M) for i <= dim A, checked only for T-split s.
Additivity additivity_check(const ExtensionClass& s, const TruncationPolicy& policy);

struct SallyCheck {
  bool applicable = false;
  bool consistent = false;
  CmVerdict lower = CmVerdict::Inconclusive;
  CmVerdict upper = CmVerdict::Inconclusive;
  std::string detail;
};

/// If G(M/xM) certifies CM then G(M) must certify CM as well.
SallyCheck sally_descent_check(const PresentedModule& m, const SuperficialCertificate& cert,
                               const TruncationPolicy& policy, int trials, std::uint64_t seed,
                               int max_degree = 12);
/// Same rule on explicit graded models.
SallyCheck sally_descent_check(const GradedModel& upper, int upper_dim, std::int64_t upper_e0,
                               const GradedModel& lower, int lower_dim, std::int64_t lower_e0,
                               int trials, std::uint64_t seed, int window);

/// dim (G / (f_1*, ..., f_k*) G)_n for n = 0..D, using initial forms.
std::vector<std::int64_t> graded_quotient_dims(const GradedModel& g, const std::vector<Poly>& elems);

/// f_1*, ..., f_k* is a G-regular sequence through degree D, judged by
/// HS(G/(f*)G) = HS(G) * prod (1 - z^{deg f_i*}).
Verdict initial_forms_regular(const GradedModel& g, const std::vector<Poly>& elems);

}  // namespace cmloc
