#pragma once

// Hilbert-Samuel functions, their polynomial fits and the numbers read off
// them.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cmloc/artinian.hpp"
#include "cmloc/modpres.hpp"

namespace cmloc {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  static Rational make(std::int64_t num, std::int64_t den);
  std::string to_string() const;
  bool operator==(const Rational&) const = default;
};

/// values[n] = l(M / m^{n+1} M); P_M(n) = values[n] for n >= fit_start.
/// dim is deg P_M, with -1 for the zero module. h is the numerator of
/// sum values[n] z^n = h(z) / (1-z)^{dim+1} and e_i = h^{(i)}(1)/i!.
struct HilbertData {
  std::vector<std::int64_t> values;
  int fit_start = 0;
  std::vector<Rational> poly;
  int dim = -1;
  std::vector<std::int64_t> e;
  std::vector<std::int64_t> h;
  std::int64_t mu = 0;
  StabilityCertificate certificate;

  std::int64_t multiplicity() const { return e.empty() ? 0 : e[0]; }
  /// e_i, or 0 past the dimension.
  std::int64_t coeff(std::size_t i) const { return i < e.size() ? e[i] : 0; }
};

/// values(L) returns l(M/m^{n+1}M) for n = 0..L-1.
using HilbertSource = std::function<std::vector<std::int64_t>(int)>;

/// Fits the series on growing prefixes and accepts the dimension and
/// h-vector once they repeat on `window` consecutive prefix lengths.
HilbertData fit_hilbert(const std::string& label, const HilbertSource& values, int first_level,
                        int last_level, int window, std::size_t nvars);
HilbertData hilbert_data(const PresentedModule& m, const TruncationPolicy& policy);
/// Degree bound used to shift truncation levels: the largest relation
/// degree, or for presentations valid only below some level the largest
/// column order.
int presentation_degree(const PresentedModule& m);
/// First prefix length tried for a module presented in degrees <= max_degree.
int hilbert_first_level(std::size_t nvars, int max_degree, const TruncationPolicy& policy);

struct Verdict {
  bool holds = false;
  std::string witness;
};

/// e_0 = mu.
Verdict is_ulrich(const HilbertData& hd);
/// deg h <= 1.
Verdict has_min_mult(const HilbertData& hd);

/// A linear form and the degree window on which multiplication by its
/// initial form was injective on every listed module's associated graded
/// module.
struct SuperficialCertificate {
  std::vector<std::uint32_t> form;
  std::string text;
  int first_degree = 0;
  int last_degree = 0;
  std::vector<std::string> modules;
  std::uint64_t seed = 0;
  int attempt = 0;

  Poly as_poly(const RingSpec& ring) const;
};

struct NamedModule {
  std::string name;
  PresentedModule module;
};

/// Returns a certificate when the linear form with these coefficients is
/// superficial for every module on the checked window, else nothing.
std::optional<SuperficialCertificate> check_superficial(const std::vector<NamedModule>& modules,
                                                        const std::vector<std::uint32_t>& form,
                                                        const TruncationPolicy& policy);
/// Tries the explicit candidates in order, then `trials` seeded random
/// forms. Throws std::invalid_argument on an empty list and
/// std::runtime_error when every candidate fails.
SuperficialCertificate find_superficial(const std::vector<NamedModule>& modules,
                                        const TruncationPolicy& policy, std::uint64_t seed,
                                        int trials,
                                        const std::vector<std::vector<std::uint32_t>>& candidates = {});

struct ReductionCheck {
  bool passed = false;
  int compared = 0;
  std::vector<std::int64_t> e_before;
  std::vector<std::int64_t> e_after;
  std::string detail;
};

/// e_i(M/xM) = e_i(M) for i < dim M.
ReductionCheck superficial_reduction_check(const PresentedModule& m,
                                           const SuperficialCertificate& cert,
                                           const TruncationPolicy& policy);

struct DimensionDrop {
  bool passed = false;
  int dim_before = -1;
  int dim_after = -1;
};

/// dim M/fM >= dim M - 1. Throws when f is a unit.
DimensionDrop dimension_drop_check(const PresentedModule& m, const Poly& f,
                                   const TruncationPolicy& policy);

}  // namespace cmloc
