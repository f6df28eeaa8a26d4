#pragma once

// Lengths of Tor_1(M, A/m^{n+1}), the invariant e^T built from them, and
// the T-split predicate on extension classes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmloc/hilbert.hpp"
#include "cmloc/modpres.hpp"

namespace cmloc {

/// t(n) = l(Tor_1(M, A/m^{n+1})) = dim (K ∩ m^{n+1}F) / m^{n+1}K for n = 0..count-1.
Stabilized<std::vector<std::int64_t>> tor1_series(const PresentedModule& m, int count,
                                                  const TruncationPolicy& policy);
std::int64_t tor1_length(const PresentedModule& m, int n, const TruncationPolicy& policy);

/// dim A read from the Hilbert data of A itself.
int ring_dimension(const RingSpec& ring, const TruncationPolicy& policy);

struct EtorReport {
  std::string module;
  int ring_dim = 0;
  int module_dim = -1;
  std::vector<std::int64_t> t_values;
  /// First n from which the (d-1)-th difference of t is constant.
  int c_obs = -1;
  std::optional<std::int64_t> e_fit;
  std::optional<std::int64_t> e_formula;
  std::int64_t mu = 0;
  std::int64_t e1_ring = 0, e1_module = 0, e1_omega = 0;
  bool agree = false;
  bool free = false;
  std::vector<std::string> warnings;
  StabilityCertificate tor_certificate;

  /// e^T from the fit when it settled, else from the formula.
  std::optional<std::int64_t> value() const { return e_fit ? e_fit : e_formula; }
};

EtorReport etor(const PresentedModule& m, const TruncationPolicy& policy,
                const std::string& label = "M");

struct FilmyCheck {
  bool holds = false;
  int first_n = 0;
  int last_n = -1;
  int first_failure = -1;
  std::string detail;
};

struct ExtensionReport {
  EtorReport n, e, m;
  std::optional<std::int64_t> e_t;
  bool t_split = false;
  std::optional<FilmyCheck> filmy;
  /// The filmy route, when run, agrees with e^T(s) = 0.
  bool routes_agree = true;
  std::vector<std::string> warnings;
};

/// t_E = t_N + t_M and N/m^{n+1}N -> E/m^{n+1}E injective on the window
/// where all three series have settled. Dimension one only.
FilmyCheck filmy_check(const ExtensionClass& s, const TruncationPolicy& policy);
ExtensionReport extension_report(const ExtensionClass& s, const TruncationPolicy& policy);
/// Same, reusing reports already computed for the end terms.
ExtensionReport extension_report(const ExtensionClass& s, const EtorReport& n, const EtorReport& m,
                                 const TruncationPolicy& policy);

/// Smallest c with dim G(A)_n = e_0(A) for every n >= c on the fitted range.
int reduction_index(const RingSpec& ring, const TruncationPolicy& policy);

struct LadderReport {
  std::vector<std::int64_t> values;
  bool nonincreasing = false;
  std::optional<int> first_zero;
  /// Some step repeated a nonzero value.
  bool nonzero_repeat = false;
  int reduction_index = 0;
  std::string detail;
};

/// e^T(u^i s) for i = 0..steps. Throws when ord(u) <= reduction_index(A).
LadderReport scalar_ladder(const ExtensionClass& s, const Poly& u, int steps,
                           const TruncationPolicy& policy);

struct ReductionCrossCheck {
  SuperficialCertificate element;
  std::optional<std::int64_t> e_t_before;
  std::optional<std::int64_t> e_t_after;
  bool agree = false;
  std::string detail;
};

/// Finds x superficial for A, N, E, M and their syzygy modules, then
/// compares e^T_A(s) with e^T_B(s ⊗ B) for B = A/(x). Needs dim A >= 2.
ReductionCrossCheck reduction_cross_check(const ExtensionClass& s, const TruncationPolicy& policy,
                                          std::uint64_t seed, int trials);

/// s ⊗ A/(f): every term and map read over the quotient ring.
ExtensionClass reduce_extension(const ExtensionClass& s, const Poly& f);

}  // namespace cmloc
