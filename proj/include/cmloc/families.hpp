#pragma once

// Constructors for the example families and the checks run on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmloc/etor.hpp"
#include "cmloc/gcm.hpp"
#include "cmloc/modpres.hpp"

namespace cmloc {

enum class FamilyKind { HypersurfaceSci, UlrichDim1, SyzDim2, Rci };
std::string to_string(FamilyKind k);
FamilyKind family_kind_from_string(const std::string& s);

/// Parameters of one family. Irreducibility of g and g not dividing h are
/// taken on trust and listed in `asserted`.
struct FamilySpec {
  FamilyKind kind = FamilyKind::HypersurfaceSci;
  std::uint32_t p = kDefaultPrime;
  std::vector<std::string> vars;
  /// Base ring ideal (unused for HypersurfaceSci, whose ring is Q/(g^i h)).
  std::vector<std::string> ideal;

  std::string g, h = "1", u;
  unsigned i = 2;
  int n_first = 0, n_last = 0;

  /// Module over the base ring: generator names and relation columns.
  std::vector<std::string> gens;
  std::vector<std::vector<std::string>> relations;

  /// SyzDim2: B = A/(quotient).
  std::vector<std::string> quotient;
  /// Rci: number of adjoined variables and the elements cut out.
  int r = 0;
  std::vector<std::string> cut;

  std::uint64_t seed = 0;
  std::vector<std::string> asserted;

  /// HypersurfaceSci spec with the trusted hypotheses filled in.
  static FamilySpec sci(std::vector<std::string> vars, std::string g, unsigned i, std::string h,
                        std::string u, int n_first, int n_last);

  /// Throws std::invalid_argument on a violated precondition.
  void validate() const;
  /// Q/(g^i h) for HypersurfaceSci, else vars modulo ideal.
  RingSpec base_ring() const;
  /// Ring of the module data: B = base/(quotient) for SyzDim2, else the base ring.
  RingSpec module_ring() const;
  PresentedModule base_module() const;
};

inline constexpr const char* kAssertIrreducible = "g-irreducible";
inline constexpr const char* kAssertCoprime = "g-coprime-h";

struct SciMember {
  int n = 0;
  ExtensionClass s;
};

/// A = Q/(g^i h), the base sequence 0 -> A/(g^{i-1}h) -> A -> A/(g) -> 0
/// and its pushouts along u^n for n in [n_first, n_last].
std::vector<SciMember> sci_family(const FamilySpec& spec, const TruncationPolicy& policy);

struct SciRecord {
  int n = 0;
  std::int64_t e0 = 0;
  std::optional<std::int64_t> e_t;
  bool t_split = false;
  std::optional<CmCertificate> cm;
  std::optional<GExactness> g_exact;
};

/// Multiplicity, T-splitness and, for T-split members, the CM certificate
/// of G(E_n) and G-exactness through degree D.
std::vector<SciRecord> evaluate_sci(const std::vector<SciMember>& members, const TruncationPolicy& policy,
                                    int trials, std::uint64_t seed, int max_degree = 12);

struct UlrichReport {
  std::int64_t e0 = 0;
  std::vector<std::int64_t> mu;  // mu(m^n E), n = 0..
  int threshold = -1;
  /// e_1(m^n E) for n = threshold..threshold+2, read off the shifted Hilbert function.
  std::vector<std::int64_t> e1_after;
  /// Same numbers from explicit presentations of m^n E.
  std::vector<std::int64_t> e1_presented;
  bool consistent = false;
  std::string detail;
};

/// mu(m^n E) = l(m^n E / m^{n+1} E) from E's Hilbert function and the first
/// n from which it equals e(E). Ring dimension one, E nonzero.
UlrichReport ulrich_dim1_family(const PresentedModule& e, const TruncationPolicy& policy,
                                int presented = 2);

struct SyzDim2Result {
  PresentedModule e_over_a;
  PresentedModule m;
  HilbertData hilbert;
  CmCertificate cm;
  std::optional<SallyCheck> sally;
};

/// M = Omega_A(E) for a module E over B = A/(quotient), A of dimension 2.
SyzDim2Result syz_dim2_module(const RingSpec& a, const std::vector<Poly>& quotient,
                              const PresentedModule& e_over_b, const TruncationPolicy& policy,
                              int trials, std::uint64_t seed);
/// E read as an A-module: relations of E plus f * generator for f in the quotient.
PresentedModule restrict_scalars(const RingSpec& a, const std::vector<Poly>& quotient,
                                 const PresentedModule& e_over_b);

struct RciResult {
  PresentedModule m;
  Verdict regular;
  HilbertData hilbert;
  CmCertificate cm;
};

/// M = (E ⊗ B)/(g)(E ⊗ B) over A = B/(g), B = R[X1..Xr]. Needs l <= r-1 and
/// initial forms of g regular on G(B) through degree max_degree.
RciResult rci_family(const PresentedModule& e, int r, const std::vector<std::string>& cut,
                     const TruncationPolicy& policy, int trials, std::uint64_t seed,
                     int max_degree = 10);

}  // namespace cmloc
