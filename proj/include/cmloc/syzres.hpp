#pragma once

// Syzygies, first syzygy modules and short free resolutions.

#include <cstddef>
#include <string>
#include <vector>

#include "cmloc/artinian.hpp"
#include "cmloc/hilbert.hpp"
#include "cmloc/modpres.hpp"

namespace cmloc {

/// ker(phi : A^c -> A^r) read modulo m^level. `generators` lift a minimal
/// generating set of the truncated kernel; they are exact kernel elements
/// only modulo m^level.
struct KernelResult {
  int level = 0;
  std::size_t dim = 0;
  std::vector<PolyVec> generators;
  StabilityCertificate certificate;
};

KernelResult kernel_generators(const RingSpec& ring, const PolyMat& phi, int level,
                               const TruncationPolicy& policy);

/// Indices of columns of m's relation matrix that map to a basis of K/mK,
/// K the relation module; greedy in column order.
std::vector<std::size_t> minimal_columns(const PresentedModule& m, const TruncationPolicy& policy);

/// Minimal presentation data of M and the generators of ker(phi_1), where
/// phi_1 is the minimal relation matrix.
struct SyzygyResult {
  PresentedModule minimal;
  PolyMat phi1;
  std::vector<PolyVec> generators;
  int verified_below = 0;
  StabilityCertificate certificate;
};

/// Level at which syzygies of m are read when the caller does not choose.
int syzygy_level(const PresentedModule& m, const TruncationPolicy& policy);
SyzygyResult syzygy_generators(const PresentedModule& m, const TruncationPolicy& policy,
                               int level = 0);

/// Omega(M) on the minimal relation columns, with relations valid modulo
/// m^level (recorded in valid_below).
PresentedModule omega(const PresentedModule& m, const TruncationPolicy& policy, int level = 0);

/// The submodule of M generated by the given elements of its free cover.
PresentedModule submodule_of(const PresentedModule& m, const std::vector<PolyVec>& elems,
                             const TruncationPolicy& policy, int level = 0);
/// m^n M.
PresentedModule power_submodule(const PresentedModule& m, int n, const TruncationPolicy& policy,
                                int level = 0);

/// l(U / m^{n+1} U) for the submodule U of A^r generated by `gens`,
/// n = 0..count-1, each value stabilized in the truncation level.
Stabilized<std::vector<std::int64_t>> submodule_hilbert_values(const RingSpec& ring, std::size_t rank,
                                                               const std::vector<PolyVec>& gens,
                                                               int count,
                                                               const TruncationPolicy& policy);
/// Hilbert data of Omega(M), computed as the relation module inside the
/// minimal free cover of M.
HilbertData omega_hilbert_data(const PresentedModule& m, const TruncationPolicy& policy);

/// F_2 -> F_1 -> F_0 -> M -> 0.
struct ResolutionSegment {
  PresentedModule module;
  std::size_t b0 = 0, b1 = 0, b2 = 0;
  PolyMat phi1;
  PolyMat phi2;
  /// phi1 * phi2 reduces to zero modulo the ring's ideal.
  bool composition_zero = false;
  std::string origin;
};

/// The periodic resolution of A/(g) over A = k[vars]/(g^i h):
/// phi1 = (g), phi2 = (g^{i-1} h).
ResolutionSegment hypersurface_resolution(std::uint32_t p, const std::vector<std::string>& vars,
                                          const Poly& g, unsigned i, const Poly& h);

struct ResolutionConsistency {
  bool consistent = false;
  int first_failure = -1;
  int level = 0;
  std::string detail;
};

/// Compares span(syzygy_generators(m)) with span(seg.phi2) modulo m^level,
/// degree by degree.
ResolutionConsistency resolution_consistency(const PresentedModule& m, const ResolutionSegment& seg,
                                             const TruncationPolicy& policy, int level = 0);

}  // namespace cmloc
