#pragma once

// Finitely presented modules over a RingSpec, maps between them, and short
// exact sequences built at presentation level.

#include <climits>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cmloc/artinian.hpp"
#include "cmloc/poly.hpp"

namespace cmloc {

/// coker(relations: A^c -> A^r). Column j of `relations` is a relation
/// among the r named generators. When `valid_below` is finite the relations
/// are only known modulo m^valid_below, so invariants may be read off only
/// from truncation levels at or below it.
struct PresentedModule {
  RingSpec ring;
  std::vector<std::string> gens;
  PolyMat relations;
  int valid_below = INT_MAX;

  PresentedModule(RingSpec ring, std::vector<std::string> gens, PolyMat relations);
  static PresentedModule from_columns(RingSpec ring, std::vector<std::string> gens,
                                      const std::vector<PolyVec>& columns);
  static PresentedModule free(const RingSpec& ring, std::size_t rank,
                              const std::string& prefix = "e");
  /// A/(f_1, ..., f_k) on one generator.
  static PresentedModule cyclic(const RingSpec& ring, const std::vector<Poly>& ideal);

  std::size_t rank() const { return gens.size(); }
  std::size_t num_relations() const { return relations.cols(); }
  /// Largest degree among relation entries (0 when there are none).
  int max_degree() const { return relations.max_degree(); }
  void validate() const;
};

/// The image of the relations in (A/m^N)^r.
struct ModuleModel {
  FreeSpace space;
  TruncatedSubmodule relations;

  ModuleModel(const PresentedModule& m, int level);
  int level() const { return space.level(); }
  /// l(M / m^{n+1} M) for n < level.
  std::int64_t hilbert_value(int n) const;
  std::vector<std::int64_t> hilbert_values() const;
};

/// Removes generators killed by relations with a unit entry and drops zero
/// relations. Entries are reduced modulo the ideal when its generators are
/// a recognized Groebner basis.
PresentedModule minimalize(const PresentedModule& m);
PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b);
/// M/(f_1..f_k)M presented over A/(f_1..f_k). Throws on a unit element.
PresentedModule quotient_by(const PresentedModule& m, const std::vector<Poly>& elems);
/// The same presentation read over A[new vars]. Throws on a name collision.
PresentedModule adjoin_variables(const PresentedModule& m, const std::vector<std::string>& names);
RingSpec adjoin_variables(const RingSpec& ring, const std::vector<std::string>& names);
Poly embed_in(const RingSpec& bigger, const Poly& f);

/// Reduces f modulo the ring's ideal when that is canonical, else returns f.
Poly reduce_mod_ideal(const RingSpec& ring, const Poly& f);

/// Sends source generator j to column j of `matrix` (a target element).
/// `relation_lift`, when known, satisfies matrix * phi_source =
/// phi_target * relation_lift.
struct ModuleMap {
  PresentedModule source;
  PresentedModule target;
  PolyMat matrix;
  std::optional<PolyMat> relation_lift;

  static ModuleMap identity(const PresentedModule& m);
  static ModuleMap zero(const PresentedModule& source, const PresentedModule& target);
  static ModuleMap scalar(const PresentedModule& m, const Poly& r);
};

struct MapCheck {
  bool well_defined = false;
  bool symbolic = false;
  std::vector<int> levels;
  std::string detail;
};

/// Checks that every relation of the source maps into the relations of the
/// target: symbolically through relation_lift when that reduction is
/// canonical, otherwise at truncation levels first_level .. +window-1.
MapCheck check_well_defined(const ModuleMap& f, const TruncationPolicy& policy);

/// 0 -> N -> E -> M -> 0. iota is rank(E) x rank(N), pi is rank(M) x rank(E).
/// When `cocycle` is set, E = coker [[phi_N, cocycle], [0, phi_M]] with
/// iota = [I; 0] and pi = [0 I]; the cocycle is rank(N) x #relations(M).
struct ExtensionClass {
  PresentedModule N;
  PresentedModule E;
  PresentedModule M;
  PolyMat iota;
  PolyMat pi;
  std::optional<PolyMat> cocycle;
  std::string origin;

  static ExtensionClass from_cocycle(const PresentedModule& N, const PresentedModule& M,
                                     const PolyMat& cocycle, std::string origin = "cocycle");
  static ExtensionClass split(const PresentedModule& N, const PresentedModule& M);
};

/// Pushout along f: N -> N'. Uses the cocycle f*theta when available and
/// the generic cokernel of rel(N') + rel(E) + {(f(n_j), -iota(n_j))}
/// otherwise.
ExtensionClass pushout(const ExtensionClass& s, const ModuleMap& f);
/// Pullback along g: M' -> M. Needs a cocycle and g.relation_lift.
ExtensionClass pullback(const ExtensionClass& s, const ModuleMap& g);
/// Middle Y = E''/Delta where E'' is the fibre product over M.
ExtensionClass baer_sum(const ExtensionClass& a, const ExtensionClass& b);
/// Pushout along multiplication by r on N.
ExtensionClass scalar_multiple(const ExtensionClass& s, const Poly& r);

struct ExtensionCheck {
  bool valid = false;
  std::vector<int> degrees;
  std::string detail;
};

/// pi o iota = 0 into the relations of M, pi surjective modulo m, and
/// ker(E/m^n E -> M/m^n M) = image of N on the policy window.
ExtensionCheck validate(const ExtensionClass& s, const TruncationPolicy& policy);

}  // namespace cmloc
