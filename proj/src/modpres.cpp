#include "cmloc/modpres.hpp"

#include <algorithm>
#include <set>

namespace cmloc {

PresentedModule::PresentedModule(RingSpec ring_, std::vector<std::string> gens_, PolyMat rel)
    : ring(std::move(ring_)), gens(std::move(gens_)), relations(std::move(rel)) {
  validate();
}

PresentedModule PresentedModule::from_columns(RingSpec ring, std::vector<std::string> gens,
                                              const std::vector<PolyVec>& columns) {
  const std::size_t r = gens.size();
  PolyMat rel = PolyMat::from_columns(r, columns, ring.nvars(), ring.p);
  return PresentedModule(std::move(ring), std::move(gens), std::move(rel));
}

PresentedModule PresentedModule::free(const RingSpec& ring, std::size_t rank,
                                      const std::string& prefix) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < rank; ++j) names.push_back(prefix + std::to_string(j + 1));
  return PresentedModule(ring, std::move(names), PolyMat(rank, 0, ring.nvars(), ring.p));
}

PresentedModule PresentedModule::cyclic(const RingSpec& ring, const std::vector<Poly>& ideal) {
  std::vector<PolyVec> cols;
  for (const auto& f : ideal) cols.push_back({f});
  return from_columns(ring, {"e1"}, cols);
}

void PresentedModule::validate() const {
  ring.validate();
  if (relations.rows() != gens.size())
    throw std::invalid_argument("relation matrix has " + std::to_string(relations.rows()) +
                                " rows for " + std::to_string(gens.size()) + " generators");
  if (relations.nvars() != ring.nvars() || relations.modulus() != ring.p)
    throw std::invalid_argument("relation matrix lives in another ring");
}

namespace {
std::vector<Vec> column_coords(const FreeSpace& space, const PolyMat& m) {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(space.coords(m.column(j)));
  return out;
}
}  // namespace

ModuleModel::ModuleModel(const PresentedModule& m, int level)
    : space(TruncatedAlgebra::build(m.ring, level), m.rank()),
      relations(space, column_coords(space, m.relations)) {
  if (level > m.valid_below)
    throw std::out_of_range("module relations are only known below level " +
                            std::to_string(m.valid_below));
}

std::int64_t ModuleModel::hilbert_value(int n) const {
  if (n < 0 || n + 1 > level())
    throw std::out_of_range("Hilbert value " + std::to_string(n) + " needs a level above it");
  return static_cast<std::int64_t>(space.count_below(n + 1)) -
         static_cast<std::int64_t>(relations.dim_below(n + 1));
}

std::vector<std::int64_t> ModuleModel::hilbert_values() const {
  std::vector<std::int64_t> out;
  for (int n = 0; n < level(); ++n) out.push_back(hilbert_value(n));
  return out;
}

Poly reduce_mod_ideal(const RingSpec& ring, const Poly& f) {
  if (ring.ideal.empty() || !is_recognized_groebner(ring.ideal)) return f;
  return lex_remainder(f, ring.ideal);
}

PresentedModule minimalize(const PresentedModule& m) {
  const RingSpec& ring = m.ring;
  std::vector<PolyVec> cols = m.relations.columns();
  std::vector<std::string> gens = m.gens;
  for (auto& c : cols)
    for (auto& e : c) e = reduce_mod_ideal(ring, e);

  while (true) {
    // Prefer a constant entry; any entry with a constant term is a unit.
    std::size_t best_c = cols.size(), best_j = 0;
    bool best_constant = false;
    for (std::size_t c = 0; c < cols.size() && !best_constant; ++c)
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const Poly& e = cols[c][j];
        if (e.constant_term() == 0) continue;
        bool constant = e.size() == 1;
        if (best_c == cols.size() || (constant && !best_constant)) {
          best_c = c;
          best_j = j;
          best_constant = constant;
          if (constant) break;
        }
      }
    if (best_c == cols.size()) break;

    const PolyVec pivot = cols[best_c];
    const Poly u = pivot[best_j];
    std::vector<PolyVec> next;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c == best_c) continue;
      PolyVec col = cols[c];
      if (!col[best_j].is_zero()) {
        Poly w = col[best_j];
        for (std::size_t j = 0; j < col.size(); ++j)
          col[j] = reduce_mod_ideal(ring, u * col[j] - w * pivot[j]);
      }
      col.erase(col.begin() + static_cast<long>(best_j));
      next.push_back(std::move(col));
    }
    gens.erase(gens.begin() + static_cast<long>(best_j));
    cols = std::move(next);
  }

  std::vector<PolyVec> kept;
  for (auto& c : cols)
    if (std::any_of(c.begin(), c.end(), [](const Poly& e) { return !e.is_zero(); }))
      kept.push_back(std::move(c));
  PresentedModule out = PresentedModule::from_columns(ring, gens, kept);
  out.valid_below = m.valid_below;
  return out;
}

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b) {
  if (!(a.ring == b.ring)) throw std::invalid_argument("direct sum of modules over different rings");
  const std::size_t r = a.rank() + b.rank();
  std::vector<PolyVec> cols;
  for (std::size_t c = 0; c < a.num_relations(); ++c) {
    PolyVec col = zero_vec(r, a.ring.nvars(), a.ring.p);
    for (std::size_t j = 0; j < a.rank(); ++j) col[j] = a.relations.at(j, c);
    cols.push_back(std::move(col));
  }
  for (std::size_t c = 0; c < b.num_relations(); ++c) {
    PolyVec col = zero_vec(r, a.ring.nvars(), a.ring.p);
    for (std::size_t j = 0; j < b.rank(); ++j) col[a.rank() + j] = b.relations.at(j, c);
    cols.push_back(std::move(col));
  }
  std::vector<std::string> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  PresentedModule out = PresentedModule::from_columns(a.ring, gens, cols);
  out.valid_below = std::min(a.valid_below, b.valid_below);
  return out;
}

PresentedModule quotient_by(const PresentedModule& m, const std::vector<Poly>& elems) {
  RingSpec ring = m.ring;
  for (const auto& f : elems) {
    if (f.nvars() != ring.nvars() || f.modulus() != ring.p)
      throw std::invalid_argument("quotient element lives in another ring");
    if (f.constant_term() != 0)
      throw std::invalid_argument("quotient by " + ring.print(f) + ", a unit of the local ring");
    if (!f.is_zero()) ring.ideal.push_back(f);
  }
  PresentedModule out(ring, m.gens, m.relations);
  out.valid_below = m.valid_below;
  return out;
}

RingSpec adjoin_variables(const RingSpec& ring, const std::vector<std::string>& names) {
  RingSpec out = ring;
  for (const auto& n : names) {
    if (std::find(out.vars.begin(), out.vars.end(), n) != out.vars.end())
      throw std::invalid_argument("variable name '" + n + "' is already in use");
    out.vars.push_back(n);
  }
  for (auto& g : out.ideal) g = embed_in(out, g);
  out.validate();
  return out;
}

Poly embed_in(const RingSpec& bigger, const Poly& f) {
  std::vector<std::size_t> map(f.nvars());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  return f.embed(bigger.nvars(), map);
}

PresentedModule adjoin_variables(const PresentedModule& m, const std::vector<std::string>& names) {
  RingSpec ring = adjoin_variables(m.ring, names);
  PolyMat rel(m.rank(), m.num_relations(), ring.nvars(), ring.p);
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = 0; j < m.num_relations(); ++j)
      rel.at(i, j) = embed_in(ring, m.relations.at(i, j));
  PresentedModule out(ring, m.gens, rel);
  out.valid_below = m.valid_below;
  return out;
}

namespace {
bool same_module(const PresentedModule& a, const PresentedModule& b) {
  return a.ring == b.ring && a.rank() == b.rank() && a.relations == b.relations;
}

void require_ring(const PresentedModule& a, const PresentedModule& b, const char* what) {
  if (!(a.ring == b.ring)) throw std::invalid_argument(std::string(what) + ": rings differ");
}
}  // namespace

ModuleMap ModuleMap::identity(const PresentedModule& m) {
  return {m, m, PolyMat::identity(m.rank(), m.ring.nvars(), m.ring.p),
          PolyMat::identity(m.num_relations(), m.ring.nvars(), m.ring.p)};
}

ModuleMap ModuleMap::zero(const PresentedModule& source, const PresentedModule& target) {
  require_ring(source, target, "zero map");
  return {source, target,
          PolyMat(target.rank(), source.rank(), source.ring.nvars(), source.ring.p),
          PolyMat(target.num_relations(), source.num_relations(), source.ring.nvars(),
                  source.ring.p)};
}

ModuleMap ModuleMap::scalar(const PresentedModule& m, const Poly& r) {
  return {m, m, PolyMat::scalar(m.rank(), r), PolyMat::scalar(m.num_relations(), r)};
}

MapCheck check_well_defined(const ModuleMap& f, const TruncationPolicy& policy) {
  require_ring(f.source, f.target, "module map");
  if (f.matrix.rows() != f.target.rank() || f.matrix.cols() != f.source.rank())
    throw std::invalid_argument("map matrix shape does not match its modules");
  MapCheck out;
  const PolyMat images = f.matrix * f.source.relations;
  const RingSpec& ring = f.source.ring;
  if (f.relation_lift && (ring.ideal.empty() || is_recognized_groebner(ring.ideal))) {
    const PolyMat& lift = *f.relation_lift;
    if (lift.rows() == f.target.num_relations() && lift.cols() == f.source.num_relations()) {
      PolyMat diff = images + (f.target.relations * lift).scaled(Poly::constant(ring.nvars(), ring.p, -1));
      bool zero = true;
      for (std::size_t i = 0; i < diff.rows() && zero; ++i)
        for (std::size_t j = 0; j < diff.cols() && zero; ++j)
          zero = reduce_mod_ideal(ring, diff.at(i, j)).is_zero();
      if (zero) {
        out.well_defined = true;
        out.symbolic = true;
        out.detail = "relation lift verified as a polynomial identity";
        return out;
      }
    }
  }
  const int shift = std::max(0, std::max(images.max_degree(), f.target.max_degree()) - 1);
  const int first = policy.first_level(0, shift);
  for (int level = first; level < first + policy.window; ++level) {
    if (level > f.target.valid_below) break;
    ModuleModel model(f.target, level);
    out.levels.push_back(level);
    for (std::size_t c = 0; c < images.cols(); ++c)
      if (!model.relations.contains(model.space.coords(images.column(c)))) {
        out.detail = "relation " + std::to_string(c + 1) + " of the source leaves the target relations at level " +
                     std::to_string(level);
        return out;
      }
  }
  out.well_defined = true;
  out.detail = "relations map into target relations at every checked level";
  return out;
}

ExtensionClass ExtensionClass::from_cocycle(const PresentedModule& N, const PresentedModule& M,
                                            const PolyMat& theta, std::string origin) {
  require_ring(N, M, "extension");
  if (theta.rows() != N.rank() || theta.cols() != M.num_relations())
    throw std::invalid_argument("cocycle must be rank(N) x #relations(M)");
  const RingSpec& ring = N.ring;
  const std::size_t rn = N.rank(), rm = M.rank(), r = rn + rm;
  std::vector<PolyVec> cols;
  for (std::size_t c = 0; c < N.num_relations(); ++c) {
    PolyVec col = zero_vec(r, ring.nvars(), ring.p);
    for (std::size_t j = 0; j < rn; ++j) col[j] = N.relations.at(j, c);
    cols.push_back(std::move(col));
  }
  for (std::size_t c = 0; c < M.num_relations(); ++c) {
    PolyVec col = zero_vec(r, ring.nvars(), ring.p);
    for (std::size_t j = 0; j < rn; ++j) col[j] = theta.at(j, c);
    for (std::size_t j = 0; j < rm; ++j) col[rn + j] = M.relations.at(j, c);
    cols.push_back(std::move(col));
  }
  std::vector<std::string> gens = N.gens;
  gens.insert(gens.end(), M.gens.begin(), M.gens.end());
  PresentedModule E = PresentedModule::from_columns(ring, gens, cols);
  E.valid_below = std::min(N.valid_below, M.valid_below);

  PolyMat iota(r, rn, ring.nvars(), ring.p), pi(rm, r, ring.nvars(), ring.p);
  for (std::size_t j = 0; j < rn; ++j) iota.at(j, j) = ring.one();
  for (std::size_t j = 0; j < rm; ++j) pi.at(j, rn + j) = ring.one();
  return {N, std::move(E), M, std::move(iota), std::move(pi), theta, std::move(origin)};
}

ExtensionClass ExtensionClass::split(const PresentedModule& N, const PresentedModule& M) {
  return from_cocycle(N, M, PolyMat(N.rank(), M.num_relations(), N.ring.nvars(), N.ring.p),
                      "split");
}

ExtensionClass pushout(const ExtensionClass& s, const ModuleMap& f) {
  if (!same_module(f.source, s.N)) throw std::invalid_argument("pushout map must start at N");
  if (s.cocycle)
    return ExtensionClass::from_cocycle(f.target, s.M, f.matrix * *s.cocycle,
                                        "pushout(" + s.origin + ")");

  const RingSpec& ring = s.E.ring;
  const PresentedModule& Np = f.target;
  const std::size_t rn = Np.rank(), re = s.E.rank(), r = rn + re;
  std::vector<PolyVec> cols;
  for (std::size_t c = 0; c < Np.num_relations(); ++c) {
    PolyVec col = zero_vec(r, ring.nvars(), ring.p);
    for (std::size_t j = 0; j < rn; ++j) col[j] = Np.relations.at(j, c);
    cols.push_back(std::move(col));
  }
  for (std::size_t c = 0; c < s.E.num_relations(); ++c) {
    PolyVec col = zero_vec(r, ring.nvars(), ring.p);
    for (std::size_t j = 0; j < re; ++j) col[rn + j] = s.E.relations.at(j, c);
    cols.push_back(std::move(col));
  }
  const Poly minus_one = Poly::constant(ring.nvars(), ring.p, -1);
  for (std::size_t g = 0; g < s.N.rank(); ++g) {
    PolyVec col = zero_vec(r, ring.nvars(), ring.p);
    for (std::size_t j = 0; j < rn; ++j) col[j] = f.matrix.at(j, g);
    for (std::size_t j = 0; j < re; ++j) col[rn + j] = s.iota.at(j, g) * minus_one;
    cols.push_back(std::move(col));
  }
  std::vector<std::string> gens = Np.gens;
  gens.insert(gens.end(), s.E.gens.begin(), s.E.gens.end());
  PresentedModule E = PresentedModule::from_columns(ring, gens, cols);
  E.valid_below = std::min(Np.valid_below, s.E.valid_below);

  PolyMat iota(r, rn, ring.nvars(), ring.p), pi(s.M.rank(), r, ring.nvars(), ring.p);
  for (std::size_t j = 0; j < rn; ++j) iota.at(j, j) = ring.one();
  for (std::size_t i = 0; i < s.M.rank(); ++i)
    for (std::size_t j = 0; j < re; ++j) pi.at(i, rn + j) = s.pi.at(i, j);
  return {Np, std::move(E), s.M, std::move(iota), std::move(pi), std::nullopt,
          "pushout(" + s.origin + ")"};
}

ExtensionClass pullback(const ExtensionClass& s, const ModuleMap& g) {
  if (!same_module(g.target, s.M)) throw std::invalid_argument("pullback map must end at M");
  if (!s.cocycle) throw std::invalid_argument("pullback needs an extension in cocycle form");
  if (!g.relation_lift) throw std::invalid_argument("pullback needs a relation lift of the map");
  return ExtensionClass::from_cocycle(s.N, g.source, *s.cocycle * *g.relation_lift,
                                      "pullback(" + s.origin + ")");
}

ExtensionClass baer_sum(const ExtensionClass& a, const ExtensionClass& b) {
  if (!same_module(a.N, b.N) || !same_module(a.M, b.M))
    throw std::invalid_argument("Baer sum needs extensions with the same ends");
  if (!a.cocycle || !b.cocycle) throw std::invalid_argument("Baer sum needs cocycle form");
  const RingSpec& ring = a.N.ring;
  const PresentedModule &N = a.N, &M = a.M;
  const std::size_t rn = N.rank(), rm = M.rank(), r = 2 * rn + rm;
  std::vector<PolyVec> cols;
  for (std::size_t block = 0; block < 2; ++block)
    for (std::size_t c = 0; c < N.num_relations(); ++c) {
      PolyVec col = zero_vec(r, ring.nvars(), ring.p);
      for (std::size_t j = 0; j < rn; ++j) col[block * rn + j] = N.relations.at(j, c);
      cols.push_back(std::move(col));
    }
  for (std::size_t c = 0; c < M.num_relations(); ++c) {
    PolyVec col = zero_vec(r, ring.nvars(), ring.p);
    for (std::size_t j = 0; j < rn; ++j) {
      col[j] = a.cocycle->at(j, c);
      col[rn + j] = b.cocycle->at(j, c);
    }
    for (std::size_t j = 0; j < rm; ++j) col[2 * rn + j] = M.relations.at(j, c);
    cols.push_back(std::move(col));
  }
  // The antidiagonal copy of N.
  for (std::size_t j = 0; j < rn; ++j) {
    PolyVec col = zero_vec(r, ring.nvars(), ring.p);
    col[j] = ring.one();
    col[rn + j] = Poly::constant(ring.nvars(), ring.p, -1);
    cols.push_back(std::move(col));
  }
  std::vector<std::string> gens;
  for (const auto& g : N.gens) gens.push_back(g + "'");
  for (const auto& g : N.gens) gens.push_back(g + "''");
  gens.insert(gens.end(), M.gens.begin(), M.gens.end());
  PresentedModule Y = PresentedModule::from_columns(ring, gens, cols);
  Y.valid_below = std::min(N.valid_below, M.valid_below);

  PolyMat iota(r, rn, ring.nvars(), ring.p), pi(rm, r, ring.nvars(), ring.p);
  for (std::size_t j = 0; j < rn; ++j) iota.at(j, j) = ring.one();
  for (std::size_t j = 0; j < rm; ++j) pi.at(j, 2 * rn + j) = ring.one();
  return {N, std::move(Y), M, std::move(iota), std::move(pi), std::nullopt,
          "baer_sum(" + a.origin + ", " + b.origin + ")"};
}

ExtensionClass scalar_multiple(const ExtensionClass& s, const Poly& r) {
  return pushout(s, ModuleMap::scalar(s.N, r));
}

namespace {
bool spans_everything(const ModuleModel& model, const std::vector<Vec>& extra) {
  Echelon e = model.relations.basis();
  for (const auto& v : extra) e.insert(v);
  return e.rank() == model.space.dim();
}
}  // namespace

ExtensionCheck validate(const ExtensionClass& s, const TruncationPolicy& policy) {
  ExtensionCheck out;
  require_ring(s.N, s.E, "extension");
  require_ring(s.E, s.M, "extension");
  if (s.iota.rows() != s.E.rank() || s.iota.cols() != s.N.rank() || s.pi.rows() != s.M.rank() ||
      s.pi.cols() != s.E.rank()) {
    out.detail = "map shapes do not match the modules";
    return out;
  }
  const int shift = std::max({0, s.E.max_degree() - 1, s.N.max_degree() - 1, s.M.max_degree() - 1,
                              s.iota.max_degree(), s.pi.max_degree()});
  const int last = std::min({policy.first_level(0, shift) + policy.window, s.E.valid_below,
                             s.M.valid_below, s.N.valid_below});
  const PolyMat composite = s.pi * s.iota;
  const PolyMat iota_rel = s.iota * s.N.relations;
  const PolyMat pi_rel = s.pi * s.E.relations;
  for (int level = 1; level <= last; ++level) {
    ModuleModel mm(s.M, level), me(s.E, level);
    out.degrees.push_back(level);
    for (std::size_t c = 0; c < composite.cols(); ++c)
      if (!mm.relations.contains(mm.space.coords(composite.column(c)))) {
        out.detail = "pi o iota is nonzero at level " + std::to_string(level);
        return out;
      }
    for (std::size_t c = 0; c < iota_rel.cols(); ++c)
      if (!me.relations.contains(me.space.coords(iota_rel.column(c)))) {
        out.detail = "iota is not well defined at level " + std::to_string(level);
        return out;
      }
    for (std::size_t c = 0; c < pi_rel.cols(); ++c)
      if (!mm.relations.contains(mm.space.coords(pi_rel.column(c)))) {
        out.detail = "pi is not well defined at level " + std::to_string(level);
        return out;
      }
    std::vector<Vec> images;
    for (std::size_t c = 0; c < s.pi.cols(); ++c) images.push_back(mm.space.coords(s.pi.column(c)));
    if (level == 1 && !spans_everything(mm, images)) {
      out.detail = "pi is not surjective";
      return out;
    }
    std::vector<Vec> with_n = me.relations.basis().rows();
    for (std::size_t c = 0; c < s.iota.cols(); ++c) with_n.push_back(me.space.coords(s.iota.column(c)));
    TruncatedSubmodule image(me.space, with_n);
    const std::int64_t image_dim =
        static_cast<std::int64_t>(image.dim()) - static_cast<std::int64_t>(me.relations.dim());
    const std::int64_t kernel_dim = me.hilbert_value(level - 1) - mm.hilbert_value(level - 1);
    if (image_dim != kernel_dim) {
      out.detail = "not exact in the middle modulo m^" + std::to_string(level);
      return out;
    }
  }
  out.valid = true;
  out.detail = "valid on levels 1.." + std::to_string(last);
  return out;
}

}  // namespace cmloc
