#include "cmloc/families.hpp"

#include <algorithm>
#include <stdexcept>

#include "cmloc/syzres.hpp"

namespace cmloc {

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::HypersurfaceSci: return "hypersurface-sci";
    case FamilyKind::UlrichDim1: return "ulrich-dim1";
    case FamilyKind::SyzDim2: return "syz-dim2";
    case FamilyKind::Rci: return "rci";
  }
  return "?";
}

FamilyKind family_kind_from_string(const std::string& s) {
  for (auto k : {FamilyKind::HypersurfaceSci, FamilyKind::UlrichDim1, FamilyKind::SyzDim2, FamilyKind::Rci})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown family kind '" + s + "'");
}

FamilySpec FamilySpec::sci(std::vector<std::string> vars, std::string g, unsigned i, std::string h,
                           std::string u, int n_first, int n_last) {
  FamilySpec f;
  f.kind = FamilyKind::HypersurfaceSci;
  f.vars = std::move(vars);
  f.g = std::move(g);
  f.i = i;
  f.h = std::move(h);
  f.u = std::move(u);
  f.n_first = n_first;
  f.n_last = n_last;
  f.asserted = {kAssertIrreducible, kAssertCoprime};
  return f;
}

namespace {

bool asserts(const FamilySpec& f, const std::string& what) {
  return std::find(f.asserted.begin(), f.asserted.end(), what) != f.asserted.end();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void FamilySpec::validate() const {
  require(!vars.empty(), "family needs at least one variable");
  const RingSpec q = RingSpec::make(p, vars, {});
  switch (kind) {
    case FamilyKind::HypersurfaceSci: {
      require(i >= 1, "i must be at least 1");
      const Poly gp = q.parse(g);
      const Poly hp = q.parse(h);
      const Poly up = q.parse(u);
      require(!gp.is_zero() && gp.order() >= 1, "g must be a nonzero nonunit");
      require(!hp.is_zero(), "h must be nonzero");
      require(!up.is_zero() && up.order() >= 1, "u must be a nonzero nonunit");
      require(i >= 2 || hp.order() >= 1, "i = 1 needs h in the maximal ideal");
      const int dim = static_cast<int>(vars.size()) - 1;
      require(dim >= (i == 1 ? 2 : 1),
              i == 1 ? "i = 1 needs dim A >= 2" : "i >= 2 needs dim A >= 1");
      require(n_first >= 0 && n_first <= n_last, "n-range must satisfy 0 <= first <= last");
      require(asserts(*this, kAssertIrreducible), "missing assertion: g-irreducible");
      require(asserts(*this, kAssertCoprime), "missing assertion: g-coprime-h");
      break;
    }
    case FamilyKind::UlrichDim1:
    case FamilyKind::SyzDim2:
    case FamilyKind::Rci: {
      require(!gens.empty(), "module needs at least one generator");
      for (const auto& col : relations)
        require(col.size() == gens.size(), "relation column length differs from generator count");
      if (kind == FamilyKind::SyzDim2) require(!quotient.empty(), "syz-dim2 needs quotient elements");
      if (kind == FamilyKind::Rci) {
        require(r >= 1, "r must be at least 1");
        require(static_cast<int>(cut.size()) <= r - 1, "rci needs l <= r-1");
      }
      module_ring();
      break;
    }
  }
}

RingSpec FamilySpec::base_ring() const {
  if (kind == FamilyKind::HypersurfaceSci) {
    const RingSpec q = RingSpec::make(p, vars, {});
    RingSpec a = q;
    a.ideal = {q.parse(g).pow(i) * q.parse(h)};
    a.validate();
    return a;
  }
  return RingSpec::make(p, vars, ideal);
}

RingSpec FamilySpec::module_ring() const {
  RingSpec r = base_ring();
  if (kind == FamilyKind::SyzDim2)
    for (const auto& t : quotient) r.ideal.push_back(r.parse(t));
  r.validate();
  return r;
}

PresentedModule FamilySpec::base_module() const {
  const RingSpec r = module_ring();
  std::vector<PolyVec> cols;
  for (const auto& col : relations) {
    PolyVec v;
    for (const auto& t : col) v.push_back(r.parse(t));
    cols.push_back(std::move(v));
  }
  return PresentedModule::from_columns(r, gens, cols);
}

std::vector<SciMember> sci_family(const FamilySpec& spec, const TruncationPolicy& policy) {
  if (spec.kind != FamilyKind::HypersurfaceSci) throw std::invalid_argument("not a hypersurface-sci spec");
  spec.validate();
  policy.validate();
  const RingSpec a = spec.base_ring();
  const Poly g = a.parse(spec.g);
  const Poly h = a.parse(spec.h);
  const Poly u = a.parse(spec.u);
  const PresentedModule n_mod = PresentedModule::cyclic(a, {g.pow(spec.i - 1) * h});
  const PresentedModule m_mod = PresentedModule::cyclic(a, {g});
  std::vector<SciMember> out;
  for (int n = spec.n_first; n <= spec.n_last; ++n) {
    PolyMat cocycle = PolyMat::scalar(1, u.pow(static_cast<unsigned>(n)));
    out.push_back({n, ExtensionClass::from_cocycle(n_mod, m_mod, cocycle, "sci n=" + std::to_string(n))});
  }
  return out;
}

std::vector<SciRecord> evaluate_sci(const std::vector<SciMember>& members, const TruncationPolicy& policy,
                                    int trials, std::uint64_t seed, int max_degree) {
  std::vector<SciRecord> out;
  if (members.empty()) return out;
  const EtorReport n_rep = etor(members.front().s.N, policy, "N");
  const EtorReport m_rep = etor(members.front().s.M, policy, "M");
  for (const auto& mem : members) {
    SciRecord rec;
    rec.n = mem.n;
    rec.e0 = hilbert_data(mem.s.E, policy).multiplicity();
    const ExtensionReport rep = extension_report(mem.s, n_rep, m_rep, policy);
    rec.e_t = rep.e_t;
    rec.t_split = rep.t_split;
    if (rec.t_split) {
      rec.cm = cm_certify(mem.s.E, policy, trials, seed + static_cast<std::uint64_t>(mem.n), max_degree);
      rec.g_exact = g_exactness(mem.s, max_degree);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

UlrichReport ulrich_dim1_family(const PresentedModule& e, const TruncationPolicy& policy, int presented) {
  if (ring_dimension(e.ring, policy) != 1) throw std::invalid_argument("ulrich-dim1 needs a ring of dimension one");
  const HilbertData hd = hilbert_data(e, policy);
  if (hd.mu == 0) throw std::invalid_argument("ulrich-dim1 needs a nonzero module");
  if (hd.dim != 1) throw std::invalid_argument("ulrich-dim1 needs a module of dimension one");
  UlrichReport out;
  out.e0 = hd.multiplicity();
  std::int64_t prev = 0;
  for (auto v : hd.values) {
    out.mu.push_back(v - prev);
    prev = v;
  }
  int t = static_cast<int>(out.mu.size());
  while (t > 0 && out.mu[static_cast<std::size_t>(t - 1)] == out.e0) --t;
  const int tail = static_cast<int>(out.mu.size()) - t;
  if (tail <= policy.window) {
    out.detail = "mu(m^n E) did not settle at e0 on the computed range";
    return out;
  }
  out.threshold = t;
  // e_1(m^n E) = e_1(E) + HF_E(n-1) - e0 * n.
  out.consistent = true;
  for (int k = 0; k < presented; ++k) {
    const int n = t + k;
    const std::int64_t before = n == 0 ? 0 : hd.values[static_cast<std::size_t>(n - 1)];
    const std::int64_t shifted = hd.coeff(1) + before - out.e0 * n;
    out.e1_after.push_back(shifted);
    const PresentedModule pw = n == 0 ? e : power_submodule(e, n, policy);
    const HilbertData pd = hilbert_data(pw, policy);
    out.e1_presented.push_back(pd.coeff(1));
    if (shifted != 0 || pd.coeff(1) != 0 || !is_ulrich(pd).holds) {
      out.consistent = false;
      out.detail = "m^" + std::to_string(n) + "E: e1 " + std::to_string(shifted) + " (shifted), " +
                   std::to_string(pd.coeff(1)) + " (presented), " + is_ulrich(pd).witness;
    }
  }
  if (out.consistent) out.detail = "Ulrich from n=" + std::to_string(t) + " with e1=0";
  return out;
}

PresentedModule restrict_scalars(const RingSpec& a, const std::vector<Poly>& quotient,
                                 const PresentedModule& e_over_b) {
  if (a.vars != e_over_b.ring.vars || a.p != e_over_b.ring.p)
    throw std::invalid_argument("module ring and base ring use different variables");
  std::vector<PolyVec> cols = e_over_b.relations.columns();
  for (const auto& f : quotient)
    for (std::size_t j = 0; j < e_over_b.rank(); ++j) {
      PolyVec v = zero_vec(e_over_b.rank(), a.nvars(), a.p);
      v[j] = f;
      cols.push_back(std::move(v));
    }
  return PresentedModule::from_columns(a, e_over_b.gens, cols);
}

SyzDim2Result syz_dim2_module(const RingSpec& a, const std::vector<Poly>& quotient,
                              const PresentedModule& e_over_b, const TruncationPolicy& policy,
                              int trials, std::uint64_t seed) {
  if (ring_dimension(a, policy) != 2) throw std::invalid_argument("syz-dim2 needs a ring of dimension two");
  const CmCertificate ring_cm = cm_certify(PresentedModule::cyclic(a, {}), policy, trials, seed);
  if (ring_cm.verdict == CmVerdict::NotCM) throw std::invalid_argument("G(A) is not Cohen-Macaulay");
  PresentedModule ea = restrict_scalars(a, quotient, e_over_b);
  if (hilbert_data(ea, policy).mu == 0) throw std::invalid_argument("syz-dim2 needs a nonzero module");
  PresentedModule m = omega(ea, policy);
  HilbertData hd = omega_hilbert_data(ea, policy);
  CmCertificate cm = cm_certify(m, policy, trials, seed);
  std::optional<SallyCheck> sally;
  try {
    const auto cert = find_superficial({{"M", m}}, policy, seed, trials);
    sally = sally_descent_check(m, cert, policy, trials, seed);
  } catch (const std::runtime_error&) {
    // No superficial element found within the trial budget; the descent check is skipped.
  }
  return {std::move(ea), std::move(m), std::move(hd), std::move(cm), std::move(sally)};
}

RciResult rci_family(const PresentedModule& e, int r, const std::vector<std::string>& cut,
                     const TruncationPolicy& policy, int trials, std::uint64_t seed, int max_degree) {
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  if (static_cast<int>(cut.size()) > r - 1) throw std::invalid_argument("rci needs l <= r-1");
  std::vector<std::string> names;
  for (int k = 1; k <= r; ++k) names.push_back("X" + std::to_string(k));
  const PresentedModule eb = adjoin_variables(e, names);
  std::vector<Poly> g;
  for (const auto& t : cut) {
    Poly f = eb.ring.parse(t);
    if (f.is_zero() || f.order() < 1) throw std::invalid_argument("cut element '" + t + "' is not a nonzero nonunit");
    g.push_back(std::move(f));
  }
  Verdict regular{true, "empty sequence"};
  if (!g.empty()) {
    const GradedModel gb = graded_model(PresentedModule::cyclic(eb.ring, {}), max_degree);
    regular = initial_forms_regular(gb, g);
    if (!regular.holds) throw std::runtime_error("initial forms are not a regular sequence on G(B): " + regular.witness);
  }
  PresentedModule m = g.empty() ? eb : quotient_by(eb, g);
  HilbertData hd = hilbert_data(m, policy);
  CmCertificate cm = cm_certify(m, policy, trials, seed);
  return {std::move(m), std::move(regular), std::move(hd), std::move(cm)};
}

}  // namespace cmloc
