#include "cmloc/etor.hpp"

#include <algorithm>

#include "cmloc/gcm.hpp"
#include "cmloc/syzres.hpp"

namespace cmloc {

Stabilized<std::vector<std::int64_t>> tor1_series(const PresentedModule& m, int count,
                                                  const TruncationPolicy& policy) {
  policy.validate();
  const PresentedModule mm = minimalize(m);
  const std::vector<PolyVec> cols = mm.relations.columns();
  if (cols.empty()) {
    Stabilized<std::vector<std::int64_t>> out{std::vector<std::int64_t>(static_cast<std::size_t>(count), 0), {}};
    out.certificate.quantity = "Tor_1 lengths (free module)";
    out.certificate.window = policy.window;
    return out;
  }
  return stabilized_sequence("Tor_1 lengths", count, policy, presentation_degree(mm), [&](int N) {
    const FreeSpace space(TruncatedAlgebra::build(mm.ring, N), mm.rank());
    const TruncatedSubmodule k = TruncatedSubmodule::span(space, cols);
    const auto dims = k.filtration_dims(N);
    std::vector<std::int64_t> out;
    for (int n = 0; n < N; ++n)
      out.push_back(static_cast<std::int64_t>(k.dim_at_least(n + 1)) -
                    static_cast<std::int64_t>(dims[static_cast<std::size_t>(n) + 1]));
    return out;
  });
}

std::int64_t tor1_length(const PresentedModule& m, int n, const TruncationPolicy& policy) {
  if (n < 0) throw std::invalid_argument("negative Tor index");
  return tor1_series(m, n + 1, policy).value.back();
}

int ring_dimension(const RingSpec& ring, const TruncationPolicy& policy) {
  return hilbert_data(PresentedModule::cyclic(ring, {}), policy).dim;
}

namespace {

/// Forward differences of order k.
std::vector<std::int64_t> differences(std::vector<std::int64_t> v, int k) {
  for (int j = 0; j < k && !v.empty(); ++j) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = v[i + 1] - v[i];
    v.pop_back();
  }
  return v;
}

/// Start of the constant tail of v.
std::size_t constant_tail(const std::vector<std::int64_t>& v) {
  std::size_t c = v.size();
  while (c > 0 && (c == v.size() || v[c - 1] == v.back())) --c;
  return c;
}

}  // namespace

EtorReport etor(const PresentedModule& m, const TruncationPolicy& policy, const std::string& label) {
  policy.validate();
  EtorReport r;
  r.module = label;
  const PresentedModule mm = minimalize(m);
  const HilbertData ha = hilbert_data(PresentedModule::cyclic(m.ring, {}), policy);
  r.ring_dim = ha.dim;
  if (ha.dim < 1) throw std::invalid_argument("e^T needs a ring of positive dimension");
  const HilbertData hm = hilbert_data(mm, policy);
  r.module_dim = hm.dim;
  r.mu = static_cast<std::int64_t>(mm.rank());
  r.free = mm.num_relations() == 0;
  if (hm.dim != ha.dim)
    r.warnings.push_back("non-MCM input: dim M = " + std::to_string(hm.dim) + " but dim A = " +
                         std::to_string(ha.dim));

  try {
    const HilbertData ho = omega_hilbert_data(mm, policy);
    r.e1_ring = ha.coeff(1);
    r.e1_module = hm.coeff(1);
    r.e1_omega = ho.coeff(1);
    r.e_formula = r.mu * r.e1_ring - r.e1_module - r.e1_omega;
  } catch (const UnstableError& e) {
    r.warnings.push_back(std::string("formula route: ") + e.what());
  }

  const int d = ha.dim;
  int n_max = policy.window + d + 2;
  const int n_limit = n_max + policy.cap;
  while (true) {
    Stabilized<std::vector<std::int64_t>> series;
    try {
      series = tor1_series(mm, n_max + 1, policy);
    } catch (const UnstableError& e) {
      r.warnings.push_back(std::string("fit route: ") + e.what());
      break;
    }
    r.t_values = series.value;
    r.tor_certificate = series.certificate;
    const auto diffs = differences(series.value, d - 1);
    const std::size_t c = constant_tail(diffs);
    if (diffs.size() - c >= static_cast<std::size_t>(policy.window) + 1) {
      r.c_obs = static_cast<int>(c);
      r.e_fit = diffs.back();
      break;
    }
    if (n_max >= n_limit) {
      r.warnings.push_back("fit route: Tor lengths did not settle by n = " + std::to_string(n_max));
      break;
    }
    n_max += policy.window;
  }
  r.agree = r.e_fit && r.e_formula && *r.e_fit == *r.e_formula;
  if (r.e_fit && r.e_formula && !r.agree)
    r.warnings.push_back("routes disagree: fit " + std::to_string(*r.e_fit) + ", formula " +
                         std::to_string(*r.e_formula));
  return r;
}

namespace {

FilmyCheck filmy_from(const ExtensionClass& s, const EtorReport& n, const EtorReport& e,
                      const EtorReport& m, const TruncationPolicy& policy) {
  FilmyCheck out;
  if (n.c_obs < 0 || e.c_obs < 0 || m.c_obs < 0) {
    out.detail = "Tor lengths did not settle for every term";
    return out;
  }
  out.first_n = std::max({n.c_obs, e.c_obs, m.c_obs});
  const std::size_t len = std::min({n.t_values.size(), e.t_values.size(), m.t_values.size()});
  out.last_n = static_cast<int>(len) - 1;
  if (out.last_n - out.first_n + 1 < policy.window) {
    out.detail = "window shorter than the policy window";
    return out;
  }
  const RingSpec& ring = s.E.ring;
  for (int k = out.first_n; k <= out.last_n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (e.t_values[i] != n.t_values[i] + m.t_values[i]) {
      out.first_failure = k;
      out.detail = "n = " + std::to_string(k) + ": t_E = " + std::to_string(e.t_values[i]) +
                   " but t_N + t_M = " + std::to_string(n.t_values[i] + m.t_values[i]);
      return out;
    }
    // At level k+1, E/m^{k+1}E = F/K and the image of N is (K + iota)/K.
    const FreeSpace space(TruncatedAlgebra::build(ring, k + 1), s.E.rank());
    const std::vector<PolyVec> rel = s.E.relations.columns();
    std::vector<PolyVec> with_iota = rel;
    for (const auto& c : s.iota.columns()) with_iota.push_back(c);
    const std::size_t image = TruncatedSubmodule::span(space, with_iota).dim() -
                              TruncatedSubmodule::span(space, rel).dim();
    const auto hn = ModuleModel(s.N, k + 1).hilbert_value(k);
    if (static_cast<std::int64_t>(image) != hn) {
      out.first_failure = k;
      out.detail = "n = " + std::to_string(k) + ": N/m^{n+1}N -> E/m^{n+1}E is not injective";
      return out;
    }
  }
  out.holds = true;
  out.detail = "t_E = t_N + t_M and N injects for n = " + std::to_string(out.first_n) + ".." +
               std::to_string(out.last_n);
  return out;
}

}  // namespace

FilmyCheck filmy_check(const ExtensionClass& s, const TruncationPolicy& policy) {
  if (ring_dimension(s.E.ring, policy) != 1)
    throw std::invalid_argument("the filmy criterion is for rings of dimension one");
  return filmy_from(s, etor(s.N, policy, "N"), etor(s.E, policy, "E"), etor(s.M, policy, "M"), policy);
}

ExtensionReport extension_report(const ExtensionClass& s, const EtorReport& n, const EtorReport& m,
                                 const TruncationPolicy& policy) {
  ExtensionReport r;
  r.n = n;
  r.m = m;
  r.e = etor(s.E, policy, "E");
  const auto vn = n.value(), ve = r.e.value(), vm = m.value();
  if (vn && ve && vm) {
    r.e_t = *vn + *vm - *ve;
    r.t_split = *r.e_t == 0;
    if (*r.e_t < 0) r.warnings.push_back("e^T(s) < 0: subadditivity fails");
  } else {
    r.warnings.push_back("e^T missing for some term");
  }
  for (const auto* rep : {&r.n, &r.e, &r.m})
    for (const auto& w : rep->warnings) r.warnings.push_back(rep->module + ": " + w);
  if (r.e.ring_dim == 1) {
    r.filmy = filmy_from(s, r.n, r.e, r.m, policy);
    r.routes_agree = r.filmy->holds == r.t_split;
    if (!r.routes_agree) r.warnings.push_back("filmy route disagrees with e^T(s)");
  }
  return r;
}

ExtensionReport extension_report(const ExtensionClass& s, const TruncationPolicy& policy) {
  return extension_report(s, etor(s.N, policy, "N"), etor(s.M, policy, "M"), policy);
}

int reduction_index(const RingSpec& ring, const TruncationPolicy& policy) {
  const HilbertData ha = hilbert_data(PresentedModule::cyclic(ring, {}), policy);
  const auto& v = ha.values;
  int c = static_cast<int>(v.size());
  while (c > 0) {
    const auto k = static_cast<std::size_t>(c - 1);
    const std::int64_t g = k == 0 ? v[0] : v[k] - v[k - 1];
    if (g != ha.multiplicity()) break;
    --c;
  }
  return c;
}

LadderReport scalar_ladder(const ExtensionClass& s, const Poly& u, int steps,
                           const TruncationPolicy& policy) {
  if (steps < 0) throw std::invalid_argument("negative step count");
  if (ring_dimension(s.E.ring, policy) != 1)
    throw std::invalid_argument("the scalar ladder is for rings of dimension one");
  LadderReport r;
  r.reduction_index = reduction_index(s.E.ring, policy);
  if (u.is_zero() || u.order() < r.reduction_index + 1)
    throw std::invalid_argument("u must lie in m^" + std::to_string(r.reduction_index + 1));
  const EtorReport n = etor(s.N, policy, "N"), m = etor(s.M, policy, "M");
  ExtensionClass cur = s;
  for (int i = 0; i <= steps; ++i) {
    if (i > 0) cur = scalar_multiple(cur, u);
    const ExtensionReport rep = extension_report(cur, n, m, policy);
    if (!rep.e_t) throw UnstableError("e^T of ladder step " + std::to_string(i) + " is unavailable", {});
    r.values.push_back(*rep.e_t);
  }
  r.nonincreasing = std::is_sorted(r.values.rbegin(), r.values.rend());
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (r.values[i] == 0 && !r.first_zero) r.first_zero = static_cast<int>(i);
    if (i > 0 && r.values[i] == r.values[i - 1] && r.values[i] != 0) r.nonzero_repeat = true;
  }
  r.detail = r.first_zero ? "reached 0 at step " + std::to_string(*r.first_zero)
                          : "did not reach 0 in " + std::to_string(steps) + " steps";
  return r;
}

ExtensionClass reduce_extension(const ExtensionClass& s, const Poly& f) {
  ExtensionClass out = s;
  out.N = quotient_by(s.N, {f});
  out.E = quotient_by(s.E, {f});
  out.M = quotient_by(s.M, {f});
  out.origin = s.origin + " mod " + s.E.ring.print(f);
  return out;
}

ReductionCrossCheck reduction_cross_check(const ExtensionClass& s, const TruncationPolicy& policy,
                                          std::uint64_t seed, int trials) {
  const RingSpec& ring = s.E.ring;
  if (ring_dimension(ring, policy) < 2)
    throw std::invalid_argument("reduction cross-check needs dim A >= 2");
  std::vector<NamedModule> mods{{"A", PresentedModule::cyclic(ring, {})},
                                {"N", s.N},
                                {"E", s.E},
                                {"M", s.M},
                                {"Omega(N)", omega(s.N, policy)},
                                {"Omega(E)", omega(s.E, policy)},
                                {"Omega(M)", omega(s.M, policy)}};
  ReductionCrossCheck out;
  out.element = find_superficial(mods, policy, seed, trials);
  const Poly x = out.element.as_poly(ring);
  out.e_t_before = extension_report(s, policy).e_t;
  out.e_t_after = extension_report(reduce_extension(s, x), policy).e_t;
  out.agree = out.e_t_before && out.e_t_after && *out.e_t_before == *out.e_t_after;
  out.detail = "x = " + out.element.text;
  return out;
}

Additivity additivity_check(const ExtensionClass& s, const TruncationPolicy& policy) {
  Additivity out;
  const ExtensionReport rep = extension_report(s, policy);
  out.t_split = rep.t_split;
  const HilbertData hn = hilbert_data(s.N, policy), he = hilbert_data(s.E, policy),
                    hm = hilbert_data(s.M, policy);
  out.e_n = hn.e;
  out.e_e = he.e;
  out.e_m = hm.e;
  if (!out.t_split) {
    out.detail = "not T-split; additivity is asserted only for T-split classes";
    return out;
  }
  const int d = rep.e.ring_dim;
  for (int i = 0; i <= d; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (he.coeff(k) != hn.coeff(k) + hm.coeff(k)) {
      out.detail = "e" + std::to_string(i) + "(E) = " + std::to_string(he.coeff(k)) +
                   " but e" + std::to_string(i) + "(N) + e" + std::to_string(i) +
                   "(M) = " + std::to_string(hn.coeff(k) + hm.coeff(k));
      return out;
    }
  }
  out.passed = true;
  out.detail = "e0..e" + std::to_string(d) + " additive";
  return out;
}

}  // namespace cmloc
