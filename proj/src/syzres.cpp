#include "cmloc/syzres.hpp"

#include <algorithm>
#include <numeric>

namespace cmloc {

namespace {

int order_of(const PolyVec& v) {
  int out = -1;
  for (const auto& e : v)
    if (!e.is_zero()) out = out < 0 ? e.order() : std::min(out, e.order());
  return out;
}

/// Largest order among the columns; the degree in which the last minimal
/// relation can appear.
int column_degree(const std::vector<PolyVec>& cols) {
  int out = 0;
  for (const auto& c : cols) out = std::max(out, order_of(c));
  return out;
}

std::vector<std::string> names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

/// Rows of `sub` not in m*sub, in ascending pivot order.
std::vector<Vec> minimal_rows(const TruncatedSubmodule& sub) {
  if (sub.dim() == 0) return {};
  Echelon seen = sub.level() > 1 ? sub.filtration_piece(1) : Echelon(sub.space().dim(), sub.space().modulus());
  const auto& rows = sub.basis().rows();
  const auto& piv = sub.basis().pivots();
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return piv[a] < piv[b]; });
  std::vector<Vec> out;
  for (std::size_t k : order)
    if (seen.insert(rows[k])) out.push_back(rows[k]);
  return out;
}

}  // namespace

KernelResult kernel_generators(const RingSpec& ring, const PolyMat& phi, int level,
                               const TruncationPolicy& policy) {
  policy.validate();
  if (level < 1) throw std::invalid_argument("kernel level must be positive");
  KernelResult out;
  out.level = level;
  const std::size_t r = phi.rows(), c = phi.cols();
  if (c == 0) return out;
  const std::uint32_t p = ring.p;
  const FreeSpace low(TruncatedAlgebra::build(ring, level), c);
  const std::vector<PolyVec> cols = phi.columns();
  std::optional<TruncatedSubmodule> latest;

  auto compute = [&](int N) -> std::int64_t {
    const auto alg = TruncatedAlgebra::build(ring, N);
    const FreeSpace src(alg, c);
    std::vector<Vec> projected;
    const std::size_t keep = low.dim();
    if (r == 0) {
      for (std::size_t k = 0; k < keep; ++k) {
        Vec e(keep, 0);
        e[k] = 1;
        projected.push_back(std::move(e));
      }
    } else {
      const FreeSpace tgt(alg, r);
      std::vector<Vec> images;
      for (const auto& col : cols) images.push_back(tgt.coords(col));
      Mat m(tgt.dim(), src.dim(), p);
      for (std::size_t s = 0; s < alg->dim(); ++s) {
        const Poly mono = Poly::monomial(alg->std_monomial(s), p);
        for (std::size_t j = 0; j < c; ++j) {
          const Vec img = tgt.mul_poly(mono, images[j]);
          for (std::size_t i = 0; i < img.size(); ++i) m.at(i, s * c + j) = img[i];
        }
      }
      for (const auto& v : kernel_basis(m)) projected.emplace_back(v.begin(), v.begin() + static_cast<long>(keep));
    }
    latest.emplace(low, projected);
    return static_cast<std::int64_t>(latest->dim());
  };

  const int shift = column_degree(cols);
  auto stable = stabilized<std::int64_t>("kernel dimension below level " + std::to_string(level),
                                         policy.first_level(level, shift),
                                         policy.last_level(level, shift), policy.window, compute);
  out.dim = static_cast<std::size_t>(stable.value);
  out.certificate = stable.certificate;
  for (const auto& v : minimal_rows(*latest)) out.generators.push_back(low.to_polyvec(v));
  return out;
}

std::vector<std::size_t> minimal_columns(const PresentedModule& m, const TruncationPolicy& policy) {
  policy.validate();
  const std::vector<PolyVec> cols = m.relations.columns();
  if (cols.empty()) return {};
  const int shift = column_degree(cols);
  auto compute = [&](int level) {
    const FreeSpace space(TruncatedAlgebra::build(m.ring, level), m.rank());
    const TruncatedSubmodule k = TruncatedSubmodule::span(space, cols);
    Echelon seen = k.dim() > 0 ? k.filtration_piece(1) : Echelon(space.dim(), space.modulus());
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (seen.insert(space.coords(cols[j]))) keep.push_back(j);
    return keep;
  };
  const int first = std::min(policy.first_level(1, shift), m.valid_below);
  const int last = std::min(policy.last_level(1, shift), m.valid_below);
  return stabilized<std::vector<std::size_t>>("minimal relation columns", first, last, policy.window,
                                              compute)
      .value;
}

int syzygy_level(const PresentedModule& m, const TruncationPolicy& policy) {
  return hilbert_first_level(m.ring.nvars(), presentation_degree(m), policy) + policy.window + policy.buffer;
}

SyzygyResult syzygy_generators(const PresentedModule& m, const TruncationPolicy& policy, int level) {
  if (level <= 0) level = syzygy_level(m, policy);
  PresentedModule mm = minimalize(m);
  const auto keep = minimal_columns(mm, policy);
  std::vector<PolyVec> cols;
  for (auto j : keep) cols.push_back(mm.relations.column(j));
  SyzygyResult out{mm, PolyMat::from_columns(mm.rank(), cols, m.ring.nvars(), m.ring.p), {}, level, {}};
  if (level > m.valid_below)
    throw std::out_of_range("syzygies requested beyond the valid part of the presentation");
  KernelResult k = kernel_generators(m.ring, out.phi1, level, policy);
  out.generators = std::move(k.generators);
  out.certificate = std::move(k.certificate);
  return out;
}

PresentedModule omega(const PresentedModule& m, const TruncationPolicy& policy, int level) {
  SyzygyResult syz = syzygy_generators(m, policy, level);
  const std::size_t c = syz.phi1.cols();
  PresentedModule out =
      PresentedModule::from_columns(m.ring, names("w", c), syz.generators);
  out.valid_below = syz.verified_below;
  return out;
}

PresentedModule submodule_of(const PresentedModule& m, const std::vector<PolyVec>& elems,
                             const TruncationPolicy& policy, int level) {
  if (level <= 0) level = syzygy_level(m, policy);
  if (level > m.valid_below)
    throw std::out_of_range("submodule requested beyond the valid part of the presentation");
  const std::size_t k = elems.size();
  std::vector<PolyVec> cols = elems;
  for (const auto& c : m.relations.columns()) cols.push_back(c);
  for (const auto& c : cols)
    if (c.size() != m.rank()) throw std::invalid_argument("element has the wrong length");
  const PolyMat big = PolyMat::from_columns(m.rank(), cols, m.ring.nvars(), m.ring.p);
  KernelResult ker = kernel_generators(m.ring, big, level, policy);
  std::vector<PolyVec> rel;
  for (const auto& g : ker.generators) {
    PolyVec head(g.begin(), g.begin() + static_cast<long>(k));
    if (order_of(head) >= 0) rel.push_back(std::move(head));
  }
  PresentedModule out = PresentedModule::from_columns(m.ring, names("u", k), rel);
  if (rel.empty()) out = PresentedModule(m.ring, names("u", k), PolyMat(k, 0, m.ring.nvars(), m.ring.p));
  out.valid_below = level;
  return out;
}

PresentedModule power_submodule(const PresentedModule& m, int n, const TruncationPolicy& policy,
                                int level) {
  if (n < 0) throw std::invalid_argument("negative power of the maximal ideal");
  std::vector<PolyVec> elems;
  for (const auto& mono : monomials_of_degree(m.ring.nvars(), n))
    for (std::size_t j = 0; j < m.rank(); ++j) {
      PolyVec v = zero_vec(m.rank(), m.ring.nvars(), m.ring.p);
      v[j] = Poly::monomial(mono, m.ring.p);
      elems.push_back(std::move(v));
    }
  return submodule_of(m, elems, policy, level);
}

Stabilized<std::vector<std::int64_t>> submodule_hilbert_values(const RingSpec& ring, std::size_t rank,
                                                               const std::vector<PolyVec>& gens,
                                                               int count,
                                                               const TruncationPolicy& policy) {
  const int shift = column_degree(gens);
  return stabilized_sequence("submodule Hilbert function", count, policy, shift, [&](int N) {
    const FreeSpace space(TruncatedAlgebra::build(ring, N), rank);
    const TruncatedSubmodule u = TruncatedSubmodule::span(space, gens);
    const auto dims = u.filtration_dims(N);
    std::vector<std::int64_t> out;
    for (int n = 0; n < N; ++n)
      out.push_back(static_cast<std::int64_t>(u.dim()) -
                    static_cast<std::int64_t>(dims[static_cast<std::size_t>(n) + 1]));
    return out;
  });
}

HilbertData omega_hilbert_data(const PresentedModule& m, const TruncationPolicy& policy) {
  const PresentedModule mm = minimalize(m);
  const std::vector<PolyVec> cols = mm.relations.columns();
  const int first = hilbert_first_level(m.ring.nvars(), std::max(1, column_degree(cols)), policy);
  std::vector<std::int64_t> cache;
  HilbertSource source = [&](int L) {
    if (static_cast<int>(cache.size()) < L)
      cache = submodule_hilbert_values(mm.ring, mm.rank(), cols, L + 2, policy).value;
    return std::vector<std::int64_t>(cache.begin(), cache.begin() + L);
  };
  return fit_hilbert("syzygy module Hilbert function", source, first, first + policy.cap,
                     policy.window, m.ring.nvars());
}

ResolutionSegment hypersurface_resolution(std::uint32_t p, const std::vector<std::string>& vars,
                                          const Poly& g, unsigned i, const Poly& h) {
  if (i < 1) throw std::invalid_argument("power of g must be at least 1");
  const Poly f = g.pow(i) * h;
  if (f.is_zero()) throw std::invalid_argument("g^i h is zero");
  if (f.constant_term() != 0) throw std::invalid_argument("g^i h has a nonzero constant term");
  RingSpec ring;
  ring.p = p;
  ring.vars = vars;
  ring.ideal = {f};
  ring.validate();
  ResolutionSegment seg{PresentedModule::cyclic(ring, {g}),
                        1,
                        1,
                        1,
                        PolyMat::scalar(1, g),
                        PolyMat::scalar(1, g.pow(i - 1) * h),
                        false,
                        "hypersurface"};
  const PolyMat comp = seg.phi1 * seg.phi2;
  seg.composition_zero = lex_remainder(comp.at(0, 0), ring.ideal).is_zero();
  return seg;
}

ResolutionConsistency resolution_consistency(const PresentedModule& m, const ResolutionSegment& seg,
                                             const TruncationPolicy& policy, int level) {
  ResolutionConsistency out;
  SyzygyResult syz = syzygy_generators(m, policy, level);
  out.level = syz.verified_below;
  if (!(syz.phi1 == seg.phi1)) {
    out.detail = "minimal presentation differs from the segment's phi1";
    return out;
  }
  if (seg.phi2.rows() != seg.phi1.cols()) {
    out.detail = "phi2 has the wrong number of rows";
    return out;
  }
  const FreeSpace space(TruncatedAlgebra::build(m.ring, out.level), seg.phi1.cols());
  const TruncatedSubmodule a = TruncatedSubmodule::span(space, syz.generators);
  const TruncatedSubmodule b = TruncatedSubmodule::span(space, seg.phi2.columns());
  std::vector<PolyVec> both = syz.generators;
  for (const auto& c : seg.phi2.columns()) both.push_back(c);
  const TruncatedSubmodule sum = TruncatedSubmodule::span(space, both);
  for (int n = 0; n < out.level; ++n) {
    const std::size_t s = sum.dim_below(n + 1);
    if (a.dim_below(n + 1) != s || b.dim_below(n + 1) != s) {
      out.first_failure = n;
      out.detail = "spans differ in degree " + std::to_string(n);
      return out;
    }
  }
  out.consistent = true;
  out.detail = "spans agree below level " + std::to_string(out.level);
  return out;
}

}  // namespace cmloc
