#include "cmloc/gcm.hpp"

#include <algorithm>
#include <random>

namespace cmloc {

std::vector<std::size_t> GradedModel::dims() const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= max_degree; ++n) out.push_back(dim(n));
  return out;
}

namespace {

/// Coordinates of degree n, reduced against the degree-n relation layer.
Vec reduced_slice(const GradedModel& g, const Vec& full, int n) {
  const std::size_t lo = g.offset(n), hi = g.offset(n + 1);
  Vec slice(full.begin() + static_cast<long>(lo), full.begin() + static_cast<long>(hi));
  g.layers[static_cast<std::size_t>(n)].reduce(slice);
  return slice;
}

Vec project(const GradedModel& g, const Vec& slice, int n) {
  const auto& b = g.basis[static_cast<std::size_t>(n)];
  const std::size_t lo = g.offset(n);
  Vec out(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) out[k] = slice[b[k] - lo];
  return out;
}

void set_column(Mat& m, std::size_t j, const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) m.at(i, j) = v[i];
}

/// Stacks the columns of several matrices with the same row count.
Mat hconcat(std::size_t rows, const std::vector<Mat>& parts, std::uint32_t p) {
  std::size_t cols = 0;
  for (const auto& m : parts) cols += m.cols();
  Mat out(rows, cols, p);
  std::size_t at = 0;
  for (const auto& m : parts) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, at + j) = m.at(i, j);
    at += m.cols();
  }
  return out;
}

}  // namespace

Vec GradedModel::graded_class(Vec coords, int n) const {
  if (n < 0 || n > max_degree) throw std::out_of_range("degree outside the graded model");
  if (coords.size() != model->space.dim()) throw std::invalid_argument("vector has the wrong length");
  return project(*this, reduced_slice(*this, coords, n), n);
}

Mat GradedModel::linear_action(const std::vector<std::uint32_t>& form, int n) const {
  if (form.size() != nvars()) throw std::invalid_argument("linear form has the wrong length");
  if (n < 0 || n >= max_degree) throw std::out_of_range("action leaves the graded model");
  const std::uint32_t p = modulus();
  Mat out(dim(n + 1), dim(n), p);
  for (std::size_t i = 0; i < form.size(); ++i) {
    const std::uint32_t c = form[i] % p;
    if (c == 0) continue;
    const Mat& a = action[i][static_cast<std::size_t>(n)];
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t k = 0; k < a.cols(); ++k)
        out.at(r, k) = mod_add(out.at(r, k), mod_mul(c, a.at(r, k), p), p);
  }
  return out;
}

Mat GradedModel::homogeneous_action(const Poly& form, int n) const {
  if (form.is_zero()) throw std::invalid_argument("zero form has no degree");
  const int d = form.degree();
  if (form.order() != d) throw std::invalid_argument("form is not homogeneous");
  if (n < 0 || n + d > max_degree) throw std::out_of_range("action leaves the graded model");
  const FreeSpace& space = model->space;
  const std::size_t r = space.rank();
  const std::uint32_t p = modulus();
  const std::size_t lo = offset(n + d), width = offset(n + d + 1) - lo;
  Mat out(dim(n + d), dim(n), p);
  const auto& src = basis[static_cast<std::size_t>(n)];
  for (std::size_t k = 0; k < src.size(); ++k) {
    const std::size_t s = src[k] / r, j = src[k] % r;
    const Monomial& base = space.alg().std_monomial(s);
    Vec slice(width, 0);
    for (const auto& [mono, c] : form.terms()) {
      for (const auto& [t, v] : space.alg().normal_form(mono * base)) {
        const std::size_t coord = t * r + j;
        if (coord < lo || coord >= lo + width) continue;
        slice[coord - lo] = mod_add(slice[coord - lo], mod_mul(c, v, p), p);
      }
    }
    layers[static_cast<std::size_t>(n + d)].reduce(slice);
    set_column(out, k, project(*this, slice, n + d));
  }
  return out;
}

GradedModel graded_model(const PresentedModule& m, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("negative degree bound");
  GradedModel g;
  g.model = std::make_shared<const ModuleModel>(m, max_degree + 1);
  g.max_degree = max_degree;
  const FreeSpace& space = g.model->space;
  const Echelon& rel = g.model->relations.basis();
  const std::uint32_t p = space.modulus();
  for (int n = 0; n <= max_degree; ++n) {
    const std::size_t lo = space.count_below(n), hi = space.count_below(n + 1);
    Echelon layer(hi - lo, p);
    for (std::size_t k = 0; k < rel.rank(); ++k) {
      const std::size_t piv = rel.pivots()[k];
      if (piv < lo || piv >= hi) continue;
      const Vec& row = rel.rows()[k];
      layer.insert(Vec(row.begin() + static_cast<long>(lo), row.begin() + static_cast<long>(hi)));
    }
    std::vector<std::size_t> b;
    for (std::size_t c = lo; c < hi; ++c)
      if (!layer.has_pivot(c - lo)) b.push_back(c);
    g.basis.push_back(std::move(b));
    g.layers.push_back(std::move(layer));
  }
  const std::size_t r = space.rank();
  g.action.assign(space.alg().nvars(), {});
  for (std::size_t i = 0; i < space.alg().nvars(); ++i) {
    for (int n = 0; n < max_degree; ++n) {
      const std::size_t lo = space.count_below(n + 1), width = space.count_below(n + 2) - lo;
      const auto& src = g.basis[static_cast<std::size_t>(n)];
      Mat a(g.dim(n + 1), src.size(), p);
      for (std::size_t k = 0; k < src.size(); ++k) {
        Vec slice(width, 0);
        for (const auto& [t, v] : space.alg().mul_var(i, src[k] / r)) {
          const std::size_t coord = t * r + src[k] % r;
          if (coord >= lo && coord < lo + width) slice[coord - lo] = v;
        }
        g.layers[static_cast<std::size_t>(n + 1)].reduce(slice);
        set_column(a, k, project(g, slice, n + 1));
      }
      g.action[i].push_back(std::move(a));
    }
  }
  return g;
}

std::string to_string(CmVerdict v) {
  switch (v) {
    case CmVerdict::CM: return "CM";
    case CmVerdict::NotCM: return "not-CM";
    case CmVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

/// l(G/(y)G), or -1 when the quotient has not vanished for `window`
/// consecutive degrees by the top of the model.
std::int64_t quotient_length(const GradedModel& g, const std::vector<std::vector<std::uint32_t>>& ys,
                             int window) {
  std::int64_t total = 0;
  int zeros = 0;
  for (int n = 0; n <= g.max_degree; ++n) {
    std::int64_t q = static_cast<std::int64_t>(g.dim(n));
    if (n > 0 && !ys.empty()) {
      std::vector<Mat> parts;
      for (const auto& y : ys) parts.push_back(g.linear_action(y, n - 1));
      q -= static_cast<std::int64_t>(rank(hconcat(g.dim(n), parts, g.modulus())));
    }
    total += q;
    zeros = q == 0 ? zeros + 1 : 0;
    if (zeros >= window) return total;
  }
  return -1;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(trial + 1);
}

}  // namespace

CmCertificate cm_certify(const GradedModel& g, int dim, std::int64_t e0, int trials,
                         std::uint64_t seed, int window) {
  if (trials < 1) throw std::invalid_argument("at least one trial is needed");
  if (window < 1) throw std::invalid_argument("window must be positive");
  CmCertificate cert;
  cert.dim = dim;
  cert.e0 = e0;
  cert.seed = seed;
  cert.trials = trials;
  cert.max_degree = g.max_degree;
  const int count = std::max(dim, 0);
  bool all_above = true;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    std::vector<std::vector<std::uint32_t>> ys(static_cast<std::size_t>(count),
                                               std::vector<std::uint32_t>(g.nvars()));
    for (auto& y : ys)
      for (auto& c : y) c = static_cast<std::uint32_t>(rng() % g.modulus());
    const std::int64_t len = quotient_length(g, ys, window);
    cert.lengths.push_back(len);
    cert.forms.push_back(ys);
    if (len == e0) {
      cert.verdict = CmVerdict::CM;
      return cert;
    }
    if (len < 0 || len < e0) all_above = false;
  }
  cert.verdict = all_above ? CmVerdict::NotCM : CmVerdict::Inconclusive;
  return cert;
}

CmCertificate cm_certify(const PresentedModule& m, const TruncationPolicy& policy, int trials,
                         std::uint64_t seed, int max_degree) {
  const HilbertData hd = hilbert_data(m, policy);
  const GradedModel g = graded_model(m, std::min(max_degree, m.valid_below - 1));
  return cm_certify(g, hd.dim, hd.multiplicity(), trials, seed, policy.window);
}

GExactness g_exactness(const ExtensionClass& s, int max_degree) {
  GExactness out;
  const GradedModel gn = graded_model(s.N, max_degree);
  const GradedModel ge = graded_model(s.E, max_degree);
  const GradedModel gm = graded_model(s.M, max_degree);
  out.dims_n = gn.dims();
  out.dims_e = ge.dims();
  out.dims_m = gm.dims();
  const FreeSpace& es = ge.model->space;
  const FreeSpace& ns = gn.model->space;
  std::vector<Vec> iota_cols;
  for (std::size_t j = 0; j < s.iota.cols(); ++j) iota_cols.push_back(es.coords(s.iota.column(j)));
  for (int n = 0; n <= max_degree; ++n) {
    const auto k = static_cast<std::size_t>(n);
    if (out.dims_e[k] != out.dims_n[k] + out.dims_m[k]) {
      out.first_failure = n;
      out.detail = "degree " + std::to_string(n) + ": dim G(E) = " + std::to_string(out.dims_e[k]) +
                   " but dim G(N) + dim G(M) = " + std::to_string(out.dims_n[k] + out.dims_m[k]);
      return out;
    }
    Mat image(ge.dim(n), gn.dim(n), ge.modulus());
    const auto& src = gn.basis[k];
    for (std::size_t c = 0; c < src.size(); ++c) {
      const std::size_t st = src[c] / ns.rank(), j = src[c] % ns.rank();
      const Poly mono = Poly::monomial(ns.alg().std_monomial(st), ns.modulus());
      set_column(image, c, ge.graded_class(es.mul_poly(mono, iota_cols[j]), n));
    }
    if (rank(image) != gn.dim(n)) {
      out.first_failure = n;
      out.detail = "degree " + std::to_string(n) + ": G(N) -> G(E) is not injective";
      return out;
    }
  }
  out.exact = true;
  out.detail = "exact through degree " + std::to_string(max_degree);
  return out;
}

SallyCheck sally_descent_check(const GradedModel& upper, int upper_dim, std::int64_t upper_e0,
                               const GradedModel& lower, int lower_dim, std::int64_t lower_e0,
                               int trials, std::uint64_t seed, int window) {
  SallyCheck out;
  out.applicable = true;
  out.lower = cm_certify(lower, lower_dim, lower_e0, trials, seed, window).verdict;
  out.upper = cm_certify(upper, upper_dim, upper_e0, trials, seed, window).verdict;
  out.consistent = out.lower != CmVerdict::CM || out.upper == CmVerdict::CM;
  out.detail = "G(M/xM) " + to_string(out.lower) + ", G(M) " + to_string(out.upper);
  return out;
}

SallyCheck sally_descent_check(const PresentedModule& m, const SuperficialCertificate& cert,
                               const TruncationPolicy& policy, int trials, std::uint64_t seed,
                               int max_degree) {
  const HilbertData hd = hilbert_data(m, policy);
  if (hd.dim < 2) {
    SallyCheck out;
    out.consistent = true;
    out.detail = "dimension " + std::to_string(hd.dim) + " below 2";
    return out;
  }
  const PresentedModule q = quotient_by(m, {cert.as_poly(m.ring)});
  const HilbertData hq = hilbert_data(q, policy);
  const int D = std::min(max_degree, m.valid_below - 1);
  return sally_descent_check(graded_model(m, D), hd.dim, hd.multiplicity(), graded_model(q, D),
                             hq.dim, hq.multiplicity(), trials, seed, policy.window);
}

std::vector<std::int64_t> graded_quotient_dims(const GradedModel& g, const std::vector<Poly>& elems) {
  std::vector<Poly> forms;
  for (const auto& f : elems) {
    if (f.is_zero()) continue;
    if (f.order() == 0) throw std::invalid_argument("unit element has no initial form in m");
    forms.push_back(f.initial_form());
  }
  std::vector<std::int64_t> out;
  for (int n = 0; n <= g.max_degree; ++n) {
    std::vector<Mat> parts;
    for (const auto& f : forms)
      if (n - f.degree() >= 0) parts.push_back(g.homogeneous_action(f, n - f.degree()));
    std::int64_t q = static_cast<std::int64_t>(g.dim(n));
    if (!parts.empty()) q -= static_cast<std::int64_t>(rank(hconcat(g.dim(n), parts, g.modulus())));
    out.push_back(q);
  }
  return out;
}

Verdict initial_forms_regular(const GradedModel& g, const std::vector<Poly>& elems) {
  const auto actual = graded_quotient_dims(g, elems);
  std::vector<std::int64_t> expected;
  for (auto d : g.dims()) expected.push_back(static_cast<std::int64_t>(d));
  for (const auto& f : elems) {
    if (f.is_zero()) continue;
    const auto d = static_cast<std::size_t>(f.order());
    for (std::size_t n = expected.size(); n-- > d;) expected[n] -= expected[n - d];
  }
  Verdict v;
  v.holds = actual == expected;
  for (std::size_t n = 0; n < actual.size(); ++n)
    if (actual[n] != expected[n]) {
      v.witness = "degree " + std::to_string(n) + ": quotient " + std::to_string(actual[n]) +
                  " vs expected " + std::to_string(expected[n]);
      return v;
    }
  v.witness = "Hilbert series matches through degree " + std::to_string(g.max_degree);
  return v;
}

}  // namespace cmloc
