#include "cmloc/hilbert.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "cmloc/gcm.hpp"

namespace cmloc {

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

namespace {

struct Fit {
  int dim;
  std::vector<std::int64_t> h;
  bool operator==(const Fit&) const = default;
};

std::optional<Fit> fit_prefix(const std::vector<std::int64_t>& v, std::size_t nvars, int need) {
  std::vector<std::int64_t> c = v;
  for (int r = -1; r <= static_cast<int>(nvars); ++r) {
    if (r >= 0)
      for (std::size_t i = c.size(); i-- > 1;) c[i] -= c[i - 1];
    long last = -1;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) last = static_cast<long>(i);
    const long trailing = static_cast<long>(c.size()) - 1 - last;
    if (trailing >= need) return Fit{r, std::vector<std::int64_t>(c.begin(), c.begin() + (last + 1))};
  }
  return std::nullopt;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  std::int64_t out = 1;
  for (std::int64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::int64_t factorial(int n) {
  std::int64_t out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

/// Coefficients (in powers of n) of r! * P(n).
std::vector<std::int64_t> scaled_polynomial(int r, const std::vector<std::int64_t>& e) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(r) + 1, 0);
  for (int i = 0; i <= r; ++i) {
    const int k = r - i;
    // r!/k! * prod_{j=1..k} (n + j)
    std::vector<std::int64_t> term{factorial(r) / factorial(k)};
    for (int j = 1; j <= k; ++j) {
      std::vector<std::int64_t> next(term.size() + 1, 0);
      for (std::size_t a = 0; a < term.size(); ++a) {
        next[a] += term[a] * j;
        next[a + 1] += term[a];
      }
      term = std::move(next);
    }
    const std::int64_t sign = (i % 2) ? -1 : 1;
    for (std::size_t a = 0; a < term.size(); ++a)
      out[a] += sign * e[static_cast<std::size_t>(i)] * term[a];
  }
  return out;
}

std::int64_t evaluate(const std::vector<std::int64_t>& coeffs, std::int64_t n) {
  std::int64_t out = 0;
  for (std::size_t a = coeffs.size(); a-- > 0;) out = out * n + coeffs[a];
  return out;
}

}  // namespace

HilbertData fit_hilbert(const std::string& label, const HilbertSource& values, int first_level,
                        int last_level, int window, std::size_t nvars) {
  const int need = std::max(window, static_cast<int>(nvars)) + 1;
  auto stable = stabilized<std::optional<Fit>>(label, first_level, last_level, window, [&](int level) {
    return fit_prefix(values(level), nvars, need);
  });
  if (!stable.value) {
    throw UnstableError(label + ": no polynomial fit", stable.certificate);
  }
  HilbertData hd;
  hd.certificate = stable.certificate;
  hd.values = values(stable.certificate.levels.back());
  hd.mu = hd.values.empty() ? 0 : hd.values[0];
  hd.dim = stable.value->dim;
  hd.h = stable.value->h;
  for (int i = 0; i <= hd.dim; ++i) {
    std::int64_t ei = 0;
    for (std::size_t k = 0; k < hd.h.size(); ++k)
      ei += binomial(static_cast<std::int64_t>(k), i) * hd.h[k];
    hd.e.push_back(ei);
  }
  if (hd.dim < 0) {
    hd.fit_start = 0;
    for (std::size_t n = 0; n < hd.values.size(); ++n)
      if (hd.values[n] != 0) hd.fit_start = static_cast<int>(n) + 1;
    return hd;
  }
  const auto scaled = scaled_polynomial(hd.dim, hd.e);
  const std::int64_t denom = factorial(hd.dim);
  for (auto c : scaled) hd.poly.push_back(Rational::make(c, denom));
  hd.fit_start = static_cast<int>(hd.values.size());
  while (hd.fit_start > 0 &&
         evaluate(scaled, hd.fit_start - 1) == denom * hd.values[static_cast<std::size_t>(hd.fit_start - 1)])
    --hd.fit_start;
  return hd;
}

int hilbert_first_level(std::size_t nvars, int max_degree, const TruncationPolicy& policy) {
  const int need = std::max(policy.window, static_cast<int>(nvars)) + 1;
  return policy.first_level(need, std::max(0, max_degree - 1));
}

int presentation_degree(const PresentedModule& m) {
  if (m.valid_below == INT_MAX) return m.max_degree();
  // Truncated lifts carry tails up to valid_below; only their orders matter.
  int out = 0;
  for (const auto& col : m.relations.columns()) {
    int order = -1;
    for (const auto& e : col)
      if (!e.is_zero()) order = order < 0 ? e.order() : std::min(order, e.order());
    out = std::max(out, order);
  }
  return out;
}

HilbertData hilbert_data(const PresentedModule& m, const TruncationPolicy& policy) {
  policy.validate();
  const int first = hilbert_first_level(m.ring.nvars(), presentation_degree(m), policy);
  const int last = std::min(first + policy.cap, m.valid_below);
  std::vector<std::int64_t> cache;
  auto source = [&](int level) {
    if (static_cast<int>(cache.size()) < level) {
      const int build = std::min(level + 3, m.valid_below);
      cache = ModuleModel(m, build).hilbert_values();
    }
    return std::vector<std::int64_t>(cache.begin(), cache.begin() + level);
  };
  return fit_hilbert("hilbert function", source, first, last, policy.window, m.ring.nvars());
}

Verdict is_ulrich(const HilbertData& hd) {
  Verdict v;
  v.holds = hd.dim >= 0 && hd.multiplicity() == hd.mu;
  v.witness = "e0=" + std::to_string(hd.multiplicity()) + " mu=" + std::to_string(hd.mu);
  return v;
}

Verdict has_min_mult(const HilbertData& hd) {
  Verdict v;
  v.holds = hd.dim >= 0 && hd.h.size() <= 2;
  v.witness = "deg h=" + std::to_string(static_cast<long>(hd.h.size()) - 1);
  return v;
}

Poly SuperficialCertificate::as_poly(const RingSpec& ring) const {
  if (form.size() != ring.nvars()) throw std::invalid_argument("linear form has the wrong length");
  Poly x = ring.zero();
  for (std::size_t i = 0; i < form.size(); ++i) x += ring.var(i).scaled(form[i]);
  return x;
}

namespace {
std::string form_text(const RingSpec& ring, const std::vector<std::uint32_t>& form) {
  Poly x = ring.zero();
  for (std::size_t i = 0; i < form.size(); ++i) x += ring.var(i).scaled(form[i]);
  return ring.print(x);
}
}  // namespace

std::optional<SuperficialCertificate> check_superficial(const std::vector<NamedModule>& modules,
                                                        const std::vector<std::uint32_t>& form,
                                                        const TruncationPolicy& policy) {
  if (modules.empty()) throw std::invalid_argument("no modules to certify a superficial element for");
  const RingSpec& ring = modules.front().module.ring;
  if (form.size() != ring.nvars()) throw std::invalid_argument("linear form has the wrong length");
  if (std::all_of(form.begin(), form.end(), [&](std::uint32_t c) { return c % ring.p == 0; }))
    return std::nullopt;
  SuperficialCertificate cert;
  cert.form = form;
  cert.text = form_text(ring, form);
  cert.first_degree = 0;
  cert.last_degree = INT_MAX;
  for (const auto& [name, m] : modules) {
    if (!(m.ring == ring)) throw std::invalid_argument("modules over different rings");
    const int D = std::min(hilbert_first_level(ring.nvars(), presentation_degree(m), policy) + policy.window,
                           m.valid_below - 1);
    GradedModel g = graded_model(m, D);
    int first = D;
    while (first > 0) {
      const Mat a = g.linear_action(form, first - 1);
      if (rank(a) != g.dim(first - 1)) break;
      --first;
    }
    if (D - first < policy.window) return std::nullopt;
    cert.first_degree = std::max(cert.first_degree, first);
    cert.last_degree = std::min(cert.last_degree, D - 1);
    cert.modules.push_back(name);
  }
  return cert;
}

SuperficialCertificate find_superficial(const std::vector<NamedModule>& modules,
                                        const TruncationPolicy& policy, std::uint64_t seed,
                                        int trials,
                                        const std::vector<std::vector<std::uint32_t>>& candidates) {
  if (modules.empty()) throw std::invalid_argument("no modules to certify a superficial element for");
  const RingSpec& ring = modules.front().module.ring;
  int attempt = 0;
  for (const auto& c : candidates) {
    ++attempt;
    if (auto cert = check_superficial(modules, c, policy)) {
      cert->seed = seed;
      cert->attempt = attempt;
      return *cert;
    }
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    ++attempt;
    std::vector<std::uint32_t> form(ring.nvars());
    for (auto& c : form) c = static_cast<std::uint32_t>(rng() % ring.p);
    if (auto cert = check_superficial(modules, form, policy)) {
      cert->seed = seed;
      cert->attempt = attempt;
      return *cert;
    }
  }
  throw std::runtime_error("no superficial element found in " + std::to_string(attempt) +
                           " attempts");
}

ReductionCheck superficial_reduction_check(const PresentedModule& m,
                                           const SuperficialCertificate& cert,
                                           const TruncationPolicy& policy) {
  ReductionCheck out;
  HilbertData before = hilbert_data(m, policy);
  out.e_before = before.e;
  if (before.dim <= 0) {
    out.passed = true;
    out.detail = "dimension " + std::to_string(before.dim) + ": nothing to compare";
    return out;
  }
  HilbertData after = hilbert_data(quotient_by(m, {cert.as_poly(m.ring)}), policy);
  out.e_after = after.e;
  out.compared = before.dim;
  out.passed = true;
  for (int i = 0; i < before.dim; ++i)
    if (before.coeff(static_cast<std::size_t>(i)) != after.coeff(static_cast<std::size_t>(i))) {
      out.passed = false;
      out.detail = "e" + std::to_string(i) + " changed from " + std::to_string(before.coeff(i)) +
                   " to " + std::to_string(after.coeff(i));
      return out;
    }
  out.detail = "e0..e" + std::to_string(before.dim - 1) + " preserved";
  return out;
}

DimensionDrop dimension_drop_check(const PresentedModule& m, const Poly& f,
                                   const TruncationPolicy& policy) {
  PresentedModule q = quotient_by(m, {f});
  DimensionDrop out;
  out.dim_before = hilbert_data(m, policy).dim;
  out.dim_after = hilbert_data(q, policy).dim;
  out.passed = out.dim_after >= out.dim_before - 1;
  return out;
}

}  // namespace cmloc
