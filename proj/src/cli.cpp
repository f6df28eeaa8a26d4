#include "cmloc/cli.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <sstream>

#include "json.hpp"

#include "cmloc/etor.hpp"
#include "cmloc/gcm.hpp"
#include "cmloc/hilbert.hpp"
#include "cmloc/syzres.hpp"

namespace cmloc {

using nlohmann::json;

ProblemError::ProblemError(const std::string& what, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                        ": " + what
                                  : what),
      line_(line),
      column_(column) {}

const std::vector<std::pair<std::string, int>>& task_verbs() {
  static const std::vector<std::pair<std::string, int>> verbs{
      {"hilbert", 1},  {"etor", 1},     {"tor", 2},      {"tsplit", 1},    {"filmy", 1},
      {"validate", 1}, {"gexact", 1},   {"additivity", 1}, {"ladder", 3},  {"cm", 1},
      {"syzygies", 1}, {"omega", 1},    {"ulrich", 1},   {"superficial", -1}, {"reduction", 1},
  };
  return verbs;
}

namespace {

// ---------------------------------------------------------------- parsing

struct Cursor {
  int line;
  std::string_view text;
  std::size_t base;  // column offset of text within the line

  [[noreturn]] void fail(const std::string& what, std::size_t at = 0) const {
    throw ProblemError(what, line, static_cast<int>(base + at) + 1);
  }
};

bool is_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

/// Whitespace-separated tokens with their offsets.
std::vector<std::pair<std::string, std::size_t>> tokens(std::string_view s) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(std::string(s.substr(start, i - start)), start);
  }
  return out;
}

/// Comma-separated polynomial entries with their offsets.
std::vector<std::pair<std::string, std::size_t>> entries(const Cursor& c) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= c.text.size(); ++i) {
    if (i == c.text.size() || c.text[i] == ',') {
      std::string_view piece = c.text.substr(start, i - start);
      std::size_t lead = 0;
      while (lead < piece.size() && std::isspace(static_cast<unsigned char>(piece[lead]))) ++lead;
      std::string t = trim(piece);
      if (t.empty()) c.fail("empty entry", start);
      out.emplace_back(std::move(t), start + lead);
      start = i + 1;
    }
  }
  return out;
}

std::vector<std::string> split_names(const Cursor& c, const std::string& list, std::size_t at) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!is_name(item)) c.fail("invalid name '" + item + "'", at);
    out.push_back(item);
  }
  if (out.empty()) c.fail("empty name list", at);
  return out;
}

std::int64_t to_int(const Cursor& c, const std::string& v, std::size_t at) {
  try {
    std::size_t used = 0;
    const long long out = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    c.fail("expected an integer, got '" + v + "'", at);
  }
}

std::uint64_t to_uint(const Cursor& c, const std::string& v, std::size_t at) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    c.fail("expected a nonnegative integer, got '" + v + "'", at);
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    c.fail("integer out of range '" + v + "'", at);
  }
}

/// key=value tokens; keys outside `allowed` are errors.
std::map<std::string, std::pair<std::string, std::size_t>> key_values(const Cursor& c,
                                                                      const std::vector<std::string>& allowed) {
  std::map<std::string, std::pair<std::string, std::size_t>> out;
  for (const auto& [tok, at] : tokens(c.text)) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) c.fail("expected key=value, got '" + tok + "'", at);
    const std::string key = tok.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) c.fail("unknown key '" + key + "'", at);
    if (out.count(key)) c.fail("repeated key '" + key + "'", at);
    out[key] = {tok.substr(eq + 1), at + eq + 1};
  }
  return out;
}

template <class T>
T* find_named(std::vector<T>& v, const std::string& name) {
  for (auto& x : v)
    if (x.name == name) return &x;
  return nullptr;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  ProblemFile f;
  bool saw_policy = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) {
      if (trim(raw.substr(0, hash)).empty()) {
        f.comments.push_back(trim(raw.substr(hash + 1)));
        if (end == text.size()) break;
        continue;
      }
      raw = raw.substr(0, hash);
    }
    if (trim(raw).empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t colon = raw.find(':');
    const Cursor whole{line_no, raw, 0};
    if (colon == std::string_view::npos) whole.fail("expected 'keyword ...: ...'");
    const auto head = tokens(raw.substr(0, colon));
    const Cursor body{line_no, raw.substr(colon + 1), colon + 1};
    if (head.empty()) whole.fail("missing keyword");
    const std::string& kw = head[0].first;

    auto need_name = [&](std::size_t count) -> std::string {
      if (head.size() != count) whole.fail("malformed '" + kw + "' header", head[0].second);
      if (!is_name(head[1].first)) whole.fail("invalid name '" + head[1].first + "'", head[1].second);
      return head[1].first;
    };

    if (kw == "ring") {
      const std::string name = need_name(2);
      if (find_named(f.rings, name)) whole.fail("ring '" + name + "' defined twice", head[1].second);
      RingBlock r;
      r.name = name;
      auto kv = key_values(body, {"p", "vars"});
      if (!kv.count("vars")) body.fail("ring needs vars=");
      r.vars = split_names(body, kv["vars"].first, kv["vars"].second);
      if (kv.count("p")) r.p = static_cast<std::uint32_t>(to_uint(body, kv["p"].first, kv["p"].second));
      f.rings.push_back(std::move(r));
    } else if (kw == "ideal") {
      const std::string name = need_name(2);
      RingBlock* r = find_named(f.rings, name);
      if (!r) whole.fail("unknown ring '" + name + "'", head[1].second);
      for (auto& [e, at] : entries(body)) r->ideal.push_back(e);
    } else if (kw == "module") {
      if (head.size() != 2 && !(head.size() == 4 && head[2].first == "over"))
        whole.fail("expected 'module NAME [over RING]:'", head[0].second);
      const std::string name = need_name(head.size());
      if (find_named(f.modules, name)) whole.fail("module '" + name + "' defined twice", head[1].second);
      ModuleBlock m;
      m.name = name;
      if (head.size() == 4) {
        m.ring = head[3].first;
        if (!find_named(f.rings, m.ring)) whole.fail("unknown ring '" + m.ring + "'", head[3].second);
      } else {
        if (f.rings.size() != 1) whole.fail("module needs 'over RING' unless exactly one ring is defined");
        m.ring = f.rings.front().name;
      }
      auto kv = key_values(body, {"gens", "valid_below"});
      if (!kv.count("gens")) body.fail("module needs gens=");
      m.gens = split_names(body, kv["gens"].first, kv["gens"].second);
      if (kv.count("valid_below")) {
        m.valid_below = static_cast<int>(to_int(body, kv["valid_below"].first, kv["valid_below"].second));
        if (m.valid_below < 1) body.fail("valid_below must be positive", kv["valid_below"].second);
      }
      f.modules.push_back(std::move(m));
    } else if (kw == "relation") {
      const std::string name = need_name(2);
      ModuleBlock* m = find_named(f.modules, name);
      if (!m) whole.fail("unknown module '" + name + "'", head[1].second);
      std::vector<std::string> col;
      for (auto& [e, at] : entries(body)) col.push_back(e);
      if (col.size() != m->gens.size())
        body.fail("relation has " + std::to_string(col.size()) + " entries, module has " +
                  std::to_string(m->gens.size()) + " generators");
      m->relations.push_back(std::move(col));
    } else if (kw == "extension") {
      const std::string name = need_name(2);
      if (find_named(f.extensions, name)) whole.fail("extension '" + name + "' defined twice", head[1].second);
      ExtensionBlock x;
      x.name = name;
      auto kv = key_values(body, {"N", "E", "M"});
      if (!kv.count("N") || !kv.count("M")) body.fail("extension needs N= and M=");
      const std::pair<const char*, std::string*> slots[] = {{"N", &x.n}, {"E", &x.e}, {"M", &x.m}};
      for (const auto& [key, dst] : slots) {
        if (!kv.count(key)) continue;
        *dst = kv[key].first;
        if (!find_named(f.modules, *dst)) body.fail("unknown module '" + *dst + "'", kv[key].second);
      }
      f.extensions.push_back(std::move(x));
    } else if (kw == "cocycle" || kw == "iota" || kw == "pi") {
      const std::string name = need_name(2);
      ExtensionBlock* x = find_named(f.extensions, name);
      if (!x) whole.fail("unknown extension '" + name + "'", head[1].second);
      std::vector<std::string> col;
      for (auto& [e, at] : entries(body)) col.push_back(e);
      (kw == "cocycle" ? x->cocycle : kw == "iota" ? x->iota : x->pi).push_back(std::move(col));
    } else if (kw == "policy") {
      if (head.size() != 1) whole.fail("policy takes no name", head[1].second);
      if (saw_policy) whole.fail("policy given twice");
      saw_policy = true;
      auto kv = key_values(body, {"base", "buffer", "window", "cap", "seed", "trials"});
      auto num = [&](const char* key, int& dst) {
        if (kv.count(key)) dst = static_cast<int>(to_int(body, kv[key].first, kv[key].second));
      };
      num("base", f.config.policy.base);
      num("buffer", f.config.policy.buffer);
      num("window", f.config.policy.window);
      num("cap", f.config.policy.cap);
      num("trials", f.config.trials);
      if (kv.count("seed")) f.config.seed = to_uint(body, kv["seed"].first, kv["seed"].second);
    } else if (kw == "task") {
      if (head.size() != 1) whole.fail("task takes no name", head[1].second);
      const auto t = tokens(body.text);
      if (t.empty()) body.fail("empty task");
      const auto& verbs = task_verbs();
      auto it = std::find_if(verbs.begin(), verbs.end(), [&](const auto& v) { return v.first == t[0].first; });
      if (it == verbs.end()) body.fail("unknown task '" + t[0].first + "'", t[0].second);
      const int args = static_cast<int>(t.size()) - 1;
      if (it->second >= 0 ? args != it->second : args < 1)
        body.fail("task '" + it->first + "' takes " +
                      (it->second >= 0 ? std::to_string(it->second) : std::string("at least 1")) + " argument(s)",
                  t[0].second);
      std::string joined;
      for (const auto& [tok, at] : t) joined += (joined.empty() ? "" : " ") + tok;
      f.tasks.push_back(joined);
    } else {
      whole.fail("unknown keyword '" + kw + "'", head[0].second);
    }
    if (end == text.size()) break;
  }
  return f;
}

std::string format_problem(const ProblemFile& f) {
  std::ostringstream os;
  for (const auto& c : f.comments) os << "# " << c << "\n";
  auto join = [](const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
  };
  for (const auto& r : f.rings) {
    os << "ring " << r.name << ":";
    if (r.p) os << " p=" << *r.p;
    os << " vars=" << join(r.vars, ",") << "\n";
    if (!r.ideal.empty()) os << "ideal " << r.name << ": " << join(r.ideal, ", ") << "\n";
  }
  for (const auto& m : f.modules) {
    os << "module " << m.name << " over " << m.ring << ": gens=" << join(m.gens, ",");
    if (m.valid_below != INT_MAX) os << " valid_below=" << m.valid_below;
    os << "\n";
    for (const auto& col : m.relations) os << "relation " << m.name << ": " << join(col, ", ") << "\n";
  }
  for (const auto& x : f.extensions) {
    os << "extension " << x.name << ": N=" << x.n;
    if (!x.e.empty()) os << " E=" << x.e;
    os << " M=" << x.m << "\n";
    for (const auto& col : x.cocycle) os << "cocycle " << x.name << ": " << join(col, ", ") << "\n";
    for (const auto& col : x.iota) os << "iota " << x.name << ": " << join(col, ", ") << "\n";
    for (const auto& col : x.pi) os << "pi " << x.name << ": " << join(col, ", ") << "\n";
  }
  const auto& p = f.config.policy;
  os << "policy: base=" << p.base << " buffer=" << p.buffer << " window=" << p.window << " cap=" << p.cap
     << " seed=" << f.config.seed << " trials=" << f.config.trials << "\n";
  for (const auto& t : f.tasks) os << "task: " << t << "\n";
  return os.str();
}

// ---------------------------------------------------------------- resolution

namespace {

struct Workspace {
  RunConfig config;
  std::map<std::string, RingSpec> rings;
  std::map<std::string, PresentedModule> modules;
  std::map<std::string, ExtensionClass> extensions;

  const PresentedModule& module(const std::string& ref) const {
    const auto dot = ref.find('.');
    if (dot != std::string::npos) {
      const ExtensionClass& s = extension(ref.substr(0, dot));
      const std::string part = ref.substr(dot + 1);
      if (part == "N") return s.N;
      if (part == "E") return s.E;
      if (part == "M") return s.M;
      throw ProblemError("unknown extension term '" + ref + "'");
    }
    auto it = modules.find(ref);
    if (it == modules.end()) throw ProblemError("unknown module '" + ref + "'");
    return it->second;
  }
  const ExtensionClass& extension(const std::string& name) const {
    auto it = extensions.find(name);
    if (it == extensions.end()) throw ProblemError("unknown extension '" + name + "'");
    return it->second;
  }
};

Poly parse_in(const RingSpec& r, const std::string& text, const std::string& where) {
  try {
    return r.parse(text);
  } catch (const ParseError& e) {
    throw ProblemError(where + ": " + e.what());
  }
}

PolyMat matrix_from(const RingSpec& r, std::size_t rows, const std::vector<std::vector<std::string>>& cols,
                    const std::string& where) {
  std::vector<PolyVec> out;
  for (const auto& col : cols) {
    if (col.size() != rows)
      throw ProblemError(where + ": column has " + std::to_string(col.size()) + " entries, expected " +
                         std::to_string(rows));
    PolyVec v;
    for (const auto& t : col) v.push_back(parse_in(r, t, where));
    out.push_back(std::move(v));
  }
  return PolyMat::from_columns(rows, out, r.nvars(), r.p);
}

Workspace resolve(const ProblemFile& f, const Overrides& o) {
  Workspace w;
  w.config = f.config;
  if (o.p) w.config.p = *o.p;
  if (o.seed) w.config.seed = *o.seed;
  if (o.base) w.config.policy.base = *o.base;
  if (o.buffer) w.config.policy.buffer = *o.buffer;
  if (o.window) w.config.policy.window = *o.window;
  if (o.cap) w.config.policy.cap = *o.cap;
  if (o.trials) w.config.trials = *o.trials;
  try {
    w.config.policy.validate();
  } catch (const std::invalid_argument& e) {
    throw ProblemError(std::string("policy: ") + e.what());
  }
  if (w.config.trials < 1) throw ProblemError("policy: trials must be at least 1");

  for (const auto& r : f.rings) {
    try {
      RingSpec spec;
      spec.p = r.p.value_or(w.config.p);
      spec.vars = r.vars;
      for (const auto& t : r.ideal) spec.ideal.push_back(parse_poly(t, spec.vars, spec.p));
      spec.validate();
      w.rings.emplace(r.name, std::move(spec));
    } catch (const ProblemError&) {
      throw;
    } catch (const std::exception& e) {
      throw ProblemError("ring " + r.name + ": " + e.what());
    }
  }
  for (const auto& m : f.modules) {
    const RingSpec& ring = w.rings.at(m.ring);
    PresentedModule pm(ring, m.gens, matrix_from(ring, m.gens.size(), m.relations, "module " + m.name));
    pm.valid_below = m.valid_below;
    try {
      pm.validate();
    } catch (const std::exception& e) {
      throw ProblemError("module " + m.name + ": " + e.what());
    }
    w.modules.emplace(m.name, std::move(pm));
  }
  for (const auto& x : f.extensions) {
    const std::string where = "extension " + x.name;
    const PresentedModule& n = w.module(x.n);
    const PresentedModule& m = w.module(x.m);
    if (!(n.ring == m.ring)) throw ProblemError(where + ": N and M live over different rings");
    try {
      if (x.e.empty()) {
        if (!x.iota.empty() || !x.pi.empty()) throw ProblemError(where + ": iota/pi need E=");
        if (x.cocycle.size() != m.num_relations())
          throw ProblemError(where + ": cocycle needs one column per relation of M (" +
                             std::to_string(m.num_relations()) + ")");
        const PolyMat c = matrix_from(n.ring, n.rank(), x.cocycle, where);
        w.extensions.emplace(x.name, ExtensionClass::from_cocycle(n, m, c, x.name));
      } else {
        if (!x.cocycle.empty()) throw ProblemError(where + ": give either a cocycle or E=");
        const PresentedModule& e = w.module(x.e);
        if (!(e.ring == n.ring)) throw ProblemError(where + ": E lives over a different ring");
        if (x.iota.size() != n.rank()) throw ProblemError(where + ": iota needs one column per generator of N");
        if (x.pi.size() != e.rank()) throw ProblemError(where + ": pi needs one column per generator of E");
        PolyMat iota = matrix_from(n.ring, e.rank(), x.iota, where);
        PolyMat pi = matrix_from(n.ring, m.rank(), x.pi, where);
        w.extensions.emplace(x.name, ExtensionClass{n, e, m, std::move(iota), std::move(pi), std::nullopt, x.name});
      }
    } catch (const ProblemError&) {
      throw;
    } catch (const std::exception& e) {
      throw ProblemError(where + ": " + e.what());
    }
  }
  // Task arguments must resolve before anything runs.
  for (const auto& t : f.tasks) {
    const auto parts = tokens(t);
    const std::string& verb = parts[0].first;
    const bool on_extension = verb == "tsplit" || verb == "filmy" || verb == "validate" || verb == "gexact" ||
                              verb == "additivity" || verb == "ladder" || verb == "reduction";
    if (on_extension) {
      w.extension(parts[1].first);
    } else if (verb == "superficial") {
      for (std::size_t i = 1; i < parts.size(); ++i) w.module(parts[i].first);
    } else {
      w.module(parts[1].first);
    }
  }
  return w;
}

// ---------------------------------------------------------------- reports

json to_json(const StabilityCertificate& c) {
  return {{"quantity", c.quantity},
          {"window", c.window},
          {"levels", c.levels},
          {"values", c.values},
          {"accepted_level", c.accepted_level}};
}

json opt(const std::optional<std::int64_t>& v) { return v ? json(*v) : json(nullptr); }

json to_json(const HilbertData& h) {
  std::vector<std::string> poly;
  for (const auto& r : h.poly) poly.push_back(r.to_string());
  return {{"values", h.values}, {"fit_start", h.fit_start}, {"poly", poly},
          {"dim", h.dim},       {"e", h.e},                 {"h", h.h},
          {"mu", h.mu},         {"ulrich", is_ulrich(h).holds}, {"min_mult", has_min_mult(h).holds},
          {"certificate", to_json(h.certificate)}};
}

json to_json(const EtorReport& r) {
  return {{"module", r.module},
          {"ring_dim", r.ring_dim},
          {"module_dim", r.module_dim},
          {"t_values", r.t_values},
          {"c_obs", r.c_obs},
          {"e_t_fit", opt(r.e_fit)},
          {"e_t_formula", opt(r.e_formula)},
          {"e_t", opt(r.value())},
          {"mu", r.mu},
          {"e1_ring", r.e1_ring},
          {"e1_module", r.e1_module},
          {"e1_omega", r.e1_omega},
          {"agree", r.agree},
          {"free", r.free},
          {"warnings", r.warnings},
          {"certificate", to_json(r.tor_certificate)}};
}

json to_json(const FilmyCheck& f) {
  return {{"holds", f.holds},
          {"first_n", f.first_n},
          {"last_n", f.last_n},
          {"first_failure", f.first_failure},
          {"detail", f.detail}};
}

json to_json(const CmCertificate& c) {
  return {{"verdict", to_string(c.verdict)}, {"dim", c.dim},         {"e0", c.e0},
          {"seed", c.seed},                  {"trials", c.trials},   {"max_degree", c.max_degree},
          {"lengths", c.lengths},            {"forms", c.forms}};
}

json to_json(const GExactness& g) {
  return {{"exact", g.exact},   {"first_failure", g.first_failure}, {"dims_n", g.dims_n},
          {"dims_e", g.dims_e}, {"dims_m", g.dims_m},               {"detail", g.detail}};
}

json to_json(const SuperficialCertificate& c) {
  return {{"form", c.form},
          {"text", c.text},
          {"first_degree", c.first_degree},
          {"last_degree", c.last_degree},
          {"seed", c.seed},
          {"attempt", c.attempt},
          {"modules", c.modules}};
}

json columns_json(const RingSpec& r, const PolyMat& m) {
  json out = json::array();
  for (const auto& col : m.columns()) {
    std::vector<std::string> v;
    for (const auto& e : col) v.push_back(r.print(e));
    out.push_back(v);
  }
  return out;
}

json to_json(const PresentedModule& m) {
  return {{"ring", m.ring.key()},
          {"gens", m.gens},
          {"relations", columns_json(m.ring, m.relations)},
          {"valid_below", m.valid_below == INT_MAX ? json(nullptr) : json(m.valid_below)}};
}

json run_task(const Workspace& w, const std::string& task) {
  const auto parts = tokens(task);
  const std::string& verb = parts[0].first;
  const TruncationPolicy& policy = w.config.policy;
  const std::uint64_t seed = w.config.seed;
  const int trials = w.config.trials;
  auto arg = [&](std::size_t i) { return parts[i].first; };

  if (verb == "hilbert") return to_json(hilbert_data(w.module(arg(1)), policy));
  if (verb == "etor") return to_json(etor(w.module(arg(1)), policy, arg(1)));
  if (verb == "tor") {
    const int n = std::stoi(arg(2));
    if (n < 0) throw std::invalid_argument("tor needs n >= 0");
    const auto series = tor1_series(w.module(arg(1)), n + 1, policy);
    return {{"n", n}, {"length", series.value.back()}, {"certificate", to_json(series.certificate)}};
  }
  if (verb == "tsplit") {
    const ExtensionReport r = extension_report(w.extension(arg(1)), policy);
    return {{"e_t", opt(r.e_t)},
            {"t_split", r.t_split},
            {"routes_agree", r.routes_agree},
            {"filmy", r.filmy ? to_json(*r.filmy) : json(nullptr)},
            {"N", to_json(r.n)},
            {"E", to_json(r.e)},
            {"M", to_json(r.m)},
            {"warnings", r.warnings}};
  }
  if (verb == "filmy") return to_json(filmy_check(w.extension(arg(1)), policy));
  if (verb == "validate") {
    const ExtensionCheck c = validate(w.extension(arg(1)), policy);
    return {{"valid", c.valid}, {"degrees", c.degrees}, {"detail", c.detail}};
  }
  if (verb == "gexact") return to_json(g_exactness(w.extension(arg(1)), 12));
  if (verb == "additivity") {
    const Additivity a = additivity_check(w.extension(arg(1)), policy);
    return {{"t_split", a.t_split}, {"passed", a.passed}, {"e_n", a.e_n},
            {"e_e", a.e_e},         {"e_m", a.e_m},       {"detail", a.detail}};
  }
  if (verb == "ladder") {
    const ExtensionClass& s = w.extension(arg(1));
    const Poly u = parse_in(s.N.ring, arg(2), "ladder");
    const int steps = std::stoi(arg(3));
    const LadderReport r = scalar_ladder(s, u, steps, policy);
    return {{"values", r.values},
            {"nonincreasing", r.nonincreasing},
            {"first_zero", r.first_zero ? json(*r.first_zero) : json(nullptr)},
            {"nonzero_repeat", r.nonzero_repeat},
            {"reduction_index", r.reduction_index},
            {"detail", r.detail}};
  }
  if (verb == "cm") return to_json(cm_certify(w.module(arg(1)), policy, trials, seed));
  if (verb == "syzygies") {
    const PresentedModule& m = w.module(arg(1));
    const SyzygyResult r = syzygy_generators(m, policy);
    json gens = json::array();
    for (const auto& g : r.generators) {
      std::vector<std::string> v;
      for (const auto& e : g) v.push_back(m.ring.print(e));
      gens.push_back(v);
    }
    return {{"minimal", to_json(r.minimal)},
            {"generators", gens},
            {"verified_below", r.verified_below},
            {"certificate", to_json(r.certificate)}};
  }
  if (verb == "omega") {
    const PresentedModule& m = w.module(arg(1));
    const PresentedModule o = omega(m, policy);
    return {{"presentation", to_json(o)},
            {"hilbert", to_json(omega_hilbert_data(m, policy))},
            {"cm", to_json(cm_certify(o, policy, trials, seed))}};
  }
  if (verb == "ulrich") {
    const UlrichReport r = ulrich_dim1_family(w.module(arg(1)), policy);
    return {{"e0", r.e0},
            {"mu", r.mu},
            {"threshold", r.threshold},
            {"e1_after", r.e1_after},
            {"e1_presented", r.e1_presented},
            {"consistent", r.consistent},
            {"detail", r.detail}};
  }
  if (verb == "superficial") {
    std::vector<NamedModule> mods;
    for (std::size_t i = 1; i < parts.size(); ++i) mods.push_back({arg(i), w.module(arg(i))});
    return to_json(find_superficial(mods, policy, seed, trials));
  }
  if (verb == "reduction") {
    const ReductionCrossCheck r = reduction_cross_check(w.extension(arg(1)), policy, seed, trials);
    return {{"element", to_json(r.element)},
            {"e_t_before", opt(r.e_t_before)},
            {"e_t_after", opt(r.e_t_after)},
            {"agree", r.agree},
            {"detail", r.detail}};
  }
  throw std::logic_error("unhandled task verb " + verb);
}

}  // namespace

RunResult run(const ProblemFile& f, const Overrides& overrides) {
  const Workspace w = resolve(f, overrides);
  json report;
  report["schema"] = "cmloc-report/1";
  report["policy"] = {{"base", w.config.policy.base},
                      {"buffer", w.config.policy.buffer},
                      {"window", w.config.policy.window},
                      {"cap", w.config.policy.cap}};
  report["seed"] = w.config.seed;
  report["trials"] = w.config.trials;
  report["default_p"] = w.config.p;
  json tasks = json::array();
  RunResult out;
  for (const auto& t : f.tasks) {
    json entry{{"task", t}};
    try {
      entry["result"] = run_task(w, t);
      entry["status"] = "ok";
    } catch (const UnstableError& e) {
      entry["status"] = "error";
      entry["error"] = e.what();
      entry["certificate"] = to_json(e.certificate());
      out.exit_code = 1;
    } catch (const std::exception& e) {
      entry["status"] = "error";
      entry["error"] = e.what();
      out.exit_code = 1;
    }
    tasks.push_back(std::move(entry));
  }
  report["tasks"] = std::move(tasks);
  report["status"] = out.exit_code == 0 ? "ok" : "error";
  out.json = report.dump(2) + "\n";
  return out;
}

// ---------------------------------------------------------------- families

namespace {

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::string join_list(const std::vector<std::string>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? std::string(1, sep) : "") + v[i];
  return out;
}

}  // namespace

FamilySpec parse_family_spec(std::string_view text) {
  FamilySpec f;
  f.asserted.clear();
  bool saw_kind = false;
  const Cursor c{1, text, 0};
  for (const auto& [tok, at] : tokens(text)) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) c.fail("expected key=value, got '" + tok + "'", at);
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    const std::size_t vat = at + eq + 1;
    if (key == "kind") {
      try {
        f.kind = family_kind_from_string(val);
      } catch (const std::invalid_argument& e) {
        c.fail(e.what(), vat);
      }
      saw_kind = true;
    } else if (key == "p") {
      f.p = static_cast<std::uint32_t>(to_uint(c, val, vat));
    } else if (key == "vars") {
      f.vars = split_names(c, val, vat);
    } else if (key == "ideal") {
      f.ideal = split_list(val, ',');
    } else if (key == "g") {
      f.g = val;
    } else if (key == "h") {
      f.h = val;
    } else if (key == "u") {
      f.u = val;
    } else if (key == "i") {
      f.i = static_cast<unsigned>(to_uint(c, val, vat));
    } else if (key == "n") {
      const auto dots = val.find("..");
      if (dots == std::string::npos) {
        f.n_first = f.n_last = static_cast<int>(to_int(c, val, vat));
      } else {
        f.n_first = static_cast<int>(to_int(c, val.substr(0, dots), vat));
        f.n_last = static_cast<int>(to_int(c, val.substr(dots + 2), vat + dots + 2));
      }
    } else if (key == "gens") {
      f.gens = split_names(c, val, vat);
    } else if (key == "rel") {
      f.relations.push_back(split_list(val, ','));
    } else if (key == "quotient") {
      f.quotient = split_list(val, ',');
    } else if (key == "r") {
      f.r = static_cast<int>(to_int(c, val, vat));
    } else if (key == "cut") {
      f.cut = split_list(val, ',');
    } else if (key == "seed") {
      f.seed = to_uint(c, val, vat);
    } else if (key == "assert") {
      f.asserted.push_back(val);
    } else {
      c.fail("unknown family key '" + key + "'", at);
    }
  }
  if (!saw_kind) throw ProblemError("family spec needs kind=");
  return f;
}

std::string format_family_spec(const FamilySpec& f) {
  std::ostringstream os;
  os << "kind=" << to_string(f.kind) << " p=" << f.p << " vars=" << join_list(f.vars, ',');
  if (!f.ideal.empty()) os << " ideal=" << join_list(f.ideal, ',');
  if (f.kind == FamilyKind::HypersurfaceSci) {
    os << " g=" << f.g << " i=" << f.i << " h=" << f.h << " u=" << f.u << " n=" << f.n_first << ".."
       << f.n_last;
  } else {
    os << " gens=" << join_list(f.gens, ',');
    for (const auto& col : f.relations) os << " rel=" << join_list(col, ',');
    if (f.kind == FamilyKind::UlrichDim1) os << " n=" << f.n_first << ".." << f.n_last;
    if (!f.quotient.empty()) os << " quotient=" << join_list(f.quotient, ',');
    if (f.kind == FamilyKind::Rci) os << " r=" << f.r;
    if (!f.cut.empty()) os << " cut=" << join_list(f.cut, ',');
  }
  os << " seed=" << f.seed;
  for (const auto& a : f.asserted) os << " assert=" << a;
  return os.str();
}

namespace {

RingBlock ring_block(const std::string& name, const RingSpec& r) {
  RingBlock b;
  b.name = name;
  b.p = r.p;
  b.vars = r.vars;
  for (const auto& g : r.ideal) b.ideal.push_back(r.print(g));
  return b;
}

ModuleBlock module_block(const std::string& name, const std::string& ring, const PresentedModule& m) {
  ModuleBlock b;
  b.name = name;
  b.ring = ring;
  b.gens = m.gens;
  b.valid_below = m.valid_below;
  for (const auto& col : m.relations.columns()) {
    std::vector<std::string> v;
    for (const auto& e : col) v.push_back(m.ring.print(e));
    b.relations.push_back(std::move(v));
  }
  return b;
}

}  // namespace

ProblemFile emit_fixture(const FamilySpec& spec, const RunConfig& config) {
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ProblemError(std::string("family spec: ") + e.what());
  }
  ProblemFile f;
  f.config = config;
  f.config.seed = spec.seed;
  f.comments.push_back("family: " + format_family_spec(spec));
  const TruncationPolicy& policy = config.policy;
  switch (spec.kind) {
    case FamilyKind::HypersurfaceSci: {
      const auto members = sci_family(spec, policy);
      const RingSpec& a = members.front().s.N.ring;
      f.rings.push_back(ring_block("A", a));
      f.modules.push_back(module_block("N", "A", members.front().s.N));
      f.modules.push_back(module_block("M", "A", members.front().s.M));
      for (const auto& mem : members) {
        ExtensionBlock x;
        x.name = "s" + std::to_string(mem.n);
        x.n = "N";
        x.m = "M";
        for (const auto& col : mem.s.cocycle->columns()) {
          std::vector<std::string> v;
          for (const auto& e : col) v.push_back(a.print(e));
          x.cocycle.push_back(std::move(v));
        }
        f.extensions.push_back(std::move(x));
        f.tasks.push_back("tsplit s" + std::to_string(mem.n));
        f.tasks.push_back("hilbert s" + std::to_string(mem.n) + ".E");
        f.tasks.push_back("cm s" + std::to_string(mem.n) + ".E");
      }
      break;
    }
    case FamilyKind::UlrichDim1: {
      const PresentedModule e = spec.base_module();
      f.rings.push_back(ring_block("A", e.ring));
      f.modules.push_back(module_block("E", "A", e));
      f.tasks.push_back("ulrich E");
      for (int n = std::max(1, spec.n_first); n <= spec.n_last; ++n) {
        const std::string name = "P" + std::to_string(n);
        f.modules.push_back(module_block(name, "A", power_submodule(e, n, policy)));
        f.tasks.push_back("hilbert " + name);
      }
      break;
    }
    case FamilyKind::SyzDim2: {
      const RingSpec a = spec.base_ring();
      std::vector<Poly> quot;
      for (const auto& t : spec.quotient) quot.push_back(a.parse(t));
      const PresentedModule ea = restrict_scalars(a, quot, spec.base_module());
      f.rings.push_back(ring_block("A", a));
      f.modules.push_back(module_block("E", "A", ea));
      f.tasks.push_back("hilbert E");
      f.tasks.push_back("omega E");
      break;
    }
    case FamilyKind::Rci: {
      const RciResult r = rci_family(spec.base_module(), spec.r, spec.cut, policy, config.trials, spec.seed);
      f.comments.push_back("initial forms regular: " + r.regular.witness);
      f.rings.push_back(ring_block("A", r.m.ring));
      f.modules.push_back(module_block("M", "A", r.m));
      f.tasks.push_back("hilbert M");
      f.tasks.push_back("cm M");
      break;
    }
  }
  return f;
}

}  // namespace cmloc
