#pragma once

// Problem descriptions for the batch driver. The format is sectioned key-value
// text, one entry per line, '#' starts a comment:
//
//   [algebra]     n, commutative
//   [lie]         dim, c.e.a.b (rational), v.a.b (element)
//   [metric]      N, h.i.j (upper), hinv.i.j (lower, optional)
//   [params]      X.a.b, H.a.b.c (a < b < c), A.a.i.j
//   [connection]  gamma.a.i.j, the entry Gamma^i_{aj} (verify-given only)
//   [run]         command
//
// All indices are 1-based. Unset entries are zero.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nclc/connection.hpp"
#include "nclc/lc_solver.hpp"
#include "nclc/parse.hpp"

namespace nclc::cli {

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"check-weak-symmetry", "build-lc", "verify-given"};
  return names;
}

struct ProblemConfig {
  Algebra algebra;
  LieAlgebra lie = LieAlgebra::abelian(Algebra{});
  HermitianMetric metric = HermitianMetric::identity(Algebra{}, 1);
  SolverParams params;
  std::optional<Connection> connection;
  std::string command = "build-lc";
};

namespace detail {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line = 0;
  std::size_t column = 0;  // where the value starts
};

using Sections = std::map<std::string, std::vector<Entry>>;

inline std::string trim(const std::string& s, std::size_t* lead = nullptr) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    if (lead) *lead = s.size();
    return "";
  }
  std::size_t e = s.find_last_not_of(" \t\r");
  if (lead) *lead = b;
  return s.substr(b, e - b + 1);
}

inline Sections split_sections(std::istream& in) {
  static const std::vector<std::string> known{"algebra", "lie", "metric", "params", "connection", "run"};
  Sections out;
  std::string section, raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = raw.substr(0, raw.find('#'));
    std::size_t lead = 0;
    std::string t = trim(text, &lead);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError(line, lead + t.size(), "expected ']'");
      section = trim(t.substr(1, t.size() - 2));
      if (std::find(known.begin(), known.end(), section) == known.end())
        throw Error(ErrorKind::ConfigError, "line " + std::to_string(line) + ": unknown section [" + section + "]");
      out[section];
      continue;
    }
    std::size_t eq = text.find('=');
    if (eq == std::string::npos) throw ParseError(line, lead + 1, "expected 'key = value'");
    if (section.empty())
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(line) + ": entry outside of a section");
    std::string key = trim(text.substr(0, eq));
    if (key.empty()) throw ParseError(line, lead + 1, "missing key");
    std::size_t vlead = 0;
    std::string value = trim(text.substr(eq + 1), &vlead);
    if (value.empty()) throw ParseError(line, eq + 2, "missing value");
    out[section].push_back({key, value, line, eq + 1 + vlead + 1});
  }
  return out;
}

inline const Entry* find(const Sections& s, const std::string& section, const std::string& key) {
  auto it = s.find(section);
  if (it == s.end()) return nullptr;
  const Entry* hit = nullptr;
  for (const Entry& e : it->second)
    if (e.key == key) {
      if (hit)
        throw Error(ErrorKind::ConfigError,
                    "line " + std::to_string(e.line) + ": duplicate key '" + key + "' in [" + section + "]");
      hit = &e;
    }
  return hit;
}

inline std::size_t parse_count(const Entry& e, std::size_t lo) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(e.value, &used);
  } catch (const std::exception&) {
    throw ParseError(e.line, e.column, "expected an integer");
  }
  if (used != e.value.size()) throw ParseError(e.line, e.column + used, "expected an integer");
  if (v < static_cast<long>(lo))
    throw Error(ErrorKind::IndexOutOfRange,
                "line " + std::to_string(e.line) + ": '" + e.key + "' must be at least " + std::to_string(lo));
  return static_cast<std::size_t>(v);
}

inline bool parse_flag(const Entry& e) {
  if (e.value == "true" || e.value == "1") return true;
  if (e.value == "false" || e.value == "0") return false;
  throw ParseError(e.line, e.column, "expected true or false");
}

inline AlgebraElement parse_value(const Entry& e, const Algebra& alg) {
  try {
    return parse_element(e.value, alg);
  } catch (const ParseError& p) {
    std::string msg = p.what();
    // Strip the "ParseError: column N: " prefix of the inner error.
    std::size_t cut = msg.find(": ", msg.find(": ") + 2);
    throw ParseError(e.line, e.column + p.column() - 1, cut == std::string::npos ? msg : msg.substr(cut + 2));
  }
}

/// Splits "X.1.2" into the prefix and 1-based indices, checked against `bound`
/// and converted to 0-based.
inline std::optional<std::vector<std::size_t>> split_key(const Entry& e, const std::string& prefix,
                                                         std::size_t arity, std::size_t bound) {
  if (e.key.rfind(prefix + ".", 0) != 0) return std::nullopt;
  std::vector<std::size_t> idx;
  std::stringstream ss(e.key.substr(prefix.size() + 1));
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(e.line) + ": malformed key '" + e.key + "'");
    std::size_t v = std::stoul(part);
    if (v < 1 || v > bound)
      throw Error(ErrorKind::IndexOutOfRange, "line " + std::to_string(e.line) + ": index " + part + " of '" +
                                                  e.key + "' is outside 1.." + std::to_string(bound));
    idx.push_back(v - 1);
  }
  if (idx.size() != arity)
    throw Error(ErrorKind::ConfigError, "line " + std::to_string(e.line) + ": '" + e.key + "' needs " +
                                            std::to_string(arity) + " indices");
  return idx;
}

[[noreturn]] inline void unknown_key(const Entry& e, const std::string& section) {
  throw Error(ErrorKind::ConfigError,
              "line " + std::to_string(e.line) + ": unknown key '" + e.key + "' in [" + section + "]");
}

inline void require_hermitian(const Entry& e, const AlgebraElement& x) {
  if (!is_hermitian(x))
    throw Error(ErrorKind::HermiticityError,
                "line " + std::to_string(e.line) + ": " + e.key + " = " + e.value + " is not hermitian");
}

inline Rational rational_value(const Entry& e, const AlgebraElement& x) {
  const Algebra& alg = x.algebra();
  if (x.is_zero()) return 0;
  const Exponents unit(alg.n, 0), no_phase(alg.pair_count(), 0);
  if (x.terms().size() == 1 && x.terms().begin()->first == unit) {
    const PhaseScalar& c = x.terms().begin()->second;
    if (c.is_single_term() && c.terms().begin()->first == no_phase && c.terms().begin()->second.is_real())
      return c.terms().begin()->second.re();
  }
  throw Error(ErrorKind::ConfigError,
              "line " + std::to_string(e.line) + ": structure constant " + e.key + " must be a rational number");
}

}  // namespace detail

inline ProblemConfig parse_config(std::istream& in) {
  using namespace detail;
  Sections s = split_sections(in);
  ProblemConfig cfg;

  for (const char* sec : {"algebra", "lie", "metric", "run"})
    for (const Entry& e : s[sec]) {
      static const std::map<std::string, std::vector<std::string>> scalar_keys{
          {"algebra", {"n", "commutative"}}, {"lie", {"dim"}}, {"metric", {"N"}}, {"run", {"command"}}};
      const auto& keys = scalar_keys.at(sec);
      bool indexed = std::string(sec) == "lie" || std::string(sec) == "metric";
      if (std::find(keys.begin(), keys.end(), e.key) == keys.end() && !(indexed && e.key.find('.') != std::string::npos))
        unknown_key(e, sec);
    }

  const Entry* n_entry = find(s, "algebra", "n");
  if (!n_entry) throw Error(ErrorKind::ConfigError, "[algebra] n is required");
  std::size_t n = parse_count(*n_entry, 1);
  bool commutative = false;
  if (const Entry* e = find(s, "algebra", "commutative")) commutative = parse_flag(*e);
  cfg.algebra = Algebra(n, commutative);
  const Algebra& alg = cfg.algebra;

  std::size_t dim = n;
  if (const Entry* e = find(s, "lie", "dim")) dim = parse_count(*e, 1);
  LieAlgebra::Constants c(dim, std::vector<std::vector<Rational>>(dim, std::vector<Rational>(dim, 0)));
  Matrix v = zero_matrix(alg, dim, n);
  for (std::size_t a = 0; a < dim && a < n; ++a) v[a][a] = AlgebraElement::one(alg);
  bool any_v = false;
  for (const Entry& e : s["lie"]) {
    if (e.key == "dim") continue;
    if (auto idx = split_key(e, "c", 3, dim)) {
      c[(*idx)[0]][(*idx)[1]][(*idx)[2]] = rational_value(e, parse_value(e, alg));
    } else if (e.key.rfind("v.", 0) == 0) {
      if (!any_v) v = zero_matrix(alg, dim, n);
      any_v = true;
      std::vector<std::size_t> ij = *split_key(e, "v", 2, std::max(dim, n));
      if (ij[0] >= dim || ij[1] >= n)
        throw Error(ErrorKind::IndexOutOfRange, "line " + std::to_string(e.line) + ": '" + e.key + "' out of range");
      v[ij[0]][ij[1]] = parse_value(e, alg);
    } else {
      unknown_key(e, "lie");
    }
  }
  if (dim != n && !any_v)
    throw Error(ErrorKind::ConfigError, "[lie] dim differs from n, so the realization v.a.b must be given");
  cfg.lie = LieAlgebra(alg, std::move(c), std::move(v));

  const Entry* rank_entry = find(s, "metric", "N");
  if (!rank_entry) throw Error(ErrorKind::ConfigError, "[metric] N is required");
  std::size_t rank = parse_count(*rank_entry, 1);
  if (rank != dim)
    throw Error(ErrorKind::ConfigError, "line " + std::to_string(rank_entry->line) +
                                            ": the dual-basis module needs N equal to the Lie algebra dimension (" +
                                            std::to_string(dim) + ")");
  Matrix upper = zero_matrix(alg, rank, rank), lower = zero_matrix(alg, rank, rank);
  bool any_upper = false, any_lower = false;
  for (const Entry& e : s["metric"]) {
    if (e.key == "N") continue;
    if (auto idx = split_key(e, "h", 2, rank)) {
      upper[(*idx)[0]][(*idx)[1]] = parse_value(e, alg);
      any_upper = true;
    } else if (auto idx2 = split_key(e, "hinv", 2, rank)) {
      lower[(*idx2)[0]][(*idx2)[1]] = parse_value(e, alg);
      any_lower = true;
    } else {
      unknown_key(e, "metric");
    }
  }
  if (!any_upper) throw Error(ErrorKind::ConfigError, "[metric] has no h.i.j entries");
  cfg.metric = any_lower ? HermitianMetric(upper, lower) : HermitianMetric::from_upper(upper);

  cfg.params = SolverParams::zero(alg, dim);
  Tensor3 A = zero_tensor(alg, dim, dim, dim);
  bool any_a = false;
  for (const Entry& e : s["params"]) {
    if (auto x = split_key(e, "X", 2, dim)) {
      AlgebraElement val = parse_value(e, alg);
      require_hermitian(e, val);
      cfg.params.X[(*x)[0]][(*x)[1]] = val;
    } else if (auto h = split_key(e, "H", 3, dim)) {
      const auto& t = *h;
      if (!(t[0] < t[1] && t[1] < t[2]))
        throw Error(ErrorKind::IndexOutOfRange,
                    "line " + std::to_string(e.line) + ": H indices must be strictly increasing");
      AlgebraElement val = parse_value(e, alg);
      require_hermitian(e, val);
      cfg.params.H[{t[0], t[1], t[2]}] = val;
    } else if (auto a = split_key(e, "A", 3, dim)) {
      A[(*a)[0]][(*a)[1]][(*a)[2]] = parse_value(e, alg);
      any_a = true;
    } else {
      unknown_key(e, "params");
    }
  }
  if (any_a) {
    check_antihermitian(A, dim, dim);
    cfg.params.A = std::move(A);
  }

  if (s.count("connection")) {
    Tensor3 gamma = zero_tensor(alg, dim, rank, rank);
    for (const Entry& e : s["connection"]) {
      auto idx = split_key(e, "gamma", 3, dim);
      if (!idx) unknown_key(e, "connection");
      gamma[(*idx)[0]][(*idx)[1]][(*idx)[2]] = parse_value(e, alg);
    }
    cfg.connection = Connection(std::move(gamma));
  }

  if (const Entry* e = find(s, "run", "command")) {
    if (std::find(commands().begin(), commands().end(), e->value) == commands().end())
      throw Error(ErrorKind::ConfigError,
                  "line " + std::to_string(e->line) + ": unknown command '" + e->value + "'");
    cfg.command = e->value;
  }
  return cfg;
}

inline ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read " + path);
  return parse_config(in);
}

}  // namespace nclc::cli
