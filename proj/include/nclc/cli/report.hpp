#pragma once

// Running a loaded problem and serializing the outcome. Every algebra element
// in a report is a canonical string, so equal inputs give byte-equal output.

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nclc/cli/config.hpp"

namespace nclc::cli {

enum class Status { Ok, NotWeaklySymmetric, SolvabilityViolated, VerificationFailed, Error };

constexpr const char* to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::NotWeaklySymmetric: return "not_weakly_symmetric";
    case Status::SolvabilityViolated: return "solvability_violated";
    case Status::VerificationFailed: return "verification_failed";
    case Status::Error: return "error";
  }
  return "error";
}

inline int exit_code(Status s) {
  switch (s) {
    case Status::Ok: return 0;
    case Status::NotWeaklySymmetric:
    case Status::SolvabilityViolated: return 2;
    default: return 1;
  }
}

using Grid = std::vector<std::vector<std::vector<std::string>>>;

struct Report {
  std::string command;
  Status status = Status::Error;
  std::optional<std::size_t> n, dim;
  std::optional<bool> commutative;
  std::optional<bool> weakly_symmetric;
  std::vector<std::pair<std::string, std::string>> d_rho;  // nonzero components only
  std::optional<Grid> F, R, U, gamma;
  std::optional<VerificationReport> verification;
  std::optional<Grid> torsion, compat_defect;
  std::string error_kind, error_message;

  int exit_code() const { return cli::exit_code(status); }
};

namespace detail {

inline Grid render(const Tensor3& t) {
  Grid g;
  for (const Matrix& m : t) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : m) {
      std::vector<std::string> r;
      for (const auto& x : row) r.push_back(render_element(x));
      rows.push_back(std::move(r));
    }
    g.push_back(std::move(rows));
  }
  return g;
}

inline std::string index_name(const Indices& idx) {
  std::string s = "(";
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k] + 1);
  return s + ")";
}

// torsion[i] as a 2-form, laid out [i][a][b].
inline Grid render_torsion(const std::vector<KForm>& t, std::size_t n) {
  Grid g(t.size(), std::vector<std::vector<std::string>>(n, std::vector<std::string>(n, "0")));
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b) g[i][a][b] = render_element(t[i]({a, b}));
  return g;
}

inline void attach_verification(Report& r, const LieAlgebra& g, const VerificationReport& v) {
  r.verification = v;
  r.torsion = render_torsion(v.torsion, g.dim());
  r.compat_defect = render(v.compat);
}

}  // namespace detail

inline Report run(const ProblemConfig& cfg) {
  Report r;
  r.command = cfg.command;
  r.n = cfg.algebra.n;
  r.dim = cfg.lie.dim();
  r.commutative = cfg.algebra.commutative;
  try {
    KForm drho = weak_symmetry_defect(cfg.lie, cfg.metric);
    r.weakly_symmetric = drho.is_zero();
    for (const auto& [idx, v] : drho.components()) r.d_rho.emplace_back(detail::index_name(idx), render_element(v));

    if (cfg.command == "check-weak-symmetry") {
      r.status = drho.is_zero() ? Status::Ok : Status::NotWeaklySymmetric;
    } else if (cfg.command == "build-lc") {
      if (!drho.is_zero()) {
        r.status = Status::NotWeaklySymmetric;
        r.error_kind = to_string(ErrorKind::NotWeaklySymmetric);
        r.error_message = "d rho is nonzero at " + r.d_rho.front().first;
        return r;
      }
      LeviCivita lc = solve_levi_civita(cfg.lie, cfg.metric, cfg.params);
      r.F = detail::render(lc.F);
      r.R = detail::render(lc.R);
      r.U = detail::render(lc.U);
      r.gamma = detail::render(lc.connection.gamma());
      detail::attach_verification(r, cfg.lie, lc.verification);
      r.status = Status::Ok;
    } else if (cfg.command == "verify-given") {
      if (!cfg.connection) throw Error(ErrorKind::ConfigError, "verify-given needs a [connection] section");
      VerificationReport v = verify_levi_civita(cfg.lie, *cfg.connection, cfg.metric);
      r.gamma = detail::render(cfg.connection->gamma());
      detail::attach_verification(r, cfg.lie, v);
      r.status = v.passed() ? Status::Ok : Status::VerificationFailed;
    } else {
      throw Error(ErrorKind::ConfigError, "unknown command '" + cfg.command + "'");
    }
  } catch (const Error& e) {
    r.status = e.kind() == ErrorKind::SolvabilityViolated  ? Status::SolvabilityViolated
               : e.kind() == ErrorKind::NotWeaklySymmetric ? Status::NotWeaklySymmetric
                                                           : Status::Error;
    r.error_kind = to_string(e.kind());
    r.error_message = e.what();
  }
  return r;
}

/// A report for failures that happen before a config exists.
inline Report failed(const std::string& command, const Error& e) {
  Report r;
  r.command = command;
  r.status = Status::Error;
  r.error_kind = to_string(e.kind());
  r.error_message = e.what();
  return r;
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["command"] = r.command;
  j["status"] = to_string(r.status);
  if (r.n) j["algebra"] = {{"n", *r.n}, {"commutative", *r.commutative}, {"derivations", *r.dim}};
  if (r.weakly_symmetric) {
    nlohmann::ordered_json d = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.d_rho) d[k] = v;
    j["weak_symmetry"] = {{"holds", *r.weakly_symmetric}, {"d_rho", d}};
  }
  if (r.F) j["F"] = *r.F;
  if (r.R) j["R"] = *r.R;
  if (r.U) j["U"] = *r.U;
  if (r.gamma) j["gamma"] = *r.gamma;
  if (r.verification) {
    const VerificationReport& v = *r.verification;
    j["verification"] = {{"torsion_free", v.torsion_free},
                         {"compatible", v.compatible},
                         {"characterization_identity", v.characterization.identity},
                         {"characterization_fixed_point", v.characterization.fixed_point},
                         {"passed", v.passed()},
                         {"torsion", *r.torsion},
                         {"compat_defect", *r.compat_defect}};
  }
  if (r.status != Status::Ok && !r.error_kind.empty())
    j["error"] = {{"kind", r.error_kind}, {"message", r.error_message}};
  return j;
}

namespace detail {

inline void text_grid(std::ostream& os, const std::string& title, const Grid& g, const char* pattern) {
  os << title << ":\n";
  bool any = false;
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g[x].size(); ++y)
      for (std::size_t z = 0; z < g[x][y].size(); ++z) {
        if (g[x][y][z] == "0") continue;
        any = true;
        std::string label = pattern;
        for (auto [ch, v] : {std::pair{'x', x}, {'y', y}, {'z', z}})
          label.replace(label.find(ch), 1, std::to_string(v + 1));
        os << "  " << label << " = " << g[x][y][z] << "\n";
      }
  if (!any) os << "  all zero\n";
}

}  // namespace detail

inline std::string emit_report(const Report& r, const std::string& format) {
  if (format == "json") return to_json(r).dump(2) + "\n";
  if (format != "text") throw Error(ErrorKind::ConfigError, "unknown format '" + format + "'");
  std::ostringstream os;
  os << "command: " << r.command << "\nstatus: " << to_string(r.status) << "\n";
  if (r.weakly_symmetric) {
    os << "weakly symmetric: " << (*r.weakly_symmetric ? "yes" : "no") << "\n";
    for (const auto& [k, v] : r.d_rho) os << "  d rho" << k << " = " << v << "\n";
  }
  // Gamma is stored [a][i][j] and printed as Gamma^i_{aj}.
  if (r.gamma) {
    Grid g = *r.gamma;
    Grid by_i(g.size(), std::vector<std::vector<std::string>>(g.size()));
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t i = 0; i < g[a].size(); ++i) by_i[i][a] = g[a][i];
    detail::text_grid(os, "connection", by_i, "Gamma^x_{yz}");
  }
  if (r.verification) {
    const VerificationReport& v = *r.verification;
    os << "torsion free: " << (v.torsion_free ? "yes" : "no") << "\n"
       << "compatible: " << (v.compatible ? "yes" : "no") << "\n"
       << "characterization: " << (v.characterization.holds() ? "yes" : "no") << "\n";
  }
  if (r.status != Status::Ok && !r.error_kind.empty()) os << "error: " << r.error_message << "\n";
  return os.str();
}

}  // namespace nclc::cli
