#pragma once

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "erw/families.hpp"
#include "erw/montecarlo.hpp"
#include "erw/oracle.hpp"
#include "erw/polynomial.hpp"
#include "erw/verify.hpp"
#include "erw/walk.hpp"

namespace erw {

// JSON payloads carry every exact value as a "num/den" string, never as a
// float; decimal renderings live in separate *_float fields.

inline nlohmann::json params_json(const WalkParams& params) {
  return {{"p", format_rational(params.p())},
          {"q", format_rational(params.q())},
          {"alpha", format_rational(params.alpha())},
          {"beta", format_rational(params.beta())}};
}

inline nlohmann::json polynomial_json(const AlphaPolynomial& poly) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : poly.coefficients()) coeffs.push_back(format_rational(c));
  return coeffs;
}

inline std::string family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::phi: return "phi";
    case FamilyKind::theta: return "theta";
    case FamilyKind::omega: return "omega";
    case FamilyKind::psi: return "psi";
  }
  return "?";
}

inline nlohmann::json family_json(const IndexFamily& family) {
  nlohmann::json members = nlohmann::json::array();
  for (const auto& member : family.members) {
    nlohmann::json row = nlohmann::json::array();
    for (auto v : member) row.push_back(static_cast<int>(v));
    members.push_back(std::move(row));
  }
  return {{"kind", family_kind_name(family.kind)},
          {"j", family.j},
          {"n", family.n},
          {"members", std::move(members)}};
}

inline nlohmann::json distribution_json(const ExactDistribution& dist) {
  std::vector<std::pair<std::string, Rational>> rows;
  rows.reserve(dist.atoms.size());
  for (const auto& [mask, prob] : dist.atoms) rows.emplace_back(signs_string(mask, dist.n), prob);
  std::sort(rows.begin(), rows.end());
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& [signs, prob] : rows)
    atoms.push_back({{"signs", signs}, {"prob", format_rational(prob)}});
  return {{"n", dist.n},
          {"mode", dist.mode == OracleMode::history ? "history" : "generative"},
          {"atoms", std::move(atoms)}};
}

inline nlohmann::json summary_json(const SimulationSummary& summary) {
  nlohmann::json out{{"n", summary.n},
                     {"trials", summary.trials},
                     {"mean", summary.sample_mean_s},
                     {"var", summary.sample_var_s},
                     {"stderr", summary.stderr_mean},
                     {"seed", summary.seed},
                     {"p", format_rational(summary.params.p())},
                     {"q", format_rational(summary.params.q())}};
  if (!summary.histogram.empty()) {
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [pos, count] : summary.histogram) hist[std::to_string(pos)] = count;
    out["histogram"] = std::move(hist);
  }
  return out;
}

inline std::string check_status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::documented_divergence: return "documented-divergence";
  }
  return "?";
}

inline nlohmann::json report_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& check : report.checks) {
    nlohmann::json row{{"category", check.category},
                       {"id", check.id},
                       {"status", check_status_name(check.status)}};
    if (check.status != CheckStatus::pass) {
      row["lhs"] = check.lhs;
      row["rhs"] = check.rhs;
    }
    if (!check.detail.empty()) row["detail"] = check.detail;
    checks.push_back(std::move(row));
  }
  return {{"max_n", report.options.max_n},
          {"mc_trials", report.options.mc_trials},
          {"seed", report.options.seed},
          {"checks", std::move(checks)},
          {"summary",
           {{"total", report.checks.size()},
            {"passed", report.passed()},
            {"failed", report.failed()},
            {"documented_divergences", report.divergences()}}},
          {"ok", report.all_pass()}};
}

/// RFC-4180 quoting: fields containing commas, quotes or newlines are
/// wrapped, embedded quotes doubled.
inline std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_field(fields[i]);
  }
  out.push_back('\n');
  return out;
}

}  // namespace erw
