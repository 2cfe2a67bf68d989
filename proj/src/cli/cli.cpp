#include "unruh/cli.hpp"

#include "unruh/entanglement.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace unruh::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kHalfPi = std::numbers::pi / 2.0;

Json echo(const char* first, const char* second, const CoefficientPair& c) {
  Json j = Json::object();
  j[std::string(first) + "_modulus"] = c.first_modulus;
  j[std::string(second) + "_modulus"] = c.second_modulus;
  j[std::string(first) + "_phase"] = c.first_phase;
  j[std::string(second) + "_phase"] = c.second_phase;
  return j;
}

void merge(Json& into, const Json& from) {
  for (const auto& [key, value] : from.items()) into[key] = value;
}

double fidelity_or_nan(const BranchOutcome<double>& o) { return o.fidelity ? *o.fidelity : kNaN; }

const BranchOutcome<double>& outcome_for(const std::array<BranchOutcome<double>, 4>& outcomes, BellKind result) {
  for (const auto& o : outcomes) {
    if (o.result == result) return o;
  }
  throw ArgumentError("missing Bell outcome");
}

}  // namespace

CoefficientPair CoefficientPair::normalized() const {
  if (first_modulus < 0 || second_modulus < 0) throw ArgumentError("moduli must be nonnegative");
  const double n = std::sqrt(norm_sq());
  if (!(n > 0)) throw ArgumentError("coefficients must not both be zero");
  CoefficientPair c = *this;
  c.first_modulus /= n;
  c.second_modulus /= n;
  return c;
}

double grid_point(int k, int n, double hi) {
  if (k == n - 1) return hi;
  return hi * static_cast<double>(k) / static_cast<double>(n - 1);
}

Table negativity_sweep(const SweepConfig& config) {
  const CoefficientPair c = config.coefficients.normalized();
  const auto alpha = c.first(), beta = c.second();
  Table t;
  t.columns = {"u_a", "u_b", "N_closed", "N_numeric"};
  t.meta["command"] = "negativity";
  t.meta["family"] = to_string(config.family);
  merge(t.meta, echo("alpha", "beta", c));
  t.meta["grid"] = config.grid_n;
  for (int i = 0; i < config.grid_n; ++i) {
    const AccelMeasure<double> ua(grid_point(i, config.grid_n, quarter_pi<double>));
    for (int j = 0; j < config.grid_n; ++j) {
      const AccelMeasure<double> ub(grid_point(j, config.grid_n, quarter_pi<double>));
      const double closed = negativity_closed_form(config.family, alpha, beta, ua, ub);
      const double numeric = negativity(reduced_rho_traced(config.family, alpha, beta, ua, ub));
      t.rows.push_back({ua.value(), ub.value(), closed, numeric});
    }
  }
  return t;
}

Table fidelity_sweep(const SweepConfig& config) {
  const CoefficientPair c = config.coefficients.normalized();
  const QubitState<double> q(c.first(), c.second());
  const TwoModeFamily family = family_of(config.shared);
  const bool psi = family == TwoModeFamily::Psi;
  const BranchClass first = psi ? BranchClass::One : BranchClass::Three;
  const BranchClass second = psi ? BranchClass::Two : BranchClass::Four;
  const std::string f_first = psi ? "F1" : "F3";
  const std::string f_second = psi ? "F2" : "F4";
  const bool average_only = config.quantity == Quantity::AverageFidelity;

  Table t;
  if (average_only) {
    t.columns = {"u_a", "u_b", "F_avg", "F_avg_oracle"};
  } else {
    t.columns = {"u_a",       "u_b",       "p1",        "p2",        f_first,
                 f_second,    "F_avg",     "p1_oracle", "p2_oracle", f_first + "_oracle",
                 f_second + "_oracle", "F_avg_oracle"};
  }
  t.meta["command"] = "fidelity";
  t.meta["shared"] = to_string(config.shared);
  t.meta["quantity"] = average_only ? "average" : "branch";
  merge(t.meta, echo("gamma", "delta", c));
  t.meta["grid"] = config.grid_n;

  for (int i = 0; i < config.grid_n; ++i) {
    const AccelMeasure<double> ua(grid_point(i, config.grid_n, quarter_pi<double>));
    for (int j = 0; j < config.grid_n; ++j) {
      const AccelMeasure<double> ub(grid_point(j, config.grid_n, quarter_pi<double>));
      const auto outcomes = run_protocol(q, config.shared, ua, ub);
      const double avg = average_fidelity(family, q, ua, ub);
      const double avg_oracle = average_fidelity(outcomes);
      if (average_only) {
        t.rows.push_back({ua.value(), ub.value(), avg, avg_oracle});
        continue;
      }
      const auto p = branch_probabilities(q, ua);
      const auto& psi_branch = outcome_for(outcomes, BellKind::PsiPlus);
      const auto& phi_branch = outcome_for(outcomes, BellKind::PhiPlus);
      t.rows.push_back({ua.value(), ub.value(), p.psi_result, p.phi_result,
                        fidelity_closed_form(family, first, q, ua, ub), fidelity_closed_form(family, second, q, ua, ub),
                        avg, psi_branch.probability, phi_branch.probability, fidelity_or_nan(psi_branch),
                        fidelity_or_nan(phi_branch), avg_oracle});
    }
  }
  return t;
}

Table theta_scan(AccelMeasure<double> u_a, AccelMeasure<double> u_b, int n) {
  if (n < 3 || n > kMaxGrid) throw ArgumentError("theta-scan: n must be in [3, 1025]");
  Table t;
  t.columns = {"theta", "F1", "F2", "F3", "F4", "F1_oracle", "F2_oracle", "F3_oracle", "F4_oracle"};
  t.meta["command"] = "theta-scan";
  t.meta["u_a"] = u_a.value();
  t.meta["u_b"] = u_b.value();
  t.meta["n"] = n;
  for (int k = 0; k < n; ++k) {
    const double theta = grid_point(k, n, kHalfPi);
    const auto q = QubitState<double>::from_theta(theta);
    const auto psi = run_protocol(q, BellKind::PsiPlus, u_a, u_b);
    const auto phi = run_protocol(q, BellKind::PhiPlus, u_a, u_b);
    t.rows.push_back({theta,
                      fidelity_closed_form(TwoModeFamily::Psi, BranchClass::One, q, u_a, u_b),
                      fidelity_closed_form(TwoModeFamily::Psi, BranchClass::Two, q, u_a, u_b),
                      fidelity_closed_form(TwoModeFamily::Phi, BranchClass::Three, q, u_a, u_b),
                      fidelity_closed_form(TwoModeFamily::Phi, BranchClass::Four, q, u_a, u_b),
                      fidelity_or_nan(outcome_for(psi, BellKind::PsiPlus)),
                      fidelity_or_nan(outcome_for(psi, BellKind::PhiPlus)),
                      fidelity_or_nan(outcome_for(phi, BellKind::PsiPlus)),
                      fidelity_or_nan(outcome_for(phi, BellKind::PhiPlus))});
  }
  return t;
}

Json limits_report(const CoefficientPair& alpha_beta, const CoefficientPair& gamma_delta) {
  const CoefficientPair ab = alpha_beta.normalized();
  const CoefficientPair gd = gamma_delta.normalized();
  const auto alpha = ab.first(), beta = ab.second();
  const QubitState<double> q(gd.first(), gd.second());

  Json report = Json::object();
  report["meta"] = Json::object();
  report["meta"]["command"] = "limits";
  merge(report["meta"], echo("alpha", "beta", ab));
  merge(report["meta"], echo("gamma", "delta", gd));

  auto entry = [](double closed, double pipeline) {
    Json e = Json::object();
    e["closed_form"] = closed;
    e["pipeline"] = pipeline;
    e["abs_diff"] = std::abs(closed - pipeline);
    return e;
  };
  auto negativity_entry = [&](TwoModeFamily family, NegativityLimit limit) {
    const auto [ua, ub] = limit_point<double>(limit);
    return entry(negativity_limit(family, alpha, beta, limit),
                 negativity(reduced_rho_traced(family, alpha, beta, ua, ub)));
  };
  const auto inf = AccelMeasure<double>::infinite();

  report["psi_bob_inf"] = negativity_entry(TwoModeFamily::Psi, NegativityLimit::BobInfinite);
  report["psi_both_inf"] = negativity_entry(TwoModeFamily::Psi, NegativityLimit::BothInfinite);
  report["phi_bob_inf"] = negativity_entry(TwoModeFamily::Phi, NegativityLimit::BobInfinite);
  report["phi_both_inf"] = negativity_entry(TwoModeFamily::Phi, NegativityLimit::BothInfinite);
  report["F_psi_inf"] = entry(average_fidelity_limit(TwoModeFamily::Psi, q),
                              average_fidelity(run_protocol(q, BellKind::PsiPlus, inf, inf)));
  report["F_phi_inf"] = entry(average_fidelity_limit(TwoModeFamily::Phi, q),
                              average_fidelity(run_protocol(q, BellKind::PhiPlus, inf, inf)));
  return report;
}

void write_limits_csv(const Json& report, std::ostream& out) {
  out << "quantity,closed_form,pipeline,abs_diff\n";
  for (const auto& [key, value] : report.items()) {
    if (key == "meta") continue;
    out << key << ',' << format_number(value.at("closed_form").get<double>()) << ','
        << format_number(value.at("pipeline").get<double>()) << ','
        << format_number(value.at("abs_diff").get<double>()) << '\n';
  }
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  std::string s(buf);
  if (s == "-0") return "0";
  return s;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_number(row[i]);
    }
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  Json doc = Json::object();
  doc["meta"] = table.meta;
  doc["rows"] = Json::array();
  for (const auto& row : table.rows) {
    Json r = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = row[i];
    doc["rows"].push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace unruh::cli
