#pragma once

#include "unruh/rindler.hpp"
#include "unruh/teleport.hpp"

#include <json.hpp>

#include <cmath>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace unruh::cli {

using Json = nlohmann::ordered_json;

enum class Quantity { Negativity, BranchFidelity, AverageFidelity };
enum class OutputFormat { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

inline constexpr int kMinGrid = 2;
inline constexpr int kMaxGrid = 1025;

/// Two coefficients given as moduli and phases. `normalized()` rescales the
/// moduli to unit norm.
struct CoefficientPair {
  double first_modulus = 1.0 / std::sqrt(2.0);
  double second_modulus = 1.0 / std::sqrt(2.0);
  double first_phase = 0.0;
  double second_phase = 0.0;

  /// |first|^2 + |second|^2 before renormalization.
  double norm_sq() const { return first_modulus * first_modulus + second_modulus * second_modulus; }
  CoefficientPair normalized() const;
  std::complex<double> first() const { return std::polar(first_modulus, first_phase); }
  std::complex<double> second() const { return std::polar(second_modulus, second_phase); }
};

struct SweepConfig {
  Quantity quantity = Quantity::Negativity;
  TwoModeFamily family = TwoModeFamily::Psi;  // negativity sweeps
  BellKind shared = BellKind::PsiPlus;        // fidelity sweeps
  CoefficientPair coefficients;               // (alpha, beta) or (gamma, delta)
  int grid_n = 65;
  OutputFormat format = OutputFormat::Csv;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  Json meta = Json::object();
};

/// k-th of n equally spaced points on [0, hi], with both ends exact.
double grid_point(int k, int n, double hi);

/// Rows (u_a, u_b, N_closed, N_numeric), u_a outer, u_b inner.
Table negativity_sweep(const SweepConfig& config);
/// Rows (u_a, u_b, p1, p2, F.., F_avg) plus oracle columns.
Table fidelity_sweep(const SweepConfig& config);
/// Rows (theta, F1..F4) plus oracle columns, gamma = sin theta, delta = cos theta.
Table theta_scan(AccelMeasure<double> u_a, AccelMeasure<double> u_b, int n);

/// Every limiting value, by closed form and by the generic pipeline at u = pi/4.
Json limits_report(const CoefficientPair& alpha_beta, const CoefficientPair& gamma_delta);
/// The limits report as CSV rows (quantity, closed_form, pipeline, abs_diff).
void write_limits_csv(const Json& report, std::ostream& out);

/// 12 significant digits, no negative zero.
std::string format_number(double value);
void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

/// Full command-line entry point. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unruh::cli
