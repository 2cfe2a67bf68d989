#include "unruh/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>

namespace unruh::cli {

namespace {

void add_coefficients(CLI::App* cmd, CoefficientPair& pair, const std::string& first, const std::string& second) {
  cmd->add_option("--" + first, pair.first_modulus, "modulus of " + first)->check(CLI::NonNegativeNumber);
  cmd->add_option("--" + second, pair.second_modulus, "modulus of " + second)->check(CLI::NonNegativeNumber);
  cmd->add_option("--" + first + "-phase", pair.first_phase, "phase of " + first + " (radians)");
  cmd->add_option("--" + second + "-phase", pair.second_phase, "phase of " + second + " (radians)");
}

/// Renormalizes the moduli, warning when they were off by more than 1e-9.
CoefficientPair checked(const CoefficientPair& pair, const std::string& names, std::ostream& err) {
  const CoefficientPair n = pair.normalized();
  if (std::abs(pair.norm_sq() - 1.0) > 1e-9) {
    err << "warning: " << names << " moduli squared sum to " << format_number(pair.norm_sq())
        << "; renormalized\n";
  }
  return n;
}

/// Value of --ratio-a / --ratio-b: a nonnegative number, or "inf" for an inertial observer.
FrequencyRatio<double> parse_ratio(const std::string& text) {
  if (text == "inf") return FrequencyRatio<double>(std::numeric_limits<double>::infinity());
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ArgumentError("invalid frequency ratio '" + text + "'");
  }
  if (used != text.size()) throw ArgumentError("invalid frequency ratio '" + text + "'");
  return FrequencyRatio<double>(x);
}

AccelMeasure<double> resolve_accel(const std::optional<double>& u, const std::optional<std::string>& ratio) {
  if (ratio) return u_from_ratio(parse_ratio(*ratio));
  if (u) return AccelMeasure<double>(*u);
  return AccelMeasure<double>::infinite();
}

OutputFormat parse_format(const std::string& s) { return s == "json" ? OutputFormat::Json : OutputFormat::Csv; }

const std::map<std::string, BellKind> kSharedNames = {
    {"psi+", BellKind::PsiPlus}, {"psi-", BellKind::PsiMinus}, {"phi+", BellKind::PhiPlus}, {"phi-", BellKind::PhiMinus}};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement and teleportation fidelity of Dirac modes seen by accelerated observers"};
  app.name("unruh");
  app.require_subcommand(1);

  std::string format = "csv";
  std::string out_path;
  auto add_common = [&](CLI::App* cmd, const std::string& default_format) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_str(default_format);
    cmd->add_option("--out", out_path, "output file (default: standard output)");
  };

  SweepConfig neg_config;
  std::string family = "psi";
  auto* neg = app.add_subcommand("negativity", "negativity over the (u_a, u_b) grid");
  neg->add_option("--family", family, "psi or phi")->check(CLI::IsMember({"psi", "phi"}));
  add_coefficients(neg, neg_config.coefficients, "alpha", "beta");
  neg->add_option("--grid", neg_config.grid_n, "grid points per axis")->check(CLI::Range(kMinGrid, kMaxGrid));
  add_common(neg, "csv");

  SweepConfig fid_config;
  fid_config.quantity = Quantity::BranchFidelity;
  std::string shared = "psi+";
  std::string quantity = "branch";
  auto* fid = app.add_subcommand("fidelity", "teleportation fidelities over the (u_a, u_b) grid");
  fid->add_option("--shared", shared, "shared Bell state: psi+, psi-, phi+, phi-")
      ->check(CLI::IsMember({"psi+", "psi-", "phi+", "phi-"}));
  fid->add_option("--quantity", quantity, "branch (all columns) or average")
      ->check(CLI::IsMember({"branch", "average"}));
  add_coefficients(fid, fid_config.coefficients, "gamma", "delta");
  fid->add_option("--grid", fid_config.grid_n, "grid points per axis")->check(CLI::Range(kMinGrid, kMaxGrid));
  add_common(fid, "csv");

  CoefficientPair lim_ab, lim_gd;
  auto* lim = app.add_subcommand("limits", "infinite-acceleration limits, closed form vs pipeline");
  add_coefficients(lim, lim_ab, "alpha", "beta");
  add_coefficients(lim, lim_gd, "gamma", "delta");
  add_common(lim, "json");

  std::optional<double> u_a, u_b;
  std::optional<std::string> ratio_a, ratio_b;
  int theta_n = 65;
  auto* theta = app.add_subcommand("theta-scan", "branch fidelities vs theta, gamma = sin(theta), delta = cos(theta)");
  auto* ua_opt = theta->add_option("--u-a", u_a, "Alice's acceleration measure in [0, pi/4] (default pi/4)");
  auto* ub_opt = theta->add_option("--u-b", u_b, "Bob's acceleration measure in [0, pi/4] (default pi/4)");
  theta->add_option("--ratio-a", ratio_a, "Alice's omega/a >= 0, or inf")->excludes(ua_opt);
  theta->add_option("--ratio-b", ratio_b, "Bob's omega/a >= 0, or inf")->excludes(ub_opt);
  theta->add_option("--n", theta_n, "number of theta points")->check(CLI::Range(3, kMaxGrid));
  add_common(theta, "csv");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (lim->parsed() && !lim->get_option("--format")->count()) format = "json";

  try {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!out_path.empty()) {
      file.open(out_path, std::ios::binary | std::ios::trunc);
      if (!file) throw ArgumentError("cannot open output file '" + out_path + "'");
      sink = &file;
    }
    const OutputFormat fmt = parse_format(format);

    auto emit = [&](const Table& table) {
      if (fmt == OutputFormat::Json) {
        write_json(table, *sink);
      } else {
        write_csv(table, *sink);
      }
    };

    if (neg->parsed()) {
      neg_config.family = family == "psi" ? TwoModeFamily::Psi : TwoModeFamily::Phi;
      neg_config.coefficients = checked(neg_config.coefficients, "alpha/beta", err);
      neg_config.format = fmt;
      emit(negativity_sweep(neg_config));
    } else if (fid->parsed()) {
      fid_config.shared = kSharedNames.at(shared);
      fid_config.quantity = quantity == "average" ? Quantity::AverageFidelity : Quantity::BranchFidelity;
      fid_config.coefficients = checked(fid_config.coefficients, "gamma/delta", err);
      fid_config.format = fmt;
      emit(fidelity_sweep(fid_config));
    } else if (lim->parsed()) {
      const Json report = limits_report(checked(lim_ab, "alpha/beta", err), checked(lim_gd, "gamma/delta", err));
      if (fmt == OutputFormat::Json) {
        *sink << report.dump(2) << '\n';
      } else {
        write_limits_csv(report, *sink);
      }
    } else if (theta->parsed()) {
      emit(theta_scan(resolve_accel(u_a, ratio_a), resolve_accel(u_b, ratio_b), theta_n));
    }
    sink->flush();
    if (!*sink) throw std::runtime_error("failed writing output");
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace unruh::cli
