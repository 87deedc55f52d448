#pragma once

#include <optional>
#include <string>
#include <utility>

#include "srlb/diffusion.hpp"
#include "srlb/stats.hpp"
#include "srlb/test_functions.hpp"

namespace srlb {

/// Plug-in entropy of f^2 against the empirical cloud measure:
/// mean(f^2 log f^2) - mean(f^2) log mean(f^2), with 0 log 0 = 0.
/// Standard error by the delta method over the joint moments.
EstimateCI estimate_entropy(const TestFunction& f, const EndpointCloud& cloud);

/// Mean over the cloud of the squared horizontal gradient of f. Quotient
/// clouds with projected provenance differentiate through the lift; intrinsic
/// clouds (real_line, grushin) use the induced coordinate frame.
EstimateCI estimate_energy(const TestFunction& f, const EndpointCloud& cloud,
                           double fd_eps = kDefaultFdEps);

struct LsiOptions {
  std::optional<double> constant;  // check entropy <= constant * energy + 3 SE
  bool bootstrap = false;
  int bootstrap_resamples = 1000;
  std::uint64_t bootstrap_seed = 0x5eedb007;
  double fd_eps = kDefaultFdEps;
};

struct LsiReport {
  EstimateCI entropy;
  EstimateCI energy;
  EstimateCI ratio;  // entropy / energy, delta-method CI
  /// Ratio with the entropy of the mass-normalized f^2/mean(f^2); equal to
  /// `ratio` in exact arithmetic and exactly invariant under f -> c f.
  double normalized_ratio = 0.0;
  std::optional<std::pair<double, double>> bootstrap_ci;
  std::optional<bool> constant_bound_satisfied;
};

LsiReport lsi_ratio(const TestFunction& f, const EndpointCloud& cloud,
                    const LsiOptions& options = {});

/// Statistical check of the transfer identities: entropy and energy of f on
/// the quotient against those of the lift f∘pi on an independent group cloud.
struct TransferReport {
  EstimateCI entropy_group;
  EstimateCI entropy_quotient;
  EstimateCI energy_group;
  EstimateCI energy_quotient;
  double entropy_diff = 0.0;
  double entropy_combined_se = 0.0;
  double energy_diff = 0.0;
  double energy_combined_se = 0.0;
  bool entropy_pass = false;
  bool energy_pass = false;
  bool pass = false;
};

TransferReport verify_transfer(const TestFunction& f_on_quotient,
                               const EndpointCloud& group_cloud,
                               const EndpointCloud& quotient_cloud,
                               const QuotientModel& qm,
                               double fd_eps = kDefaultFdEps);

/// One-run JSON report (deterministic field order and formatting).
std::string lsi_report_json(const std::string& model_name, const SimConfig& cfg,
                            const std::string& function_id, const LsiReport& report);

std::string transfer_report_json(const std::string& model_name, const SimConfig& cfg,
                                 const std::string& function_id,
                                 const TransferReport& report);

}  // namespace srlb
