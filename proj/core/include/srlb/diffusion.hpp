#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "srlb/quotients.hpp"

namespace srlb {

enum class SimMode { projected, intrinsic };

/// Simulation request: terminal time, step size, path count, seed, model.
struct SimConfig {
  double t = 1.0;
  double h = 1e-3;
  std::int64_t n_paths = 1;
  std::uint64_t seed = 0;
  std::variant<GroupModel, QuotientModel> model;
  int threads = 0;               // 0: SRLB_THREADS env var, else hardware
  bool store_full_paths = false; // keep whole trajectories (memory!)

  std::int64_t steps() const;
  void validate() const;
  bool is_group_model() const { return std::holds_alternative<GroupModel>(model); }
  const GroupModel& group_model() const;
  const QuotientModel& quotient_model() const;
};

/// i.i.d. samples of the time-t endpoint. For projected quotient clouds the
/// group endpoints are retained so observables on the quotient can be
/// differentiated through the lift.
struct EndpointCloud {
  SimConfig config;
  std::optional<SimMode> mode;                  // set for quotient clouds
  std::vector<GroupPoint> group_points;
  std::vector<QuotientPoint> quotient_points;
  std::vector<std::vector<GroupPoint>> full_paths;
  double wall_time_seconds = 0.0;

  bool is_quotient() const { return !quotient_points.empty(); }
  bool has_group_provenance() const { return !group_points.empty(); }
  std::int64_t size() const;

  int coord_count() const;
  /// Column c of the flat coordinate matrix (marginal samples).
  std::vector<double> coordinate_column(int c) const;
  std::vector<double> flat_row(std::int64_t i) const;
};

/// Horizontal Brownian motion run to time t: per step draw one standard
/// normal per frame direction and right-multiply by exp(sqrt(h) * sum xi_i X_i).
/// Weak order 1 for the diffusion generated by half the sub-Laplacian.
EndpointCloud simulate_group_endpoints(const SimConfig& cfg);

/// projected: simulate on the base group, then push endpoints through the
/// quotient map. intrinsic (real_line, grushin only): Euler-Maruyama in the
/// quotient coordinates (dU = dB; grushin adds dV = U dB').
EndpointCloud simulate_quotient_endpoints(const SimConfig& cfg, SimMode mode);

int resolve_thread_count(int requested);

/// CSV: header "path_index,c0,c1,...", one row per path.
void write_csv(const EndpointCloud& cloud, std::ostream& out);
/// Binary: magic "SRLB1", then u32 rows, u32 cols, row-major little-endian
/// IEEE f64 coordinates.
void write_binary(const EndpointCloud& cloud, std::ostream& out);

}  // namespace srlb
