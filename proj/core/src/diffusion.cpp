#include "srlb/diffusion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <ostream>
#include <thread>

#include "srlb/errors.hpp"
#include "srlb/rng.hpp"

namespace srlb {

std::int64_t SimConfig::steps() const {
  const auto k = static_cast<std::int64_t>(std::llround(t / h));
  return k < 1 ? 1 : k;
}

void SimConfig::validate() const {
  if (!(t > 0.0)) throw InvalidInputError("SimConfig: t must be positive");
  if (!(h > 0.0)) throw InvalidInputError("SimConfig: h must be positive");
  if (h > t) throw InvalidInputError("SimConfig: h must not exceed t");
  if (n_paths < 1) throw InvalidInputError("SimConfig: n_paths must be >= 1");
}

const GroupModel& SimConfig::group_model() const {
  const auto* m = std::get_if<GroupModel>(&model);
  if (!m) throw InvalidInputError("SimConfig: expected a group model");
  return *m;
}

const QuotientModel& SimConfig::quotient_model() const {
  const auto* m = std::get_if<QuotientModel>(&model);
  if (!m) throw InvalidInputError("SimConfig: expected a quotient model");
  return *m;
}

std::int64_t EndpointCloud::size() const {
  return is_quotient() ? static_cast<std::int64_t>(quotient_points.size())
                       : static_cast<std::int64_t>(group_points.size());
}

int EndpointCloud::coord_count() const {
  if (is_quotient()) {
    return quotient_points.empty() ? 0 : static_cast<int>(quotient_points.front().coords.size());
  }
  return flat_coord_count(config.group_model());
}

std::vector<double> EndpointCloud::flat_row(std::int64_t i) const {
  if (is_quotient()) return quotient_points[static_cast<std::size_t>(i)].coords;
  return flatten(config.group_model(), group_points[static_cast<std::size_t>(i)]);
}

std::vector<double> EndpointCloud::coordinate_column(int c) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(size()));
  if (is_quotient()) {
    for (const auto& q : quotient_points) out.push_back(q.coords.at(static_cast<std::size_t>(c)));
  } else {
    const auto& model = config.group_model();
    for (const auto& g : group_points) out.push_back(flatten(model, g).at(static_cast<std::size_t>(c)));
  }
  return out;
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SRLB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Runs body(path_index) for every path, statically chunked. Worker count
// never affects which stream a path uses, so results are scheduling-proof.
template <typename Body>
void for_each_path(std::int64_t n_paths, int threads, const Body& body) {
  if (threads <= 1 || n_paths < 2) {
    for (std::int64_t i = 0; i < n_paths; ++i) body(i);
    return;
  }
  const int workers = static_cast<int>(std::min<std::int64_t>(threads, n_paths));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::int64_t i = w; i < n_paths; i += workers) body(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

GroupPoint run_group_path(const GroupModel& model, const SimConfig& cfg,
                          std::int64_t path, std::vector<GroupPoint>* trace) {
  PathStream stream(cfg.seed, static_cast<std::uint64_t>(path));
  const std::int64_t steps = cfg.steps();
  const double root_h = std::sqrt(cfg.h);
  const int frame = model.frame_size();
  std::vector<double> coeffs(static_cast<std::size_t>(frame));
  GroupPoint g = model.identity();
  if (trace) trace->push_back(g);
  for (std::int64_t s = 0; s < steps; ++s) {
    for (int i = 0; i < frame; ++i) coeffs[static_cast<std::size_t>(i)] = root_h * stream.next_normal();
    g = exp_step(model, g, coeffs);
    if (trace) trace->push_back(g);
  }
  if (!all_finite(g))
    throw PathBlowupError("path " + std::to_string(path) + " left the finite domain");
  return g;
}

}  // namespace

EndpointCloud simulate_group_endpoints(const SimConfig& cfg) {
  cfg.validate();
  const auto& model = cfg.group_model();
  const auto t0 = std::chrono::steady_clock::now();

  EndpointCloud cloud;
  cloud.config = cfg;
  cloud.group_points.resize(static_cast<std::size_t>(cfg.n_paths));
  if (cfg.store_full_paths) cloud.full_paths.resize(static_cast<std::size_t>(cfg.n_paths));

  const int threads = resolve_thread_count(cfg.threads);
  for_each_path(cfg.n_paths, threads, [&](std::int64_t i) {
    auto* trace = cfg.store_full_paths ? &cloud.full_paths[static_cast<std::size_t>(i)] : nullptr;
    cloud.group_points[static_cast<std::size_t>(i)] = run_group_path(model, cfg, i, trace);
  });

  cloud.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cloud;
}

EndpointCloud simulate_quotient_endpoints(const SimConfig& cfg, SimMode mode) {
  cfg.validate();
  const auto& qm = cfg.quotient_model();
  const auto t0 = std::chrono::steady_clock::now();

  EndpointCloud cloud;
  cloud.config = cfg;
  cloud.mode = mode;

  if (mode == SimMode::projected) {
    SimConfig base_cfg = cfg;
    base_cfg.model = qm.base;
    EndpointCloud base = simulate_group_endpoints(base_cfg);
    cloud.group_points = std::move(base.group_points);
    cloud.full_paths = std::move(base.full_paths);
    cloud.quotient_points.resize(static_cast<std::size_t>(cfg.n_paths));
    for (std::int64_t i = 0; i < cfg.n_paths; ++i)
      cloud.quotient_points[static_cast<std::size_t>(i)] =
          project(qm, cloud.group_points[static_cast<std::size_t>(i)]);
  } else {
    if (!qm.intrinsic_supported())
      throw UnsupportedModeError("intrinsic simulation is not available for " +
                                 to_string(qm.kind));
    cloud.quotient_points.resize(static_cast<std::size_t>(cfg.n_paths));
    const std::int64_t steps = cfg.steps();
    const double root_h = std::sqrt(cfg.h);
    const bool grushin = qm.kind == QuotientKind::grushin;
    const int threads = resolve_thread_count(cfg.threads);
    for_each_path(cfg.n_paths, threads, [&](std::int64_t i) {
      PathStream stream(cfg.seed, static_cast<std::uint64_t>(i));
      double u = 0.0, v = 0.0;
      for (std::int64_t s = 0; s < steps; ++s) {
        const double du = root_h * stream.next_normal();
        if (grushin) {
          const double dw = root_h * stream.next_normal();
          v += u * dw;  // Euler-Maruyama; Ito and Stratonovich agree here
        }
        u += du;
      }
      if (!std::isfinite(u) || !std::isfinite(v))
        throw PathBlowupError("path " + std::to_string(i) + " left the finite domain");
      auto& q = cloud.quotient_points[static_cast<std::size_t>(i)];
      q.coords = grushin ? std::vector<double>{u, v} : std::vector<double>{u};
    });
  }

  cloud.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cloud;
}

void write_csv(const EndpointCloud& cloud, std::ostream& out) {
  const int cols = cloud.coord_count();
  out << "path_index";
  for (int c = 0; c < cols; ++c) out << ",c" << c;
  out << "\n";
  char buf[32];
  for (std::int64_t i = 0; i < cloud.size(); ++i) {
    out << i;
    for (const double v : cloud.flat_row(i)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << "\n";
  }
}

void write_binary(const EndpointCloud& cloud, std::ostream& out) {
  out.write("SRLB1", 5);
  const std::uint32_t rows = static_cast<std::uint32_t>(cloud.size());
  const std::uint32_t cols = static_cast<std::uint32_t>(cloud.coord_count());
  auto put_u32 = [&](std::uint32_t v) {
    // little-endian, independent of host order
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
  };
  put_u32(rows);
  put_u32(cols);
  for (std::int64_t i = 0; i < cloud.size(); ++i) {
    for (const double v : cloud.flat_row(i)) {
      std::uint64_t bits;
      static_assert(sizeof bits == sizeof v);
      std::memcpy(&bits, &v, sizeof bits);
      char b[8];
      for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((bits >> (8 * k)) & 0xff);
      out.write(b, 8);
    }
  }
}

}  // namespace srlb
