#include "srlb/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "srlb/errors.hpp"
#include "srlb/linalg.hpp"
#include "srlb/rng.hpp"

namespace srlb {

namespace {

std::vector<double> evaluate_on_cloud(const TestFunction& f, const EndpointCloud& cloud) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(cloud.size()));
  if (cloud.is_quotient()) {
    if (f.domain != FunctionDomain::quotient)
      throw InvalidInputError("group-domain function against a quotient cloud");
    for (const auto& q : cloud.quotient_points) values.push_back(f.eval_quotient(q));
  } else {
    if (f.domain != FunctionDomain::group)
      throw InvalidInputError("quotient-domain function against a group cloud");
    for (const auto& g : cloud.group_points) values.push_back(f.eval_group(g));
  }
  for (double v : values)
    if (!std::isfinite(v))
      throw NumericalDomainError("test function '" + f.id + "' is non-finite on the cloud");
  return values;
}

double xlogx(double a) { return a == 0.0 ? 0.0 : a * std::log(a); }

struct EntropyMoments {
  std::vector<double> a;  // f^2
  std::vector<double> b;  // f^2 log f^2
  double mean_a = 0.0;
  double mean_b = 0.0;
  double value = 0.0;  // plug-in entropy
};

EntropyMoments entropy_moments(const TestFunction& f, const EndpointCloud& cloud) {
  EntropyMoments m;
  const auto values = evaluate_on_cloud(f, cloud);
  m.a.resize(values.size());
  m.b.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    m.a[i] = values[i] * values[i];
    m.b[i] = xlogx(m.a[i]);
  }
  m.mean_a = pairwise_mean(m.a);
  m.mean_b = pairwise_mean(m.b);
  if (!(m.mean_a > 0.0))
    throw DegenerateFunctionError("test function '" + f.id + "' has zero mass on the cloud");
  m.value = m.mean_b - m.mean_a * std::log(m.mean_a);
  return m;
}

// Sample covariance of two centered columns, divisor n-1.
double sample_cov(const std::vector<double>& xs, double mx, const std::vector<double>& ys,
                  double my) {
  std::vector<double> prod(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) prod[i] = (xs[i] - mx) * (ys[i] - my);
  return pairwise_sum(prod) / (static_cast<double>(xs.size()) - 1.0);
}

std::vector<double> energy_summands(const TestFunction& f, const EndpointCloud& cloud,
                                    double fd_eps) {
  std::vector<double> e;
  e.reserve(static_cast<std::size_t>(cloud.size()));

  if (!cloud.is_quotient()) {
    if (f.domain != FunctionDomain::group)
      throw InvalidInputError("quotient-domain function against a group cloud");
    const auto& model = cloud.config.group_model();
    const int frame = model.frame_size();
    for (const auto& g : cloud.group_points) {
      double s = 0.0;
      for (int i = 0; i < frame; ++i) {
        const double d = horizontal_derivative(model, f, g, i, fd_eps);
        s += d * d;
      }
      e.push_back(s);
    }
  } else {
    if (f.domain != FunctionDomain::quotient)
      throw InvalidInputError("group-domain function against a quotient cloud");
    const auto& qm = cloud.config.quotient_model();
    if (cloud.has_group_provenance()) {
      // Projected cloud: differentiate the lift at the retained preimages.
      const TestFunction lifted = lift_to_group(f, qm);
      const int frame = qm.base.frame_size();
      for (const auto& g : cloud.group_points) {
        double s = 0.0;
        for (int i = 0; i < frame; ++i) {
          const double d = horizontal_derivative(qm.base, lifted, g, i, fd_eps);
          s += d * d;
        }
        e.push_back(s);
      }
    } else {
      for (const auto& q : cloud.quotient_points) {
        double s = 0.0;
        for (const double d : induced_frame_derivatives(qm, f, q, fd_eps)) s += d * d;
        e.push_back(s);
      }
    }
  }

  for (double v : e)
    if (!std::isfinite(v))
      throw NumericalDomainError("energy of '" + f.id + "' is non-finite on the cloud");
  return e;
}

EstimateCI mean_with_clt_se(const std::vector<double>& xs) {
  const double m = pairwise_mean(xs);
  const double var = sample_cov(xs, m, xs, m);
  return make_estimate(m, std::sqrt(var / static_cast<double>(xs.size())),
                       static_cast<std::int64_t>(xs.size()));
}

}  // namespace

EstimateCI estimate_entropy(const TestFunction& f, const EndpointCloud& cloud) {
  const auto m = entropy_moments(f, cloud);
  const double n = static_cast<double>(m.a.size());
  const double L = std::log(m.mean_a) + 1.0;
  const double var_b = sample_cov(m.b, m.mean_b, m.b, m.mean_b);
  const double var_a = sample_cov(m.a, m.mean_a, m.a, m.mean_a);
  const double cov_ab = sample_cov(m.a, m.mean_a, m.b, m.mean_b);
  const double var = var_b - 2.0 * L * cov_ab + L * L * var_a;
  const double se = std::sqrt(std::max(var, 0.0) / n);
  return make_estimate(m.value, se, static_cast<std::int64_t>(m.a.size()));
}

EstimateCI estimate_energy(const TestFunction& f, const EndpointCloud& cloud,
                           double fd_eps) {
  return mean_with_clt_se(energy_summands(f, cloud, fd_eps));
}

LsiReport lsi_ratio(const TestFunction& f, const EndpointCloud& cloud,
                    const LsiOptions& options) {
  LsiReport report;
  const auto m = entropy_moments(f, cloud);
  const auto e = energy_summands(f, cloud, options.fd_eps);
  const double n = static_cast<double>(m.a.size());

  const double mean_e = pairwise_mean(e);
  const double L = std::log(m.mean_a) + 1.0;

  const double var_a = sample_cov(m.a, m.mean_a, m.a, m.mean_a);
  const double var_b = sample_cov(m.b, m.mean_b, m.b, m.mean_b);
  const double var_e = sample_cov(e, mean_e, e, mean_e);
  const double cov_ab = sample_cov(m.a, m.mean_a, m.b, m.mean_b);
  const double cov_ae = sample_cov(m.a, m.mean_a, e, mean_e);
  const double cov_be = sample_cov(m.b, m.mean_b, e, mean_e);

  const double ent_var = var_b - 2.0 * L * cov_ab + L * L * var_a;
  report.entropy = make_estimate(m.value, std::sqrt(std::max(ent_var, 0.0) / n),
                                 static_cast<std::int64_t>(m.a.size()));
  report.energy = make_estimate(mean_e, std::sqrt(std::max(var_e, 0.0) / n),
                                static_cast<std::int64_t>(e.size()));

  if (!(report.energy.value > 3.0 * report.energy.std_error))
    throw IndeterminateRatioError("energy of '" + f.id +
                                  "' is statistically indistinguishable from zero");

  const double ratio = report.entropy.value / report.energy.value;
  // Delta method for (mb - ma log ma)/me over the joint moments (b, a, e).
  const double gb = 1.0 / mean_e;
  const double ga = -L / mean_e;
  const double ge = -ratio / mean_e;
  const double ratio_var = gb * gb * var_b + ga * ga * var_a + ge * ge * var_e +
                           2.0 * gb * ga * cov_ab + 2.0 * gb * ge * cov_be +
                           2.0 * ga * ge * cov_ae;
  report.ratio = make_estimate(ratio, std::sqrt(std::max(ratio_var, 0.0) / n),
                               static_cast<std::int64_t>(m.a.size()));

  // Normalized form: entropy of a/mean(a), rescaled back by mean(a).
  {
    std::vector<double> nb(m.a.size());
    for (std::size_t i = 0; i < m.a.size(); ++i) nb[i] = xlogx(m.a[i] / m.mean_a);
    report.normalized_ratio = m.mean_a * pairwise_mean(nb) / mean_e;
  }

  if (options.constant) {
    const double c = *options.constant;
    // SE of entropy - c * energy.
    const double hv = var_b + L * L * var_a + c * c * var_e - 2.0 * L * cov_ab -
                      2.0 * c * cov_be + 2.0 * L * c * cov_ae;
    const double se = std::sqrt(std::max(hv, 0.0) / n);
    report.constant_bound_satisfied =
        report.entropy.value <= c * report.energy.value + 3.0 * se;
  }

  if (options.bootstrap) {
    std::vector<double> ratios;
    ratios.reserve(static_cast<std::size_t>(options.bootstrap_resamples));
    const std::size_t sz = m.a.size();
    std::vector<double> ra(sz), rb(sz), re(sz);
    for (int rep = 0; rep < options.bootstrap_resamples; ++rep) {
      PathStream stream(options.bootstrap_seed, static_cast<std::uint64_t>(rep));
      for (std::size_t i = 0; i < sz; ++i) {
        const auto idx = static_cast<std::size_t>(stream.next_uniform() * static_cast<double>(sz));
        const auto j = idx >= sz ? sz - 1 : idx;
        ra[i] = m.a[j];
        rb[i] = m.b[j];
        re[i] = e[j];
      }
      const double ma = pairwise_mean(ra);
      const double me = pairwise_mean(re);
      if (!(ma > 0.0) || !(me > 0.0)) continue;
      ratios.push_back((pairwise_mean(rb) - ma * std::log(ma)) / me);
    }
    if (ratios.size() >= 40) {
      std::sort(ratios.begin(), ratios.end());
      const auto lo = static_cast<std::size_t>(0.025 * static_cast<double>(ratios.size()));
      const auto hi = static_cast<std::size_t>(0.975 * static_cast<double>(ratios.size()));
      report.bootstrap_ci = {ratios[lo], ratios[std::min(hi, ratios.size() - 1)]};
    }
  }

  return report;
}

TransferReport verify_transfer(const TestFunction& f_on_quotient,
                               const EndpointCloud& group_cloud,
                               const EndpointCloud& quotient_cloud,
                               const QuotientModel& qm, double fd_eps) {
  if (group_cloud.is_quotient())
    throw InvalidComparisonError("verify_transfer: first cloud must be a group cloud");
  if (!quotient_cloud.is_quotient())
    throw InvalidComparisonError("verify_transfer: second cloud must be a quotient cloud");
  if (group_cloud.config.t != quotient_cloud.config.t)
    throw InvalidComparisonError("verify_transfer: clouds have different terminal times");
  if (group_cloud.config.group_model().name() != qm.base.name())
    throw InvalidComparisonError("verify_transfer: group cloud does not match the base group");
  if (quotient_cloud.config.quotient_model().kind != qm.kind)
    throw InvalidComparisonError("verify_transfer: quotient cloud has a different kind");

  const TestFunction lifted = lift_to_group(f_on_quotient, qm);

  TransferReport r;
  r.entropy_group = estimate_entropy(lifted, group_cloud);
  r.entropy_quotient = estimate_entropy(f_on_quotient, quotient_cloud);
  r.energy_group = estimate_energy(lifted, group_cloud, fd_eps);
  r.energy_quotient = estimate_energy(f_on_quotient, quotient_cloud, fd_eps);

  r.entropy_diff = std::abs(r.entropy_group.value - r.entropy_quotient.value);
  r.entropy_combined_se = std::hypot(r.entropy_group.std_error, r.entropy_quotient.std_error);
  r.energy_diff = std::abs(r.energy_group.value - r.energy_quotient.value);
  r.energy_combined_se = std::hypot(r.energy_group.std_error, r.energy_quotient.std_error);

  r.entropy_pass = r.entropy_diff < 3.0 * r.entropy_combined_se;
  r.energy_pass = r.energy_diff < 3.0 * r.energy_combined_se;
  // A constant function makes both sides exactly zero with zero SE.
  if (r.entropy_diff == 0.0) r.entropy_pass = true;
  if (r.energy_diff == 0.0) r.energy_pass = true;
  r.pass = r.entropy_pass && r.energy_pass;
  return r;
}

namespace {

nlohmann::ordered_json estimate_json(const EstimateCI& e) {
  return {{"value", e.value},
          {"std_error", e.std_error},
          {"ci", {e.ci_low, e.ci_high}},
          {"n", e.n}};
}

nlohmann::ordered_json run_header(const std::string& model_name, const SimConfig& cfg,
                                  const std::string& function_id) {
  return {{"model", model_name},
          {"t", cfg.t},
          {"h", cfg.h},
          {"n_paths", cfg.n_paths},
          {"seed", cfg.seed},
          {"function_id", function_id}};
}

}  // namespace

std::string lsi_report_json(const std::string& model_name, const SimConfig& cfg,
                            const std::string& function_id, const LsiReport& report) {
  nlohmann::ordered_json j = run_header(model_name, cfg, function_id);
  j["entropy"] = estimate_json(report.entropy);
  j["energy"] = estimate_json(report.energy);
  j["ratio"] = estimate_json(report.ratio);
  j["normalized_ratio"] = report.normalized_ratio;
  j["ci"] = {report.ratio.ci_low, report.ratio.ci_high};
  if (report.bootstrap_ci)
    j["bootstrap_ci"] = {report.bootstrap_ci->first, report.bootstrap_ci->second};
  j["pass"] = report.constant_bound_satisfied ? *report.constant_bound_satisfied : true;
  return j.dump(2);
}

std::string transfer_report_json(const std::string& model_name, const SimConfig& cfg,
                                 const std::string& function_id,
                                 const TransferReport& report) {
  nlohmann::ordered_json j = run_header(model_name, cfg, function_id);
  j["entropy"] = {{"group", estimate_json(report.entropy_group)},
                  {"quotient", estimate_json(report.entropy_quotient)},
                  {"abs_diff", report.entropy_diff},
                  {"combined_se", report.entropy_combined_se},
                  {"pass", report.entropy_pass}};
  j["energy"] = {{"group", estimate_json(report.energy_group)},
                 {"quotient", estimate_json(report.energy_quotient)},
                 {"abs_diff", report.energy_diff},
                 {"combined_se", report.energy_combined_se},
                 {"pass", report.energy_pass}};
  j["pass"] = report.pass;
  return j.dump(2);
}

}  // namespace srlb
