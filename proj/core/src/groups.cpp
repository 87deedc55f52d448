#include "srlb/groups.hpp"

#include <cmath>

#include "srlb/errors.hpp"

namespace srlb {

namespace {

const std::vector<HeisenbergPoint>& heis_factors(const GroupPoint& g) {
  const auto* p = std::get_if<std::vector<HeisenbergPoint>>(&g);
  if (!p) throw InvalidInputError("expected a Heisenberg-type point");
  return *p;
}

const std::vector<SU2Point>& su2_factors(const GroupPoint& g) {
  const auto* p = std::get_if<std::vector<SU2Point>>(&g);
  if (!p) throw InvalidInputError("expected an SU(2)-type point");
  return *p;
}

void check_point(const GroupModel& model, const GroupPoint& g) {
  if (model.heisenberg_like()) {
    if (static_cast<int>(heis_factors(g).size()) != model.factors)
      throw InvalidInputError("point factor count does not match model");
  } else {
    if (static_cast<int>(su2_factors(g).size()) != model.factors)
      throw InvalidInputError("point factor count does not match model");
  }
}

}  // namespace

HeisenbergPoint heis_multiply(const HeisenbergPoint& a, const HeisenbergPoint& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z + 0.5 * (a.x * b.y - b.x * a.y)};
}

HeisenbergPoint heis_inverse(const HeisenbergPoint& a) { return {-a.x, -a.y, -a.z}; }

double su2_norm(const SU2Point& a) {
  return std::sqrt(std::norm(a.z1) + std::norm(a.z2));
}

SU2Point su2_normalize(const SU2Point& a) {
  const double n = su2_norm(a);
  if (!(n > 0.0) || !std::isfinite(n))
    throw NumericalDomainError("su2_normalize: degenerate point");
  return {a.z1 / n, a.z2 / n};
}

SU2Point su2_multiply(const SU2Point& a, const SU2Point& b) {
  // Row 1 of the 2x2 product; row 2 is determined by unitarity.
  SU2Point r{a.z1 * b.z1 - a.z2 * std::conj(b.z2),
             a.z1 * b.z2 + a.z2 * std::conj(b.z1)};
  return su2_normalize(r);
}

SU2Point su2_inverse(const SU2Point& a) { return {std::conj(a.z1), -a.z2}; }

SU2Point su2_exp(double a, double b, double c) {
  const double r = std::sqrt(a * a + b * b + c * c);
  double s;  // sin(r)/r
  if (r < 1e-8) {
    s = 1.0 - r * r / 6.0;
  } else {
    s = std::sin(r) / r;
  }
  const double cr = std::cos(r);
  return {{cr, c * s}, {a * s, b * s}};
}

GroupPoint GroupModel::identity() const {
  if (heisenberg_like())
    return std::vector<HeisenbergPoint>(static_cast<std::size_t>(factors));
  return std::vector<SU2Point>(static_cast<std::size_t>(factors));
}

std::string GroupModel::name() const {
  switch (kind) {
    case GroupKind::heisenberg: return "heisenberg";
    case GroupKind::heisenberg_product: return "heis_product:" + std::to_string(factors);
    case GroupKind::su2: return "su2";
    case GroupKind::su2_product: return "su2_product:" + std::to_string(factors);
  }
  return "?";
}

namespace {

GroupModel make_model(GroupKind kind, int factors, const StructureConstants& factor_sc) {
  if (factors < 1) throw InvalidInputError("model needs at least one factor");
  GroupModel m{kind, factors, {}, product_algebra(factor_sc, factors)};
  std::vector<AlgebraVector> gens;
  std::vector<std::string> labels;
  const int dim = 3 * factors;
  for (int k = 0; k < factors; ++k) {
    gens.push_back(basis_vector(dim, 3 * k));
    gens.push_back(basis_vector(dim, 3 * k + 1));
    const std::string suffix = factors > 1 ? std::to_string(k + 1) : "";
    labels.push_back("X" + suffix);
    labels.push_back("Y" + suffix);
  }
  m.frame = make_frame(std::move(gens), std::move(labels));
  const auto flag = hormander_flag(m.frame, m.sc, 4);
  if (!flag.satisfied_at)
    throw InvalidInputError("model frame does not bracket-generate the algebra");
  return m;
}

}  // namespace

GroupModel make_heisenberg_model(int factors) {
  return make_model(factors == 1 ? GroupKind::heisenberg : GroupKind::heisenberg_product,
                    factors, heisenberg_algebra());
}

GroupModel make_su2_model(int factors) {
  return make_model(factors == 1 ? GroupKind::su2 : GroupKind::su2_product, factors,
                    su2_algebra());
}

GroupPoint multiply(const GroupModel& model, const GroupPoint& g, const GroupPoint& h) {
  check_point(model, g);
  check_point(model, h);
  if (model.heisenberg_like()) {
    const auto& a = heis_factors(g);
    const auto& b = heis_factors(h);
    std::vector<HeisenbergPoint> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = heis_multiply(a[i], b[i]);
    return out;
  }
  const auto& a = su2_factors(g);
  const auto& b = su2_factors(h);
  std::vector<SU2Point> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = su2_multiply(a[i], b[i]);
  return out;
}

GroupPoint inverse(const GroupModel& model, const GroupPoint& g) {
  check_point(model, g);
  if (model.heisenberg_like()) {
    const auto& a = heis_factors(g);
    std::vector<HeisenbergPoint> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = heis_inverse(a[i]);
    return out;
  }
  const auto& a = su2_factors(g);
  std::vector<SU2Point> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = su2_inverse(a[i]);
  return out;
}

GroupPoint exp_step(const GroupModel& model, const GroupPoint& g,
                    std::span<const double> coeffs) {
  check_point(model, g);
  if (static_cast<int>(coeffs.size()) != model.frame_size())
    throw InvalidInputError("exp_step: coefficient count does not match frame");
  if (model.heisenberg_like()) {
    const auto& a = heis_factors(g);
    std::vector<HeisenbergPoint> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
      out[k] = heis_multiply(a[k], {coeffs[2 * k], coeffs[2 * k + 1], 0.0});
    return out;
  }
  const auto& a = su2_factors(g);
  std::vector<SU2Point> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    out[k] = su2_multiply(a[k], su2_exp(coeffs[2 * k], coeffs[2 * k + 1], 0.0));
  return out;
}

double directional_derivative_fd(const GroupModel& model,
                                 const std::function<double(const GroupPoint&)>& f,
                                 const GroupPoint& g, int frame_index, double eps) {
  if (eps <= 0.0) throw InvalidInputError("directional_derivative: eps must be positive");
  if (frame_index < 0 || frame_index >= model.frame_size())
    throw InvalidInputError("directional_derivative: frame index out of range");
  std::vector<double> coeffs(static_cast<std::size_t>(model.frame_size()), 0.0);
  coeffs[frame_index] = eps;
  const double fp = f(exp_step(model, g, coeffs));
  coeffs[frame_index] = -eps;
  const double fm = f(exp_step(model, g, coeffs));
  const double d = (fp - fm) / (2.0 * eps);
  if (!std::isfinite(d))
    throw NumericalDomainError("directional_derivative: non-finite value");
  return d;
}

std::vector<double> flatten(const GroupModel& model, const GroupPoint& g) {
  check_point(model, g);
  std::vector<double> out;
  if (model.heisenberg_like()) {
    for (const auto& p : heis_factors(g)) {
      out.push_back(p.x);
      out.push_back(p.y);
      out.push_back(p.z);
    }
  } else {
    for (const auto& p : su2_factors(g)) {
      out.push_back(p.z1.real());
      out.push_back(p.z1.imag());
      out.push_back(p.z2.real());
      out.push_back(p.z2.imag());
    }
  }
  return out;
}

int flat_coord_count(const GroupModel& model) {
  return model.heisenberg_like() ? 3 * model.factors : 4 * model.factors;
}

bool points_close(const GroupModel& model, const GroupPoint& a, const GroupPoint& b,
                  double tol) {
  const auto fa = flatten(model, a);
  const auto fb = flatten(model, b);
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (std::abs(fa[i] - fb[i]) > tol) return false;
  return true;
}

bool all_finite(const GroupPoint& g) {
  if (const auto* h = std::get_if<std::vector<HeisenbergPoint>>(&g)) {
    for (const auto& p : *h)
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) return false;
    return true;
  }
  for (const auto& p : std::get<std::vector<SU2Point>>(g)) {
    if (!std::isfinite(p.z1.real()) || !std::isfinite(p.z1.imag()) ||
        !std::isfinite(p.z2.real()) || !std::isfinite(p.z2.imag()))
      return false;
  }
  return true;
}

}  // namespace srlb
