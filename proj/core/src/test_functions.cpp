#include "srlb/test_functions.hpp"

#include <cmath>
#include <numbers>

#include "srlb/errors.hpp"

namespace srlb {

namespace {

double psi(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double psi_deriv(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

const std::vector<HeisenbergPoint>& heis_of(const GroupPoint& g) {
  return std::get<std::vector<HeisenbergPoint>>(g);
}
const std::vector<SU2Point>& su2_of(const GroupPoint& g) {
  return std::get<std::vector<SU2Point>>(g);
}

double sq_norm_heis(const GroupPoint& g) {
  double s = 0.0;
  for (const auto& p : heis_of(g)) s += p.x * p.x + p.y * p.y + p.z * p.z;
  return s;
}

void check_domain(const TestFunction& f, FunctionDomain expected) {
  if (f.domain != expected)
    throw InvalidInputError("test function '" + f.id + "' has the wrong domain");
}

}  // namespace

double smooth_cutoff(double s, double inner, double outer) {
  const double t = std::abs(s);
  if (t <= inner) return 1.0;
  if (t >= outer) return 0.0;
  const double a = psi(outer - t);
  const double b = psi(t - inner);
  return a / (a + b);
}

double smooth_cutoff_deriv(double s, double inner, double outer) {
  const double t = std::abs(s);
  if (t <= inner || t >= outer) return 0.0;
  const double a = psi(outer - t);
  const double b = psi(t - inner);
  const double da = -psi_deriv(outer - t);
  const double db = psi_deriv(t - inner);
  const double d_dt = (da * b - a * db) / ((a + b) * (a + b));
  return s < 0.0 ? -d_dt : d_dt;
}

double horizontal_derivative(const GroupModel& model, const TestFunction& f,
                             const GroupPoint& g, int frame_index, double eps) {
  check_domain(f, FunctionDomain::group);
  if (f.grad_group) {
    const auto grad = f.grad_group(g);
    if (static_cast<int>(grad.size()) != model.frame_size())
      throw InvalidInputError("analytic gradient size does not match frame");
    const double d = grad[frame_index];
    if (!std::isfinite(d)) throw NumericalDomainError("analytic derivative is non-finite");
    return d;
  }
  return directional_derivative_fd(model, f.eval_group, g, frame_index, eps);
}

double quotient_horizontal_derivative(const QuotientModel& qm, const TestFunction& f,
                                      const GroupPoint& g, int frame_index, double eps) {
  check_domain(f, FunctionDomain::quotient);
  if (f.quotient_kind && *f.quotient_kind != qm.kind)
    throw InvalidInputError("test function '" + f.id + "' belongs to another quotient");
  if (f.grad_quotient && qm.intrinsic_supported()) {
    const auto comps = f.grad_quotient(project(qm, g));
    double d = 0.0;
    if (qm.kind == QuotientKind::real_line) {
      // dpi(X) = 0, dpi(Y) = d/du.
      d = frame_index == 0 ? 0.0 : comps.at(0);
    } else {
      d = comps.at(static_cast<std::size_t>(frame_index));
    }
    if (!std::isfinite(d)) throw NumericalDomainError("analytic derivative is non-finite");
    return d;
  }
  return quotient_derivative_fd(qm, f.eval_quotient, g, frame_index, eps);
}

TestFunction lift_to_group(const TestFunction& f, const QuotientModel& qm) {
  check_domain(f, FunctionDomain::quotient);
  TestFunction out;
  out.id = f.id;
  out.domain = FunctionDomain::group;
  out.support_radius = f.support_radius;
  out.eval_group = [f, qm](const GroupPoint& g) { return f.eval_quotient(project(qm, g)); };
  if (f.grad_quotient && qm.intrinsic_supported()) {
    const int frame_size = qm.base.frame_size();
    out.grad_group = [f, qm, frame_size](const GroupPoint& g) {
      std::vector<double> grad(static_cast<std::size_t>(frame_size), 0.0);
      const auto comps = f.grad_quotient(project(qm, g));
      if (qm.kind == QuotientKind::real_line) {
        grad[1] = comps.at(0);
      } else {
        for (std::size_t i = 0; i < comps.size(); ++i) grad[i] = comps[i];
      }
      return grad;
    };
  }
  return out;
}

std::vector<double> induced_frame_derivatives(const QuotientModel& qm,
                                              const TestFunction& f,
                                              const QuotientPoint& q, double eps) {
  check_domain(f, FunctionDomain::quotient);
  if (!qm.intrinsic_supported())
    throw UnsupportedModeError("induced frame derivatives need an intrinsic frame (" +
                               to_string(qm.kind) + ")");
  if (f.grad_quotient) {
    auto comps = f.grad_quotient(q);
    for (double d : comps)
      if (!std::isfinite(d)) throw NumericalDomainError("analytic derivative is non-finite");
    return comps;
  }
  auto value_at = [&](double du, double dv) {
    QuotientPoint shifted = q;
    shifted.coords[0] += du;
    if (shifted.coords.size() > 1) shifted.coords[1] += dv;
    return f.eval_quotient(shifted);
  };
  std::vector<double> comps;
  const double d_u = (value_at(eps, 0.0) - value_at(-eps, 0.0)) / (2.0 * eps);
  comps.push_back(d_u);
  if (qm.kind == QuotientKind::grushin) {
    const double d_v = (value_at(0.0, eps) - value_at(0.0, -eps)) / (2.0 * eps);
    comps.push_back(q.coords[0] * d_v);
  }
  for (double d : comps)
    if (!std::isfinite(d)) throw NumericalDomainError("finite-difference derivative is non-finite");
  return comps;
}

namespace {

TestFunction group_fn(std::string id, std::function<double(const GroupPoint&)> eval) {
  TestFunction f;
  f.id = std::move(id);
  f.domain = FunctionDomain::group;
  f.eval_group = std::move(eval);
  return f;
}

TestFunction quotient_fn(QuotientKind kind, std::string id,
                         std::function<double(const QuotientPoint&)> eval) {
  TestFunction f;
  f.id = std::move(id);
  f.domain = FunctionDomain::quotient;
  f.quotient_kind = kind;
  f.eval_quotient = std::move(eval);
  return f;
}

std::vector<TestFunction> heisenberg_family(const GroupModel& model) {
  const int frame = model.frame_size();
  std::vector<TestFunction> fns;

  fns.push_back(group_fn("const", [](const GroupPoint&) { return 1.0; }));
  fns.back().grad_group = [frame](const GroupPoint&) {
    return std::vector<double>(static_cast<std::size_t>(frame), 0.0);
  };

  auto coord = [&](std::string id, int which) {
    TestFunction f = group_fn(std::move(id), [which](const GroupPoint& g) {
      const auto& p = heis_of(g)[0];
      return which == 0 ? p.x : (which == 1 ? p.y : p.z);
    });
    f.grad_group = [frame, which](const GroupPoint& g) {
      std::vector<double> grad(static_cast<std::size_t>(frame), 0.0);
      const auto& p = heis_of(g)[0];
      if (which == 0) grad[0] = 1.0;                       // X x = 1
      if (which == 1) grad[1] = 1.0;                       // Y y = 1
      if (which == 2) { grad[0] = -0.5 * p.y; grad[1] = 0.5 * p.x; }  // X z, Y z
      return grad;
    };
    return f;
  };
  fns.push_back(coord("coord_x", 0));
  fns.push_back(coord("coord_y", 1));
  fns.push_back(coord("coord_z", 2));

  TestFunction gauss = group_fn("gauss", [](const GroupPoint& g) {
    return std::exp(-sq_norm_heis(g));
  });
  gauss.grad_group = [frame](const GroupPoint& g) {
    std::vector<double> grad(static_cast<std::size_t>(frame), 0.0);
    const double f = std::exp(-sq_norm_heis(g));
    const auto& pts = heis_of(g);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto& p = pts[k];
      grad[2 * k] = -f * (2.0 * p.x - p.y * p.z);
      grad[2 * k + 1] = -f * (2.0 * p.y + p.x * p.z);
    }
    return grad;
  };
  fns.push_back(std::move(gauss));

  fns.push_back(group_fn("osc", [](const GroupPoint& g) {
    const auto& p = heis_of(g)[0];
    return std::cos(2.0 * p.x + p.y) * std::exp(-sq_norm_heis(g));
  }));

  return fns;
}

std::vector<TestFunction> su2_family(const GroupModel& model) {
  const int frame = model.frame_size();
  std::vector<TestFunction> fns;

  fns.push_back(group_fn("const", [](const GroupPoint&) { return 1.0; }));
  fns.back().grad_group = [frame](const GroupPoint&) {
    return std::vector<double>(static_cast<std::size_t>(frame), 0.0);
  };

  // Re Tr g = 2 Re z1 on the first factor.
  TestFunction re_tr = group_fn("re_tr", [](const GroupPoint& g) {
    return 2.0 * su2_of(g)[0].z1.real();
  });
  re_tr.grad_group = [frame](const GroupPoint& g) {
    std::vector<double> grad(static_cast<std::size_t>(frame), 0.0);
    const auto& p = su2_of(g)[0];
    grad[0] = -2.0 * p.z2.real();   // d/dt z1 along X is -z2
    grad[1] = -2.0 * p.z2.imag();   // d/dt z1 along Y is i z2
    return grad;
  };
  fns.push_back(std::move(re_tr));

  TestFunction im_z1 = group_fn("im_z1", [](const GroupPoint& g) {
    return su2_of(g)[0].z1.imag();
  });
  im_z1.grad_group = [frame](const GroupPoint& g) {
    std::vector<double> grad(static_cast<std::size_t>(frame), 0.0);
    const auto& p = su2_of(g)[0];
    grad[0] = -p.z2.imag();
    grad[1] = p.z2.real();
    return grad;
  };
  fns.push_back(std::move(im_z1));

  TestFunction re_z2 = group_fn("re_z2", [](const GroupPoint& g) {
    return su2_of(g)[0].z2.real();
  });
  re_z2.grad_group = [frame](const GroupPoint& g) {
    std::vector<double> grad(static_cast<std::size_t>(frame), 0.0);
    const auto& p = su2_of(g)[0];
    grad[0] = p.z1.real();          // d/dt z2 along X is z1
    grad[1] = -p.z1.imag();         // d/dt z2 along Y is i z1
    return grad;
  };
  fns.push_back(std::move(re_z2));

  fns.push_back(group_fn("gauss", [](const GroupPoint& g) {
    double s = 0.0;
    for (const auto& p : su2_of(g)) s += std::norm(p.z1 - 1.0) + std::norm(p.z2);
    return std::exp(-s);
  }));

  fns.push_back(group_fn("osc", [](const GroupPoint& g) {
    const auto& p = su2_of(g)[0];
    return std::cos(2.0 * p.z1.real()) * std::exp(-std::norm(p.z2));
  }));

  return fns;
}

void add_truncated_exponential(std::vector<TestFunction>& fns, std::string id,
                               double lambda) {
  TestFunction f = quotient_fn(QuotientKind::real_line, std::move(id),
                               [lambda](const QuotientPoint& q) {
                                 const double u = q.coords[0];
                                 return std::exp(0.5 * lambda * u) * smooth_cutoff(u);
                               });
  f.support_radius = 10.0;
  f.grad_quotient = [lambda](const QuotientPoint& q) {
    const double u = q.coords[0];
    const double e = std::exp(0.5 * lambda * u);
    return std::vector<double>{0.5 * lambda * e * smooth_cutoff(u) +
                               e * smooth_cutoff_deriv(u)};
  };
  fns.push_back(std::move(f));
}

std::vector<TestFunction> real_line_family() {
  const auto kind = QuotientKind::real_line;
  std::vector<TestFunction> fns;

  fns.push_back(quotient_fn(kind, "const", [](const QuotientPoint&) { return 1.0; }));
  fns.back().grad_quotient = [](const QuotientPoint&) { return std::vector<double>{0.0}; };

  fns.push_back(quotient_fn(kind, "coord", [](const QuotientPoint& q) { return q.coords[0]; }));
  fns.back().grad_quotient = [](const QuotientPoint&) { return std::vector<double>{1.0}; };

  add_truncated_exponential(fns, "exp_quarter", 0.5);
  add_truncated_exponential(fns, "exp_half", 1.0);
  add_truncated_exponential(fns, "exp_one", 2.0);

  fns.push_back(quotient_fn(kind, "gauss", [](const QuotientPoint& q) {
    return std::exp(-q.coords[0] * q.coords[0]);
  }));
  fns.back().grad_quotient = [](const QuotientPoint& q) {
    const double u = q.coords[0];
    return std::vector<double>{-2.0 * u * std::exp(-u * u)};
  };

  fns.push_back(quotient_fn(kind, "osc", [](const QuotientPoint& q) {
    const double u = q.coords[0];
    return std::cos(3.0 * u) * std::exp(-u * u);
  }));

  return fns;
}

std::vector<TestFunction> grushin_family() {
  const auto kind = QuotientKind::grushin;
  std::vector<TestFunction> fns;

  fns.push_back(quotient_fn(kind, "const", [](const QuotientPoint&) { return 1.0; }));
  fns.back().grad_quotient = [](const QuotientPoint&) {
    return std::vector<double>{0.0, 0.0};
  };

  fns.push_back(quotient_fn(kind, "coord_u", [](const QuotientPoint& q) { return q.coords[0]; }));
  fns.back().grad_quotient = [](const QuotientPoint&) {
    return std::vector<double>{1.0, 0.0};
  };

  fns.push_back(quotient_fn(kind, "coord_v", [](const QuotientPoint& q) { return q.coords[1]; }));
  fns.back().grad_quotient = [](const QuotientPoint& q) {
    return std::vector<double>{0.0, q.coords[0]};
  };

  fns.push_back(quotient_fn(kind, "gauss", [](const QuotientPoint& q) {
    return std::exp(-(q.coords[0] * q.coords[0] + q.coords[1] * q.coords[1]));
  }));
  fns.back().grad_quotient = [](const QuotientPoint& q) {
    const double u = q.coords[0], v = q.coords[1];
    const double f = std::exp(-(u * u + v * v));
    return std::vector<double>{-2.0 * u * f, u * (-2.0 * v) * f};
  };

  fns.push_back(quotient_fn(kind, "gauss_shift", [](const QuotientPoint& q) {
    const double u = q.coords[0] - 0.3, v = q.coords[1];
    return std::exp(-(u * u + v * v));
  }));
  fns.back().grad_quotient = [](const QuotientPoint& q) {
    const double u = q.coords[0], v = q.coords[1];
    const double f = std::exp(-((u - 0.3) * (u - 0.3) + v * v));
    return std::vector<double>{-2.0 * (u - 0.3) * f, u * (-2.0 * v) * f};
  };

  fns.push_back(quotient_fn(kind, "osc", [](const QuotientPoint& q) {
    const double u = q.coords[0], v = q.coords[1];
    return std::cos(2.0 * u + v) * std::exp(-(u * u + v * v));
  }));

  return fns;
}

std::vector<TestFunction> coords_family(QuotientKind kind) {
  // Generic smooth observables in the flat quotient coordinates; derivatives
  // are taken through the lift.
  std::vector<TestFunction> fns;
  fns.push_back(quotient_fn(kind, "const", [](const QuotientPoint&) { return 1.0; }));
  fns.push_back(quotient_fn(kind, "coord_0", [](const QuotientPoint& q) { return q.coords[0]; }));
  fns.push_back(quotient_fn(kind, "coord_last", [](const QuotientPoint& q) {
    return q.coords.back();
  }));
  fns.push_back(quotient_fn(kind, "gauss", [](const QuotientPoint& q) {
    double s = 0.0;
    for (double c : q.coords) s += c * c;
    return std::exp(-s);
  }));
  fns.push_back(quotient_fn(kind, "osc", [](const QuotientPoint& q) {
    double s = 0.0;
    for (double c : q.coords) s += c * c;
    return std::cos(2.0 * q.coords[0]) * std::exp(-s);
  }));
  return fns;
}

std::vector<TestFunction> compact_heis_family(double r) {
  const auto kind = QuotientKind::compact_heis;
  const double wx = 2.0 * std::numbers::pi / r;
  std::vector<TestFunction> fns;
  fns.push_back(quotient_fn(kind, "const", [](const QuotientPoint&) { return 1.0; }));
  fns.push_back(quotient_fn(kind, "cos_x", [wx](const QuotientPoint& q) {
    return std::cos(wx * q.coords[0]);
  }));
  fns.push_back(quotient_fn(kind, "sin_x", [wx](const QuotientPoint& q) {
    return std::sin(wx * q.coords[0]);
  }));
  fns.push_back(quotient_fn(kind, "cos_y", [wx](const QuotientPoint& q) {
    return std::cos(wx * q.coords[1]);
  }));
  fns.push_back(quotient_fn(kind, "cosx_cosy", [wx](const QuotientPoint& q) {
    return std::cos(wx * q.coords[0]) * std::cos(wx * q.coords[1]);
  }));
  fns.push_back(quotient_fn(kind, "osc", [wx](const QuotientPoint& q) {
    return std::sin(wx * q.coords[0]) * std::cos(2.0 * wx * q.coords[1]);
  }));
  return fns;
}

std::vector<TestFunction> sphere_family() {
  const auto kind = QuotientKind::hopf;
  std::vector<TestFunction> fns;
  fns.push_back(quotient_fn(kind, "const", [](const QuotientPoint&) { return 1.0; }));
  fns.push_back(quotient_fn(kind, "height", [](const QuotientPoint& q) { return q.coords[2]; }));
  fns.push_back(quotient_fn(kind, "coord_a", [](const QuotientPoint& q) { return q.coords[0]; }));
  fns.push_back(quotient_fn(kind, "gauss", [](const QuotientPoint& q) {
    const double a = q.coords[0], b = q.coords[1], c = q.coords[2] - 1.0;
    return std::exp(-(a * a + b * b + c * c));
  }));
  fns.push_back(quotient_fn(kind, "osc", [](const QuotientPoint& q) {
    return std::cos(2.0 * q.coords[0]) * std::exp(-q.coords[1] * q.coords[1]);
  }));
  return fns;
}

std::vector<TestFunction> rotation_family(QuotientKind kind, int size) {
  std::vector<TestFunction> fns;
  fns.push_back(quotient_fn(kind, "const", [](const QuotientPoint&) { return 1.0; }));
  fns.push_back(quotient_fn(kind, "r00", [](const QuotientPoint& q) { return q.coords[0]; }));
  fns.push_back(quotient_fn(kind, "trace", [size](const QuotientPoint& q) {
    double s = 0.0;
    for (int i = 0; i < size; ++i) s += q.coords[static_cast<std::size_t>(i) * size + i];
    return s;
  }));
  fns.push_back(quotient_fn(kind, "gauss", [size](const QuotientPoint& q) {
    double s = 0.0;
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        const double d = q.coords[static_cast<std::size_t>(i) * size + j] - (i == j ? 1.0 : 0.0);
        s += d * d;
      }
    return std::exp(-s);
  }));
  fns.push_back(quotient_fn(kind, "osc", [](const QuotientPoint& q) {
    return std::cos(2.0 * q.coords[1]) * std::exp(-q.coords[2] * q.coords[2]);
  }));
  return fns;
}

}  // namespace

std::vector<TestFunction> shipped_group_functions(const GroupModel& model) {
  return model.heisenberg_like() ? heisenberg_family(model) : su2_family(model);
}

std::vector<TestFunction> shipped_quotient_functions(const QuotientModel& qm) {
  switch (qm.kind) {
    case QuotientKind::real_line: return real_line_family();
    case QuotientKind::grushin: return grushin_family();
    case QuotientKind::nonisotropic: return coords_family(qm.kind);
    case QuotientKind::heis_like: return coords_family(qm.kind);
    case QuotientKind::compact_heis: return compact_heis_family(qm.lattice_scale);
    case QuotientKind::hopf: return sphere_family();
    case QuotientKind::so3: return rotation_family(qm.kind, 3);
    case QuotientKind::so4: return rotation_family(qm.kind, 4);
  }
  throw InvalidInputError("shipped_quotient_functions: unknown kind");
}

namespace {

TestFunction find_in(std::vector<TestFunction> fns, const std::string& id,
                     const std::string& where) {
  for (auto& f : fns)
    if (f.id == id) return std::move(f);
  std::string known;
  for (const auto& f : fns) known += (known.empty() ? "" : ", ") + f.id;
  throw InvalidInputError("no test function '" + id + "' for " + where +
                          " (available: " + known + ")");
}

}  // namespace

TestFunction find_group_function(const GroupModel& model, const std::string& id) {
  return find_in(shipped_group_functions(model), id, model.name());
}

TestFunction find_quotient_function(const QuotientModel& qm, const std::string& id) {
  return find_in(shipped_quotient_functions(qm), id, qm.name());
}

}  // namespace srlb
