#include "srlb/quotients.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "srlb/errors.hpp"

namespace srlb {

namespace {

using cd = std::complex<double>;

struct Mat2 {
  cd a, b, c, d;  // [[a, b], [c, d]]
};

Mat2 to_matrix(const SU2Point& p) {
  return {p.z1, p.z2, -std::conj(p.z2), std::conj(p.z1)};
}

Mat2 mul(const Mat2& u, const Mat2& v) {
  return {u.a * v.a + u.b * v.c, u.a * v.b + u.b * v.d, u.c * v.a + u.d * v.c,
          u.c * v.b + u.d * v.d};
}

Mat2 adjoint_conj(const Mat2& u) {  // conjugate transpose
  return {std::conj(u.a), std::conj(u.c), std::conj(u.b), std::conj(u.d)};
}

// Pauli-type basis of the algebra: x=[[0,1],[-1,0]], y=[[0,i],[i,0]],
// z=[[i,0],[0,-i]]. An algebra element p*x + q*y + r*z has matrix
// [[ri, p+qi],[-p+qi, -ri]]; extract (p, q, r) from the first row.
Mat2 pauli(int i) {
  switch (i) {
    case 0: return {cd(0, 0), cd(1, 0), cd(-1, 0), cd(0, 0)};
    case 1: return {cd(0, 0), cd(0, 1), cd(0, 1), cd(0, 0)};
    default: return {cd(0, 1), cd(0, 0), cd(0, 0), cd(0, -1)};
  }
}

std::array<double, 3> algebra_coords(const Mat2& m) {
  return {m.b.real(), m.b.imag(), m.a.imag()};
}

const std::vector<HeisenbergPoint>& heis_of(const GroupPoint& g) {
  const auto* p = std::get_if<std::vector<HeisenbergPoint>>(&g);
  if (!p) throw InvalidInputError("quotient: expected a Heisenberg-type point");
  return *p;
}

const std::vector<SU2Point>& su2_of(const GroupPoint& g) {
  const auto* p = std::get_if<std::vector<SU2Point>>(&g);
  if (!p) throw InvalidInputError("quotient: expected an SU(2)-type point");
  return *p;
}

double near_integer_residual(double v) { return std::abs(v - std::round(v)); }

// Positive fractional part in [0, period).
double wrap(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0) r += period;
  // fmod can return exactly `period` after the sign fix when v is a tiny
  // negative multiple; fold it back.
  if (r >= period) r -= period;
  return r;
}

}  // namespace

std::string to_string(QuotientKind kind) {
  switch (kind) {
    case QuotientKind::real_line: return "real_line";
    case QuotientKind::grushin: return "grushin";
    case QuotientKind::nonisotropic: return "nonisotropic";
    case QuotientKind::heis_like: return "heis_like";
    case QuotientKind::compact_heis: return "compact_heis";
    case QuotientKind::hopf: return "hopf";
    case QuotientKind::so3: return "so3";
    case QuotientKind::so4: return "so4";
  }
  return "?";
}

int QuotientModel::quotient_dim() const {
  const int n = base.factors;
  switch (kind) {
    case QuotientKind::real_line: return 1;
    case QuotientKind::grushin: return 2;
    case QuotientKind::nonisotropic: return 2 * n + 1;
    case QuotientKind::heis_like: return 2 * n + static_cast<int>(coeff_rows.size());
    case QuotientKind::compact_heis: return 3;
    case QuotientKind::hopf: return 3;
    case QuotientKind::so3: return 9;
    case QuotientKind::so4: return 16;
  }
  return 0;
}

int QuotientModel::induced_frame_size() const {
  switch (kind) {
    case QuotientKind::real_line: return 1;
    case QuotientKind::grushin: return 2;
    default: return base.frame_size();
  }
}

std::string QuotientModel::name() const {
  switch (kind) {
    case QuotientKind::nonisotropic: {
      std::string s = "nonisotropic:";
      for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(alphas[i]);
      }
      return s;
    }
    case QuotientKind::compact_heis:
      return "compact_heis:" + std::to_string(lattice_scale);
    case QuotientKind::heis_like:
      return "heis_like:" + std::to_string(coeff_rows.size()) + "x" +
             std::to_string(coeff_rows.empty() ? 0 : coeff_rows.front().size());
    default: return to_string(kind);
  }
}

QuotientModel make_real_line() {
  return {QuotientKind::real_line, make_heisenberg_model(1), {}, {}, 1.0};
}

QuotientModel make_grushin() {
  return {QuotientKind::grushin, make_heisenberg_model(1), {}, {}, 1.0};
}

QuotientModel make_nonisotropic(std::vector<double> alphas) {
  if (alphas.empty()) throw InvalidInputError("nonisotropic: need at least one alpha");
  for (double a : alphas)
    if (!(a > 0.0)) throw InvalidInputError("nonisotropic: alphas must be positive");
  if (!std::is_sorted(alphas.begin(), alphas.end()))
    throw InvalidInputError("nonisotropic: alphas must be nondecreasing");
  const int n = static_cast<int>(alphas.size());
  return {QuotientKind::nonisotropic, make_heisenberg_model(n), std::move(alphas), {}, 1.0};
}

QuotientModel make_heis_like(std::vector<std::vector<double>> coeff_rows) {
  if (coeff_rows.empty()) throw InvalidInputError("heis_like: need at least one row");
  const std::size_t n = coeff_rows.front().size();
  if (n == 0) throw InvalidInputError("heis_like: empty coefficient row");
  for (const auto& row : coeff_rows) {
    if (row.size() != n) throw InvalidInputError("heis_like: ragged coefficient rows");
    for (double a : row)
      if (a == 0.0) throw InvalidInputError("heis_like: coefficients must be nonzero");
  }
  return {QuotientKind::heis_like, make_heisenberg_model(static_cast<int>(n)), {},
          std::move(coeff_rows), 1.0};
}

QuotientModel make_compact_heis(double lattice_scale) {
  if (!(lattice_scale > 0.0))
    throw InvalidInputError("compact_heis: lattice scale must be positive");
  return {QuotientKind::compact_heis, make_heisenberg_model(1), {}, {}, lattice_scale};
}

QuotientModel make_hopf() { return {QuotientKind::hopf, make_su2_model(1), {}, {}, 1.0}; }
QuotientModel make_so3() { return {QuotientKind::so3, make_su2_model(1), {}, {}, 1.0}; }
QuotientModel make_so4() { return {QuotientKind::so4, make_su2_model(2), {}, {}, 1.0}; }

namespace {

QuotientPoint project_hopf(const SU2Point& raw) {
  const SU2Point g = su2_normalize(raw);
  const cd w = 2.0 * g.z1 * std::conj(g.z2);
  return {{w.real(), w.imag(), std::norm(g.z1) - std::norm(g.z2)}};
}

QuotientPoint project_so3(const SU2Point& raw) {
  const SU2Point g = su2_normalize(raw);
  const Mat2 gm = to_matrix(g);
  const Mat2 gi = adjoint_conj(gm);
  QuotientPoint out{std::vector<double>(9, 0.0)};
  for (int j = 0; j < 3; ++j) {
    const auto col = algebra_coords(mul(mul(gm, pauli(j)), gi));
    for (int i = 0; i < 3; ++i) out.coords[3 * i + j] = col[i];
  }
  return out;
}

// Quaternion components of a unit SU(2) element under (1,i,j,k) = (I,z,x,y):
// (Re z1, Im z1, Re z2, Im z2); quaternion product = matrix product.
QuotientPoint project_so4(const SU2Point& raw_g, const SU2Point& raw_h) {
  const Mat2 gm = to_matrix(su2_normalize(raw_g));
  const Mat2 hs = adjoint_conj(to_matrix(su2_normalize(raw_h)));
  static const SU2Point basis[4] = {
      {cd(1, 0), cd(0, 0)}, {cd(0, 1), cd(0, 0)}, {cd(0, 0), cd(1, 0)}, {cd(0, 0), cd(0, 1)}};
  QuotientPoint out{std::vector<double>(16, 0.0)};
  for (int j = 0; j < 4; ++j) {
    const Mat2 img = mul(mul(gm, to_matrix(basis[j])), hs);
    const double comp[4] = {img.a.real(), img.a.imag(), img.b.real(), img.b.imag()};
    for (int i = 0; i < 4; ++i) out.coords[4 * i + j] = comp[i];
  }
  return out;
}

}  // namespace

QuotientPoint project(const QuotientModel& qm, const GroupPoint& g) {
  switch (qm.kind) {
    case QuotientKind::real_line: {
      const auto& f = heis_of(g);
      if (f.size() != 1) throw InvalidInputError("real_line: base is one Heisenberg factor");
      return {{f[0].y}};
    }
    case QuotientKind::grushin: {
      const auto& f = heis_of(g);
      if (f.size() != 1) throw InvalidInputError("grushin: base is one Heisenberg factor");
      return {{f[0].x, f[0].z + 0.5 * f[0].x * f[0].y}};
    }
    case QuotientKind::nonisotropic: {
      const auto& f = heis_of(g);
      if (f.size() != qm.alphas.size())
        throw InvalidInputError("nonisotropic: factor count mismatch");
      QuotientPoint out;
      double zsum = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) {
        out.coords.push_back(f[i].x);
        out.coords.push_back(f[i].y);
        zsum += qm.alphas[i] * f[i].z;
      }
      out.coords.push_back(zsum);
      return out;
    }
    case QuotientKind::heis_like: {
      const auto& f = heis_of(g);
      if (f.size() != qm.coeff_rows.front().size())
        throw InvalidInputError("heis_like: factor count mismatch");
      QuotientPoint out;
      for (const auto& p : f) {
        out.coords.push_back(p.x);
        out.coords.push_back(p.y);
      }
      for (const auto& row : qm.coeff_rows) {
        double zsum = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) zsum += row[i] * f[i].z;
        out.coords.push_back(zsum);
      }
      return out;
    }
    case QuotientKind::compact_heis: {
      const auto& f = heis_of(g);
      if (f.size() != 1) throw InvalidInputError("compact_heis: base is one Heisenberg factor");
      return reduce_fundamental(qm, f[0]);
    }
    case QuotientKind::hopf: {
      const auto& f = su2_of(g);
      if (f.size() != 1) throw InvalidInputError("hopf: base is one SU(2) factor");
      return project_hopf(f[0]);
    }
    case QuotientKind::so3: {
      const auto& f = su2_of(g);
      if (f.size() != 1) throw InvalidInputError("so3: base is one SU(2) factor");
      return project_so3(f[0]);
    }
    case QuotientKind::so4: {
      const auto& f = su2_of(g);
      if (f.size() != 2) throw InvalidInputError("so4: base is SU(2) x SU(2)");
      return project_so4(f[0], f[1]);
    }
  }
  throw InvalidInputError("project: unknown quotient kind");
}

bool coset_equal(const QuotientModel& qm, const GroupPoint& g, const GroupPoint& h,
                 double tol) {
  const GroupPoint w = multiply(qm.base, h, inverse(qm.base, g));
  switch (qm.kind) {
    case QuotientKind::real_line:
      return std::abs(heis_of(w)[0].y) <= tol;
    case QuotientKind::grushin: {
      const auto& p = heis_of(w)[0];
      return std::abs(p.x) <= tol && std::abs(p.z) <= tol;
    }
    case QuotientKind::nonisotropic: {
      const auto& f = heis_of(w);
      double zsum = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::abs(f[i].x) > tol || std::abs(f[i].y) > tol) return false;
        zsum += qm.alphas[i] * f[i].z;
      }
      return std::abs(zsum) <= tol;
    }
    case QuotientKind::heis_like: {
      const auto& f = heis_of(w);
      for (const auto& p : f)
        if (std::abs(p.x) > tol || std::abs(p.y) > tol) return false;
      for (const auto& row : qm.coeff_rows) {
        double zsum = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) zsum += row[i] * f[i].z;
        if (std::abs(zsum) > tol) return false;
      }
      return true;
    }
    case QuotientKind::compact_heis: {
      const auto& p = heis_of(w)[0];
      const double r = qm.lattice_scale;
      return near_integer_residual(p.x / r) <= tol &&
             near_integer_residual(p.y / r) <= tol &&
             near_integer_residual(p.z / (r * r / 2.0)) <= tol;
    }
    case QuotientKind::hopf: {
      const auto& p = su2_of(w)[0];
      return std::abs(p.z2) <= tol && std::abs(std::abs(p.z1) - 1.0) <= tol;
    }
    case QuotientKind::so3: {
      const auto& p = su2_of(w)[0];
      return std::abs(p.z2) <= tol && std::abs(p.z1.imag()) <= tol &&
             std::abs(std::abs(p.z1.real()) - 1.0) <= tol;
    }
    case QuotientKind::so4: {
      const auto& f = su2_of(w);
      for (const auto& p : f)
        if (std::abs(p.z2) > tol || std::abs(p.z1.imag()) > tol ||
            std::abs(std::abs(p.z1.real()) - 1.0) > tol)
          return false;
      // Same sign in both factors: (1,1) or (-1,-1).
      return f[0].z1.real() * f[1].z1.real() > 0.0;
    }
  }
  throw InvalidInputError("coset_equal: unknown quotient kind");
}

QuotientPoint reduce_fundamental(const QuotientModel& qm, const HeisenbergPoint& g) {
  if (qm.kind != QuotientKind::compact_heis)
    throw InvalidInputError("reduce_fundamental: model is not compact_heis");
  const double r = qm.lattice_scale;
  const double a = -std::floor(g.x / r);
  const double b = -std::floor(g.y / r);
  // gamma * g with gamma = (ra, rb, r^2 c / 2); pick c last so z lands in
  // [0, r^2/2).
  const double x = g.x + r * a;
  const double y = g.y + r * b;
  const double z_shift = g.z + 0.5 * (r * a * g.y - g.x * r * b);
  const double z = wrap(z_shift, r * r / 2.0);
  // floor can leave x == r when x/r is a hair below an integer; wrap again.
  return {{wrap(x, r), wrap(y, r), z}};
}

double quotient_derivative_fd(const QuotientModel& qm,
                              const std::function<double(const QuotientPoint&)>& f,
                              const GroupPoint& g, int frame_index, double eps) {
  auto lifted = [&](const GroupPoint& p) { return f(project(qm, p)); };
  return directional_derivative_fd(qm.base, lifted, g, frame_index, eps);
}

bool all_finite(const QuotientPoint& q) {
  for (double v : q.coords)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace srlb
