#pragma once

#include <functional>
#include <string>
#include <vector>

#include "srlb/groups.hpp"

namespace srlb {

enum class QuotientKind {
  real_line,     // H = {(x,0,z)},  phi(x,y,z) = y
  grushin,       // H = {(0,y,0)},  phi(x,y,z) = (x, z + xy/2)
  nonisotropic,  // central H in a Heisenberg product, one linear constraint
  heis_like,     // central H, m linear constraints with nonzero coefficients
  compact_heis,  // discrete lattice (ra, rb, r^2 c / 2)
  hopf,          // H = U(1) diagonal, phi = (2 z1 conj(z2), |z1|^2 - |z2|^2)
  so3,           // H = {+-1}, adjoint representation
  so4,           // H = {(1,1),(-1,-1)} in SU(2)^2, q -> g q h* on quaternions
};

std::string to_string(QuotientKind kind);

/// A point of the quotient space, flat coordinates per kind:
/// real_line 1; grushin 2; nonisotropic 2n+1; heis_like 2n+m; compact_heis 3
/// (fundamental-domain representative); hopf 3 (unit vector); so3 9 and so4 16
/// (row-major rotation matrices).
struct QuotientPoint {
  std::vector<double> coords;
};

struct QuotientModel {
  QuotientKind kind = QuotientKind::real_line;
  GroupModel base;
  std::vector<double> alphas;                    // nonisotropic: sorted positive
  std::vector<std::vector<double>> coeff_rows;   // heis_like: m rows of n nonzeros
  double lattice_scale = 1.0;                    // compact_heis: r > 0

  int quotient_dim() const;
  bool intrinsic_supported() const {
    return kind == QuotientKind::real_line || kind == QuotientKind::grushin;
  }
  /// Count of horizontal directions induced on the quotient (only meaningful
  /// for the kinds with an intrinsic simulator/coordinate frame).
  int induced_frame_size() const;
  std::string name() const;
};

QuotientModel make_real_line();
QuotientModel make_grushin();
QuotientModel make_nonisotropic(std::vector<double> alphas);
QuotientModel make_heis_like(std::vector<std::vector<double>> coeff_rows);
QuotientModel make_compact_heis(double lattice_scale);
QuotientModel make_hopf();
QuotientModel make_so3();
QuotientModel make_so4();

QuotientPoint project(const QuotientModel& qm, const GroupPoint& g);

/// True iff g and h lie in the same right coset, i.e. h g^{-1} is in the
/// isotropy subgroup within tol.
bool coset_equal(const QuotientModel& qm, const GroupPoint& g, const GroupPoint& h,
                 double tol);

/// Canonical representative of the lattice coset of g, coordinates in
/// [0,r) x [0,r) x [0, r^2/2). Idempotent.
QuotientPoint reduce_fundamental(const QuotientModel& qm, const HeisenbergPoint& g);

/// Central-difference derivative of f∘project along the left-invariant flow
/// of base-frame generator `frame_index` at g (the lifted derivative).
double quotient_derivative_fd(const QuotientModel& qm,
                              const std::function<double(const QuotientPoint&)>& f,
                              const GroupPoint& g, int frame_index, double eps);

bool all_finite(const QuotientPoint& q);

}  // namespace srlb
