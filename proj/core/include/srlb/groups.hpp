#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "srlb/lie_algebra.hpp"

namespace srlb {

/// Exponential coordinates of the first kind: exp(aX + bY + cZ) = (a, b, c),
/// group law (x,y,z)(x',y',z') = (x+x', y+y', z+z' + (xy'-x'y)/2).
struct HeisenbergPoint {
  double x = 0.0, y = 0.0, z = 0.0;
};

/// First row (z1, z2) of a special-unitary matrix; the second row is
/// (-conj(z2), conj(z1)). Kept unit length by renormalizing after products.
struct SU2Point {
  std::complex<double> z1{1.0, 0.0};
  std::complex<double> z2{0.0, 0.0};
};

HeisenbergPoint heis_multiply(const HeisenbergPoint& a, const HeisenbergPoint& b);
HeisenbergPoint heis_inverse(const HeisenbergPoint& a);

SU2Point su2_multiply(const SU2Point& a, const SU2Point& b);  // renormalizes
SU2Point su2_inverse(const SU2Point& a);
SU2Point su2_normalize(const SU2Point& a);
double su2_norm(const SU2Point& a);
/// exp of ax + by + cz over the Pauli-type basis x=[[0,1],[-1,0]],
/// y=[[0,i],[i,0]], z=[[i,0],[0,-i]]: cos(r) I + (sin(r)/r)(aX+bY+cZ).
SU2Point su2_exp(double a, double b, double c);

/// A point of a model group: a homogeneous list of factors.
using GroupPoint = std::variant<std::vector<HeisenbergPoint>, std::vector<SU2Point>>;

enum class GroupKind { heisenberg, heisenberg_product, su2, su2_product };

/// Concrete model group together with its algebra data. The frame is the
/// horizontal pair (X_k, Y_k) of every factor; construction checks that the
/// frame bracket-generates the full algebra.
struct GroupModel {
  GroupKind kind = GroupKind::heisenberg;
  int factors = 1;
  HorizontalFrame frame;
  StructureConstants sc;

  int frame_size() const { return 2 * factors; }
  bool heisenberg_like() const {
    return kind == GroupKind::heisenberg || kind == GroupKind::heisenberg_product;
  }
  GroupPoint identity() const;
  std::string name() const;
};

GroupModel make_heisenberg_model(int factors = 1);
GroupModel make_su2_model(int factors = 1);

GroupPoint multiply(const GroupModel& model, const GroupPoint& g, const GroupPoint& h);
GroupPoint inverse(const GroupModel& model, const GroupPoint& g);

/// g * exp(sum_i coeffs[i] X_i) over the horizontal frame. Exact for both
/// model families (step-two BCH for Heisenberg, closed-form 2x2 exponential
/// for SU(2)).
GroupPoint exp_step(const GroupModel& model, const GroupPoint& g,
                    std::span<const double> coeffs);

/// Central-difference derivative of f along the left-invariant flow of frame
/// generator `frame_index` at g.
double directional_derivative_fd(const GroupModel& model,
                                 const std::function<double(const GroupPoint&)>& f,
                                 const GroupPoint& g, int frame_index, double eps);

/// Flat coordinates for export: (x,y,z) per Heisenberg factor,
/// (Re z1, Im z1, Re z2, Im z2) per SU(2) factor.
std::vector<double> flatten(const GroupModel& model, const GroupPoint& g);
int flat_coord_count(const GroupModel& model);

bool points_close(const GroupModel& model, const GroupPoint& a, const GroupPoint& b,
                  double tol);
bool all_finite(const GroupPoint& g);

constexpr double kDefaultFdEps = 1e-5;

}  // namespace srlb
