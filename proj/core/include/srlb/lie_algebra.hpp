#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace srlb {

/// Coordinates of a Lie algebra element in the chosen basis.
using AlgebraVector = std::vector<double>;

/// Dense bracket table: [e_i, e_j] = sum_k c(i,j,k) e_k.
/// Construction validates antisymmetry and the Jacobi identity.
class StructureConstants {
 public:
  StructureConstants(int dim, std::vector<double> table);

  static StructureConstants zero(int dim);

  int dim() const { return dim_; }
  double at(int i, int j, int k) const { return c_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k]; }

  /// True if all double brackets [e_k, [e_i, e_j]] vanish within tol.
  bool is_step_two(double tol = 1e-10) const;

 private:
  int dim_;
  std::vector<double> c_;
};

AlgebraVector bracket(const AlgebraVector& a, const AlgebraVector& b,
                      const StructureConstants& sc);

/// Horizontal frame: a linearly independent generating set for the
/// horizontal subspace, with human-readable labels.
struct HorizontalFrame {
  std::vector<AlgebraVector> generators;
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(generators.size()); }
};

/// Validates that the generators are linearly independent (rank = count).
HorizontalFrame make_frame(std::vector<AlgebraVector> generators,
                           std::vector<std::string> labels);

/// Bracket-generation record: ranks[d-1] is the dimension of the span of
/// iterated brackets up to depth d; depth 1 is the frame itself.
struct RankFlag {
  std::vector<int> ranks;
  std::optional<int> satisfied_at;
};

/// Grows the span by bracketing the current span against the frame until the
/// full algebra is reached or max_depth is exhausted.
RankFlag hormander_flag(const HorizontalFrame& frame, const StructureConstants& sc,
                        int max_depth);

/// For a step-two table: true iff every [v, w] with v, w in v1 lies in
/// span(v2), residual tolerance 1e-10. Throws if sc is not step-two.
bool check_step_two_subalgebra(const std::vector<AlgebraVector>& v1,
                               const std::vector<AlgebraVector>& v2,
                               const StructureConstants& sc);

// Shipped tables.
StructureConstants heisenberg_algebra();          // [e1,e2] = e3
StructureConstants su2_algebra();                 // [X,Y]=2Z, [Y,Z]=2X, [Z,X]=2Y
StructureConstants abelian_algebra(int dim);
StructureConstants product_algebra(const StructureConstants& factor, int copies);

/// Plain-text table: lines "i j k value", 1-based indices, '#' comments,
/// omitted entries zero. Dimension is the largest index seen unless forced.
StructureConstants load_structure_constants(std::istream& in, int dim = 0);
StructureConstants load_structure_constants_file(const std::string& path, int dim = 0);

AlgebraVector basis_vector(int dim, int index);

}  // namespace srlb
