#pragma once

#include <span>
#include <vector>

namespace srlb {

/// Incremental span tracker over R^dim: row echelon form with column pivoting
/// and an absolute pivot threshold. Suited to the O(1)-scale vectors this
/// library produces; not a general-purpose decomposition.
class SpanBasis {
 public:
  explicit SpanBasis(int dim, double pivot_tol = 1e-10);

  /// Reduces v against the stored rows and inserts the remainder if its
  /// largest entry exceeds the pivot threshold. Returns true if rank grew.
  bool insert(std::vector<double> v);

  /// Euclidean norm of v after elimination against the current span.
  double residual_norm(std::vector<double> v) const;

  bool contains(const std::vector<double>& v, double tol) const;

  int rank() const { return static_cast<int>(rows_.size()); }
  int dim() const { return dim_; }

 private:
  void reduce(std::vector<double>& v) const;

  int dim_;
  double tol_;
  std::vector<std::vector<double>> rows_;  // unit pivot per row
  std::vector<int> pivot_cols_;
};

/// Rank of a set of vectors, column-pivoted elimination, absolute threshold.
int span_rank(const std::vector<std::vector<double>>& vectors, int dim,
              double pivot_tol = 1e-10);

/// Sum by recursive pairwise halving (base case n <= 2). Deterministic for a
/// fixed input order; exact for constant inputs of power-of-two length.
double pairwise_sum(std::span<const double> xs);

double pairwise_mean(std::span<const double> xs);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace srlb
