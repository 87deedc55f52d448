#include "srlb/linalg.hpp"

#include <cmath>
#include <cstdlib>

#include "srlb/errors.hpp"

namespace srlb {

SpanBasis::SpanBasis(int dim, double pivot_tol) : dim_(dim), tol_(pivot_tol) {
  if (dim <= 0) throw InvalidInputError("SpanBasis: dimension must be positive");
}

void SpanBasis::reduce(std::vector<double>& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const double factor = v[pivot_cols_[r]];
    if (factor == 0.0) continue;
    for (int j = 0; j < dim_; ++j) v[j] -= factor * rows_[r][j];
  }
}

bool SpanBasis::insert(std::vector<double> v) {
  if (static_cast<int>(v.size()) != dim_)
    throw InvalidInputError("SpanBasis::insert: dimension mismatch");
  reduce(v);
  int pivot = -1;
  double best = tol_;
  for (int j = 0; j < dim_; ++j) {
    const double a = std::abs(v[j]);
    if (a > best) {
      best = a;
      pivot = j;
    }
  }
  if (pivot < 0) return false;
  const double p = v[pivot];
  for (int j = 0; j < dim_; ++j) v[j] /= p;
  // Back-substitute so every stored row is zero at the new pivot column.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const double f = rows_[r][pivot];
    if (f == 0.0) continue;
    for (int j = 0; j < dim_; ++j) rows_[r][j] -= f * v[j];
  }
  rows_.push_back(std::move(v));
  pivot_cols_.push_back(pivot);
  return true;
}

double SpanBasis::residual_norm(std::vector<double> v) const {
  if (static_cast<int>(v.size()) != dim_)
    throw InvalidInputError("SpanBasis::residual_norm: dimension mismatch");
  reduce(v);
  return norm2(v);
}

bool SpanBasis::contains(const std::vector<double>& v, double tol) const {
  return residual_norm(v) <= tol;
}

int span_rank(const std::vector<std::vector<double>>& vectors, int dim,
              double pivot_tol) {
  SpanBasis basis(dim, pivot_tol);
  for (const auto& v : vectors) basis.insert(v);
  return basis.rank();
}

double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return 0.0;
  if (n == 1) return xs[0];
  if (n == 2) return xs[0] + xs[1];
  const std::size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double pairwise_mean(std::span<const double> xs) {
  if (xs.empty()) throw InvalidInputError("pairwise_mean: empty input");
  return pairwise_sum(xs) / static_cast<double>(xs.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInputError("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace srlb
