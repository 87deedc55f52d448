#include "srlb/lie_algebra.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "srlb/errors.hpp"
#include "srlb/linalg.hpp"

namespace srlb {

namespace {

constexpr double kJacobiTol = 1e-12;
constexpr double kRankTol = 1e-10;

// Sparse view of the bracket table: rows[i*dim+j] lists the nonzero
// (k, c(i,j,k)) entries. Keeps validation cost proportional to sparsity;
// product tables are block diagonal and very sparse.
struct SparseRows {
  int dim;
  std::vector<std::vector<std::pair<int, double>>> rows;

  explicit SparseRows(int d, const std::vector<double>& c) : dim(d), rows(static_cast<std::size_t>(d) * d) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        auto& row = rows[static_cast<std::size_t>(i) * d + j];
        for (int k = 0; k < d; ++k) {
          const double v = c[(static_cast<std::size_t>(i) * d + j) * d + k];
          if (v != 0.0) row.emplace_back(k, v);
        }
      }
  }

  const std::vector<std::pair<int, double>>& at(int i, int j) const {
    return rows[static_cast<std::size_t>(i) * dim + j];
  }
};

void validate_table(int dim, const std::vector<double>& c) {
  auto at = [&](int i, int j, int k) {
    return c[(static_cast<std::size_t>(i) * dim + j) * dim + k];
  };
  const SparseRows sparse(dim, c);

  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (const auto& [k, v] : sparse.at(i, j))
        if (at(j, i, k) != -v)
          throw InvalidInputError("StructureConstants: antisymmetry violated at (" +
                                  std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  "," + std::to_string(k + 1) + ")");

  // Jacobi on basis triples. Only pairs with a nonzero bracket contribute, so
  // iterate those against every third index.
  std::vector<double> acc(dim, 0.0);
  auto add_term = [&](int p, int q, int i) {
    // acc_m += sum_l c(p,q,l) c(i,l,m)
    for (const auto& [l, v] : sparse.at(p, q))
      for (const auto& [m, w] : sparse.at(i, l)) acc[m] += v * w;
  };
  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k) {
      if (sparse.at(j, k).empty()) continue;
      for (int i = 0; i < dim; ++i) {
        std::fill(acc.begin(), acc.end(), 0.0);
        add_term(j, k, i);
        add_term(k, i, j);
        add_term(i, j, k);
        for (int m = 0; m < dim; ++m)
          if (std::abs(acc[m]) > kJacobiTol)
            throw InvalidInputError("StructureConstants: Jacobi identity violated");
      }
    }
}

}  // namespace

StructureConstants::StructureConstants(int dim, std::vector<double> table)
    : dim_(dim), c_(std::move(table)) {
  if (dim <= 0) throw InvalidInputError("StructureConstants: dim must be positive");
  if (c_.size() != static_cast<std::size_t>(dim) * dim * dim)
    throw InvalidInputError("StructureConstants: table size != dim^3");
  validate_table(dim_, c_);
}

StructureConstants StructureConstants::zero(int dim) {
  return StructureConstants(dim, std::vector<double>(static_cast<std::size_t>(dim) * dim * dim, 0.0));
}

bool StructureConstants::is_step_two(double tol) const {
  // [e_k, [e_i, e_j]] must vanish for all basis triples.
  const SparseRows sparse(dim_, c_);
  std::vector<double> acc(dim_, 0.0);
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      if (sparse.at(i, j).empty()) continue;
      for (int k = 0; k < dim_; ++k) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (const auto& [l, v] : sparse.at(i, j))
          for (const auto& [m, w] : sparse.at(k, l)) acc[m] += v * w;
        for (int m = 0; m < dim_; ++m)
          if (std::abs(acc[m]) > tol) return false;
      }
    }
  return true;
}

AlgebraVector bracket(const AlgebraVector& a, const AlgebraVector& b,
                      const StructureConstants& sc) {
  const int n = sc.dim();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
    throw InvalidInputError("bracket: dimension mismatch");
  AlgebraVector out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (b[j] == 0.0) continue;
      const double w = a[i] * b[j];
      for (int k = 0; k < n; ++k) {
        const double c = sc.at(i, j, k);
        if (c != 0.0) out[k] += w * c;
      }
    }
  }
  return out;
}

HorizontalFrame make_frame(std::vector<AlgebraVector> generators,
                           std::vector<std::string> labels) {
  if (generators.empty()) throw InvalidInputError("make_frame: no generators");
  const int dim = static_cast<int>(generators.front().size());
  for (const auto& g : generators)
    if (static_cast<int>(g.size()) != dim)
      throw InvalidInputError("make_frame: inconsistent generator dimensions");
  if (span_rank(generators, dim) != static_cast<int>(generators.size()))
    throw InvalidInputError("make_frame: generators are linearly dependent");
  if (labels.size() != generators.size()) {
    labels.clear();
    for (std::size_t i = 0; i < generators.size(); ++i)
      labels.push_back("X" + std::to_string(i + 1));
  }
  return HorizontalFrame{std::move(generators), std::move(labels)};
}

RankFlag hormander_flag(const HorizontalFrame& frame, const StructureConstants& sc,
                        int max_depth) {
  if (max_depth < 1) throw InvalidInputError("hormander_flag: max_depth must be >= 1");
  for (const auto& g : frame.generators)
    if (static_cast<int>(g.size()) != sc.dim())
      throw InvalidInputError("hormander_flag: frame/table dimension mismatch");

  RankFlag flag;
  SpanBasis span(sc.dim(), kRankTol);
  std::vector<AlgebraVector> current = frame.generators;
  for (const auto& g : current) span.insert(g);

  for (int depth = 1; depth <= max_depth; ++depth) {
    if (depth > 1) {
      std::vector<AlgebraVector> next;
      for (const auto& v : current)
        for (const auto& g : frame.generators) {
          auto w = bracket(v, g, sc);
          if (span.insert(w)) next.push_back(std::move(w));
        }
      current = std::move(next);
    }
    flag.ranks.push_back(span.rank());
    if (span.rank() == sc.dim()) {
      flag.satisfied_at = depth;
      break;
    }
  }
  return flag;
}

bool check_step_two_subalgebra(const std::vector<AlgebraVector>& v1,
                               const std::vector<AlgebraVector>& v2,
                               const StructureConstants& sc) {
  if (!sc.is_step_two())
    throw InvalidInputError("check_step_two_subalgebra: table is not step-two");
  SpanBasis span(sc.dim(), kRankTol);
  for (const auto& v : v2) span.insert(v);
  for (std::size_t i = 0; i < v1.size(); ++i)
    for (std::size_t j = i + 1; j < v1.size(); ++j)
      if (!span.contains(bracket(v1[i], v1[j], sc), kRankTol)) return false;
  return true;
}

StructureConstants heisenberg_algebra() {
  std::vector<double> c(27, 0.0);
  c[(0 * 3 + 1) * 3 + 2] = 1.0;  // [e1,e2] = e3
  c[(1 * 3 + 0) * 3 + 2] = -1.0;
  return StructureConstants(3, std::move(c));
}

StructureConstants su2_algebra() {
  std::vector<double> c(27, 0.0);
  auto set = [&](int i, int j, int k, double v) {
    c[(static_cast<std::size_t>(i) * 3 + j) * 3 + k] = v;
    c[(static_cast<std::size_t>(j) * 3 + i) * 3 + k] = -v;
  };
  set(0, 1, 2, 2.0);  // [X,Y] = 2Z
  set(1, 2, 0, 2.0);  // [Y,Z] = 2X
  set(2, 0, 1, 2.0);  // [Z,X] = 2Y
  return StructureConstants(3, std::move(c));
}

StructureConstants abelian_algebra(int dim) { return StructureConstants::zero(dim); }

StructureConstants product_algebra(const StructureConstants& factor, int copies) {
  if (copies < 1) throw InvalidInputError("product_algebra: copies must be >= 1");
  const int fd = factor.dim();
  const int dim = fd * copies;
  std::vector<double> c(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  for (int b = 0; b < copies; ++b)
    for (int i = 0; i < fd; ++i)
      for (int j = 0; j < fd; ++j)
        for (int k = 0; k < fd; ++k) {
          const std::size_t idx =
              (static_cast<std::size_t>(b * fd + i) * dim + (b * fd + j)) * dim +
              (b * fd + k);
          c[idx] = factor.at(i, j, k);
        }
  return StructureConstants(dim, std::move(c));
}

StructureConstants load_structure_constants(std::istream& in, int dim) {
  struct Entry {
    int i, j, k;
    double v;
  };
  std::vector<Entry> entries;
  int max_index = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int i, j, k;
    double v;
    if (!(ls >> i)) continue;  // blank line
    if (!(ls >> j >> k >> v))
      throw InvalidInputError("structure constants: malformed line " +
                              std::to_string(line_no));
    if (i < 1 || j < 1 || k < 1)
      throw InvalidInputError("structure constants: indices are 1-based, line " +
                              std::to_string(line_no));
    entries.push_back({i, j, k, v});
    max_index = std::max({max_index, i, j, k});
  }
  if (dim == 0) dim = max_index;
  if (dim == 0) throw InvalidInputError("structure constants: empty table");
  if (max_index > dim)
    throw InvalidInputError("structure constants: index exceeds dimension");
  std::vector<double> c(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  for (const auto& e : entries)
    c[(static_cast<std::size_t>(e.i - 1) * dim + (e.j - 1)) * dim + (e.k - 1)] = e.v;
  return StructureConstants(dim, std::move(c));
}

StructureConstants load_structure_constants_file(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open structure constants file: " + path);
  return load_structure_constants(in, dim);
}

AlgebraVector basis_vector(int dim, int index) {
  if (index < 0 || index >= dim) throw InvalidInputError("basis_vector: index out of range");
  AlgebraVector v(dim, 0.0);
  v[index] = 1.0;
  return v;
}

}  // namespace srlb
