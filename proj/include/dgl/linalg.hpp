#pragma once

#include "dgl/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace dgl {

using SparseRow = std::map<int, Rational>;

/// Row-major sparse matrix over the rationals. Explicit zeros are never
/// stored; set() with a zero value erases the entry.
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols);

  static SparseMatrix identity(int n);
  static SparseMatrix from_dense(const std::vector<Vec>& rows);
  static SparseMatrix from_columns(int rows, const std::vector<Vec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational get(int r, int c) const;
  void set(int r, int c, const Rational& v);
  void add_to(int r, int c, const Rational& v);
  const SparseRow& row(int r) const { return data_.at(r); }
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  Vec apply(const Vec& x) const;
  Vec column(int c) const;
  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& rhs) const;
  SparseMatrix operator+(const SparseMatrix& rhs) const;
  SparseMatrix operator-(const SparseMatrix& rhs) const;
  SparseMatrix scaled(const Rational& s) const;
  std::vector<Vec> to_dense() const;

  /// Stacks rows of `below` under this matrix; column counts must agree.
  SparseMatrix vstack(const SparseMatrix& below) const;
  SparseMatrix hstack(const SparseMatrix& right) const;
  SparseMatrix select_rows(const std::vector<int>& rows) const;
  SparseMatrix select_cols(const std::vector<int>& cols) const;

  bool operator==(const SparseMatrix& o) const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseRow> data_;
};

/// Reduced row echelon form.
struct Echelon {
  std::vector<SparseRow> rows;  // nonzero reduced rows, leading entry 1
  std::vector<int> pivots;      // pivot column of each row
  int cols = 0;
};

Echelon row_reduce(const SparseMatrix& m);
int rank(const SparseMatrix& m);

std::vector<Vec> kernel_basis(const SparseMatrix& m);

struct AffineSolution {
  Vec particular;
  std::vector<Vec> kernel;
};

/// All solutions of m·x = b, or nullopt when inconsistent.
std::optional<AffineSolution> solve_affine(const SparseMatrix& m, const Vec& b);

/// A basis of the column span, as a maximal independent subset of the columns.
std::vector<int> independent_columns(const SparseMatrix& m);
std::vector<Vec> column_space_basis(const SparseMatrix& m);

/// Rank of the span of a family of vectors of length n.
int span_rank(const std::vector<Vec>& vs, std::size_t n);
bool in_span(const std::vector<Vec>& basis, const Vec& v);

/// Extends `basis` (independent) by vectors from `candidates` to a basis of
/// their joint span; returns only the added vectors.
/// Inverse of a square matrix, or nullopt when singular.
std::optional<SparseMatrix> inverse(const SparseMatrix& m);
/// Kronecker product; entry ((i,k),(j,l)) = a(i,j)·b(k,l), row index i*b.rows()+k.
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

std::vector<Vec> extend_basis(const std::vector<Vec>& basis, const std::vector<Vec>& candidates);

}  // namespace dgl
