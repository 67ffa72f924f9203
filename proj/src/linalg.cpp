#include "dgl/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgl {

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<Vec>& rows) {
  int c = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  SparseMatrix m(static_cast<int>(rows.size()), c);
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  return m;
}

SparseMatrix SparseMatrix::from_columns(int rows, const std::vector<Vec>& cols) {
  SparseMatrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols_; ++j)
    for (int i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
  return m;
}

Rational SparseMatrix::get(int r, int c) const {
  const auto& row = data_.at(r);
  auto it = row.find(c);
  return it == row.end() ? Rational(0) : it->second;
}

void SparseMatrix::set(int r, int c, const Rational& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index out of range");
  if (v == 0)
    data_[r].erase(c);
  else
    data_[r][c] = v;
}

void SparseMatrix::add_to(int r, int c, const Rational& v) {
  if (v == 0) return;
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index out of range");
  auto& slot = data_[r][c];
  slot += v;
  if (slot == 0) data_[r].erase(c);
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Vec SparseMatrix::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("apply: length mismatch");
  Vec y = zero_vec(rows_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i])
      if (x[j] != 0) y[i] += v * x[j];
  return y;
}

Vec SparseMatrix::column(int c) const {
  Vec v = zero_vec(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = get(i, c);
  return v;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) t.data_[j][i] = v;
  return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
  SparseMatrix p(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [k, v] : data_[i])
      for (const auto& [j, w] : rhs.data_[k]) p.add_to(i, j, v * w);
  return p;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  SparseMatrix s(*this);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : rhs.data_[i]) s.add_to(i, j, v);
  return s;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& rhs) const { return *this + rhs.scaled(-1); }

SparseMatrix SparseMatrix::scaled(const Rational& s) const {
  SparseMatrix r(rows_, cols_);
  if (s == 0) return r;
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) r.data_[i][j] = v * s;
  return r;
}

std::vector<Vec> SparseMatrix::to_dense() const {
  std::vector<Vec> d(rows_, zero_vec(cols_));
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) d[i][j] = v;
  return d;
}

SparseMatrix SparseMatrix::vstack(const SparseMatrix& below) const {
  if (below.cols_ != cols_) throw std::invalid_argument("vstack column mismatch");
  SparseMatrix m(rows_ + below.rows_, cols_);
  for (int i = 0; i < rows_; ++i) m.data_[i] = data_[i];
  for (int i = 0; i < below.rows_; ++i) m.data_[rows_ + i] = below.data_[i];
  return m;
}

SparseMatrix SparseMatrix::hstack(const SparseMatrix& right) const {
  if (right.rows_ != rows_) throw std::invalid_argument("hstack row mismatch");
  SparseMatrix m(rows_, cols_ + right.cols_);
  for (int i = 0; i < rows_; ++i) {
    m.data_[i] = data_[i];
    for (const auto& [j, v] : right.data_[i]) m.data_[i][cols_ + j] = v;
  }
  return m;
}

SparseMatrix SparseMatrix::select_rows(const std::vector<int>& rows) const {
  SparseMatrix m(static_cast<int>(rows.size()), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) m.data_[i] = data_.at(rows[i]);
  return m;
}

SparseMatrix SparseMatrix::select_cols(const std::vector<int>& cols) const {
  std::map<int, int> where;
  for (std::size_t j = 0; j < cols.size(); ++j) where[cols[j]] = static_cast<int>(j);
  SparseMatrix m(rows_, static_cast<int>(cols.size()));
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) {
      auto it = where.find(j);
      if (it != where.end()) m.data_[i][it->second] = v;
    }
  return m;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

namespace {

void row_axpy(SparseRow& target, const Rational& s, const SparseRow& src) {
  for (const auto& [j, v] : src) {
    auto [it, inserted] = target.try_emplace(j, 0);
    it->second += s * v;
    if (it->second == 0) target.erase(it);
  }
}

std::size_t numerator_size(const Rational& r) { return mpz_sizeinbase(r.get_num_mpz_t(), 2); }

}  // namespace

Echelon row_reduce(const SparseMatrix& m) {
  Echelon e;
  e.cols = m.cols();
  std::vector<SparseRow> active;
  active.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    if (!m.row(i).empty()) active.push_back(m.row(i));

  for (int c = 0; c < m.cols() && !active.empty(); ++c) {
    // Active rows have no entries left of c, so a row touches c iff it leads with c.
    int best = -1;
    for (int i = 0; i < static_cast<int>(active.size()); ++i) {
      if (active[i].begin()->first != c) continue;
      if (best < 0) {
        best = i;
        continue;
      }
      auto& a = active[i];
      auto& b = active[best];
      if (a.size() < b.size() ||
          (a.size() == b.size() && numerator_size(a.begin()->second) < numerator_size(b.begin()->second)))
        best = i;
    }
    if (best < 0) continue;
    SparseRow pivot = std::move(active[best]);
    active.erase(active.begin() + best);
    Rational inv = 1 / pivot.begin()->second;
    for (auto& [j, v] : pivot) v *= inv;

    for (auto it = active.begin(); it != active.end();) {
      if (it->begin()->first == c) {
        Rational s = -it->begin()->second;
        row_axpy(*it, s, pivot);
        if (it->empty()) {
          it = active.erase(it);
          continue;
        }
      }
      ++it;
    }
    for (auto& done : e.rows) {
      auto f = done.find(c);
      if (f != done.end()) {
        Rational s = -f->second;
        row_axpy(done, s, pivot);
      }
    }
    e.rows.push_back(std::move(pivot));
    e.pivots.push_back(c);
  }
  return e;
}

int rank(const SparseMatrix& m) { return static_cast<int>(row_reduce(m).pivots.size()); }

std::vector<Vec> kernel_basis(const SparseMatrix& m) {
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v = zero_vec(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      auto it = e.rows[r].find(f);
      if (it != e.rows[r].end()) v[e.pivots[r]] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AffineSolution> solve_affine(const SparseMatrix& m, const Vec& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve_affine: rhs length mismatch");
  SparseMatrix aug(m.rows(), 1);
  for (int i = 0; i < m.rows(); ++i) aug.set(i, 0, b[i]);
  Echelon e = row_reduce(m.hstack(aug));
  AffineSolution sol;
  sol.particular = zero_vec(m.cols());
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    auto it = e.rows[r].find(m.cols());
    if (it != e.rows[r].end()) sol.particular[e.pivots[r]] = it->second;
  }
  sol.kernel = kernel_basis(m);
  return sol;
}

std::vector<int> independent_columns(const SparseMatrix& m) { return row_reduce(m).pivots; }

std::vector<Vec> column_space_basis(const SparseMatrix& m) {
  std::vector<Vec> out;
  for (int c : independent_columns(m)) out.push_back(m.column(c));
  return out;
}

int span_rank(const std::vector<Vec>& vs, std::size_t n) {
  if (vs.empty()) return 0;
  return rank(SparseMatrix::from_columns(static_cast<int>(n), vs));
}

bool in_span(const std::vector<Vec>& basis, const Vec& v) {
  if (is_zero(v)) return true;
  if (basis.empty()) return false;
  auto m = SparseMatrix::from_columns(static_cast<int>(v.size()), basis);
  return solve_affine(m, v).has_value();
}

std::vector<Vec> extend_basis(const std::vector<Vec>& basis, const std::vector<Vec>& candidates) {
  if (candidates.empty()) return {};
  std::size_t n = candidates[0].size();
  std::vector<Vec> all(basis);
  all.insert(all.end(), candidates.begin(), candidates.end());
  auto cols = independent_columns(SparseMatrix::from_columns(static_cast<int>(n), all));
  std::vector<Vec> added;
  for (int c : cols)
    if (c >= static_cast<int>(basis.size())) added.push_back(all[c]);
  return added;
}

}  // namespace dgl

namespace dgl {

std::optional<SparseMatrix> inverse(const SparseMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  int n = m.rows();
  Echelon e = row_reduce(m.hstack(SparseMatrix::identity(n)));
  if (static_cast<int>(e.pivots.size()) < n || (n > 0 && e.pivots[n - 1] >= n)) return std::nullopt;
  SparseMatrix inv(n, n);
  for (int r = 0; r < n; ++r)
    for (const auto& [j, v] : e.rows[r])
      if (j >= n) inv.set(e.pivots[r], j - n, v);
  return inv;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (const auto& [j, x] : a.row(i))
      for (int k = 0; k < b.rows(); ++k)
        for (const auto& [l, y] : b.row(k)) out.set(i * b.rows() + k, j * b.cols() + l, x * y);
  return out;
}

}  // namespace dgl
