#include "tanaka/matrix.hpp"

#include <cassert>
#include <ostream>
#include <stdexcept>

namespace tanaka {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, int cols) {
  Mat m(int(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    assert(int(rows[i].size()) == cols);
    for (int j = 0; j < cols; ++j) m.at(int(i), j) = rows[i][j];
  }
  return m;
}

Vec Mat::row(int i) const {
  Vec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

Vec Mat::col(int j) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void Mat::set_row(int i, const Vec& v) {
  assert(int(v.size()) == cols_);
  for (int j = 0; j < cols_; ++j) at(i, j) = v[j];
}

bool Mat::is_zero() const {
  for (const Rat& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Mat Mat::operator+(const Mat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  Mat r(*this);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  Mat r(*this);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  assert(cols_ == o.rows_);
  Mat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Rat& y = o.at(k, j);
        if (!y.is_zero()) r.at(i, j) += x * y;
      }
    }
  return r;
}

Vec Mat::operator*(const Vec& v) const {
  assert(int(v.size()) == cols_);
  Vec r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

Mat operator*(const Rat& c, const Mat& m) {
  Mat r(m);
  for (Rat& x : r.a_) x *= c;
  return r;
}

Mat Mat::operator-() const { return Rat(-1) * (*this); }

Mat Mat::vstack(const Mat& o) const {
  assert(cols_ == o.cols_ || rows_ == 0 || o.rows_ == 0);
  int c = rows_ ? cols_ : o.cols_;
  Mat r(rows_ + o.rows_, c);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
  for (int i = 0; i < o.rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
  return r;
}

Mat Mat::unvec(const Vec& v, int rows, int cols) {
  assert(int(v.size()) == rows * cols);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = v[size_t(i) * cols + j];
  return m;
}

std::ostream& operator<<(std::ostream& os, const Mat& m) {
  os << "[";
  for (int i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m.at(i, j);
  }
  return os << "]";
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Rref rref(const Mat& a) {
  Mat m(a);
  int rows = m.rows(), cols = m.cols();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    // Deterministic pivot choice: first row at or below r with a nonzero entry.
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = c; j < cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = m.at(r, c).inverse();
    for (int j = c; j < cols; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      Rat f = m.at(i, c);
      if (f.is_zero()) continue;
      for (int j = c; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Mat out(r, cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) out.at(i, j) = m.at(i, j);
  return Rref{out, pivots};
}

Mat kernel_basis(const Mat& a) {
  Rref f = rref(a);
  int cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (int p : f.pivots) is_pivot[p] = true;
  std::vector<Vec> rows;
  for (int q = 0; q < cols; ++q) {
    if (is_pivot[q]) continue;
    Vec v(cols, Rat(0));
    v[q] = Rat(1);
    for (int r = 0; r < f.rank(); ++r) v[f.pivots[r]] = -f.m.at(r, q);
    rows.push_back(v);
  }
  return Mat::from_rows(rows, cols);
}

int rank(const Mat& a) { return rref(a).rank(); }

Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  int n = a.rows();
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = Rat(1);
  }
  Rref r = rref(aug);
  if (r.rank() < n || r.pivots[n - 1] != n - 1)
    throw std::invalid_argument("matrix is singular");
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = r.m.at(i, n + j);
  return inv;
}

}  // namespace tanaka
