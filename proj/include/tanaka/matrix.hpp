#ifndef TANAKA_MATRIX_HPP
#define TANAKA_MATRIX_HPP

#include <iosfwd>
#include <vector>

#include "tanaka/rational.hpp"

namespace tanaka {

/// Dense matrix over Q, row-major. Zero-row and zero-column shapes are legal
/// and show up constantly here (maps to or from trivial graded components).
class Mat {
public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static Mat identity(int n);
  static Mat from_rows(const std::vector<Vec>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  Vec row(int i) const;
  Vec col(int j) const;
  void set_row(int i, const Vec& v);

  bool is_zero() const;
  Mat transpose() const;

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  friend Mat operator*(const Rat& c, const Mat& m);
  Mat operator-() const;

  /// Rows of `o` appended below this matrix (column counts must agree).
  Mat vstack(const Mat& o) const;

  /// Row-major flattening, the coordinate convention used for subspaces of
  /// matrix spaces (gl realized as Q^(n*n)).
  Vec vec() const { return a_; }
  static Mat unvec(const Vec& v, int rows, int cols);

  friend std::ostream& operator<<(std::ostream& os, const Mat& m);

private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

/// Commutator AB - BA.
Mat commutator(const Mat& a, const Mat& b);

/// Result of Gaussian elimination to reduced row echelon form.
/// RREF is a canonical form of the row space: two inputs with equal row
/// spaces reduce to identical Rref::m (used for subspace equality).
struct Rref {
  Mat m;                    // RREF with zero rows dropped
  std::vector<int> pivots;  // pivot column of each remaining row, increasing
  int rank() const { return m.rows(); }
};

Rref rref(const Mat& a);

/// Canonical basis of the right null space {x : a*x = 0}, as rows.
/// One row per free column of rref(a), in ascending free-column order.
Mat kernel_basis(const Mat& a);

int rank(const Mat& a);

/// Inverse of a square matrix; throws std::invalid_argument if singular.
Mat inverse(const Mat& a);

}  // namespace tanaka

#endif
