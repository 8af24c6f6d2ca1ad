#include "bbk/linalg.hpp"

namespace bbk {

Echelon rref(Mat a) {
  const Index rows = a.rows(), cols = a.cols();
  const Rat one(1);
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    // Pivot choice: the sparsest candidate row, unit entries preferred;
    // keeps fill-in and coefficient growth down on incidence-like input.
    Index piv = -1;
    Index bestScore = 0;
    for (Index r = row; r < rows; ++r) {
      if (a(r, col).isZero()) continue;
      Index nnz = 0;
      for (Index c = col; c < cols; ++c)
        if (!a(r, c).isZero()) ++nnz;
      Index score = 2 * nnz + (a(r, col).abs() == one ? 0 : 1);
      if (piv < 0 || score < bestScore) {
        piv = r;
        bestScore = score;
      }
    }
    if (piv < 0) continue;
    if (piv != row) a.row(piv).swap(a.row(row));
    Rat inv = Rat(1) / a(row, col);
    for (Index c = col; c < cols; ++c) {
      if (!a(row, c).isZero()) a(row, c) *= inv;
    }
    for (Index r = 0; r < rows; ++r) {
      if (r == row) continue;
      const Rat& f = a(r, col);
      if (f.isZero()) continue;
      Rat factor = f;
      for (Index c = col; c < cols; ++c) {
        if (!a(row, c).isZero()) a(r, c) -= factor * a(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return Echelon{std::move(a), std::move(pivots)};
}

Index rank(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  return rref(a).rank();
}

Mat kernelBasis(const Mat& a) {
  const Index cols = a.cols();
  if (cols == 0) return Mat(a.cols(), 0);
  Echelon e = rref(a);
  std::vector<bool> isPivot(cols, false);
  for (Index p : e.pivots) isPivot[p] = true;
  const Index nullity = cols - e.rank();
  Mat k = Mat::Zero(cols, nullity);
  Index kcol = 0;
  for (Index free = 0; free < cols; ++free) {
    if (isPivot[free]) continue;
    k(free, kcol) = Rat(1);
    for (Index prow = 0; prow < e.rank(); ++prow) {
      const Rat& coeff = e.r(prow, free);
      if (!coeff.isZero()) k(e.pivots[prow], kcol) = -coeff;
    }
    ++kcol;
  }
  return k;
}

Mat imageBasis(const Mat& a) {
  if (a.cols() == 0 || a.rows() == 0) return Mat(a.rows(), 0);
  Echelon e = rref(a);
  Mat b(a.rows(), e.rank());
  for (Index i = 0; i < e.rank(); ++i) b.col(i) = a.col(e.pivots[i]);
  return b;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  const Index rows = a.rows(), cols = a.cols();
  Mat aug(rows, cols + 1);
  if (cols > 0) aug.leftCols(cols) = a;
  aug.col(cols) = b;
  Echelon e = rref(std::move(aug));
  Vec x = Vec::Zero(cols);
  for (Index i = 0; i < e.rank(); ++i) {
    if (e.pivots[i] == cols) return std::nullopt;  // pivot in the constant column
    x(e.pivots[i]) = e.r(i, cols);
  }
  return x;
}

Mat complementInto(const Mat& base, const Mat& candidates) {
  const Index rows = candidates.rows();
  Mat acc(rows, base.cols() + candidates.cols());
  if (base.cols() > 0) acc.leftCols(base.cols()) = base;
  Index used = base.cols();
  Index baseRank = rank(base);
  std::vector<Index> chosen;
  for (Index c = 0; c < candidates.cols(); ++c) {
    acc.col(used) = candidates.col(c);
    Index newRank = rank(acc.leftCols(used + 1));
    if (newRank > baseRank + static_cast<Index>(chosen.size())) {
      chosen.push_back(c);
      ++used;
    }
  }
  Mat out(rows, static_cast<Index>(chosen.size()));
  for (Index i = 0; i < out.cols(); ++i) out.col(i) = candidates.col(chosen[i]);
  return out;
}

bool spans(const Mat& a, const Mat& b) {
  if (b.cols() == 0) return true;
  Mat joined(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) joined.leftCols(a.cols()) = a;
  joined.rightCols(b.cols()) = b;
  return rank(joined) == rank(a);
}

}  // namespace bbk
