#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "bbk/rational.hpp"

namespace bbk {

using Mat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Row echelon data of an exact-rational matrix.
struct Echelon {
  Mat r;                    // reduced row echelon form
  std::vector<Index> pivots;  // pivot column per nonzero row
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Reduced row echelon form by fraction-exact Gauss-Jordan elimination.
/// Skips zero entries, which keeps sparse inputs fast.
Echelon rref(Mat a);

Index rank(const Mat& a);

/// Basis of ker(a), one column per basis vector.
Mat kernelBasis(const Mat& a);

/// Basis of the column space, as columns.
Mat imageBasis(const Mat& a);

/// Solves a x = b; empty when inconsistent.
std::optional<Vec> solve(const Mat& a, const Vec& b);

/// Columns of `candidates` that extend the span of `base` to a basis of
/// span(base) + span(candidates); used for cohomology representatives.
Mat complementInto(const Mat& base, const Mat& candidates);

/// True when every column of b lies in the column space of a.
bool spans(const Mat& a, const Mat& b);

}  // namespace bbk
