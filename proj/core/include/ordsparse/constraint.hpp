#pragma once

#include <Eigen/Core>

namespace ordsparse {

enum class ConstraintKind { NonnegOrthant, IsotoneNonneg, BlockIsotoneNonneg };

/// Euclidean projection onto the isotone nonnegative cone
/// { w : w_1 >= w_2 >= ... >= w_n >= 0 }.
///
/// Pool-adjacent-violators over the nonincreasing order followed by a clamp
/// at zero, which is the exact projection onto the intersection for this
/// cone. The output is monotone exactly (no tolerance): pooled block means
/// are compared and emitted as the same doubles. O(n) single pass.
Eigen::VectorXd project_isotone_nonneg(const Eigen::VectorXd& y);

/// Blockwise variant: applies project_isotone_nonneg independently to each
/// consecutive block of length block_len. Throws if block_len does not
/// divide the length of y.
Eigen::VectorXd project_block_isotone(const Eigen::VectorXd& y,
                                      Eigen::Index block_len);

/// The magnitude constraint set Omega together with the projection onto
/// psi(Omega). psi is an increasing bijection of R+ fixing 0 for every
/// supported Regularizer, so psi(Omega) = Omega and the projection is
/// independent of the regularizer. Pure functions; safe for concurrent use.
class ConstraintSet {
 public:
  static ConstraintSet nonneg_orthant(Eigen::Index dim);
  static ConstraintSet isotone_nonneg(Eigen::Index dim);
  static ConstraintSet block_isotone(Eigen::Index dim, Eigen::Index block_len);

  ConstraintKind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  Eigen::Index block_len() const { return block_len_; }

  /// Exact membership of y in Omega (no tolerance).
  bool contains(const Eigen::VectorXd& y) const;

  /// Euclidean projection onto psi(Omega) = Omega. Throws on dimension
  /// mismatch.
  Eigen::VectorXd project(const Eigen::VectorXd& v) const;

 private:
  ConstraintSet(ConstraintKind kind, Eigen::Index dim, Eigen::Index block_len)
      : kind_(kind), dim_(dim), block_len_(block_len) {}

  ConstraintKind kind_;
  Eigen::Index dim_;
  Eigen::Index block_len_;
};

}  // namespace ordsparse
