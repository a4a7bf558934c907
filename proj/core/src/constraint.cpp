#include "ordsparse/constraint.hpp"

#include <stdexcept>
#include <vector>

namespace ordsparse {

Eigen::VectorXd project_isotone_nonneg(const Eigen::VectorXd& y) {
  const Eigen::Index n = y.size();
  if (n == 0) {
    throw std::invalid_argument("project_isotone_nonneg: empty vector");
  }

  struct Block {
    double sum;
    Eigen::Index count;
    double mean;
  };
  std::vector<Block> blocks;
  blocks.reserve(static_cast<size_t>(n));

  for (Eigen::Index i = 0; i < n; ++i) {
    blocks.push_back({y[i], 1, y[i]});
    // Pool while the order w_prev >= w_cur is violated. Ties pool nowhere:
    // equal means are already feasible and the projection value is unchanged.
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 2].mean < blocks.back().mean) {
      Block top = blocks.back();
      blocks.pop_back();
      blocks.back().sum += top.sum;
      blocks.back().count += top.count;
      blocks.back().mean = blocks.back().sum / double(blocks.back().count);
    }
  }

  Eigen::VectorXd out(n);
  Eigen::Index pos = 0;
  for (const Block& b : blocks) {
    const double value = b.mean > 0.0 ? b.mean : 0.0;
    for (Eigen::Index j = 0; j < b.count; ++j) out[pos++] = value;
  }
  return out;
}

Eigen::VectorXd project_block_isotone(const Eigen::VectorXd& y,
                                      Eigen::Index block_len) {
  if (block_len <= 0) {
    throw std::invalid_argument("project_block_isotone: block length must be positive");
  }
  if (y.size() % block_len != 0) {
    throw std::invalid_argument(
        "project_block_isotone: block length does not divide vector length");
  }
  Eigen::VectorXd out(y.size());
  for (Eigen::Index start = 0; start < y.size(); start += block_len) {
    out.segment(start, block_len) =
        project_isotone_nonneg(y.segment(start, block_len));
  }
  return out;
}

ConstraintSet ConstraintSet::nonneg_orthant(Eigen::Index dim) {
  if (dim <= 0) throw std::invalid_argument("ConstraintSet: dim must be positive");
  return ConstraintSet(ConstraintKind::NonnegOrthant, dim, dim);
}

ConstraintSet ConstraintSet::isotone_nonneg(Eigen::Index dim) {
  if (dim <= 0) throw std::invalid_argument("ConstraintSet: dim must be positive");
  return ConstraintSet(ConstraintKind::IsotoneNonneg, dim, dim);
}

ConstraintSet ConstraintSet::block_isotone(Eigen::Index dim,
                                           Eigen::Index block_len) {
  if (dim <= 0) throw std::invalid_argument("ConstraintSet: dim must be positive");
  if (block_len <= 0 || dim % block_len != 0) {
    throw std::invalid_argument(
        "ConstraintSet: block length must be positive and divide dim");
  }
  return ConstraintSet(ConstraintKind::BlockIsotoneNonneg, dim, block_len);
}

bool ConstraintSet::contains(const Eigen::VectorXd& y) const {
  if (y.size() != dim_) return false;
  switch (kind_) {
    case ConstraintKind::NonnegOrthant:
      return (y.array() >= 0.0).all();
    case ConstraintKind::IsotoneNonneg: {
      for (Eigen::Index i = 0; i + 1 < dim_; ++i) {
        if (y[i] < y[i + 1]) return false;
      }
      return dim_ == 0 || y[dim_ - 1] >= 0.0;
    }
    case ConstraintKind::BlockIsotoneNonneg: {
      for (Eigen::Index start = 0; start < dim_; start += block_len_) {
        for (Eigen::Index i = start; i + 1 < start + block_len_; ++i) {
          if (y[i] < y[i + 1]) return false;
        }
        if (y[start + block_len_ - 1] < 0.0) return false;
      }
      return true;
    }
  }
  return false;
}

Eigen::VectorXd ConstraintSet::project(const Eigen::VectorXd& v) const {
  if (v.size() != dim_) {
    throw std::invalid_argument("ConstraintSet::project: dimension mismatch");
  }
  switch (kind_) {
    case ConstraintKind::NonnegOrthant:
      return v.cwiseMax(0.0);
    case ConstraintKind::IsotoneNonneg:
      return project_isotone_nonneg(v);
    case ConstraintKind::BlockIsotoneNonneg:
      return project_block_isotone(v, block_len_);
  }
  return v;
}

}  // namespace ordsparse
