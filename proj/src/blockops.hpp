#pragma once

// Products with block-diagonal 6n x 6n operators (a, b, Msys, ...). The
// operands are stored dense; exploiting the block structure here keeps the
// hot evaluation path an order of magnitude under naive dense GEMM cost.

#include "screwdyn/types.hpp"

namespace screwdyn::detail {

/// out = dense * blockdiag, reading only the diagonal blocks of bd.
inline void mul_right_blockdiag(const MatX& dense, const MatX& bd, MatX& out) {
  const int n = static_cast<int>(dense.cols()) / 6;
  for (int j = 0; j < n; ++j) {
    out.middleCols<6>(6 * j).noalias() =
        dense.middleCols<6>(6 * j) * bd.block<6, 6>(6 * j, 6 * j);
  }
}

/// out = blockdiag * dense.
inline void mul_left_blockdiag(const MatX& bd, const MatX& dense, MatX& out) {
  const int n = static_cast<int>(dense.rows()) / 6;
  for (int i = 0; i < n; ++i) {
    out.middleRows<6>(6 * i).noalias() =
        bd.block<6, 6>(6 * i, 6 * i) * dense.middleRows<6>(6 * i);
  }
}

/// out = blockdiag(lhs_i^T rhs_i) for two block-diagonal operands.
inline void mul_blockdiag_t_blockdiag(const MatX& lhs, const MatX& rhs, MatX& out) {
  const int n = static_cast<int>(lhs.rows()) / 6;
  out.setZero();
  for (int i = 0; i < n; ++i) {
    out.block<6, 6>(6 * i, 6 * i).noalias() =
        lhs.block<6, 6>(6 * i, 6 * i).transpose() * rhs.block<6, 6>(6 * i, 6 * i);
  }
}

/// out = blockdiag(lhs_i rhs_i).
inline void mul_blockdiag_blockdiag(const MatX& lhs, const MatX& rhs, MatX& out) {
  const int n = static_cast<int>(lhs.rows()) / 6;
  out.setZero();
  for (int i = 0; i < n; ++i) {
    out.block<6, 6>(6 * i, 6 * i).noalias() =
        lhs.block<6, 6>(6 * i, 6 * i) * rhs.block<6, 6>(6 * i, 6 * i);
  }
}

}  // namespace screwdyn::detail
