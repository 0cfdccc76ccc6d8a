#pragma once

#include "dsgc/errors.hpp"
#include "dsgc/sparse_matrix.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cstddef>

namespace dsgc {

struct EigenPairs {
  DenseVector values;   // ascending for Smallest, descending for Largest
  DenseMatrix vectors;  // one column per value
};

enum class Extremal { Smallest, Largest };

/// Flips each column so that its largest-magnitude entry is positive
/// (first such entry on ties).
inline void canonicalize_signs(DenseMatrix& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index best = 0;
    double mag = -1.0;
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      if (std::abs(v(r, c)) > mag * (1.0 + 1e-12)) {
        mag = std::abs(v(r, c));
        best = r;
      }
    }
    if (v.rows() > 0 && v(best, c) < 0.0) v.col(c) = -v.col(c);
  }
}

namespace detail {

inline EigenPairs select(const DenseVector& values, const DenseMatrix& vectors, std::size_t k,
                         Extremal which) {
  const auto n = values.size();
  const auto kk = static_cast<Eigen::Index>(k);
  if (kk > n) throw ConfigError("requested more eigenpairs than the matrix dimension");
  EigenPairs out;
  if (which == Extremal::Smallest) {
    out.values = values.head(kk);
    out.vectors = vectors.leftCols(kk);
  } else {
    // Largest first.
    out.values = values.tail(kk).reverse();
    out.vectors = vectors.rightCols(kk).rowwise().reverse();
  }
  canonicalize_signs(out.vectors);
  return out;
}

}  // namespace detail

/// k extremal eigenpairs of a dense symmetric matrix.
inline EigenPairs symmetric_eigenpairs(const DenseMatrix& m, std::size_t k, Extremal which) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  return detail::select(solver.eigenvalues(), solver.eigenvectors(), k, which);
}

/// k extremal pairs of the pencil A v = lambda B v with B symmetric positive
/// definite; vectors are B-orthonormal.
inline EigenPairs generalized_eigenpairs(const DenseMatrix& a, const DenseMatrix& b, std::size_t k,
                                         Extremal which) {
  Eigen::LLT<DenseMatrix> llt(b);
  if (llt.info() != Eigen::Success) throw NumericalError("pencil right-hand matrix is not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> solver(a, b, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) throw NumericalError("generalized eigensolver did not converge");
  return detail::select(solver.eigenvalues(), solver.eigenvectors(), k, which);
}

}  // namespace dsgc
