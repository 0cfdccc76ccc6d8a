#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsgc {

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using DenseVector = Eigen::VectorXd;

struct Entry {
  std::size_t row;
  std::size_t col;
  double value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Real sparse matrix in compressed row storage.
///
/// Stored entries are always nonzero and coordinates are unique; every
/// arithmetic result is pruned of exact zeros before it is returned. The
/// class is a value type and immutable through its public surface.
class SparseMatrix {
 public:
  using Storage = Eigen::SparseMatrix<double, Eigen::RowMajor, std::ptrdiff_t>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : m_(as_index(rows), as_index(cols)) {}

  explicit SparseMatrix(Storage m) : m_(std::move(m)) {
    m_.prune(0.0, 0.0);
    m_.makeCompressed();
  }

  /// Duplicate coordinates are summed; entries that sum to zero are dropped.
  static SparseMatrix from_entries(std::size_t rows, std::size_t cols,
                                   const std::vector<Entry>& entries) {
    std::vector<Eigen::Triplet<double, std::ptrdiff_t>> trips;
    trips.reserve(entries.size());
    for (const auto& e : entries) {
      if (e.row >= rows || e.col >= cols) {
        throw std::out_of_range("SparseMatrix entry (" + std::to_string(e.row) + "," +
                                std::to_string(e.col) + ") outside " +
                                std::to_string(rows) + "x" + std::to_string(cols));
      }
      trips.emplace_back(as_index(e.row), as_index(e.col), e.value);
    }
    Storage m(as_index(rows), as_index(cols));
    m.setFromTriplets(trips.begin(), trips.end());
    return SparseMatrix(std::move(m));
  }

  static SparseMatrix identity(std::size_t n) {
    Storage m(as_index(n), as_index(n));
    m.setIdentity();
    return SparseMatrix(std::move(m));
  }

  static SparseMatrix diagonal(const DenseVector& d) {
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(d.size()));
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (d[i] != 0.0) {
        entries.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(i), d[i]});
      }
    }
    const auto n = static_cast<std::size_t>(d.size());
    return from_entries(n, n, entries);
  }

  static SparseMatrix from_dense(const DenseMatrix& d) {
    return SparseMatrix(Storage(d.sparseView(0.0, 0.0)));
  }

  std::size_t rows() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(m_.cols()); }
  std::size_t nnz() const noexcept { return static_cast<std::size_t>(m_.nonZeros()); }
  bool is_square() const noexcept { return m_.rows() == m_.cols(); }

  double coeff(std::size_t i, std::size_t j) const {
    check_bounds(i, j);
    return m_.coeff(as_index(i), as_index(j));
  }

  /// Entries in row-major order.
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(nnz());
    for (Eigen::Index r = 0; r < m_.outerSize(); ++r) {
      for (Storage::InnerIterator it(m_, r); it; ++it) {
        out.push_back({static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()),
                       it.value()});
      }
    }
    return out;
  }

  template <typename Fn>
  void for_each_in_row(std::size_t r, Fn&& fn) const {
    for (Storage::InnerIterator it(m_, as_index(r)); it; ++it) {
      fn(static_cast<std::size_t>(it.col()), it.value());
    }
  }

  DenseMatrix to_dense() const { return DenseMatrix(m_); }
  const Storage& storage() const noexcept { return m_; }

  SparseMatrix transpose() const { return SparseMatrix(Storage(m_.transpose())); }

  DenseVector row_sums() const {
    DenseVector s = DenseVector::Zero(m_.rows());
    for (Eigen::Index r = 0; r < m_.outerSize(); ++r) {
      for (Storage::InnerIterator it(m_, r); it; ++it) s[r] += it.value();
    }
    return s;
  }

  DenseVector diagonal_values() const { return DenseVector(m_.diagonal()); }

  /// Multiplies row i by s[i].
  SparseMatrix scale_rows(const DenseVector& s) const {
    if (static_cast<std::size_t>(s.size()) != rows()) {
      throw std::invalid_argument("scale_rows: scale vector length mismatch");
    }
    Storage m = m_;
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
      for (Storage::InnerIterator it(m, r); it; ++it) it.valueRef() *= s[r];
    }
    return SparseMatrix(std::move(m));
  }

  /// Zeroes the diagonal.
  SparseMatrix without_diagonal() const {
    Storage m = m_;
    m.prune([](Eigen::Index r, Eigen::Index c, double) { return r != c; });
    return SparseMatrix(std::move(m));
  }

  /// 1 where the entry is strictly positive, 0 elsewhere.
  SparseMatrix positive_indicator() const {
    Storage m = m_;
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
      for (Storage::InnerIterator it(m, r); it; ++it) it.valueRef() = it.value() > 0.0 ? 1.0 : 0.0;
    }
    return SparseMatrix(std::move(m));
  }

  SparseMatrix cwise_abs() const { return SparseMatrix(Storage(m_.cwiseAbs())); }

  /// Matrix power; power(0) is the identity.
  SparseMatrix power(unsigned exponent) const {
    require_square("power");
    SparseMatrix result = identity(rows());
    SparseMatrix base = *this;
    while (exponent > 0) {
      if (exponent & 1U) result = result * base;
      exponent >>= 1U;
      if (exponent > 0) base = base * base;
    }
    return result;
  }

  bool is_symmetric(double tol = 0.0) const {
    if (!is_square()) return false;
    const Storage diff = m_ - Storage(m_.transpose());
    for (Eigen::Index r = 0; r < diff.outerSize(); ++r) {
      for (Storage::InnerIterator it(diff, r); it; ++it) {
        if (std::abs(it.value()) > tol) return false;
      }
    }
    return true;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("sparse product: inner dimension mismatch");
    return SparseMatrix(Storage(a.m_ * b.m_));
  }

  friend DenseMatrix operator*(const SparseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != static_cast<std::size_t>(b.rows())) {
      throw std::invalid_argument("sparse-dense product: inner dimension mismatch");
    }
    return a.m_ * b;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    a.require_same_shape(b, "sum");
    return SparseMatrix(Storage(a.m_ + b.m_));
  }

  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    a.require_same_shape(b, "difference");
    return SparseMatrix(Storage(a.m_ - b.m_));
  }

  friend SparseMatrix operator*(double s, const SparseMatrix& a) {
    return SparseMatrix(Storage(s * a.m_));
  }

  SparseMatrix operator-() const { return SparseMatrix(Storage(-m_)); }

  /// Elementwise (Hadamard) product.
  SparseMatrix cwise_product(const SparseMatrix& b) const {
    require_same_shape(b, "elementwise product");
    return SparseMatrix(Storage(m_.cwiseProduct(b.m_)));
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.entries() == b.entries();
  }

 private:
  static std::ptrdiff_t as_index(std::size_t v) { return static_cast<std::ptrdiff_t>(v); }

  void check_bounds(std::size_t i, std::size_t j) const {
    if (i >= rows() || j >= cols()) throw std::out_of_range("SparseMatrix::coeff out of range");
  }
  void require_square(const char* what) const {
    if (!is_square()) throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  void require_same_shape(const SparseMatrix& b, const char* what) const {
    if (rows() != b.rows() || cols() != b.cols()) {
      throw std::invalid_argument(std::string("sparse ") + what + ": shape mismatch");
    }
  }

  Storage m_;
};

}  // namespace dsgc
