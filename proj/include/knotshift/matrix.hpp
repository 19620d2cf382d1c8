#pragma once

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "knotshift/errors.hpp"
#include "knotshift/ring.hpp"

namespace knotshift {

/// Dense integer matrix, row-major. Used for the knot matrix pair before
/// reduction into a specific ring.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool operator==(const IntMatrix&) const = default;
};

/// Dense matrix over Z/p^r with canonical residues.
class Matrix {
 public:
  Matrix(RingParams ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(RingParams ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % ring.modulus();
    return m;
  }

  static Matrix from_int(const IntMatrix& src, RingParams ring) {
    Matrix m(ring, src.rows, src.cols);
    for (std::size_t k = 0; k < src.data.size(); ++k) m.data_[k] = ring.reduce(src.data[k]);
    return m;
  }

  /// Matrix whose columns are the given vectors, each of length `dim`.
  static Matrix from_columns(RingParams ring, std::size_t dim, const std::vector<Vector>& columns) {
    Matrix m(ring, dim, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != dim) throw InputError("matrix: column length mismatch");
      for (std::size_t i = 0; i < dim; ++i) m(i, j) = ring.reduce_u(columns[j][i]);
    }
    return m;
  }

  [[nodiscard]] const RingParams& ring() const { return ring_; }
  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Residue& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Residue operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  [[nodiscard]] Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  [[nodiscard]] Vector operator*(const Vector& v) const {
    if (v.size() != cols_) throw InputError("matrix: vector length mismatch");
    Vector out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      Residue acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        acc = ring_.add(acc, ring_.mul((*this)(i, j), v[j]));
      }
      out[i] = acc;
    }
    return out;
  }

  [[nodiscard]] Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || !(ring_ == o.ring_)) throw InputError("matrix: product shape mismatch");
    Matrix out(ring_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        Residue a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          out(i, j) = ring_.add(out(i, j), ring_.mul(a, o(k, j)));
        }
      }
    }
    return out;
  }

  [[nodiscard]] Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix: difference shape mismatch");
    Matrix out(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = ring_.sub(data_[k], o.data_[k]);
    return out;
  }

  [[nodiscard]] Matrix scaled(Residue c) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = ring_.mul(x, c);
    return out;
  }

  [[nodiscard]] Matrix pow(std::uint64_t e) const {
    if (rows_ != cols_) throw InputError("matrix: power of a non-square matrix");
    Matrix result = identity(ring_, rows_);
    Matrix base = *this;
    while (e > 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e > 0) base = base * base;
    }
    return result;
  }

  [[nodiscard]] bool is_identity() const { return *this == identity(ring_, rows_); }

  /// Same entries reinterpreted in a smaller ring Z/p^s, s <= r.
  [[nodiscard]] Matrix reduced_to(RingParams target) const {
    Matrix out(target, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = target.reduce_u(data_[k]);
    return out;
  }

  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) os << ", ";
      os << '[';
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  RingParams ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

}  // namespace knotshift
