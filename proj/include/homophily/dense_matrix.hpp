#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace homophily {

/// Row-major m x m matrix. Small by construction (m is a class count).
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t m, T fill = T{}) : m_(m), data_(m * m, fill) {}

  DenseMatrix(std::initializer_list<std::initializer_list<T>> rows) : m_(rows.size()) {
    data_.reserve(m_ * m_);
    for (const auto& row : rows) {
      if (row.size() != m_) throw std::invalid_argument("matrix must be square");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t size() const noexcept { return m_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * m_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * m_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  T sum() const {
    T s{};
    for (const T& x : data_) s += x;
    return s;
  }

  T trace() const {
    T s{};
    for (std::size_t i = 0; i < m_; ++i) s += (*this)(i, i);
    return s;
  }

  std::vector<T> row_sums() const {
    std::vector<T> r(m_, T{});
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < m_; ++j) r[i] += (*this)(i, j);
    return r;
  }

  std::vector<T> column_sums() const {
    std::vector<T> c(m_, T{});
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < m_; ++j) c[j] += (*this)(i, j);
    return c;
  }

  std::size_t nonzero_count() const {
    std::size_t k = 0;
    for (const T& x : data_)
      if (x != T{}) ++k;
    return k;
  }

  std::size_t nonzero_diagonal_count() const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if ((*this)(i, i) != T{}) ++k;
    return k;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t m_{0};
  std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;

}  // namespace homophily
