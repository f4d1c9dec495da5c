#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace manakov {

// Dense row-major matrix of doubles.  Rows are contiguous, so a row doubles
// as a plain array for the kernel routines (leading dimension == cols()).
class Mat {
public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), d_(rows * cols, value) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return d_.size(); }
  bool empty() const { return d_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

  double* row(std::size_t i) { return d_.data() + i * cols_; }
  const double* row(std::size_t i) const { return d_.data() + i * cols_; }

  double* data() { return d_.data(); }
  const double* data() const { return d_.data(); }

  void fill(double value) { d_.assign(d_.size(), value); }

  void resize(std::size_t rows, std::size_t cols) {
    rows_ = rows;
    cols_ = cols;
    d_.assign(rows * cols, 0.0);
  }

  bool same_shape(const Mat& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> d_;
};

inline double maxabs(const Mat& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) r = std::max(r, std::fabs(m.data()[i]));
  return r;
}

inline double maxabs_diff(const Mat& a, const Mat& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("maxabs_diff: shape mismatch");
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    r = std::max(r, std::fabs(a.data()[i] - b.data()[i]));
  return r;
}

inline double frobenius(const Mat& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) acc += m.data()[i] * m.data()[i];
  return std::sqrt(acc);
}

}  // namespace manakov
