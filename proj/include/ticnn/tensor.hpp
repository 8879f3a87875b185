#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ticnn {

using Rng = std::mt19937;

/// Thrown when tensor shapes do not agree with an operation's contract.
class ShapeError : public std::runtime_error {
 public:
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using MatMap = Eigen::Map<MatX<Scalar>>;

template <typename Scalar>
using ConstMatMap = Eigen::Map<const MatX<Scalar>>;

inline std::string shape_to_string(const std::vector<Eigen::Index>& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

/// Dense n-dimensional array, row-major, with a same-shape gradient buffer.
template <typename Scalar>
class TensorT {
 public:
  TensorT() = default;

  explicit TensorT(std::vector<Eigen::Index> shape) : shape_(std::move(shape)) {
    for (Eigen::Index d : shape_) {
      if (d <= 0) throw ShapeError("tensor dimension must be positive, got shape " + shape_to_string(shape_));
    }
    data_ = VecX<Scalar>::Zero(size_of(shape_));
    grad_ = VecX<Scalar>::Zero(data_.size());
  }

  static Eigen::Index size_of(const std::vector<Eigen::Index>& shape) {
    Eigen::Index n = 1;
    for (Eigen::Index d : shape) n *= d;
    return n;
  }

  const std::vector<Eigen::Index>& shape() const { return shape_; }
  Eigen::Index rank() const { return static_cast<Eigen::Index>(shape_.size()); }
  Eigen::Index dim(std::size_t i) const { return shape_.at(i); }
  Eigen::Index size() const { return data_.size(); }

  VecX<Scalar>& data() { return data_; }
  const VecX<Scalar>& data() const { return data_; }
  VecX<Scalar>& grad() { return grad_; }
  const VecX<Scalar>& grad() const { return grad_; }

  Scalar& operator[](Eigen::Index i) { return data_[i]; }
  Scalar operator[](Eigen::Index i) const { return data_[i]; }

  void zero_grad() { grad_.setZero(); }

  /// View as a 2-D matrix [rows x cols]; rows*cols must equal size().
  MatMap<Scalar> as_matrix(Eigen::Index rows, Eigen::Index cols) {
    if (rows * cols != size())
      throw ShapeError("matrix view " + std::to_string(rows) + "x" + std::to_string(cols) +
                       " incompatible with tensor " + shape_to_string(shape_));
    return MatMap<Scalar>(data_.data(), rows, cols);
  }
  ConstMatMap<Scalar> as_matrix(Eigen::Index rows, Eigen::Index cols) const {
    if (rows * cols != size())
      throw ShapeError("matrix view " + std::to_string(rows) + "x" + std::to_string(cols) +
                       " incompatible with tensor " + shape_to_string(shape_));
    return ConstMatMap<Scalar>(data_.data(), rows, cols);
  }
  MatMap<Scalar> grad_matrix(Eigen::Index rows, Eigen::Index cols) {
    return MatMap<Scalar>(grad_.data(), rows, cols);
  }

  bool same_shape(const TensorT& other) const { return shape_ == other.shape_; }

  bool all_finite() const { return data_.allFinite(); }

  template <typename Other>
  TensorT<Other> cast() const {
    TensorT<Other> out(shape_);
    out.data() = data_.template cast<Other>();
    out.grad() = grad_.template cast<Other>();
    return out;
  }

  static TensorT from_values(std::vector<Eigen::Index> shape, std::initializer_list<Scalar> values) {
    TensorT t(std::move(shape));
    if (static_cast<Eigen::Index>(values.size()) != t.size())
      throw ShapeError("value count does not match shape " + shape_to_string(t.shape_));
    Eigen::Index i = 0;
    for (Scalar v : values) t.data_[i++] = v;
    return t;
  }

 private:
  std::vector<Eigen::Index> shape_;
  VecX<Scalar> data_;
  VecX<Scalar> grad_;
};

using Tensor = TensorT<float>;

/// Glorot-style uniform fill in +-sqrt(6/(fan_in+fan_out)).
template <typename Scalar>
void glorot_uniform(TensorT<Scalar>& t, Eigen::Index fan_in, Eigen::Index fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (Eigen::Index i = 0; i < t.size(); ++i) t[i] = static_cast<Scalar>(dist(rng));
}

template <typename Scalar>
void uniform_fill(TensorT<Scalar>& t, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> dist(lo, hi);
  for (Eigen::Index i = 0; i < t.size(); ++i) t[i] = static_cast<Scalar>(dist(rng));
}

}  // namespace ticnn
