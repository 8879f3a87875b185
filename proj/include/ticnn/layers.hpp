#pragma once

#include "ticnn/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

namespace ticnn {

enum class Mode { kTrain, kEval };
enum class Activation { kIdentity, kRelu, kSigmoid };

template <typename S>
struct NamedParam {
  std::string name;
  TensorT<S>* tensor;
  bool trainable;
};

/// A layer owns its parameters and caches whatever the backward pass needs.
/// Inputs carry a leading batch dimension.
template <typename S>
class Layer {
 public:
  virtual ~Layer() = default;
  virtual TensorT<S> forward(const TensorT<S>& x, Mode mode, Rng& rng) = 0;
  /// Accumulates parameter gradients and returns the input gradient.
  virtual TensorT<S> backward(const TensorT<S>& dy) = 0;
  virtual void collect(const std::string& prefix, std::vector<NamedParam<S>>& out) { (void)prefix; (void)out; }
};

template <typename S>
inline void apply_activation(TensorT<S>& t, Activation act) {
  switch (act) {
    case Activation::kIdentity:
      break;
    case Activation::kRelu:
      t.data() = t.data().cwiseMax(S(0));
      break;
    case Activation::kSigmoid:
      t.data() = (S(1) / (S(1) + (-t.data().array()).exp())).matrix();
      break;
  }
}

// ---------------------------------------------------------------------------
// Dense

template <typename S>
class DenseLayer : public Layer<S> {
 public:
  DenseLayer(Eigen::Index d_in, Eigen::Index d_out, Rng& rng)
      : weights_({d_out, d_in}), bias_({d_out}), d_in_(d_in), d_out_(d_out) {
    glorot_uniform(weights_, d_in, d_out, rng);
  }

  TensorT<S> forward(const TensorT<S>& x, Mode, Rng&) override {
    if (x.rank() != 2 || x.dim(1) != d_in_)
      throw ShapeError("dense expects [B x " + std::to_string(d_in_) + "], got " + shape_to_string(x.shape()));
    input_ = x;
    const Eigen::Index b = x.dim(0);
    TensorT<S> y({b, d_out_});
    y.as_matrix(b, d_out_).noalias() = x.as_matrix(b, d_in_) * weights_.as_matrix(d_out_, d_in_).transpose();
    y.as_matrix(b, d_out_).rowwise() += bias_.data().transpose();
    return y;
  }

  TensorT<S> backward(const TensorT<S>& dy) override {
    const Eigen::Index b = input_.dim(0);
    auto dym = dy.as_matrix(b, d_out_);
    weights_.grad_matrix(d_out_, d_in_).noalias() += dym.transpose() * input_.as_matrix(b, d_in_);
    bias_.grad() += dym.colwise().sum().transpose();
    TensorT<S> dx({b, d_in_});
    dx.as_matrix(b, d_in_).noalias() = dym * weights_.as_matrix(d_out_, d_in_);
    return dx;
  }

  void collect(const std::string& prefix, std::vector<NamedParam<S>>& out) override {
    out.push_back({prefix + ".weights", &weights_, true});
    out.push_back({prefix + ".bias", &bias_, true});
  }

  TensorT<S>& weights() { return weights_; }
  TensorT<S>& bias() { return bias_; }

 private:
  TensorT<S> weights_, bias_, input_;
  Eigen::Index d_in_, d_out_;
};

// ---------------------------------------------------------------------------
// Embedding

template <typename S>
class EmbeddingLayer : public Layer<S> {
 public:
  EmbeddingLayer(Eigen::Index vocab, Eigen::Index dim, Rng& rng) : table_({vocab, dim}), vocab_(vocab), dim_(dim) {
    uniform_fill(table_, -0.05, 0.05, rng);
  }

  /// x holds token indices as reals, shape [B x n].
  TensorT<S> forward(const TensorT<S>& x, Mode, Rng&) override {
    if (x.rank() != 2) throw ShapeError("embedding expects [B x n] indices, got " + shape_to_string(x.shape()));
    indices_ = x;
    const Eigen::Index b = x.dim(0), n = x.dim(1);
    TensorT<S> y({b, n, dim_});
    auto tab = table_.as_matrix(vocab_, dim_);
    auto ym = y.as_matrix(b * n, dim_);
    for (Eigen::Index i = 0; i < b * n; ++i) {
      const auto idx = static_cast<Eigen::Index>(x[i]);
      if (idx < 0 || idx >= vocab_)
        throw ShapeError("embedding index " + std::to_string(idx) + " out of range [0," + std::to_string(vocab_) +
                         ") at position " + std::to_string(i));
      ym.row(i) = tab.row(idx);
    }
    return y;
  }

  TensorT<S> backward(const TensorT<S>& dy) override {
    const Eigen::Index b = indices_.dim(0), n = indices_.dim(1);
    auto g = table_.grad_matrix(vocab_, dim_);
    auto dym = dy.as_matrix(b * n, dim_);
    for (Eigen::Index i = 0; i < b * n; ++i) g.row(static_cast<Eigen::Index>(indices_[i])) += dym.row(i);
    return TensorT<S>(indices_.shape());  // indices carry no gradient
  }

  void collect(const std::string& prefix, std::vector<NamedParam<S>>& out) override {
    out.push_back({prefix + ".table", &table_, true});
  }

  TensorT<S>& table() { return table_; }

 private:
  TensorT<S> table_, indices_;
  Eigen::Index vocab_, dim_;
};

// ---------------------------------------------------------------------------
// Conv1D over token sequences: [B x n x k] -> [B x (n-h+1) x M]

template <typename S>
class Conv1DLayer : public Layer<S> {
 public:
  Conv1DLayer(Eigen::Index filters, Eigen::Index h, Eigen::Index k, Rng& rng)
      : filters_({filters, h, k}), bias_({filters}), m_(filters), h_(h), k_(k) {
    glorot_uniform(filters_, h * k, filters, rng);
  }

  TensorT<S> forward(const TensorT<S>& x, Mode, Rng&) override {
    if (x.rank() != 3 || x.dim(2) != k_)
      throw ShapeError("conv1d expects [B x n x " + std::to_string(k_) + "], got " + shape_to_string(x.shape()));
    const Eigen::Index b = x.dim(0), n = x.dim(1);
    if (n < h_) throw ShapeError("conv1d sequence length " + std::to_string(n) + " shorter than filter " + std::to_string(h_));
    input_ = x;
    const Eigen::Index len = n - h_ + 1;
    TensorT<S> y({b, len, m_});
    auto f = filters_.as_matrix(m_, h_ * k_);
    MatX<S> unfolded(len, h_ * k_);
    for (Eigen::Index s = 0; s < b; ++s) {
      const S* base = x.data().data() + s * n * k_;
      for (Eigen::Index j = 0; j < len; ++j)
        unfolded.row(j) = Eigen::Map<const Eigen::Matrix<S, 1, Eigen::Dynamic>>(base + j * k_, h_ * k_);
      MatMap<S>(y.data().data() + s * len * m_, len, m_).noalias() = unfolded * f.transpose();
    }
    y.as_matrix(b * len, m_).rowwise() += bias_.data().transpose();
    return y;
  }

  TensorT<S> backward(const TensorT<S>& dy) override {
    const Eigen::Index b = input_.dim(0), n = input_.dim(1), len = n - h_ + 1;
    TensorT<S> dx(input_.shape());
    auto f = filters_.as_matrix(m_, h_ * k_);
    auto fg = filters_.grad_matrix(m_, h_ * k_);
    bias_.grad() += dy.as_matrix(b * len, m_).colwise().sum().transpose();
    MatX<S> unfolded(len, h_ * k_), dunfolded(len, h_ * k_);
    for (Eigen::Index s = 0; s < b; ++s) {
      const S* base = input_.data().data() + s * n * k_;
      for (Eigen::Index j = 0; j < len; ++j)
        unfolded.row(j) = Eigen::Map<const Eigen::Matrix<S, 1, Eigen::Dynamic>>(base + j * k_, h_ * k_);
      auto dym = ConstMatMap<S>(dy.data().data() + s * len * m_, len, m_);
      fg.noalias() += dym.transpose() * unfolded;
      dunfolded.noalias() = dym * f;
      S* dbase = dx.data().data() + s * n * k_;
      for (Eigen::Index j = 0; j < len; ++j)
        Eigen::Map<Eigen::Matrix<S, 1, Eigen::Dynamic>>(dbase + j * k_, h_ * k_) += dunfolded.row(j);
    }
    return dx;
  }

  void collect(const std::string& prefix, std::vector<NamedParam<S>>& out) override {
    out.push_back({prefix + ".filters", &filters_, true});
    out.push_back({prefix + ".bias", &bias_, true});
  }

  TensorT<S>& filters() { return filters_; }
  TensorT<S>& bias() { return bias_; }

 private:
  TensorT<S> filters_, bias_, input_;
  Eigen::Index m_, h_, k_;
};

// ---------------------------------------------------------------------------
// Conv2D, valid, stride 1: [B x H x W x C] -> [B x (H-Ka+1) x (W-Kb+1) x M]

template <typename S>
class Conv2DLayer : public Layer<S> {
 public:
  Conv2DLayer(Eigen::Index filters, Eigen::Index ka, Eigen::Index kb, Eigen::Index channels, Rng& rng)
      : filters_({filters, ka, kb, channels}), bias_({filters}), m_(filters), ka_(ka), kb_(kb), c_(channels) {
    glorot_uniform(filters_, ka * kb * channels, filters, rng);
  }

  TensorT<S> forward(const TensorT<S>& x, Mode, Rng&) override {
    if (x.rank() != 4 || x.dim(3) != c_)
      throw ShapeError("conv2d expects [B x H x W x " + std::to_string(c_) + "], got " + shape_to_string(x.shape()));
    const Eigen::Index b = x.dim(0), h = x.dim(1), w = x.dim(2);
    if (h < ka_ || w < kb_) throw ShapeError("conv2d input " + shape_to_string(x.shape()) + " smaller than filter");
    input_ = x;
    const Eigen::Index ho = h - ka_ + 1, wo = w - kb_ + 1;
    TensorT<S> y({b, ho, wo, m_});
    auto f = filters_.as_matrix(m_, ka_ * kb_ * c_);
    MatX<S> patches(ho * wo, ka_ * kb_ * c_);
    for (Eigen::Index s = 0; s < b; ++s) {
      im2col(x, s, patches);
      MatMap<S>(y.data().data() + s * ho * wo * m_, ho * wo, m_).noalias() = patches * f.transpose();
    }
    y.as_matrix(b * ho * wo, m_).rowwise() += bias_.data().transpose();
    return y;
  }

  TensorT<S> backward(const TensorT<S>& dy) override {
    const Eigen::Index b = input_.dim(0), h = input_.dim(1), w = input_.dim(2);
    const Eigen::Index ho = h - ka_ + 1, wo = w - kb_ + 1;
    TensorT<S> dx(input_.shape());
    auto f = filters_.as_matrix(m_, ka_ * kb_ * c_);
    auto fg = filters_.grad_matrix(m_, ka_ * kb_ * c_);
    bias_.grad() += dy.as_matrix(b * ho * wo, m_).colwise().sum().transpose();
    MatX<S> patches(ho * wo, ka_ * kb_ * c_), dpatches(ho * wo, ka_ * kb_ * c_);
    for (Eigen::Index s = 0; s < b; ++s) {
      im2col(input_, s, patches);
      auto dym = ConstMatMap<S>(dy.data().data() + s * ho * wo * m_, ho * wo, m_);
      fg.noalias() += dym.transpose() * patches;
      dpatches.noalias() = dym * f;
      col2im(dx, s, dpatches);
    }
    return dx;
  }

  void collect(const std::string& prefix, std::vector<NamedParam<S>>& out) override {
    out.push_back({prefix + ".filters", &filters_, true});
    out.push_back({prefix + ".bias", &bias_, true});
  }

  TensorT<S>& filters() { return filters_; }
  TensorT<S>& bias() { return bias_; }

 private:
  void im2col(const TensorT<S>& x, Eigen::Index sample, MatX<S>& patches) const {
    const Eigen::Index h = x.dim(1), w = x.dim(2);
    const Eigen::Index ho = h - ka_ + 1, wo = w - kb_ + 1;
    const S* base = x.data().data() + sample * h * w * c_;
    for (Eigen::Index i = 0; i < ho; ++i)
      for (Eigen::Index j = 0; j < wo; ++j) {
        S* row = patches.data() + (i * wo + j) * patches.cols();
        for (Eigen::Index a = 0; a < ka_; ++a)
          std::copy_n(base + ((i + a) * w + j) * c_, kb_ * c_, row + a * kb_ * c_);
      }
  }

  void col2im(TensorT<S>& dx, Eigen::Index sample, const MatX<S>& dpatches) const {
    const Eigen::Index h = dx.dim(1), w = dx.dim(2);
    const Eigen::Index ho = h - ka_ + 1, wo = w - kb_ + 1;
    S* base = dx.data().data() + sample * h * w * c_;
    for (Eigen::Index i = 0; i < ho; ++i)
      for (Eigen::Index j = 0; j < wo; ++j) {
        const S* row = dpatches.data() + (i * wo + j) * dpatches.cols();
        for (Eigen::Index a = 0; a < ka_; ++a) {
          S* dst = base + ((i + a) * w + j) * c_;
          const S* src = row + a * kb_ * c_;
          for (Eigen::Index t = 0; t < kb_ * c_; ++t) dst[t] += src[t];
        }
      }
  }

  TensorT<S> filters_, bias_, input_;
  Eigen::Index m_, ka_, kb_, c_;
};

// ---------------------------------------------------------------------------
// Max pooling, non-overlapping, trailing remainder dropped

template <typename S>
class MaxPool1DLayer : public Layer<S> {
 public:
  explicit MaxPool1DLayer(Eigen::Index pool) : pool_(pool) {
    if (pool < 1) throw ShapeError("pool size must be >= 1");
  }

  TensorT<S> forward(const TensorT<S>& x, Mode, Rng&) override {
    if (x.rank() != 3) throw ShapeError("maxpool1d expects [B x L x M], got " + shape_to_string(x.shape()));
    const Eigen::Index b = x.dim(0), len = x.dim(1), m = x.dim(2);
    if (pool_ > len) throw ShapeError("pool " + std::to_string(pool_) + " exceeds extent " + std::to_string(len));
    in_shape_ = x.shape();
    const Eigen::Index lo = len / pool_;
    TensorT<S> y({b, lo, m});
    argmax_.assign(static_cast<std::size_t>(b * lo * m), 0);
    for (Eigen::Index s = 0; s < b; ++s)
      for (Eigen::Index j = 0; j < lo; ++j)
        for (Eigen::Index f = 0; f < m; ++f) {
          Eigen::Index best = (s * len + j * pool_) * m + f;
          for (Eigen::Index t = 1; t < pool_; ++t) {
            const Eigen::Index cur = (s * len + j * pool_ + t) * m + f;
            if (x[cur] > x[best]) best = cur;
          }
          const Eigen::Index o = (s * lo + j) * m + f;
          y[o] = x[best];
          argmax_[static_cast<std::size_t>(o)] = best;
        }
    return y;
  }

  TensorT<S> backward(const TensorT<S>& dy) override {
    TensorT<S> dx(in_shape_);
    for (Eigen::Index o = 0; o < dy.size(); ++o) dx[argmax_[static_cast<std::size_t>(o)]] += dy[o];
    return dx;
  }

 private:
  Eigen::Index pool_;
  std::vector<Eigen::Index> in_shape_;
  std::vector<Eigen::Index> argmax_;
};

template <typename S>
class MaxPool2DLayer : public Layer<S> {
 public:
  MaxPool2DLayer(Eigen::Index pa, Eigen::Index pb) : pa_(pa), pb_(pb) {
    if (pa < 1 || pb < 1) throw ShapeError("pool size must be >= 1");
  }

  TensorT<S> forward(const TensorT<S>& x, Mode, Rng&) override {
    if (x.rank() != 4) throw ShapeError("maxpool2d expects [B x H x W x C], got " + shape_to_string(x.shape()));
    const Eigen::Index b = x.dim(0), h = x.dim(1), w = x.dim(2), c = x.dim(3);
    if (pa_ > h || pb_ > w) throw ShapeError("pool window exceeds input extent " + shape_to_string(x.shape()));
    in_shape_ = x.shape();
    const Eigen::Index ho = h / pa_, wo = w / pb_;
    TensorT<S> y({b, ho, wo, c});
    argmax_.assign(static_cast<std::size_t>(y.size()), 0);
    for (Eigen::Index s = 0; s < b; ++s)
      for (Eigen::Index i = 0; i < ho; ++i)
        for (Eigen::Index j = 0; j < wo; ++j)
          for (Eigen::Index f = 0; f < c; ++f) {
            Eigen::Index best = ((s * h + i * pa_) * w + j * pb_) * c + f;
            for (Eigen::Index a = 0; a < pa_; ++a)
              for (Eigen::Index t = 0; t < pb_; ++t) {
                const Eigen::Index cur = ((s * h + i * pa_ + a) * w + j * pb_ + t) * c + f;
                if (x[cur] > x[best]) best = cur;
              }
            const Eigen::Index o = ((s * ho + i) * wo + j) * c + f;
            y[o] = x[best];
            argmax_[static_cast<std::size_t>(o)] = best;
          }
    return y;
  }

  TensorT<S> backward(const TensorT<S>& dy) override {
    TensorT<S> dx(in_shape_);
    for (Eigen::Index o = 0; o < dy.size(); ++o) dx[argmax_[static_cast<std::size_t>(o)]] += dy[o];
    return dx;
  }

 private:
  Eigen::Index pa_, pb_;
  std::vector<Eigen::Index> in_shape_;
  std::vector<Eigen::Index> argmax_;
};

// ---------------------------------------------------------------------------
// Elementwise activations

template <typename S>
class ReluLayer : public Layer<S> {
 public:
  TensorT<S> forward(const TensorT<S>& x, Mode, Rng&) override {
    input_ = x;
    TensorT<S> y(x.shape());
    y.data() = x.data().cwiseMax(S(0));
    return y;
  }
  TensorT<S> backward(const TensorT<S>& dy) override {
    TensorT<S> dx(input_.shape());
    dx.data() = (input_.data().array() > S(0)).template cast<S>() * dy.data().array();
    return dx;
  }

 private:
  TensorT<S> input_;
};

template <typename S>
class SigmoidLayer : public Layer<S> {
 public:
  TensorT<S> forward(const TensorT<S>& x, Mode, Rng&) override {
    output_ = TensorT<S>(x.shape());
    output_.data() = (S(1) / (S(1) + (-x.data().array()).exp())).matrix();
    return output_;
  }
  TensorT<S> backward(const TensorT<S>& dy) override {
    TensorT<S> dx(output_.shape());
    dx.data() = dy.data().array() * output_.data().array() * (S(1) - output_.data().array());
    return dx;
  }

 private:
  TensorT<S> output_;
};

// ---------------------------------------------------------------------------
// Batch normalization over the feature axis of [B x F]

template <typename S>
class BatchNormLayer : public Layer<S> {
 public:
  explicit BatchNormLayer(Eigen::Index features, S momentum = S(0.99), S eps = S(1e-5))
      : gamma_({features}), beta_({features}), running_mean_({features}), running_var_({features}),
        features_(features), momentum_(momentum), eps_(eps) {
    gamma_.data().setOnes();
    running_var_.data().setOnes();
  }

  TensorT<S> forward(const TensorT<S>& x, Mode mode, Rng&) override {
    if (x.rank() != 2 || x.dim(1) != features_)
      throw ShapeError("batchnorm expects [B x " + std::to_string(features_) + "], got " + shape_to_string(x.shape()));
    const Eigen::Index b = x.dim(0);
    mode_ = mode;
    TensorT<S> y(x.shape());
    auto xm = x.as_matrix(b, features_);
    auto ym = y.as_matrix(b, features_);
    if (mode == Mode::kTrain) {
      if (b < 2) throw ShapeError("batchnorm in train mode needs batch size >= 2, got " + std::to_string(b));
      batch_mean_ = xm.colwise().mean().transpose();
      batch_var_ = ((xm.rowwise() - batch_mean_.transpose()).array().square().colwise().sum() / S(b)).transpose();
      inv_std_ = (batch_var_.array() + eps_).rsqrt();
      xhat_ = (xm.rowwise() - batch_mean_.transpose()).array().rowwise() * inv_std_.transpose().array();
      ym = (xhat_.array().rowwise() * gamma_.data().transpose().array()).rowwise() + beta_.data().transpose().array();
      running_mean_.data() = momentum_ * running_mean_.data() + (S(1) - momentum_) * batch_mean_;
      running_var_.data() = momentum_ * running_var_.data() + (S(1) - momentum_) * batch_var_;
    } else {
      VecX<S> inv = (running_var_.data().array() + eps_).rsqrt();
      ym = (((xm.rowwise() - running_mean_.data().transpose()).array().rowwise() * inv.transpose().array())
                .rowwise() * gamma_.data().transpose().array())
               .rowwise() + beta_.data().transpose().array();
      eval_scale_ = gamma_.data().array() * inv.array();
    }
    return y;
  }

  TensorT<S> backward(const TensorT<S>& dy) override {
    const Eigen::Index b = dy.dim(0);
    TensorT<S> dx(dy.shape());
    auto dym = dy.as_matrix(b, features_);
    auto dxm = dx.as_matrix(b, features_);
    if (mode_ == Mode::kEval) {
      dxm = dym.array().rowwise() * eval_scale_.transpose().array();
      return dx;
    }
    beta_.grad() += dym.colwise().sum().transpose();
    gamma_.grad() += (dym.array() * xhat_.array()).colwise().sum().transpose().matrix();
    // dx = (gamma / std) * (dy - mean(dy) - xhat * mean(dy * xhat)) per feature
    VecX<S> mean_dy = dym.colwise().mean().transpose();
    VecX<S> mean_dyx = (dym.array() * xhat_.array()).colwise().mean().transpose();
    dxm = ((dym.rowwise() - mean_dy.transpose()).array() -
           xhat_.array().rowwise() * mean_dyx.transpose().array())
              .rowwise() * (gamma_.data().array() * inv_std_.array()).transpose().array();
    return dx;
  }

  void collect(const std::string& prefix, std::vector<NamedParam<S>>& out) override {
    out.push_back({prefix + ".gamma", &gamma_, true});
    out.push_back({prefix + ".beta", &beta_, true});
    out.push_back({prefix + ".running_mean", &running_mean_, false});
    out.push_back({prefix + ".running_var", &running_var_, false});
  }

 private:
  TensorT<S> gamma_, beta_, running_mean_, running_var_;
  Eigen::Index features_;
  S momentum_, eps_;
  Mode mode_ = Mode::kEval;
  VecX<S> batch_mean_, batch_var_, inv_std_, eval_scale_;
  MatX<S> xhat_;
};

// ---------------------------------------------------------------------------
// Classic dropout: Bernoulli(p) keep mask at train time, scale by p at eval

template <typename S>
class DropoutLayer : public Layer<S> {
 public:
  explicit DropoutLayer(S keep_prob) : p_(keep_prob) {
    if (!(keep_prob > S(0) && keep_prob < S(1))) throw ShapeError("dropout keep probability must lie in (0,1)");
  }

  TensorT<S> forward(const TensorT<S>& x, Mode mode, Rng& rng) override {
    mode_ = mode;
    TensorT<S> y(x.shape());
    if (mode == Mode::kTrain) {
      mask_.resize(x.size());
      std::bernoulli_distribution keep(static_cast<double>(p_));
      for (Eigen::Index i = 0; i < x.size(); ++i) mask_[i] = keep(rng) ? S(1) : S(0);
      y.data() = x.data().array() * mask_.array();
    } else {
      y.data() = x.data() * p_;
    }
    return y;
  }

  TensorT<S> backward(const TensorT<S>& dy) override {
    TensorT<S> dx(dy.shape());
    if (mode_ == Mode::kTrain)
      dx.data() = dy.data().array() * mask_.array();
    else
      dx.data() = dy.data() * p_;
    return dx;
  }

 private:
  S p_;
  Mode mode_ = Mode::kEval;
  VecX<S> mask_;
};

// ---------------------------------------------------------------------------
// Flatten [B x ...] -> [B x prod]

template <typename S>
class FlattenLayer : public Layer<S> {
 public:
  TensorT<S> forward(const TensorT<S>& x, Mode, Rng&) override {
    in_shape_ = x.shape();
    TensorT<S> y({x.dim(0), x.size() / x.dim(0)});
    y.data() = x.data();
    return y;
  }
  TensorT<S> backward(const TensorT<S>& dy) override {
    TensorT<S> dx(in_shape_);
    dx.data() = dy.data();
    return dx;
  }

 private:
  std::vector<Eigen::Index> in_shape_;
};

// ---------------------------------------------------------------------------
// Sequential stack with named sublayers

template <typename S>
class Stack {
 public:
  void add(std::string name, std::unique_ptr<Layer<S>> layer) {
    layers_.emplace_back(std::move(name), std::move(layer));
  }

  TensorT<S> forward(TensorT<S> x, Mode mode, Rng& rng) {
    for (auto& [name, layer] : layers_) x = layer->forward(x, mode, rng);
    return x;
  }

  TensorT<S> backward(TensorT<S> dy) {
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) dy = it->second->backward(dy);
    return dy;
  }

  void collect(const std::string& prefix, std::vector<NamedParam<S>>& out) {
    for (auto& [name, layer] : layers_) layer->collect(prefix + "." + name, out);
  }

  bool empty() const { return layers_.empty(); }

 private:
  std::vector<std::pair<std::string, std::unique_ptr<Layer<S>>>> layers_;
};

}  // namespace ticnn
