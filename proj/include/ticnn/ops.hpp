#pragma once

#include "ticnn/layers.hpp"

namespace ticnn {

// Single-sample convenience surface over the batch layers. Parameters are
// supplied by the caller; shapes follow the layer contracts without the
// batch axis.

template <typename S>
TensorT<S> conv1d_forward(const TensorT<S>& input, const TensorT<S>& filters, const TensorT<S>& bias,
                          Activation act = Activation::kIdentity) {
  if (filters.rank() != 3) throw ShapeError("conv1d filters must be [M x h x k]");
  if (input.rank() != 2 || input.dim(1) != filters.dim(2))
    throw ShapeError("conv1d input " + shape_to_string(input.shape()) + " does not match filter width " +
                     std::to_string(filters.dim(2)));
  Rng rng(0);
  Conv1DLayer<S> layer(filters.dim(0), filters.dim(1), filters.dim(2), rng);
  layer.filters() = filters;
  layer.bias() = bias;
  TensorT<S> x({1, input.dim(0), input.dim(1)});
  x.data() = input.data();
  TensorT<S> y = layer.forward(x, Mode::kEval, rng);
  TensorT<S> out({y.dim(1), y.dim(2)});
  out.data() = y.data();
  apply_activation(out, act);
  return out;
}

template <typename S>
TensorT<S> conv2d_forward(const TensorT<S>& input, const TensorT<S>& filters, const TensorT<S>& bias) {
  if (filters.rank() != 4) throw ShapeError("conv2d filters must be [M x Ka x Kb x C]");
  if (input.rank() != 3 || input.dim(2) != filters.dim(3))
    throw ShapeError("conv2d channel mismatch: input " + shape_to_string(input.shape()) + " vs filters " +
                     shape_to_string(filters.shape()));
  Rng rng(0);
  Conv2DLayer<S> layer(filters.dim(0), filters.dim(1), filters.dim(2), filters.dim(3), rng);
  layer.filters() = filters;
  layer.bias() = bias;
  TensorT<S> x({1, input.dim(0), input.dim(1), input.dim(2)});
  x.data() = input.data();
  TensorT<S> y = layer.forward(x, Mode::kEval, rng);
  TensorT<S> out({y.dim(1), y.dim(2), y.dim(3)});
  out.data() = y.data();
  return out;
}

template <typename S>
TensorT<S> maxpool1d_forward(const TensorT<S>& input, Eigen::Index pool) {
  Rng rng(0);
  MaxPool1DLayer<S> layer(pool);
  TensorT<S> x({1, input.dim(0), input.rank() == 2 ? input.dim(1) : 1});
  x.data() = input.data();
  TensorT<S> y = layer.forward(x, Mode::kEval, rng);
  TensorT<S> out(input.rank() == 2 ? std::vector<Eigen::Index>{y.dim(1), y.dim(2)}
                                   : std::vector<Eigen::Index>{y.dim(1)});
  out.data() = y.data();
  return out;
}

template <typename S>
TensorT<S> maxpool2d_forward(const TensorT<S>& input, Eigen::Index pa, Eigen::Index pb) {
  Rng rng(0);
  MaxPool2DLayer<S> layer(pa, pb);
  TensorT<S> x({1, input.dim(0), input.dim(1), input.dim(2)});
  x.data() = input.data();
  TensorT<S> y = layer.forward(x, Mode::kEval, rng);
  TensorT<S> out({y.dim(1), y.dim(2), y.dim(3)});
  out.data() = y.data();
  return out;
}

template <typename S>
TensorT<S> dense_forward(const TensorT<S>& input, const TensorT<S>& weights, const TensorT<S>& bias,
                         Activation act = Activation::kIdentity) {
  if (weights.rank() != 2 || input.size() != weights.dim(1))
    throw ShapeError("dense input size " + std::to_string(input.size()) + " does not match weights " +
                     shape_to_string(weights.shape()));
  Rng rng(0);
  DenseLayer<S> layer(weights.dim(1), weights.dim(0), rng);
  layer.weights() = weights;
  layer.bias() = bias;
  TensorT<S> x({1, input.size()});
  x.data() = input.data();
  TensorT<S> y = layer.forward(x, Mode::kEval, rng);
  TensorT<S> out({y.dim(1)});
  out.data() = y.data();
  apply_activation(out, act);
  return out;
}

template <typename S>
TensorT<S> embedding_forward(const std::vector<Eigen::Index>& indices, const TensorT<S>& table) {
  Rng rng(0);
  EmbeddingLayer<S> layer(table.dim(0), table.dim(1), rng);
  layer.table() = table;
  TensorT<S> x({1, static_cast<Eigen::Index>(indices.size())});
  for (std::size_t i = 0; i < indices.size(); ++i) x[static_cast<Eigen::Index>(i)] = static_cast<S>(indices[i]);
  TensorT<S> y = layer.forward(x, Mode::kEval, rng);
  TensorT<S> out({y.dim(1), y.dim(2)});
  out.data() = y.data();
  return out;
}

template <typename S>
TensorT<S> dropout_apply(const TensorT<S>& input, S keep_prob, Mode mode, std::uint32_t seed) {
  DropoutLayer<S> layer(keep_prob);
  Rng rng(seed);
  return layer.forward(input, mode, rng);
}

// ---------------------------------------------------------------------------
// Softmax and negative log-likelihood

/// Row-wise stable softmax of [B x T] scores.
template <typename S>
TensorT<S> softmax_rows(const TensorT<S>& scores) {
  const Eigen::Index b = scores.dim(0), t = scores.dim(1);
  TensorT<S> probs(scores.shape());
  auto sm = scores.as_matrix(b, t);
  auto pm = probs.as_matrix(b, t);
  for (Eigen::Index i = 0; i < b; ++i) {
    const S mx = sm.row(i).maxCoeff();
    pm.row(i) = (sm.row(i).array() - mx).exp();
    pm.row(i) /= pm.row(i).sum();
  }
  return probs;
}

/// p(tau) = exp(s_tau) / sum exp(s_i), with max-subtraction.
template <typename S>
TensorT<S> class_probabilities(const TensorT<S>& scores) {
  TensorT<S> x({1, scores.size()});
  x.data() = scores.data();
  TensorT<S> p = softmax_rows(x);
  TensorT<S> out({scores.size()});
  out.data() = p.data();
  return out;
}

/// log(sum exp s_i) - s_tau; always >= 0.
template <typename S>
S nll_loss(const TensorT<S>& scores, Eigen::Index true_tag) {
  if (true_tag < 0 || true_tag >= scores.size()) throw ShapeError("true_tag out of range");
  const S mx = scores.data().maxCoeff();
  const S lse = mx + std::log((scores.data().array() - mx).exp().sum());
  return lse - scores[true_tag];
}

/// Mean NLL over a batch of [B x T] scores; fills dscores with d(mean loss)/ds.
template <typename S>
S nll_loss_batch(const TensorT<S>& scores, const std::vector<int>& labels, TensorT<S>* dscores = nullptr) {
  const Eigen::Index b = scores.dim(0), t = scores.dim(1);
  if (static_cast<Eigen::Index>(labels.size()) != b) throw ShapeError("label count does not match batch");
  TensorT<S> probs = softmax_rows(scores);
  S total = S(0);
  for (Eigen::Index i = 0; i < b; ++i) {
    TensorT<S> row({t});
    row.data() = scores.as_matrix(b, t).row(i).transpose();
    total += nll_loss(row, labels[i]);
  }
  if (dscores) {
    *dscores = probs;
    auto dm = dscores->as_matrix(b, t);
    for (Eigen::Index i = 0; i < b; ++i) dm(i, labels[i]) -= S(1);
    dscores->data() /= S(b);
  }
  return total / S(b);
}

}  // namespace ticnn
