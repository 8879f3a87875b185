#pragma once

#include "ticnn/ops.hpp"

#include <nlohmann/json.hpp>

namespace ticnn {

/// Every architectural hyperparameter of the two-branch network.
struct ModelConfig {
  Eigen::Index vocab_size = 20000;
  Eigen::Index seq_len = 1000;
  Eigen::Index embed_dim = 100;
  Eigen::Index text_filters = 10;
  Eigen::Index text_filter_h = 3;
  Eigen::Index text_pool = 2;
  std::vector<Eigen::Index> conv_channels = {32, 32, 32};
  std::pair<Eigen::Index, Eigen::Index> image_filter = {3, 3};
  std::pair<Eigen::Index, Eigen::Index> image_pool = {2, 2};
  Eigen::Index image_size = 50;
  Eigen::Index hidden_dim = 128;
  std::pair<double, double> dropout_pair = {0.5, 0.8};
  Eigen::Index classes = 2;
  Eigen::Index text_explicit_dim = 31;
  Eigen::Index image_explicit_dim = 4;

  void validate() const {
    auto positive = [](Eigen::Index v, const char* what) {
      if (v < 1) throw ShapeError(std::string(what) + " must be positive");
    };
    positive(vocab_size, "vocab_size");
    positive(seq_len, "seq_len");
    positive(embed_dim, "embed_dim");
    positive(text_filters, "text_filters");
    positive(text_filter_h, "text_filter_h");
    positive(text_pool, "text_pool");
    positive(image_size, "image_size");
    positive(hidden_dim, "hidden_dim");
    positive(classes, "classes");
    if (conv_channels.empty()) throw ShapeError("conv_channels must name at least one layer");
    for (Eigen::Index c : conv_channels) positive(c, "conv_channels entry");
    auto keep = [](double p) { return p > 0.0 && p < 1.0; };
    if (!keep(dropout_pair.first) || !keep(dropout_pair.second))
      throw ShapeError("dropout probabilities must lie in (0,1)");
  }
};

inline nlohmann::json config_to_json(const ModelConfig& c) {
  return nlohmann::json{{"vocab_size", c.vocab_size},
                        {"seq_len", c.seq_len},
                        {"embed_dim", c.embed_dim},
                        {"text_filters", c.text_filters},
                        {"text_filter_h", c.text_filter_h},
                        {"text_pool", c.text_pool},
                        {"conv_channels", c.conv_channels},
                        {"image_filter", {c.image_filter.first, c.image_filter.second}},
                        {"image_pool", {c.image_pool.first, c.image_pool.second}},
                        {"image_size", c.image_size},
                        {"hidden_dim", c.hidden_dim},
                        {"dropout_pair", {c.dropout_pair.first, c.dropout_pair.second}},
                        {"classes", c.classes},
                        {"text_explicit_dim", c.text_explicit_dim},
                        {"image_explicit_dim", c.image_explicit_dim}};
}

inline ModelConfig config_from_json(const nlohmann::json& j) {
  ModelConfig c;
  c.vocab_size = j.at("vocab_size");
  c.seq_len = j.at("seq_len");
  c.embed_dim = j.at("embed_dim");
  c.text_filters = j.at("text_filters");
  c.text_filter_h = j.at("text_filter_h");
  c.text_pool = j.at("text_pool");
  c.conv_channels = j.at("conv_channels").get<std::vector<Eigen::Index>>();
  c.image_filter = {j.at("image_filter")[0], j.at("image_filter")[1]};
  c.image_pool = {j.at("image_pool")[0], j.at("image_pool")[1]};
  c.image_size = j.at("image_size");
  c.hidden_dim = j.at("hidden_dim");
  c.dropout_pair = {j.at("dropout_pair")[0], j.at("dropout_pair")[1]};
  c.classes = j.at("classes");
  c.text_explicit_dim = j.at("text_explicit_dim");
  c.image_explicit_dim = j.at("image_explicit_dim");
  c.validate();
  return c;
}

/// One model-ready mini-batch. Token indices are stored as reals.
template <typename S>
struct BatchT {
  TensorT<S> tokens;          // [B x n]
  TensorT<S> text_explicit;   // [B x 31]
  TensorT<S> image;           // [B x H x W x 3]
  TensorT<S> image_explicit;  // [B x 4]
  std::vector<int> labels;    // 0 = real, 1 = fake
};

using Batch = BatchT<float>;

inline constexpr int kLabelReal = 0;
inline constexpr int kLabelFake = 1;

/// Argmax with the tie going to fake (flag-for-review).
template <typename S>
int predict_label(const TensorT<S>& prob_row) {
  return prob_row[kLabelFake] >= prob_row[kLabelReal] ? kLabelFake : kLabelReal;
}

/// The two-branch, four-subbranch architecture. Explicit and latent
/// subbranches merge by elementwise sum inside each branch; the two branch
/// vectors are concatenated (text first) and classified.
template <typename S>
class TiCnnModelT {
 public:
  TiCnnModelT(const ModelConfig& cfg, std::uint32_t seed) : cfg_(cfg) {
    cfg.validate();
    check_sizing();
    Rng rng(seed);
    const Eigen::Index hid = cfg.hidden_dim;

    text_explicit_.add("dense1", std::make_unique<DenseLayer<S>>(cfg.text_explicit_dim, hid, rng));
    text_explicit_.add("bn1", std::make_unique<BatchNormLayer<S>>(hid));
    text_explicit_.add("relu", std::make_unique<ReluLayer<S>>());

    text_latent_.add("embedding", std::make_unique<EmbeddingLayer<S>>(cfg.vocab_size, cfg.embed_dim, rng));
    text_latent_.add("dropout_a", std::make_unique<DropoutLayer<S>>(static_cast<S>(cfg.dropout_pair.first)));
    text_latent_.add("conv1", std::make_unique<Conv1DLayer<S>>(cfg.text_filters, cfg.text_filter_h, cfg.embed_dim, rng));
    text_latent_.add("pool1", std::make_unique<MaxPool1DLayer<S>>(cfg.text_pool));
    text_latent_.add("flatten", std::make_unique<FlattenLayer<S>>());
    text_latent_.add("dense1", std::make_unique<DenseLayer<S>>(text_flat_dim(), hid, rng));
    text_latent_.add("bn1", std::make_unique<BatchNormLayer<S>>(hid));
    text_latent_.add("relu", std::make_unique<ReluLayer<S>>());
    text_latent_.add("dropout_b", std::make_unique<DropoutLayer<S>>(static_cast<S>(cfg.dropout_pair.second)));

    Eigen::Index ch = 3;
    for (std::size_t l = 0; l < cfg.conv_channels.size(); ++l) {
      const std::string idx = std::to_string(l + 1);
      image_latent_.add("conv" + idx, std::make_unique<Conv2DLayer<S>>(cfg.conv_channels[l], cfg.image_filter.first,
                                                                       cfg.image_filter.second, ch, rng));
      image_latent_.add("relu" + idx, std::make_unique<ReluLayer<S>>());
      image_latent_.add("dropout" + idx, std::make_unique<DropoutLayer<S>>(static_cast<S>(cfg.dropout_pair.second)));
      image_latent_.add("pool" + idx, std::make_unique<MaxPool2DLayer<S>>(cfg.image_pool.first, cfg.image_pool.second));
      ch = cfg.conv_channels[l];
    }
    image_latent_.add("flatten", std::make_unique<FlattenLayer<S>>());
    image_latent_.add("dense1", std::make_unique<DenseLayer<S>>(image_flat_dim(), hid, rng));
    image_latent_.add("bn1", std::make_unique<BatchNormLayer<S>>(hid));
    image_latent_.add("relu", std::make_unique<ReluLayer<S>>());

    image_explicit_.add("dense1", std::make_unique<DenseLayer<S>>(cfg.image_explicit_dim, hid, rng));
    image_explicit_.add("bn1", std::make_unique<BatchNormLayer<S>>(hid));
    image_explicit_.add("relu", std::make_unique<ReluLayer<S>>());

    head_.add("relu", std::make_unique<ReluLayer<S>>());
    head_.add("dense1", std::make_unique<DenseLayer<S>>(2 * hid, hid, rng));
    head_.add("bn1", std::make_unique<BatchNormLayer<S>>(hid));
    head_.add("output", std::make_unique<DenseLayer<S>>(hid, cfg.classes, rng));
  }

  const ModelConfig& config() const { return cfg_; }

  /// Raw class scores [B x T].
  TensorT<S> scores(const BatchT<S>& batch, Mode mode, Rng& rng) {
    check_batch(batch);
    const Eigen::Index b = batch.tokens.dim(0), hid = cfg_.hidden_dim;
    TensorT<S> te = text_explicit_.forward(batch.text_explicit, mode, rng);
    TensorT<S> tl = text_latent_.forward(batch.tokens, mode, rng);
    TensorT<S> ie = image_explicit_.forward(batch.image_explicit, mode, rng);
    TensorT<S> il = image_latent_.forward(batch.image, mode, rng);
    TensorT<S> merged({b, 2 * hid});
    auto mm = merged.as_matrix(b, 2 * hid);
    mm.leftCols(hid) = te.as_matrix(b, hid) + tl.as_matrix(b, hid);
    mm.rightCols(hid) = ie.as_matrix(b, hid) + il.as_matrix(b, hid);
    return head_.forward(std::move(merged), mode, rng);
  }

  /// Class probabilities [B x T]; rows sum to 1.
  TensorT<S> forward(const BatchT<S>& batch, Mode mode, Rng& rng) {
    return softmax_rows(scores(batch, mode, rng));
  }

  /// Propagates d(loss)/d(scores) into every parameter's grad buffer.
  void backward(const TensorT<S>& dscores) {
    const Eigen::Index b = dscores.dim(0), hid = cfg_.hidden_dim;
    TensorT<S> dmerged = head_.backward(dscores);
    auto dm = dmerged.as_matrix(b, 2 * hid);
    TensorT<S> dtext({b, hid}), dimage({b, hid});
    dtext.as_matrix(b, hid) = dm.leftCols(hid);
    dimage.as_matrix(b, hid) = dm.rightCols(hid);
    text_explicit_.backward(dtext);
    text_latent_.backward(dtext);
    image_explicit_.backward(dimage);
    image_latent_.backward(dimage);
  }

  std::vector<NamedParam<S>> params() {
    std::vector<NamedParam<S>> out;
    text_explicit_.collect("text.explicit", out);
    text_latent_.collect("text.latent", out);
    image_latent_.collect("image.latent", out);
    image_explicit_.collect("image.explicit", out);
    head_.collect("head", out);
    return out;
  }

  struct ParamCount {
    Eigen::Index total = 0;
    Eigen::Index trainable = 0;
  };

  ParamCount param_count() {
    ParamCount pc;
    for (auto& p : params()) {
      pc.total += p.tensor->size();
      if (p.trainable) pc.trainable += p.tensor->size();
    }
    return pc;
  }

  /// Spatial edge lengths of the image-latent stack, input included.
  std::vector<Eigen::Index> image_spatial_trace() const {
    std::vector<Eigen::Index> trace{cfg_.image_size};
    Eigen::Index s = cfg_.image_size;
    for (std::size_t l = 0; l < cfg_.conv_channels.size(); ++l) {
      s = s - cfg_.image_filter.first + 1;
      trace.push_back(s);
      s = s / cfg_.image_pool.first;
      trace.push_back(s);
    }
    return trace;
  }

  Eigen::Index text_flat_dim() const {
    const Eigen::Index len = cfg_.seq_len - cfg_.text_filter_h + 1;
    return (len / cfg_.text_pool) * cfg_.text_filters;
  }

  Eigen::Index image_flat_dim() const {
    Eigen::Index h = cfg_.image_size, w = cfg_.image_size;
    for (std::size_t l = 0; l < cfg_.conv_channels.size(); ++l) {
      h = (h - cfg_.image_filter.first + 1) / cfg_.image_pool.first;
      w = (w - cfg_.image_filter.second + 1) / cfg_.image_pool.second;
    }
    return h * w * cfg_.conv_channels.back();
  }

 private:
  void check_sizing() const {
    if (cfg_.seq_len < cfg_.text_filter_h)
      throw ShapeError("seq_len shorter than text filter height");
    if ((cfg_.seq_len - cfg_.text_filter_h + 1) / cfg_.text_pool < 1)
      throw ShapeError("text feature map too short to pool");
    Eigen::Index h = cfg_.image_size, w = cfg_.image_size;
    for (std::size_t l = 0; l < cfg_.conv_channels.size(); ++l) {
      h = h - cfg_.image_filter.first + 1;
      w = w - cfg_.image_filter.second + 1;
      if (h < 1 || w < 1)
        throw ShapeError("image conv layer " + std::to_string(l + 1) +
                         " produces non-positive map size (output = input - filter + 1)");
      h /= cfg_.image_pool.first;
      w /= cfg_.image_pool.second;
      if (h < 1 || w < 1)
        throw ShapeError("image pool layer " + std::to_string(l + 1) + " produces empty map");
    }
  }

  void check_batch(const BatchT<S>& batch) const {
    auto expect = [](const TensorT<S>& t, std::vector<Eigen::Index> want, const char* branch) {
      if (t.rank() != static_cast<Eigen::Index>(want.size()) + 1)
        throw ShapeError(std::string("input rank mismatch in ") + branch + ": got " + shape_to_string(t.shape()));
      for (std::size_t i = 0; i < want.size(); ++i)
        if (t.dim(i + 1) != want[i])
          throw ShapeError(std::string("input shape mismatch in ") + branch + ": got " + shape_to_string(t.shape()));
    };
    expect(batch.tokens, {cfg_.seq_len}, "text.latent");
    expect(batch.text_explicit, {cfg_.text_explicit_dim}, "text.explicit");
    expect(batch.image, {cfg_.image_size, cfg_.image_size, 3}, "image.latent");
    expect(batch.image_explicit, {cfg_.image_explicit_dim}, "image.explicit");
  }

  ModelConfig cfg_;
  Stack<S> text_explicit_, text_latent_, image_latent_, image_explicit_, head_;
};

using TiCnnModel = TiCnnModelT<float>;

}  // namespace ticnn
