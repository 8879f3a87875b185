#include <doctest.h>

#include "ticnn/model.hpp"

#include <set>

using namespace ticnn;

namespace {

ModelConfig toy_config() {
  ModelConfig cfg;
  cfg.vocab_size = 10;
  cfg.seq_len = 8;
  cfg.embed_dim = 4;
  cfg.text_filters = 2;
  cfg.text_filter_h = 3;
  cfg.text_pool = 2;
  cfg.conv_channels = {2};
  cfg.image_filter = {3, 3};
  cfg.image_pool = {2, 2};
  cfg.image_size = 6;
  cfg.hidden_dim = 4;
  return cfg;
}

Batch random_batch(const ModelConfig& cfg, Eigen::Index b, std::uint32_t seed) {
  Rng rng(seed);
  Batch batch;
  batch.tokens = Tensor({b, cfg.seq_len});
  std::uniform_int_distribution<int> tok(0, static_cast<int>(cfg.vocab_size) - 1);
  for (Eigen::Index i = 0; i < batch.tokens.size(); ++i) batch.tokens[i] = static_cast<float>(tok(rng));
  batch.text_explicit = Tensor({b, cfg.text_explicit_dim});
  uniform_fill(batch.text_explicit, -1.0, 1.0, rng);
  batch.image = Tensor({b, cfg.image_size, cfg.image_size, 3});
  uniform_fill(batch.image, 0.0, 1.0, rng);
  batch.image_explicit = Tensor({b, cfg.image_explicit_dim});
  uniform_fill(batch.image_explicit, -1.0, 1.0, rng);
  for (Eigen::Index i = 0; i < b; ++i) batch.labels.push_back(static_cast<int>(i % 2));
  return batch;
}

}  // namespace

TEST_CASE("default config image spatial trace is 50 48 24 22 11 9 4") {
  TiCnnModel model(ModelConfig{}, 0);
  CHECK(model.image_spatial_trace() == std::vector<Eigen::Index>{50, 48, 24, 22, 11, 9, 4});
}

TEST_CASE("default config text feature map is 998 pooled to 499") {
  TiCnnModel model(ModelConfig{}, 0);
  CHECK(model.text_flat_dim() == 499 * 10);
}

TEST_CASE("same seed gives bitwise-identical initial parameters") {
  TiCnnModel a(toy_config(), 7), b(toy_config(), 7);
  auto pa = a.params(), pb = b.params();
  REQUIRE(pa.size() == pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i].name == pb[i].name);
    CHECK((pa[i].tensor->data() - pb[i].tensor->data()).cwiseAbs().maxCoeff() == 0.0f);
  }
}

TEST_CASE("parameter names are unique and hierarchical") {
  TiCnnModel model(toy_config(), 1);
  auto params = model.params();
  std::set<std::string> names;
  for (auto& p : params) names.insert(p.name);
  CHECK(names.size() == params.size());
  CHECK(names.count("text.latent.conv1.filters") == 1);
  CHECK(names.count("image.latent.bn1.running_mean") == 1);
}

TEST_CASE("construction fails when the conv chain exhausts the image") {
  ModelConfig cfg = toy_config();
  cfg.image_size = 8;
  cfg.conv_channels = {2, 2, 2};
  CHECK_THROWS_AS(TiCnnModel(cfg, 0), ShapeError);
}

TEST_CASE("zeroed output layer predicts exactly uniform probabilities") {
  ModelConfig cfg = toy_config();
  TiCnnModel model(cfg, 3);
  for (auto& p : model.params())
    if (p.name == "head.output.weights" || p.name == "head.output.bias") p.tensor->data().setZero();
  Batch batch = random_batch(cfg, 4, 11);
  Rng rng(0);
  Tensor probs = model.forward(batch, Mode::kEval, rng);
  REQUIRE(probs.shape() == std::vector<Eigen::Index>{4, 2});
  for (Eigen::Index i = 0; i < probs.size(); ++i) CHECK(probs[i] == doctest::Approx(0.5f).epsilon(1e-6));
}

TEST_CASE("probability rows sum to one in both modes") {
  ModelConfig cfg = toy_config();
  TiCnnModel model(cfg, 4);
  Batch batch = random_batch(cfg, 6, 12);
  for (Mode mode : {Mode::kTrain, Mode::kEval}) {
    Rng rng(5);
    Tensor probs = model.forward(batch, mode, rng);
    auto pm = probs.as_matrix(6, 2);
    for (Eigen::Index i = 0; i < 6; ++i) CHECK(std::abs(pm.row(i).sum() - 1.0f) <= 1e-6f);
  }
}

TEST_CASE("eval forward is a pure function") {
  ModelConfig cfg = toy_config();
  TiCnnModel model(cfg, 5);
  Batch batch = random_batch(cfg, 3, 13);
  Rng r1(1), r2(99);
  Tensor a = model.forward(batch, Mode::kEval, r1);
  Tensor b = model.forward(batch, Mode::kEval, r2);
  CHECK((a.data() - b.data()).cwiseAbs().maxCoeff() == 0.0f);
}

TEST_CASE("with a silenced image branch the output ignores the image") {
  ModelConfig cfg = toy_config();
  TiCnnModel model(cfg, 6);
  for (auto& p : model.params())
    if (p.name.rfind("image.", 0) == 0 && p.trainable) p.tensor->data().setZero();
  Batch b1 = random_batch(cfg, 2, 14);
  Batch b2 = b1;
  Rng image_rng(77);
  uniform_fill(b2.image, 0.0, 1.0, image_rng);
  Rng rng(0);
  Tensor y1 = model.forward(b1, Mode::kEval, rng);
  Tensor y2 = model.forward(b2, Mode::kEval, rng);
  CHECK((y1.data() - y2.data()).cwiseAbs().maxCoeff() == 0.0f);
}

TEST_CASE("shape mismatch names the offending subbranch") {
  ModelConfig cfg = toy_config();
  TiCnnModel model(cfg, 8);
  Batch batch = random_batch(cfg, 2, 15);
  batch.image = Tensor({2, cfg.image_size + 1, cfg.image_size, 3});
  Rng rng(0);
  CHECK_THROWS_WITH_AS(model.forward(batch, Mode::kEval, rng), doctest::Contains("image.latent"), ShapeError);
}

TEST_CASE("gradient reaches every subbranch") {
  ModelConfig cfg = toy_config();
  TiCnnModel model(cfg, 9);
  Batch batch = random_batch(cfg, 4, 16);
  Rng rng(21);
  Tensor s = model.scores(batch, Mode::kTrain, rng);
  Tensor ds;
  nll_loss_batch(s, batch.labels, &ds);
  model.backward(ds);
  for (auto& p : model.params()) {
    if (!p.trainable) continue;
    INFO(p.name);
    CHECK(p.tensor->grad().cwiseAbs().maxCoeff() > 0.0f);
  }
}

TEST_CASE("param_count matches the hand-computed toy ledger") {
  // toy config: emb 10x4=40, conv1d 2x3x4+2=26, text dense 4x6+4=28,
  // text explicit dense 4x31+4=128, image conv 2x3x3x3+2=56,
  // image dense 4x8+4=36, image explicit dense 4x4+4=20,
  // head dense 4x8+4=36, output 2x4+2=10, five BNs: 8 trainable + 8 running each.
  TiCnnModel model(toy_config(), 10);
  auto pc = model.param_count();
  CHECK(pc.trainable == 420);
  CHECK(pc.total == 460);
}

TEST_CASE("doubling hidden_dim changes the count by the predicted delta") {
  ModelConfig cfg = toy_config();
  TiCnnModel small(cfg, 11);
  ModelConfig big = cfg;
  big.hidden_dim = 2 * cfg.hidden_dim;
  TiCnnModel large(big, 11);
  const Eigen::Index h = cfg.hidden_dim;
  const Eigen::Index flat_t = small.text_flat_dim(), flat_i = small.image_flat_dim();
  // four input-side denses gain h*(d_in+1) each; head dense gains 6h^2+h;
  // output gains 2h; each of five BNs gains 4h (2 trainable + 2 running).
  const Eigen::Index expected = h * (31 + 1) + h * (flat_t + 1) + h * (flat_i + 1) + h * (4 + 1) +
                                (6 * h * h + h) + 2 * h + 5 * 4 * h;
  CHECK(large.param_count().total - small.param_count().total == expected);
}

TEST_CASE("trainable plus non-trainable partitions the total") {
  TiCnnModel model(toy_config(), 12);
  auto pc = model.param_count();
  Eigen::Index non_trainable = 0;
  for (auto& p : model.params())
    if (!p.trainable) non_trainable += p.tensor->size();
  CHECK(pc.trainable + non_trainable == pc.total);
}

TEST_CASE("predict_label argmax with tie going to fake") {
  CHECK(predict_label(Tensor::from_values({2}, {0.9f, 0.1f})) == kLabelReal);
  CHECK(predict_label(Tensor::from_values({2}, {0.2f, 0.8f})) == kLabelFake);
  CHECK(predict_label(Tensor::from_values({2}, {0.5f, 0.5f})) == kLabelFake);
}
