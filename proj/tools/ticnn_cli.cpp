// ticnn: two-branch fake-news classifier over a CSV news corpus.
//
// Subcommands: analyze, train, eval, gradcheck, predict.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <CLI11.hpp>

#include "ticnn/checkpoint.hpp"
#include "ticnn/gradcheck.hpp"
#include "ticnn/train.hpp"

#include <fstream>
#include <iostream>

using namespace ticnn;

namespace {

struct CommonOpts {
  std::string dataset;
  std::string images = ".";
  std::uint32_t seed = 42;
};

LoadResult load_records(const CommonOpts& c) {
  LoadResult loaded = load_dataset(c.dataset, c.images);
  if (loaded.skipped_rows > 0)
    std::cerr << "warning: skipped " << loaded.skipped_rows << " malformed rows\n";
  return loaded;
}

void print_metrics(const std::string& name, const Metrics& m) {
  std::cout << name << ": precision=" << m.precision << " recall=" << m.recall << " f1=" << m.f1
            << " accuracy=" << m.accuracy << "  (tp=" << m.tp << " fp=" << m.fp << " fn=" << m.fn << " tn=" << m.tn
            << ")\n";
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const CommonOpts& c, const std::string& out, const std::string& class_filter,
                const std::string& lexicon_dir) {
  const Lexicons lex = lexicon_dir.empty() ? Lexicons::builtin() : Lexicons::load_dir(lexicon_dir);
  LoadResult loaded = load_records(c);
  std::vector<NewsRecord> records;
  for (auto& rec : loaded.records) {
    const std::string cls = rec.label == Label::kFake ? "fake" : "real";
    if (class_filter.empty() || cls == class_filter) records.push_back(std::move(rec));
  }
  if (records.empty()) throw DataError("no records left to analyze");
  const CorpusStats stats = corpus_stats(records, lex);
  write_stats_table(stats, std::cout);
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) throw DataError("cannot write report: " + out);
    write_stats_ndjson(stats, os);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// train

struct TrainFlags {
  std::string out = "model.ckpt";
  std::string log_path;
  bool log_seconds = false;
  std::string embed_dim = "100";
  Eigen::Index seq_len = 1000;
  Eigen::Index hidden_dim = 128;
  Eigen::Index filter_size = 3;
  Eigen::Index vocab_size = 20000;
  double dropout_a = 0.5;
  double dropout_b = 0.8;
  int epochs = 50;
  int batch_size = 32;
  int patience = 5;
  double learning_rate = 1e-3;
  std::size_t synthetic = 0;
  std::string synthetic_dir = "synthetic";
  bool baseline = false;
};

// "100" or an inclusive sweep "50..350" (step 50).
std::vector<Eigen::Index> parse_embed_dims(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) return {static_cast<Eigen::Index>(std::stol(s))};
  const long lo = std::stol(s.substr(0, dots));
  const long hi = std::stol(s.substr(dots + 2));
  if (lo < 1 || hi < lo) throw CLI::ValidationError("--embed-dim", "bad sweep range: " + s);
  std::vector<Eigen::Index> dims;
  for (long k = lo; k <= hi; k += 50) dims.push_back(k);
  return dims;
}

std::map<std::string, Tensor> norm_extras(const EncodedDataset& data, std::uint32_t split_seed) {
  std::map<std::string, Tensor> extras;
  extras.emplace("norm.text_explicit.mean", data.text_norm.mean_tensor());
  extras.emplace("norm.text_explicit.stddev", data.text_norm.stddev_tensor());
  extras.emplace("norm.image_explicit.mean", data.image_norm.mean_tensor());
  extras.emplace("norm.image_explicit.stddev", data.image_norm.stddev_tensor());
  extras.emplace("meta.split_seed", Tensor::from_values({1}, {static_cast<float>(split_seed)}));
  return extras;
}

int cmd_train(CommonOpts c, const TrainFlags& f) {
  if (f.synthetic > 0) {
    SyntheticOptions sopts;
    sopts.count = f.synthetic;
    sopts.seed = c.seed;
    c.dataset = generate_synthetic(f.synthetic_dir, sopts);
    c.images = f.synthetic_dir;
    std::cerr << "synthetic corpus written to " << c.dataset << "\n";
  }
  if (c.dataset.empty()) throw CLI::RequiredError("--dataset (or --synthetic)");

  LoadResult loaded = load_records(c);
  const DatasetSplit split = split_dataset(loaded.records, c.seed);

  ModelConfig cfg;
  cfg.seq_len = f.seq_len;
  cfg.hidden_dim = f.hidden_dim;
  cfg.text_filter_h = f.filter_size;
  cfg.vocab_size = f.vocab_size;
  cfg.dropout_pair = {f.dropout_a, f.dropout_b};

  TrainOptions topts;
  topts.batch_size = f.batch_size;
  topts.max_epochs = f.epochs;
  topts.patience = f.patience;
  topts.seed = c.seed;
  topts.learning_rate = static_cast<float>(f.learning_rate);
  topts.progress = &std::cerr;

  const std::vector<Eigen::Index> dims = parse_embed_dims(f.embed_dim);
  std::vector<std::pair<Eigen::Index, double>> sweep;
  for (Eigen::Index k : dims) {
    cfg.embed_dim = k;
    cfg.validate();
    const EncodedDataset data = encode_dataset(split, Lexicons::builtin(), cfg);
    TiCnnModel model(cfg, c.seed);
    std::cerr << "training embed_dim=" << k << " (" << model.param_count().trainable << " trainable parameters)\n";
    TrainResult result = train_model(model, data, topts);
    result.test_metrics = evaluate_model(model, data.test, data);
    sweep.emplace_back(k, result.test_metrics.f1);

    if (k == dims.back()) {
      print_metrics("test", result.test_metrics);
      std::cout << "best epoch " << result.best_epoch << " (val loss " << result.best_val_loss << ")\n";
      Checkpoint ckpt = checkpoint_from_model(model, data.vocab.tokens(), norm_extras(data, c.seed));
      save_checkpoint(ckpt, f.out);
      std::cout << "checkpoint written to " << f.out << "\n";
      if (!f.log_path.empty()) {
        std::ofstream os(f.log_path);
        if (!os) throw DataError("cannot write log: " + f.log_path);
        write_log_ndjson(result.log, os, f.log_seconds);
      }
      if (f.baseline) {
        const LrBaselineResult lr = train_lr_baseline(data, topts);
        print_metrics("baseline test", lr.test_metrics);
        Checkpoint bl;
        bl.config = cfg;
        bl.vocab = data.vocab.tokens();
        for (auto& [name, t] : norm_extras(data, c.seed)) bl.tensors.emplace(name, t);
        bl.tensors.emplace("baseline.dense.weights", lr.weights);
        bl.tensors.emplace("baseline.dense.bias", lr.bias);
        const std::string bl_path = f.out + ".baseline";
        save_checkpoint(bl, bl_path);
        std::cout << "baseline checkpoint written to " << bl_path << "\n";
      }
    }
  }
  if (sweep.size() > 1) {
    std::cout << "embed_dim    test_f1\n";
    for (const auto& [k, f1] : sweep) std::cout << std::setw(9) << k << std::setw(11) << f1 << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const CommonOpts& c, const std::string& checkpoint_path, const std::string& split_name) {
  const Checkpoint ckpt = load_checkpoint(checkpoint_path);
  LoadResult loaded = load_records(c);

  std::uint32_t split_seed = c.seed;
  if (auto it = ckpt.tensors.find("meta.split_seed"); it != ckpt.tensors.end())
    split_seed = static_cast<std::uint32_t>(it->second[0]);
  const DatasetSplit split = split_dataset(loaded.records, split_seed);

  std::vector<NewsRecord> records;
  if (split_name == "train") records = split.train;
  else if (split_name == "val") records = split.validation;
  else if (split_name == "test") records = split.test;
  else {
    records = split.train;
    records.insert(records.end(), split.validation.begin(), split.validation.end());
    records.insert(records.end(), split.test.begin(), split.test.end());
  }
  if (records.empty()) throw DataError("selected split is empty");

  const Vocabulary vocab = Vocabulary::from_tokens(ckpt.vocab);
  const std::vector<EncodedExample> examples = encode_records(records, vocab, Lexicons::builtin(), ckpt.config);

  auto tensor = [&](const std::string& name) -> const Tensor& {
    auto it = ckpt.tensors.find(name);
    if (it == ckpt.tensors.end()) throw std::runtime_error("checkpoint missing tensor: " + name);
    return it->second;
  };
  const FeatureNorm text_norm =
      FeatureNorm::from_tensors(tensor("norm.text_explicit.mean"), tensor("norm.text_explicit.stddev"));

  if (ckpt.tensors.count("baseline.dense.weights") > 0) {
    const Metrics m = evaluate_lr(tensor("baseline.dense.weights"), tensor("baseline.dense.bias"), examples, text_norm);
    print_metrics("baseline " + split_name, m);
    return 0;
  }

  TiCnnModel model = model_from_checkpoint(ckpt);
  EncodedDataset data;  // carries the standardization statistics only
  data.text_norm = text_norm;
  data.image_norm =
      FeatureNorm::from_tensors(tensor("norm.image_explicit.mean"), tensor("norm.image_explicit.stddev"));
  print_metrics(split_name, evaluate_model(model, examples, data));
  return 0;
}

// ---------------------------------------------------------------------------
// gradcheck

using StackFactory = std::function<void(Stack<double>&, Rng&)>;

GradCheckReport check_fragment(const StackFactory& build, const TensorT<double>& input, const std::vector<int>& labels,
                               std::uint32_t seed, bool corrupt, double tol) {
  Rng rng(seed);
  Stack<double> net;
  build(net, rng);
  std::vector<NamedParam<double>> params;
  net.collect("net", params);
  const unsigned mask_seed = seed + 1;
  auto loss_fn = [&]() {
    Rng r(mask_seed);
    TensorT<double> y = net.forward(input, Mode::kTrain, r);
    return static_cast<double>(nll_loss_batch(y, labels));
  };
  auto grad_fn = [&]() {
    for (auto& p : params) p.tensor->zero_grad();
    Rng r(mask_seed);
    TensorT<double> y = net.forward(input, Mode::kTrain, r);
    TensorT<double> dy;
    nll_loss_batch(y, labels, &dy);
    net.backward(dy);
    if (corrupt)
      for (auto& p : params) p.tensor->grad() *= 2.0;
  };
  return gradient_check(params, loss_fn, grad_fn, tol);
}

GradCheckReport check_tiny_model(std::uint32_t seed, bool corrupt, double tol) {
  ModelConfig cfg;
  cfg.vocab_size = 50;
  cfg.seq_len = 16;
  cfg.embed_dim = 8;
  cfg.hidden_dim = 8;
  cfg.image_size = 8;
  cfg.conv_channels = {4};
  cfg.vocab_size = 50;

  TiCnnModelT<double> model(cfg, seed);
  auto params = model.params();
  {
    // redraw the parameters at a larger scale: the default embedding init is
    // so small that the 1e-3 probe step can flip max-pool winners
    Rng init(seed + 3);
    for (auto& p : params)
      if (p.trainable) uniform_fill(*p.tensor, -0.5, 0.5, init);
  }

  // batch of 4: batchnorm over 2 samples normalizes every feature to +-1,
  // which zeroes the upstream gradients and drowns the finite differences
  const Eigen::Index b = 4;
  Rng rng(seed + 7);
  BatchT<double> batch;
  batch.tokens = TensorT<double>({b, cfg.seq_len});
  std::uniform_int_distribution<int> tok(0, static_cast<int>(cfg.vocab_size) - 1);
  for (Eigen::Index i = 0; i < batch.tokens.size(); ++i) batch.tokens[i] = tok(rng);
  batch.text_explicit = TensorT<double>({b, cfg.text_explicit_dim});
  uniform_fill(batch.text_explicit, -1.0, 1.0, rng);
  batch.image = TensorT<double>({b, cfg.image_size, cfg.image_size, 3});
  uniform_fill(batch.image, 0.0, 1.0, rng);
  std::uniform_real_distribution<double> jitter(-1e-6, 1e-6);
  for (Eigen::Index i = 0; i < batch.image.size(); ++i) batch.image[i] += jitter(rng);
  batch.image_explicit = TensorT<double>({b, cfg.image_explicit_dim});
  uniform_fill(batch.image_explicit, -1.0, 1.0, rng);
  batch.labels = {0, 1, 1, 0};

  const unsigned mask_seed = seed + 11;
  auto loss_fn = [&]() {
    Rng r(mask_seed);
    TensorT<double> y = model.scores(batch, Mode::kTrain, r);
    return static_cast<double>(nll_loss_batch(y, batch.labels));
  };
  auto grad_fn = [&]() {
    for (auto& p : params) p.tensor->zero_grad();
    Rng r(mask_seed);
    TensorT<double> y = model.scores(batch, Mode::kTrain, r);
    TensorT<double> dy;
    nll_loss_batch(y, batch.labels, &dy);
    model.backward(dy);
    if (corrupt)
      for (auto& p : params) p.tensor->grad() *= 2.0;
  };
  // a small step keeps the probe inside the relu/max-pool linear pieces
  return gradient_check(params, loss_fn, grad_fn, tol, 1e-4);
}

int cmd_gradcheck(std::uint32_t seed, const std::string& layer, bool corrupt, double tol) {
  struct Case {
    std::string name;
    std::function<GradCheckReport()> run;
  };
  auto jittered = [](std::vector<Eigen::Index> shape, Rng& rng) {
    TensorT<double> t(std::move(shape));
    uniform_fill(t, -1.0, 1.0, rng);
    std::uniform_real_distribution<double> j(-1e-6, 1e-6);
    for (Eigen::Index i = 0; i < t.size(); ++i) t[i] += j(rng);
    return t;
  };
  Rng data_rng(seed);

  std::vector<Case> cases;
  cases.push_back({"dense", [&] {
                     TensorT<double> x({4, 6});
                     uniform_fill(x, -1.0, 1.0, data_rng);
                     return check_fragment(
                         [](Stack<double>& n, Rng& r) {
                           n.add("dense1", std::make_unique<DenseLayer<double>>(6, 5, r));
                           n.add("sigmoid", std::make_unique<SigmoidLayer<double>>());
                           n.add("dense2", std::make_unique<DenseLayer<double>>(5, 2, r));
                         },
                         x, {0, 1, 1, 0}, seed, corrupt, tol);
                   }});
  cases.push_back({"conv1d", [&] {
                     TensorT<double> x = jittered({2, 9, 5}, data_rng);
                     return check_fragment(
                         [](Stack<double>& n, Rng& r) {
                           n.add("conv1", std::make_unique<Conv1DLayer<double>>(4, 3, 5, r));
                           n.add("pool1", std::make_unique<MaxPool1DLayer<double>>(2));
                           n.add("flatten", std::make_unique<FlattenLayer<double>>());
                           n.add("dense1", std::make_unique<DenseLayer<double>>(12, 2, r));
                         },
                         x, {0, 1}, seed, corrupt, tol);
                   }});
  cases.push_back({"conv2d", [&] {
                     TensorT<double> x = jittered({2, 6, 6, 2}, data_rng);
                     return check_fragment(
                         [](Stack<double>& n, Rng& r) {
                           n.add("conv1", std::make_unique<Conv2DLayer<double>>(3, 2, 2, 2, r));
                           n.add("relu", std::make_unique<ReluLayer<double>>());
                           n.add("pool1", std::make_unique<MaxPool2DLayer<double>>(2, 2));
                           n.add("flatten", std::make_unique<FlattenLayer<double>>());
                           n.add("dense1", std::make_unique<DenseLayer<double>>(12, 2, r));
                         },
                         x, {1, 0}, seed, corrupt, tol);
                   }});
  cases.push_back({"embedding", [&] {
                     TensorT<double> idx({2, 6});
                     std::uniform_int_distribution<int> tok(0, 6);
                     for (Eigen::Index i = 0; i < idx.size(); ++i) idx[i] = tok(data_rng);
                     return check_fragment(
                         [](Stack<double>& n, Rng& r) {
                           n.add("embedding", std::make_unique<EmbeddingLayer<double>>(7, 4, r));
                           n.add("conv1", std::make_unique<Conv1DLayer<double>>(3, 2, 4, r));
                           n.add("flatten", std::make_unique<FlattenLayer<double>>());
                           n.add("dense1", std::make_unique<DenseLayer<double>>(15, 2, r));
                         },
                         idx, {1, 0}, seed, corrupt, tol);
                   }});
  cases.push_back({"batchnorm", [&] {
                     TensorT<double> x = jittered({8, 4}, data_rng);
                     return check_fragment(
                         [](Stack<double>& n, Rng& r) {
                           n.add("dense1", std::make_unique<DenseLayer<double>>(4, 6, r));
                           n.add("bn1", std::make_unique<BatchNormLayer<double>>(6));
                           n.add("relu", std::make_unique<ReluLayer<double>>());
                           n.add("dense2", std::make_unique<DenseLayer<double>>(6, 2, r));
                         },
                         x, {0, 1, 0, 1, 1, 0, 1, 0}, seed, corrupt, tol);
                   }});
  cases.push_back({"dropout", [&] {
                     TensorT<double> x({4, 5});
                     uniform_fill(x, -1.0, 1.0, data_rng);
                     return check_fragment(
                         [](Stack<double>& n, Rng& r) {
                           n.add("dense1", std::make_unique<DenseLayer<double>>(5, 8, r));
                           n.add("dropout", std::make_unique<DropoutLayer<double>>(0.5));
                           n.add("dense2", std::make_unique<DenseLayer<double>>(8, 2, r));
                         },
                         x, {1, 0, 0, 1}, seed, corrupt, tol);
                   }});
  cases.push_back({"model", [&] { return check_tiny_model(seed, corrupt, tol); }});

  bool all_pass = true;
  for (const auto& cs : cases) {
    if (layer != "all" && layer != cs.name) continue;
    const GradCheckReport report = cs.run();
    std::cout << std::left << std::setw(12) << cs.name << (report.pass ? "pass" : "FAIL")
              << "  max_rel_error=" << report.max_rel_error;
    if (!report.pass) std::cout << "  worst=" << report.worst_param << "[" << report.worst_index << "]";
    std::cout << "\n";
    all_pass = all_pass && report.pass;
  }
  if (!all_pass) throw NumericalError("gradient check failed");
  return 0;
}

// ---------------------------------------------------------------------------
// predict

int cmd_predict(const std::string& checkpoint_path, const std::string& title, const std::string& text,
                const std::string& image_path) {
  const Checkpoint ckpt = load_checkpoint(checkpoint_path);
  TiCnnModel model = model_from_checkpoint(ckpt);
  const Vocabulary vocab = Vocabulary::from_tokens(ckpt.vocab);

  NewsRecord rec;
  rec.id = "query";
  rec.title = title;
  rec.text = text;
  rec.image_path = image_path;
  rec.image_missing = image_path.empty();

  const EncodedExample ex = encode_record(rec, vocab, Lexicons::builtin(), ckpt.config);
  auto tensor = [&](const std::string& name) -> const Tensor& {
    auto it = ckpt.tensors.find(name);
    if (it == ckpt.tensors.end()) throw std::runtime_error("checkpoint missing tensor: " + name);
    return it->second;
  };
  const FeatureNorm text_norm =
      FeatureNorm::from_tensors(tensor("norm.text_explicit.mean"), tensor("norm.text_explicit.stddev"));
  const FeatureNorm image_norm =
      FeatureNorm::from_tensors(tensor("norm.image_explicit.mean"), tensor("norm.image_explicit.stddev"));
  Batch batch = make_batch({ex}, 0, 1, text_norm, image_norm, ckpt.config);

  Rng rng(0);
  Tensor probs = model.forward(batch, Mode::kEval, rng);
  Tensor row = Tensor::from_values({2}, {probs[kLabelReal], probs[kLabelFake]});
  const int label = predict_label(row);
  std::cout << "label: " << (label == kLabelFake ? "fake" : "real") << "\n";
  std::cout << "p(real)=" << probs[kLabelReal] << " p(fake)=" << probs[kLabelFake] << "\n";
  if (ex.image_missing && !image_path.empty()) std::cerr << "note: image unreadable, used the zero-image convention\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TI-CNN fake-news classifier"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string out, class_filter, lexicon_dir, checkpoint = "model.ckpt", split_name = "test";
  std::string title, text, image_path, layer = "all";
  TrainFlags tf;
  bool corrupt = false;
  double tol = 1e-3;

  auto* analyze = app.add_subcommand("analyze", "Per-class explicit-feature statistics");
  analyze->add_option("--dataset", common.dataset, "CSV corpus path")->required();
  analyze->add_option("--images", common.images, "Image root directory");
  analyze->add_option("--out", out, "Write an NDJSON report here");
  analyze->add_option("--class", class_filter, "Restrict to one class")->check(CLI::IsMember({"real", "fake"}));
  analyze->add_option("--lexicons", lexicon_dir, "Lexicon directory (default: built-in lists)");

  auto* train = app.add_subcommand("train", "Train a model and write a checkpoint");
  train->add_option("--dataset", common.dataset, "CSV corpus path");
  train->add_option("--images", common.images, "Image root directory");
  train->add_option("--out", tf.out, "Checkpoint output path");
  train->add_option("--seed", common.seed, "Run seed");
  train->add_option("--epochs", tf.epochs, "Maximum epochs")->check(CLI::PositiveNumber);
  train->add_option("--batch-size", tf.batch_size, "Mini-batch size")->check(CLI::Range(2, 4096));
  train->add_option("--embed-dim", tf.embed_dim, "Embedding width, or a sweep like 50..350");
  train->add_option("--seq-len", tf.seq_len, "Token sequence length")->check(CLI::PositiveNumber);
  train->add_option("--hidden-dim", tf.hidden_dim, "Subbranch output width")->check(CLI::PositiveNumber);
  train->add_option("--dropout-a", tf.dropout_a, "Keep probability after the embedding")->check(CLI::Range(0.0, 1.0));
  train->add_option("--dropout-b", tf.dropout_b, "Keep probability elsewhere")->check(CLI::Range(0.0, 1.0));
  train->add_option("--filter-size", tf.filter_size, "Text convolution filter height")->check(CLI::PositiveNumber);
  train->add_option("--vocab-size", tf.vocab_size, "Vocabulary budget")->check(CLI::PositiveNumber);
  train->add_option("--patience", tf.patience, "Early-stopping patience")->check(CLI::PositiveNumber);
  train->add_option("--lr", tf.learning_rate, "RMSprop learning rate")->check(CLI::PositiveNumber);
  train->add_option("--log", tf.log_path, "Write the epoch log (NDJSON) here");
  train->add_flag("--log-seconds", tf.log_seconds, "Include wall-clock seconds in the log");
  train->add_option("--synthetic", tf.synthetic, "Generate an N-example synthetic corpus and train on it");
  train->add_option("--synthetic-dir", tf.synthetic_dir, "Where to write the synthetic corpus");
  train->add_flag("--baseline", tf.baseline, "Also train the explicit-feature baseline");

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on a dataset split");
  eval->add_option("--checkpoint", checkpoint, "Checkpoint path")->required();
  eval->add_option("--dataset", common.dataset, "CSV corpus path")->required();
  eval->add_option("--images", common.images, "Image root directory");
  eval->add_option("--seed", common.seed, "Split seed (overridden by the checkpoint's recorded seed)");
  eval->add_option("--split", split_name, "Which split to score")->check(CLI::IsMember({"train", "val", "test", "all"}));

  auto* gradcheck = app.add_subcommand("gradcheck", "Verify analytic gradients against finite differences");
  gradcheck->add_option("--seed", common.seed, "Run seed");
  gradcheck->add_option("--layer", layer, "Check one layer kind only")
      ->check(CLI::IsMember({"all", "dense", "conv1d", "conv2d", "embedding", "batchnorm", "dropout", "model"}));
  gradcheck->add_flag("--corrupt", corrupt, "Corrupt the gradients (negative control; expected to fail)");
  gradcheck->add_option("--tolerance", tol, "Maximum relative error")->check(CLI::PositiveNumber);

  auto* predict = app.add_subcommand("predict", "Classify a single article");
  predict->add_option("--checkpoint", checkpoint, "Checkpoint path")->required();
  predict->add_option("--title", title, "Article title");
  predict->add_option("--text", text, "Article body");
  predict->add_option("--image", image_path, "Article image path");

  try {
    app.parse(argc, argv);
    if (analyze->parsed()) return cmd_analyze(common, out, class_filter, lexicon_dir);
    if (train->parsed()) return cmd_train(common, tf);
    if (eval->parsed()) return cmd_eval(common, checkpoint, split_name);
    if (gradcheck->parsed()) return cmd_gradcheck(common.seed, layer, corrupt, tol);
    if (predict->parsed()) return cmd_predict(checkpoint, title, text, image_path);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
