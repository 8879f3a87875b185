#include "ticnn/train.hpp"

#include "ticnn/optimizer.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <thread>

namespace ticnn {

Tensor FeatureNorm::mean_tensor() const {
  Tensor t({mean.size()});
  t.data() = mean;
  return t;
}

Tensor FeatureNorm::stddev_tensor() const {
  Tensor t({stddev.size()});
  t.data() = stddev;
  return t;
}

FeatureNorm FeatureNorm::from_tensors(const Tensor& mean, const Tensor& stddev) {
  FeatureNorm n;
  n.mean = mean.data();
  n.stddev = stddev.data();
  return n;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("TICNN_THREADS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return 1;
}

EncodedExample encode_record(const NewsRecord& rec, const Vocabulary& vocab, const Lexicons& lex,
                             const ModelConfig& cfg) {
  EncodedExample ex;
  ex.label = rec.label == Label::kFake ? kLabelFake : kLabelReal;
  ex.tokens = encode_pad(tokenize(rec.title + " " + rec.text), vocab, static_cast<std::size_t>(cfg.seq_len));
  ex.text_explicit = extract_text_explicit(rec.title, rec.text, lex).values;

  ImageInput img = rec.image_missing ? missing_image(cfg.image_size) : decode_and_resize(rec.image_path, cfg.image_size);
  ex.image = std::move(img.tensor);
  ex.image_missing = img.missing;
  if (!img.missing) {
    const ImageExplicitVector iv =
        extract_image_explicit(img.original_width, img.original_height, rec.face_count, &ex.image);
    ex.image_explicit = {iv.width_px, iv.height_px, iv.aspect_ratio, iv.face_count};
  }
  return ex;
}

std::vector<EncodedExample> encode_records(const std::vector<NewsRecord>& records, const Vocabulary& vocab,
                                           const Lexicons& lex, const ModelConfig& cfg) {
  std::vector<EncodedExample> out(records.size());
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(records.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < records.size(); ++i) out[i] = encode_record(records[i], vocab, lex, cfg);
    return out;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < records.size(); i = next.fetch_add(1))
        out[i] = encode_record(records[i], vocab, lex, cfg);
    });
  for (auto& t : pool) t.join();
  return out;
}

namespace {

template <std::size_t N>
FeatureNorm fit_norm(const std::vector<EncodedExample>& examples,
                     const std::array<double, N> EncodedExample::*member) {
  FeatureNorm norm;
  norm.mean = VecX<float>::Zero(N);
  norm.stddev = VecX<float>::Ones(N);
  if (examples.empty()) return norm;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(N), sq = Eigen::VectorXd::Zero(N);
  for (const auto& ex : examples)
    for (std::size_t i = 0; i < N; ++i) {
      mean[static_cast<Eigen::Index>(i)] += (ex.*member)[i];
      sq[static_cast<Eigen::Index>(i)] += (ex.*member)[i] * (ex.*member)[i];
    }
  mean /= static_cast<double>(examples.size());
  sq /= static_cast<double>(examples.size());
  for (std::size_t i = 0; i < N; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    norm.mean[k] = static_cast<float>(mean[k]);
    norm.stddev[k] = static_cast<float>(std::max(std::sqrt(std::max(sq[k] - mean[k] * mean[k], 0.0)), 1e-6));
  }
  return norm;
}

}  // namespace

EncodedDataset encode_dataset(const DatasetSplit& split, const Lexicons& lex, const ModelConfig& cfg) {
  EncodedDataset data;
  std::vector<std::vector<std::string>> train_docs;
  train_docs.reserve(split.train.size());
  for (const auto& rec : split.train) train_docs.push_back(tokenize(rec.title + " " + rec.text));
  data.vocab = Vocabulary::build(train_docs, static_cast<std::size_t>(cfg.vocab_size));

  data.train = encode_records(split.train, data.vocab, lex, cfg);
  data.validation = encode_records(split.validation, data.vocab, lex, cfg);
  data.test = encode_records(split.test, data.vocab, lex, cfg);

  data.text_norm = fit_norm(data.train, &EncodedExample::text_explicit);
  data.image_norm = fit_norm(data.train, &EncodedExample::image_explicit);
  return data;
}

Batch make_batch(const std::vector<EncodedExample>& examples, std::size_t first, std::size_t count,
                 const FeatureNorm& text_norm, const FeatureNorm& image_norm, const ModelConfig& cfg) {
  const auto b = static_cast<Eigen::Index>(count);
  Batch batch;
  batch.tokens = Tensor({b, cfg.seq_len});
  batch.text_explicit = Tensor({b, cfg.text_explicit_dim});
  batch.image = Tensor({b, cfg.image_size, cfg.image_size, 3});
  batch.image_explicit = Tensor({b, cfg.image_explicit_dim});
  for (std::size_t s = 0; s < count; ++s) {
    const EncodedExample& ex = examples[first + s];
    const auto row = static_cast<Eigen::Index>(s);
    for (Eigen::Index j = 0; j < cfg.seq_len; ++j)
      batch.tokens[row * cfg.seq_len + j] = static_cast<float>(ex.tokens[static_cast<std::size_t>(j)]);
    text_norm.apply(ex.text_explicit, batch.text_explicit.data().data() + row * cfg.text_explicit_dim);
    image_norm.apply(ex.image_explicit, batch.image_explicit.data().data() + row * cfg.image_explicit_dim);
    std::copy_n(ex.image.data().data(), ex.image.size(),
                batch.image.data().data() + row * cfg.image_size * cfg.image_size * 3);
    batch.labels.push_back(ex.label);
  }
  return batch;
}

namespace {

void check_finite(double loss, std::vector<NamedParam<float>>& params) {
  if (std::isfinite(loss)) return;
  for (auto& p : params)
    if (!p.tensor->data().allFinite()) throw NumericalError("training diverged; first NaN tensor: " + p.name);
  throw NumericalError("training diverged: loss is not finite");
}

Metrics counts_over(TiCnnModel& model, const std::vector<EncodedExample>& examples, const FeatureNorm& text_norm,
                    const FeatureNorm& image_norm, int batch_size, double* mean_loss) {
  if (examples.empty()) throw DataError("cannot evaluate an empty example set");
  long tp = 0, fp = 0, fn = 0, tn = 0;
  double loss_sum = 0;
  std::size_t done = 0;
  Rng rng(0);  // unused in eval mode
  while (done < examples.size()) {
    const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(batch_size), examples.size() - done);
    Batch batch = make_batch(examples, done, count, text_norm, image_norm, model.config());
    Tensor scores = model.scores(batch, Mode::kEval, rng);
    loss_sum += static_cast<double>(nll_loss_batch(scores, batch.labels)) * static_cast<double>(count);
    Tensor probs = softmax_rows(scores);
    auto pm = probs.as_matrix(static_cast<Eigen::Index>(count), 2);
    for (std::size_t i = 0; i < count; ++i) {
      Tensor row = Tensor::from_values({2}, {pm(static_cast<Eigen::Index>(i), 0), pm(static_cast<Eigen::Index>(i), 1)});
      const int pred = predict_label(row);
      const int truth = batch.labels[i];
      if (pred == kLabelFake && truth == kLabelFake) ++tp;
      else if (pred == kLabelFake && truth == kLabelReal) ++fp;
      else if (pred == kLabelReal && truth == kLabelFake) ++fn;
      else ++tn;
    }
    done += count;
  }
  if (mean_loss) *mean_loss = loss_sum / static_cast<double>(examples.size());
  return metrics_from_counts(tp, fp, fn, tn);
}

}  // namespace

Metrics evaluate_model(TiCnnModel& model, const std::vector<EncodedExample>& examples, const EncodedDataset& data,
                       int batch_size) {
  return counts_over(model, examples, data.text_norm, data.image_norm, batch_size, nullptr);
}

TrainResult train_model(TiCnnModel& model, const EncodedDataset& data, const TrainOptions& opts) {
  if (data.train.empty()) throw DataError("training split is empty");
  auto params = model.params();
  RmsProp<float> optimizer(opts.learning_rate);
  Rng rng(opts.seed);

  std::vector<std::size_t> order(data.train.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<EncodedExample> shuffled;

  TrainResult result;
  result.best_val_loss = std::numeric_limits<double>::infinity();
  std::vector<VecX<float>> best_params;
  int epochs_since_best = 0;

  for (int epoch = 1; epoch <= opts.max_epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    std::shuffle(order.begin(), order.end(), rng);
    shuffled.clear();
    for (std::size_t i : order) shuffled.push_back(data.train[i]);

    double loss_sum = 0;
    std::size_t seen = 0;
    while (seen < shuffled.size()) {
      const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(opts.batch_size),
                                                      shuffled.size() - seen);
      if (count < 2 && shuffled.size() >= 2) break;  // batchnorm needs >= 2; drop a trailing singleton
      Batch batch = make_batch(shuffled, seen, count, data.text_norm, data.image_norm, model.config());
      zero_grads(params);
      Tensor scores = model.scores(batch, Mode::kTrain, rng);
      Tensor dscores;
      const double loss = nll_loss_batch(scores, batch.labels, &dscores);
      model.backward(dscores);
      optimizer.step(params);
      check_finite(loss, params);
      loss_sum += loss * static_cast<double>(count);
      seen += count;
    }

    double val_loss = 0;
    const Metrics val = counts_over(model, data.validation, data.text_norm, data.image_norm, opts.batch_size,
                                    &val_loss);
    EpochLog row;
    row.epoch = epoch;
    row.train_loss = loss_sum / static_cast<double>(seen);
    row.val_loss = val_loss;
    row.val_f1 = val.f1;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.log.push_back(row);
    if (opts.progress) {
      nlohmann::json j{{"epoch", row.epoch}, {"train_loss", row.train_loss}, {"val_loss", row.val_loss},
                       {"val_f1", row.val_f1}, {"seconds", row.seconds}};
      (*opts.progress) << j.dump() << "\n";
    }

    if (val_loss < result.best_val_loss) {
      result.best_val_loss = val_loss;
      result.best_epoch = epoch;
      best_params.clear();
      for (auto& p : params) best_params.push_back(p.tensor->data());
      epochs_since_best = 0;
    } else if (++epochs_since_best >= opts.patience) {
      break;
    }
  }

  if (!best_params.empty())
    for (std::size_t i = 0; i < params.size(); ++i) params[i].tensor->data() = best_params[i];
  return result;
}

// ---------------------------------------------------------------------------
// Explicit-feature logistic-regression baseline

namespace {

Tensor explicit_matrix(const std::vector<EncodedExample>& examples, const FeatureNorm& norm) {
  const auto b = static_cast<Eigen::Index>(examples.size());
  Tensor x({b, static_cast<Eigen::Index>(TextExplicitVector::kDim)});
  for (Eigen::Index i = 0; i < b; ++i)
    norm.apply(examples[static_cast<std::size_t>(i)].text_explicit,
               x.data().data() + i * static_cast<Eigen::Index>(TextExplicitVector::kDim));
  return x;
}

Metrics lr_metrics(DenseLayer<float>& layer, const std::vector<EncodedExample>& examples, const FeatureNorm& norm,
                   double* mean_loss) {
  if (examples.empty()) throw DataError("cannot evaluate an empty example set");
  Tensor x = explicit_matrix(examples, norm);
  Rng rng(0);
  Tensor scores = layer.forward(x, Mode::kEval, rng);
  std::vector<int> labels;
  for (const auto& ex : examples) labels.push_back(ex.label);
  if (mean_loss) *mean_loss = nll_loss_batch(scores, labels);
  Tensor probs = softmax_rows(scores);
  long tp = 0, fp = 0, fn = 0, tn = 0;
  auto pm = probs.as_matrix(x.dim(0), 2);
  for (Eigen::Index i = 0; i < x.dim(0); ++i) {
    const int pred = pm(i, kLabelFake) >= pm(i, kLabelReal) ? kLabelFake : kLabelReal;
    const int truth = labels[static_cast<std::size_t>(i)];
    if (pred == kLabelFake && truth == kLabelFake) ++tp;
    else if (pred == kLabelFake && truth == kLabelReal) ++fp;
    else if (pred == kLabelReal && truth == kLabelFake) ++fn;
    else ++tn;
  }
  return metrics_from_counts(tp, fp, fn, tn);
}

}  // namespace

LrBaselineResult train_lr_baseline(const EncodedDataset& data, const TrainOptions& opts) {
  Rng rng(opts.seed);
  DenseLayer<float> layer(static_cast<Eigen::Index>(TextExplicitVector::kDim), 2, rng);
  std::vector<NamedParam<float>> params;
  layer.collect("baseline.dense", params);
  RmsProp<float> optimizer(opts.learning_rate);

  LrBaselineResult result;
  result.train.best_val_loss = std::numeric_limits<double>::infinity();
  std::vector<VecX<float>> best_params;
  int epochs_since_best = 0;

  std::vector<std::size_t> order(data.train.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= opts.max_epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0;
    std::size_t seen = 0;
    while (seen < order.size()) {
      const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(opts.batch_size), order.size() - seen);
      std::vector<EncodedExample> chunk;
      for (std::size_t i = 0; i < count; ++i) chunk.push_back(data.train[order[seen + i]]);
      Tensor x = explicit_matrix(chunk, data.text_norm);
      std::vector<int> labels;
      for (const auto& ex : chunk) labels.push_back(ex.label);
      zero_grads(params);
      Tensor scores = layer.forward(x, Mode::kTrain, rng);
      Tensor dscores;
      const double loss = nll_loss_batch(scores, labels, &dscores);
      layer.backward(dscores);
      optimizer.step(params);
      check_finite(loss, params);
      loss_sum += loss * static_cast<double>(count);
      seen += count;
    }
    double val_loss = 0;
    const Metrics val = lr_metrics(layer, data.validation, data.text_norm, &val_loss);
    EpochLog row;
    row.epoch = epoch;
    row.train_loss = loss_sum / static_cast<double>(seen);
    row.val_loss = val_loss;
    row.val_f1 = val.f1;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.train.log.push_back(row);
    if (val_loss < result.train.best_val_loss) {
      result.train.best_val_loss = val_loss;
      result.train.best_epoch = epoch;
      best_params.clear();
      for (auto& p : params) best_params.push_back(p.tensor->data());
      epochs_since_best = 0;
    } else if (++epochs_since_best >= opts.patience) {
      break;
    }
  }
  if (!best_params.empty())
    for (std::size_t i = 0; i < params.size(); ++i) params[i].tensor->data() = best_params[i];

  result.test_metrics = lr_metrics(layer, data.test, data.text_norm, nullptr);
  result.weights = layer.weights();
  result.bias = layer.bias();
  return result;
}

Metrics evaluate_lr(const Tensor& weights, const Tensor& bias, const std::vector<EncodedExample>& examples,
                    const FeatureNorm& text_norm) {
  Rng rng(0);
  DenseLayer<float> layer(weights.dim(1), weights.dim(0), rng);
  layer.weights() = weights;
  layer.bias() = bias;
  return lr_metrics(layer, examples, text_norm, nullptr);
}

// ---------------------------------------------------------------------------
// Corpus statistics

FeatureStats summarize(std::vector<double> values) {
  FeatureStats s;
  s.count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double sq = 0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / n);
  s.min = values.front();
  s.max = values.back();
  auto quantile = [&](double q) {
    const double pos = q * (n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    return lo + 1 < values.size() ? values[lo] * (1.0 - frac) + values[lo + 1] * frac : values[lo];
  };
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  return s;
}

CorpusStats corpus_stats(const std::vector<NewsRecord>& records, const Lexicons& lex) {
  // class -> feature -> raw values
  std::map<std::string, std::map<std::string, std::vector<double>>> raw;
  for (const auto& rec : records) {
    const std::string cls = rec.label == Label::kFake ? "fake" : "real";
    const TextExplicitVector v = extract_text_explicit(rec.title, rec.text, lex);
    for (std::size_t i = 0; i < TextExplicitVector::kDim; ++i)
      raw[cls][TextExplicitVector::names()[i]].push_back(v[i]);
    if (!rec.image_missing) {
      try {
        const DecodedImage img = decode_image(rec.image_path);
        Tensor input = resize_to_input(img);
        const ImageExplicitVector iv = extract_image_explicit(img.width, img.height, rec.face_count, &input);
        raw[cls]["image_width_px"].push_back(iv.width_px);
        raw[cls]["image_height_px"].push_back(iv.height_px);
        raw[cls]["image_aspect_ratio"].push_back(iv.aspect_ratio);
        raw[cls]["image_face_count"].push_back(iv.face_count);
      } catch (const ImageError&) {
        // undecodable image contributes no image statistics
      }
    }
  }
  CorpusStats stats;
  for (auto& [cls, feats] : raw)
    for (auto& [name, values] : feats) stats[cls][name] = summarize(std::move(values));
  return stats;
}

void write_stats_ndjson(const CorpusStats& stats, std::ostream& os) {
  for (const auto& [cls, feats] : stats)
    for (const auto& [name, s] : feats) {
      nlohmann::json j{{"class", cls},   {"feature", name}, {"count", s.count}, {"mean", s.mean},
                       {"stddev", s.stddev}, {"min", s.min},    {"q1", s.q1},       {"median", s.median},
                       {"q3", s.q3},     {"max", s.max}};
      os << j.dump() << "\n";
    }
}

void write_stats_table(const CorpusStats& stats, std::ostream& os) {
  os << std::left << std::setw(6) << "class" << std::setw(30) << "feature" << std::right << std::setw(10) << "mean"
     << std::setw(10) << "stddev" << std::setw(10) << "median" << std::setw(10) << "q1" << std::setw(10) << "q3"
     << "\n";
  os << std::string(86, '-') << "\n";
  for (const auto& [cls, feats] : stats)
    for (const auto& [name, s] : feats)
      os << std::left << std::setw(6) << cls << std::setw(30) << name << std::right << std::fixed
         << std::setprecision(3) << std::setw(10) << s.mean << std::setw(10) << s.stddev << std::setw(10) << s.median
         << std::setw(10) << s.q1 << std::setw(10) << s.q3 << "\n";
  os.unsetf(std::ios::fixed);
}

void write_log_ndjson(const std::vector<EpochLog>& log, std::ostream& os, bool include_seconds) {
  for (const auto& row : log) {
    nlohmann::json j{{"epoch", row.epoch}, {"train_loss", row.train_loss}, {"val_loss", row.val_loss},
                     {"val_f1", row.val_f1}};
    if (include_seconds) j["seconds"] = row.seconds;
    os << j.dump() << "\n";
  }
}

// ---------------------------------------------------------------------------
// Synthetic corpus

namespace {

const std::vector<std::string>& filler_words() {
  static std::vector<std::string> words = [] {
    std::vector<std::string> out;
    for (int i = 0; i < 240; ++i) out.push_back("topic" + std::to_string(i));
    return out;
  }();
  return words;
}

const std::vector<std::string> kFakeMarkers{"shocking",  "unbelievable", "exposed", "secret",
                                            "miracle",   "outrageous",   "banned",  "conspiracy"};
const std::vector<std::string> kRealMarkers{"official", "statement", "report",  "committee",
                                            "spokesman", "research",  "ministry", "according"};

DecodedImage synth_image(bool fake, int size, Rng& rng) {
  DecodedImage img;
  img.width = size * 2;  // original resolution differs from the network input
  img.height = size * 2;
  img.rgb.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  std::uniform_int_distribution<int> noise(0, 60);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      auto* px = img.rgb.data() + (static_cast<std::size_t>(y) * img.width + x) * 3;
      if (fake) {
        // red center block on dark ground
        const bool block = std::abs(y - img.height / 2) < img.height / 5 && std::abs(x - img.width / 2) < img.width / 5;
        px[0] = static_cast<std::uint8_t>((block ? 200 : 20) + noise(rng) / 4);
        px[1] = static_cast<std::uint8_t>(20 + noise(rng) / 4);
        px[2] = static_cast<std::uint8_t>(20 + noise(rng) / 4);
      } else {
        // green horizontal gradient
        px[0] = static_cast<std::uint8_t>(20 + noise(rng) / 4);
        px[1] = static_cast<std::uint8_t>(60 + (150 * x) / img.width + noise(rng) / 4);
        px[2] = static_cast<std::uint8_t>(40 + noise(rng) / 4);
      }
    }
  return img;
}

std::string synth_text(bool fake, bool carry_signal, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, filler_words().size() - 1);
  std::uniform_int_distribution<int> len(60, 140);
  std::string body;
  const int words = len(rng);
  for (int i = 0; i < words; ++i) {
    body += filler_words()[pick(rng)];
    body += (i % 12 == 11) ? ". " : " ";
  }
  if (carry_signal) {
    const auto& markers = fake ? kFakeMarkers : kRealMarkers;
    std::uniform_int_distribution<std::size_t> mk(0, markers.size() - 1);
    for (int i = 0; i < 6; ++i) {
      body += markers[mk(rng)];
      body += " ";
    }
    if (fake) body += "you will not believe this! SHOCKING!!!";
    else body += "the committee published the full report.";
  }
  return body;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string generate_synthetic(const std::string& dir, const SyntheticOptions& opts) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "images");
  const std::string csv_path = (fs::path(dir) / "corpus.csv").string();
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw DataError("cannot write synthetic corpus: " + csv_path);
  csv << "id,title,text,image,face_count,label\n";
  Rng rng(opts.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t i = 0; i < opts.count; ++i) {
    const bool fake = i % 2 == 1;
    const bool signal = coin(rng) < opts.text_signal;
    const std::string image_rel = "images/img" + std::to_string(i) + ".ppm";
    write_ppm((fs::path(dir) / image_rel).string(), synth_image(fake, opts.image_size, rng));
    const std::string title = fake && signal ? "SHOCKING truth they hide!" : "Daily report " + std::to_string(i);
    const double faces = fake ? (coin(rng) < 0.1 ? 1.0 : 0.0) : (coin(rng) < 0.4 ? 1.0 : 0.0);
    csv << "syn" << i << "," << csv_quote(title) << "," << csv_quote(synth_text(fake, signal, rng)) << ","
        << image_rel << "," << faces << "," << (fake ? "fake" : "real") << "\n";
  }
  return csv_path;
}

}  // namespace ticnn
