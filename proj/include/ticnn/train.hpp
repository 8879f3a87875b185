#pragma once

#include "ticnn/dataset.hpp"
#include "ticnn/image.hpp"
#include "ticnn/model.hpp"
#include "ticnn/text.hpp"

#include <iosfwd>
#include <map>

namespace ticnn {

/// Training diverged (NaN loss); the message names the first bad tensor.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Model-ready sample with raw (unstandardized) explicit features.
struct EncodedExample {
  std::vector<int> tokens;             // length seq_len
  std::array<double, 31> text_explicit{};
  Tensor image;                        // [S x S x 3]
  std::array<double, 4> image_explicit{};
  int label = 0;
  bool image_missing = false;
};

/// Per-feature z-score statistics, fitted on the training split only.
struct FeatureNorm {
  VecX<float> mean;
  VecX<float> stddev;  // floored at 1e-6

  template <std::size_t N>
  void apply(const std::array<double, N>& raw, float* out) const {
    for (std::size_t i = 0; i < N; ++i)
      out[i] = (static_cast<float>(raw[i]) - mean[static_cast<Eigen::Index>(i)]) /
               stddev[static_cast<Eigen::Index>(i)];
  }

  Tensor mean_tensor() const;
  Tensor stddev_tensor() const;
  static FeatureNorm from_tensors(const Tensor& mean, const Tensor& stddev);
};

struct EncodedDataset {
  std::vector<EncodedExample> train, validation, test;
  Vocabulary vocab;
  FeatureNorm text_norm, image_norm;
};

/// Reads TICNN_THREADS (>=1); defaults to 1.
std::size_t worker_count();

EncodedExample encode_record(const NewsRecord& rec, const Vocabulary& vocab, const Lexicons& lex,
                             const ModelConfig& cfg);

/// Encodes a record list against a fixed vocabulary (TICNN_THREADS workers).
std::vector<EncodedExample> encode_records(const std::vector<NewsRecord>& records, const Vocabulary& vocab,
                                           const Lexicons& lex, const ModelConfig& cfg);

/// Builds the vocabulary on the training split, encodes all three splits in
/// parallel, and fits the standardization statistics on train.
EncodedDataset encode_dataset(const DatasetSplit& split, const Lexicons& lex, const ModelConfig& cfg);

Batch make_batch(const std::vector<EncodedExample>& examples, std::size_t first, std::size_t count,
                 const FeatureNorm& text_norm, const FeatureNorm& image_norm, const ModelConfig& cfg);

struct EpochLog {
  int epoch = 0;
  double train_loss = 0, val_loss = 0, val_f1 = 0, seconds = 0;
};

struct TrainOptions {
  int batch_size = 32;
  int max_epochs = 50;
  int patience = 5;
  std::uint32_t seed = 42;
  float learning_rate = 1e-3f;
  std::ostream* progress = nullptr;  // optional live log (NDJSON rows)
};

struct TrainResult {
  std::vector<EpochLog> log;
  int best_epoch = 0;
  double best_val_loss = 0;
  Metrics test_metrics;  // filled by callers that evaluate afterwards
};

/// RMSprop over mean NLL with early stopping on validation loss; the model
/// is left holding the best-validation-epoch parameters.
TrainResult train_model(TiCnnModel& model, const EncodedDataset& data, const TrainOptions& opts);

Metrics evaluate_model(TiCnnModel& model, const std::vector<EncodedExample>& examples, const EncodedDataset& data,
                       int batch_size = 64);

/// Dense(31 -> 2) + softmax over the standardized explicit text vector,
/// trained with the same loop; weights land in out_weights/out_bias.
struct LrBaselineResult {
  TrainResult train;
  Metrics test_metrics;
  Tensor weights;  // [2 x 31]
  Tensor bias;     // [2]
};
LrBaselineResult train_lr_baseline(const EncodedDataset& data, const TrainOptions& opts);

Metrics evaluate_lr(const Tensor& weights, const Tensor& bias, const std::vector<EncodedExample>& examples,
                    const FeatureNorm& text_norm);

// ---------------------------------------------------------------------------
// Corpus statistics (per-class five-number summaries plus mean/stddev)

struct FeatureStats {
  std::size_t count = 0;
  double mean = 0, stddev = 0, min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

FeatureStats summarize(std::vector<double> values);

/// class name ("real"/"fake") -> feature name -> stats. Image features are
/// computed only for records whose image decodes.
using CorpusStats = std::map<std::string, std::map<std::string, FeatureStats>>;

CorpusStats corpus_stats(const std::vector<NewsRecord>& records, const Lexicons& lex);

void write_stats_ndjson(const CorpusStats& stats, std::ostream& os);
void write_stats_table(const CorpusStats& stats, std::ostream& os);

void write_log_ndjson(const std::vector<EpochLog>& log, std::ostream& os, bool include_seconds = true);

// ---------------------------------------------------------------------------
// Synthetic corpus with planted multimodal signal

struct SyntheticOptions {
  std::size_t count = 500;
  std::uint32_t seed = 7;
  int image_size = 50;
  double text_signal = 0.7;  // fraction of documents carrying the text cue
};

/// Writes <dir>/corpus.csv and <dir>/images/*.ppm; the image pattern is the
/// only cue present in every example, so the explicit-text baseline caps out
/// below a model that sees the images.
std::string generate_synthetic(const std::string& dir, const SyntheticOptions& opts);

}  // namespace ticnn
