#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ticnn {

/// Unrecoverable dataset problem (unreadable file, schema mismatch).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

enum class Label { kReal = 0, kFake = 1 };

struct NewsRecord {
  std::string id;
  std::string title;
  std::string text;
  std::string image_path;  // empty when the row has no image
  std::optional<double> face_count;
  Label label = Label::kReal;
  bool image_missing = false;  // file absent on disk
};

struct LoadResult {
  std::vector<NewsRecord> records;
  std::size_t skipped_rows = 0;
};

/// RFC 4180 CSV with header id,title,text,image,face_count,label.
/// Malformed rows are skipped; more than 10% skipped is fatal.
LoadResult load_dataset(const std::string& csv_path, const std::string& image_root);

/// One RFC 4180 record (handles quoted fields and embedded newlines);
/// returns false at end of input.
bool read_csv_record(std::istream& is, std::vector<std::string>& fields);

struct DatasetSplit {
  std::vector<NewsRecord> train, validation, test;
};

/// Deterministic stratified 80/10/10 split.
DatasetSplit split_dataset(const std::vector<NewsRecord>& records, std::uint32_t seed);

struct Metrics {
  double precision = 0, recall = 0, f1 = 0, accuracy = 0;
  long tp = 0, fp = 0, fn = 0, tn = 0;
};

/// Precision/recall/F1 with fake as the positive class.
Metrics metrics_from_counts(long tp, long fp, long fn, long tn);

}  // namespace ticnn
