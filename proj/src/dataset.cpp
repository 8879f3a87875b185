#include "ticnn/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <random>

namespace ticnn {

bool read_csv_record(std::istream& is, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false, any = false;
  int c;
  while ((c = is.get()) != EOF) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (is.peek() == '"') {
          field.push_back('"');
          is.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
    } else if (c == '"' && field.empty()) {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\r') {
      if (is.peek() == '\n') is.get();
      fields.push_back(std::move(field));
      return true;
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(static_cast<char>(c));
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

LoadResult load_dataset(const std::string& csv_path, const std::string& image_root) {
  std::ifstream is(csv_path, std::ios::binary);
  if (!is) throw DataError("cannot open dataset: " + csv_path);
  std::vector<std::string> fields;
  if (!read_csv_record(is, fields)) throw DataError("empty dataset: " + csv_path);
  const std::vector<std::string> expected{"id", "title", "text", "image", "face_count", "label"};
  if (fields != expected) throw DataError("unexpected CSV header in " + csv_path);

  LoadResult out;
  std::size_t rows = 0;
  while (read_csv_record(is, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
    ++rows;
    if (fields.size() != expected.size()) {
      ++out.skipped_rows;
      continue;
    }
    NewsRecord rec;
    rec.id = fields[0];
    rec.title = fields[1];
    rec.text = fields[2];
    rec.image_path = fields[3];
    if (!fields[4].empty()) {
      try {
        rec.face_count = std::stod(fields[4]);
      } catch (const std::exception&) {
        ++out.skipped_rows;
        continue;
      }
    }
    if (fields[5] == "real")
      rec.label = Label::kReal;
    else if (fields[5] == "fake")
      rec.label = Label::kFake;
    else {
      ++out.skipped_rows;
      continue;
    }
    if (rec.id.empty()) {
      ++out.skipped_rows;
      continue;
    }
    if (!rec.image_path.empty()) {
      const std::filesystem::path full = std::filesystem::path(image_root) / rec.image_path;
      rec.image_path = full.string();
      rec.image_missing = !std::filesystem::exists(full);
    } else {
      rec.image_missing = true;
    }
    out.records.push_back(std::move(rec));
  }
  if (rows > 0 && out.skipped_rows * 10 > rows)
    throw DataError("more than 10% malformed rows (" + std::to_string(out.skipped_rows) + "/" + std::to_string(rows) +
                    "), likely a schema mismatch: " + csv_path);
  return out;
}

DatasetSplit split_dataset(const std::vector<NewsRecord>& records, std::uint32_t seed) {
  if (records.size() < 10) throw DataError("need at least 10 records to split, got " + std::to_string(records.size()));
  std::vector<std::size_t> real_idx, fake_idx;
  for (std::size_t i = 0; i < records.size(); ++i)
    (records[i].label == Label::kReal ? real_idx : fake_idx).push_back(i);

  std::mt19937 rng(seed);
  std::shuffle(real_idx.begin(), real_idx.end(), rng);
  std::shuffle(fake_idx.begin(), fake_idx.end(), rng);

  DatasetSplit split;
  for (const auto* group : {&real_idx, &fake_idx}) {
    const std::size_t n = group->size();
    const std::size_t n_test = n / 10, n_val = n / 10;
    for (std::size_t i = 0; i < n; ++i) {
      const NewsRecord& rec = records[(*group)[i]];
      if (i < n_test)
        split.test.push_back(rec);
      else if (i < n_test + n_val)
        split.validation.push_back(rec);
      else
        split.train.push_back(rec);
    }
  }
  return split;
}

Metrics metrics_from_counts(long tp, long fp, long fn, long tn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.tn = tn;
  m.precision = (tp + fp) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  m.recall = (tp + fn) > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  m.f1 = (m.precision + m.recall) > 0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  const long total = tp + fp + fn + tn;
  m.accuracy = total > 0 ? static_cast<double>(tp + tn) / static_cast<double>(total) : 0.0;
  return m;
}

}  // namespace ticnn
