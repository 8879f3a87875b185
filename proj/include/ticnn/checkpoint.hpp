#pragma once

#include "ticnn/model.hpp"

#include <cstring>
#include <fstream>
#include <map>

namespace ticnn {

/// Versioned binary container: magic "TICN", u32 version, JSON config blob,
/// named float32 tensors, then the vocabulary as a JSON token array. All
/// integers little-endian; dims are u64.
struct Checkpoint {
  ModelConfig config;
  std::map<std::string, Tensor> tensors;
  std::vector<std::string> vocab;
};

namespace detail {

inline void write_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
inline void write_u64(std::ostream& os, std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
inline void write_str(std::ostream& os, const std::string& s) {
  write_u64(os, s.size());
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::uint32_t read_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}
inline std::uint64_t read_u64(std::istream& is) {
  std::uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}
inline std::string read_str(std::istream& is) {
  const std::uint64_t n = read_u64(is);
  std::string s(n, '\0');
  is.read(s.data(), static_cast<std::streamsize>(n));
  return s;
}

}  // namespace detail

inline constexpr char kCheckpointMagic[4] = {'T', 'I', 'C', 'N'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

inline void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  os.write(kCheckpointMagic, 4);
  detail::write_u32(os, kCheckpointVersion);
  detail::write_str(os, config_to_json(ckpt.config).dump());
  detail::write_u64(os, ckpt.tensors.size());
  for (const auto& [name, t] : ckpt.tensors) {
    detail::write_str(os, name);
    detail::write_u32(os, static_cast<std::uint32_t>(t.rank()));
    for (Eigen::Index d : t.shape()) detail::write_u64(os, static_cast<std::uint64_t>(d));
    os.write(reinterpret_cast<const char*>(t.data().data()), static_cast<std::streamsize>(t.size() * sizeof(float)));
  }
  detail::write_str(os, nlohmann::json(ckpt.vocab).dump());
  if (!os) throw std::runtime_error("checkpoint write failed: " + path);
}

inline Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kCheckpointMagic, 4) != 0)
    throw std::runtime_error("not a checkpoint file (bad magic): " + path);
  const std::uint32_t version = detail::read_u32(is);
  if (version != kCheckpointVersion)
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
  Checkpoint ckpt;
  ckpt.config = config_from_json(nlohmann::json::parse(detail::read_str(is)));
  const std::uint64_t count = detail::read_u64(is);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::string name = detail::read_str(is);
    const std::uint32_t rank = detail::read_u32(is);
    std::vector<Eigen::Index> shape(rank);
    for (auto& d : shape) d = static_cast<Eigen::Index>(detail::read_u64(is));
    Tensor t(shape);
    is.read(reinterpret_cast<char*>(t.data().data()), static_cast<std::streamsize>(t.size() * sizeof(float)));
    ckpt.tensors.emplace(name, std::move(t));
  }
  ckpt.vocab = nlohmann::json::parse(detail::read_str(is)).get<std::vector<std::string>>();
  if (!is) throw std::runtime_error("truncated checkpoint: " + path);
  return ckpt;
}

/// Copies a model's parameters (and any extra tensors) into a checkpoint.
inline Checkpoint checkpoint_from_model(TiCnnModel& model, std::vector<std::string> vocab,
                                        const std::map<std::string, Tensor>& extras = {}) {
  Checkpoint ckpt;
  ckpt.config = model.config();
  ckpt.vocab = std::move(vocab);
  for (auto& p : model.params()) ckpt.tensors.emplace(p.name, *p.tensor);
  for (const auto& [name, t] : extras) ckpt.tensors.emplace(name, t);
  return ckpt;
}

/// Rebuilds a model from the checkpoint config and restores every named
/// parameter; throws if a model parameter is missing from the file.
inline TiCnnModel model_from_checkpoint(const Checkpoint& ckpt) {
  TiCnnModel model(ckpt.config, 0);
  for (auto& p : model.params()) {
    auto it = ckpt.tensors.find(p.name);
    if (it == ckpt.tensors.end()) throw std::runtime_error("checkpoint missing tensor: " + p.name);
    if (it->second.shape() != p.tensor->shape())
      throw std::runtime_error("checkpoint tensor shape mismatch for " + p.name);
    p.tensor->data() = it->second.data();
  }
  return model;
}

}  // namespace ticnn
