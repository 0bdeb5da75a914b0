#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "senticast/nn/network.hpp"

namespace senticast::nn {

/// Checkpoint container, documented in docs/checkpoint_format.md:
///
///   offset 0   8 bytes  magic "SNTCKPT1"
///   offset 8   8 bytes  header length H, unsigned little-endian
///   offset 16  H bytes  UTF-8 JSON header (layers, seed, tensor table, metadata)
///   offset 16+H         float64 little-endian tensor payload, column-major,
///                       tensors in header order
class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Checkpoint {
  Network model;
  nlohmann::json metadata = nlohmann::json::object();
};

std::string encode_checkpoint(const Network& model,
                              const nlohmann::json& metadata = nlohmann::json::object());
Checkpoint decode_checkpoint(std::string_view bytes);

void save_checkpoint(const std::filesystem::path& path, const Network& model,
                     const nlohmann::json& metadata = nlohmann::json::object());
Checkpoint load_checkpoint(const std::filesystem::path& path);

nlohmann::json layer_to_json(const LayerSpec& spec);
LayerSpec layer_from_json(const nlohmann::json& j);

}  // namespace senticast::nn
