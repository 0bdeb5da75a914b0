#include "senticast/nn/checkpoint.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>

namespace senticast::nn {

namespace {

constexpr std::string_view kMagic = "SNTCKPT1";
constexpr std::array<std::string_view, kGateCount> kGateNames = {"forget", "input",
                                                                 "candidate", "output"};

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_u64(std::string_view in, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  }
  return v;
}

using TensorVisitor = std::function<void(const std::string&, Eigen::Ref<Matrix<double>>)>;

/// Visits every tensor with its stable name, in payload order.
void visit_named(Network& net, const TensorVisitor& visit) {
  for (std::size_t l = 0; l < net.recurrent.size(); ++l) {
    const bool bi = net.layers[l].kind == LayerKind::bilstm;
    for (int dir = 0; dir < (bi ? 2 : 1); ++dir) {
      auto& cell = dir == 0 ? net.recurrent[l].forward : net.recurrent[l].backward;
      const std::string prefix =
          "layer" + std::to_string(l) + (dir == 0 ? ".forward." : ".backward.");
      for (std::size_t k = 0; k < kGateCount; ++k)
        visit(prefix + "input_weights." + std::string(kGateNames[k]), cell.input_weights[k]);
      for (std::size_t k = 0; k < kGateCount; ++k)
        visit(prefix + "recurrent_weights." + std::string(kGateNames[k]),
              cell.recurrent_weights[k]);
      for (std::size_t k = 0; k < kGateCount; ++k)
        visit(prefix + "bias." + std::string(kGateNames[k]), cell.biases[k]);
    }
  }
  visit("head.weights", net.head.weights);
  visit("head.bias", net.head.bias);
}

std::string_view activation_name(Activation a) {
  return a == Activation::tanh ? "tanh" : "linear";
}

}  // namespace

nlohmann::json layer_to_json(const LayerSpec& spec) {
  return {{"kind", std::string(to_string(spec.kind))},
          {"units", spec.units},
          {"activation", std::string(activation_name(spec.activation))},
          {"return_sequences", spec.return_sequences}};
}

LayerSpec layer_from_json(const nlohmann::json& j) {
  LayerSpec spec;
  spec.kind = parse_layer_kind(j.at("kind").get<std::string>());
  spec.units = j.at("units").get<int>();
  const auto act = j.at("activation").get<std::string>();
  if (act != "tanh" && act != "linear") throw CheckpointError("unknown activation " + act);
  spec.activation = act == "tanh" ? Activation::tanh : Activation::linear;
  spec.return_sequences = j.at("return_sequences").get<bool>();
  return spec;
}

std::string encode_checkpoint(const Network& model, const nlohmann::json& metadata) {
  Network copy = model;
  nlohmann::json header;
  header["format"] = "senticast-checkpoint";
  header["version"] = 1;
  header["input_dim"] = model.input_dim;
  header["seed"] = model.seed;
  header["layers"] = nlohmann::json::array();
  for (const auto& spec : model.layers) header["layers"].push_back(layer_to_json(spec));
  header["metadata"] = metadata;

  std::string payload;
  nlohmann::json table = nlohmann::json::array();
  visit_named(copy, [&](const std::string& name, Eigen::Ref<Matrix<double>> t) {
    table.push_back({{"name", name},
                     {"rows", t.rows()},
                     {"cols", t.cols()},
                     {"offset", payload.size()}});
    for (Eigen::Index j = 0; j < t.cols(); ++j)
      for (Eigen::Index i = 0; i < t.rows(); ++i) put_u64(payload, std::bit_cast<std::uint64_t>(t(i, j)));
  });
  header["tensors"] = std::move(table);

  const std::string header_text = header.dump();
  std::string out(kMagic);
  put_u64(out, header_text.size());
  out += header_text;
  out += payload;
  return out;
}

Checkpoint decode_checkpoint(std::string_view bytes) {
  if (bytes.size() < 16 || bytes.substr(0, 8) != kMagic) {
    throw CheckpointError("not a senticast checkpoint (bad magic)");
  }
  const std::uint64_t header_len = get_u64(bytes, 8);
  if (header_len > bytes.size() - 16) throw CheckpointError("truncated checkpoint header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(16, header_len));
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("malformed checkpoint header: ") + e.what());
  }
  const std::string_view payload = bytes.substr(16 + header_len);

  Checkpoint ckpt;
  try {
    if (header.at("version").get<int>() != 1) throw CheckpointError("unsupported checkpoint version");
    std::vector<LayerSpec> layers;
    for (const auto& j : header.at("layers")) layers.push_back(layer_from_json(j));
    ckpt.model = Network::zeros(std::move(layers), header.at("input_dim").get<Eigen::Index>());
    ckpt.model.seed = header.at("seed").get<std::uint64_t>();
    if (header.contains("metadata")) ckpt.metadata = header["metadata"];

    const auto& table = header.at("tensors");
    std::size_t index = 0;
    std::size_t payload_end = 0;
    visit_named(ckpt.model, [&](const std::string& name, Eigen::Ref<Matrix<double>> t) {
      if (index >= table.size()) throw CheckpointError("checkpoint is missing tensor " + name);
      const auto& entry = table[index++];
      if (entry.at("name").get<std::string>() != name ||
          entry.at("rows").get<Eigen::Index>() != t.rows() ||
          entry.at("cols").get<Eigen::Index>() != t.cols()) {
        throw CheckpointError("tensor table does not match layer specs at " + name);
      }
      const auto offset = entry.at("offset").get<std::size_t>();
      if (offset + 8 * static_cast<std::size_t>(t.size()) > payload.size()) {
        throw CheckpointError("truncated payload for " + name);
      }
      payload_end = std::max(payload_end, offset + 8 * static_cast<std::size_t>(t.size()));
      std::size_t at = offset;
      for (Eigen::Index j = 0; j < t.cols(); ++j)
        for (Eigen::Index i = 0; i < t.rows(); ++i, at += 8)
          t(i, j) = std::bit_cast<double>(get_u64(payload, at));
    });
    if (index != table.size()) throw CheckpointError("checkpoint has unexpected extra tensors");
    if (payload_end != payload.size()) throw CheckpointError("checkpoint has trailing bytes");
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("malformed checkpoint header: ") + e.what());
  } catch (const ShapeError& e) {
    throw CheckpointError(std::string("invalid architecture in checkpoint: ") + e.what());
  }
  return ckpt;
}

void save_checkpoint(const std::filesystem::path& path, const Network& model,
                     const nlohmann::json& metadata) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError("cannot write checkpoint: " + path.string());
  const auto bytes = encode_checkpoint(model, metadata);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError("failed writing checkpoint: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return decode_checkpoint(ss.str());
}

}  // namespace senticast::nn
