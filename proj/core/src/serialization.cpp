#include "jspin/serialization.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace jspin {

namespace {

using ordered_json = nlohmann::ordered_json;

}  // namespace

std::string to_json_string(const BlockState& state) {
  ordered_json root;
  root["n"] = state.n;
  root["two_s"] = state.s.twice();
  ordered_json blocks = ordered_json::array();
  for (const auto& b : state.blocks) {
    ordered_json jb;
    jb["two_j"] = b.j.twice();
    ordered_json pops = ordered_json::array();
    for (int i = 0; i < b.dim(); ++i) {
      pops.push_back(b.populations[i]);
    }
    jb["populations"] = std::move(pops);

    ordered_json bands = ordered_json::array();
    for (const auto& band : state.bands) {
      if (band.j_upper != b.j) continue;
      ordered_json jband;
      jband["two_j_lower"] = band.j_lower.twice();
      ordered_json values = ordered_json::array();
      for (int i = 0; i < band.values.size(); ++i) {
        values.push_back(band.values[i]);
      }
      jband["values"] = std::move(values);
      bands.push_back(std::move(jband));
    }
    if (!bands.empty()) {
      jb["coherences"] = std::move(bands);
    }

    if (b.dense) {
      ordered_json re = ordered_json::array();
      ordered_json im = ordered_json::array();
      for (int r = 0; r < b.dense->rows(); ++r) {
        ordered_json re_row = ordered_json::array();
        ordered_json im_row = ordered_json::array();
        for (int c = 0; c < b.dense->cols(); ++c) {
          re_row.push_back((*b.dense)(r, c).real());
          im_row.push_back((*b.dense)(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
      }
      jb["matrix_re"] = std::move(re);
      jb["matrix_im"] = std::move(im);
    }
    blocks.push_back(std::move(jb));
  }
  root["blocks"] = std::move(blocks);
  return root.dump();
}

BlockState block_state_from_json(std::string_view text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("block_state_from_json: ") + e.what());
  }
  if (!root.contains("n") || !root.contains("two_s") || !root.contains("blocks")) {
    throw std::invalid_argument("block_state_from_json: missing n/two_s/blocks");
  }
  const int n = root["n"].get<int>();
  const HalfInt s = HalfInt::from_twice(root["two_s"].get<int>());

  BlockState state = BlockState::zeros(n, s);
  for (const auto& jb : root["blocks"]) {
    const HalfInt j = HalfInt::from_twice(jb.at("two_j").get<int>());
    auto* block = state.block(j);
    if (block == nullptr) {
      throw std::invalid_argument("block_state_from_json: illegal two_j for this n, s");
    }
    const auto& pops = jb.at("populations");
    if (static_cast<int>(pops.size()) != block->dim()) {
      throw std::invalid_argument("block_state_from_json: populations size mismatch");
    }
    for (int i = 0; i < block->dim(); ++i) {
      block->populations[i] = pops[i].get<double>();
    }

    if (jb.contains("coherences")) {
      for (const auto& jband : jb["coherences"]) {
        BlockState::CoherenceBand band;
        band.j_upper = j;
        band.j_lower = HalfInt::from_twice(jband.at("two_j_lower").get<int>());
        const auto& values = jband.at("values");
        if (static_cast<int>(values.size()) != multiplicity(band.j_lower)) {
          throw std::invalid_argument("block_state_from_json: band size mismatch");
        }
        band.values.resize(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
          band.values[i] = values[i].get<double>();
        }
        state.bands.push_back(std::move(band));
      }
    }

    if (jb.contains("matrix_re") != jb.contains("matrix_im")) {
      throw std::invalid_argument("block_state_from_json: matrix_re/matrix_im must pair");
    }
    if (jb.contains("matrix_re")) {
      const auto& re = jb["matrix_re"];
      const auto& im = jb["matrix_im"];
      const int d = block->dim();
      if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d) {
        throw std::invalid_argument("block_state_from_json: matrix size mismatch");
      }
      Eigen::MatrixXcd dense(d, d);
      for (int r = 0; r < d; ++r) {
        if (static_cast<int>(re[r].size()) != d || static_cast<int>(im[r].size()) != d) {
          throw std::invalid_argument("block_state_from_json: matrix row size mismatch");
        }
        for (int c = 0; c < d; ++c) {
          dense(r, c) = {re[r][c].get<double>(), im[r][c].get<double>()};
        }
      }
      block->dense = std::move(dense);
    }
  }
  return state;
}

}  // namespace jspin
