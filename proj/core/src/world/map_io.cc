/*
 * Copyright 2026 The scaletwin Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "scaletwin/world/map_io.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "scaletwin/error.h"

namespace scaletwin::world {
namespace {

constexpr char kEncoding[] = "log_odds_256_inverted";

std::string ShortestDouble(double value) {
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string MetadataYaml(const OccupancyGrid& grid, const std::string& image) {
  std::ostringstream out;
  out << "image: " << image << "\n"
      << "resolution: " << ShortestDouble(grid.resolution()) << "\n"
      << "origin: [" << ShortestDouble(grid.origin().x) << ", "
      << ShortestDouble(grid.origin().y) << ", "
      << ShortestDouble(grid.origin().theta) << "]\n"
      << "width: " << grid.width() << "\n"
      << "height: " << grid.height() << "\n"
      << "log_odds_min: " << ShortestDouble(grid.log_odds_min()) << "\n"
      << "log_odds_max: " << ShortestDouble(grid.log_odds_max()) << "\n"
      << "encoding: " << kEncoding << "\n"
      << "negate: 0\n"
      << "occupied_thresh: 0.65\n"
      << "free_thresh: 0.196\n";
  return out.str();
}

std::vector<std::uint8_t> EncodePgm(const OccupancyGrid& grid) {
  const std::string header = "P5\n# scaletwin log-odds map\n" +
                             std::to_string(grid.width()) + " " +
                             std::to_string(grid.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + grid.cells().size());
  for (int row = 0; row < grid.height(); ++row) {
    const int y = grid.height() - 1 - row;
    for (int x = 0; x < grid.width(); ++x) {
      const auto bin = QuantizeLogOdds(grid.LogOdds({x, y}), grid.log_odds_min(),
                                       grid.log_odds_max());
      out.push_back(static_cast<std::uint8_t>(255 - bin));
    }
  }
  return out;
}

struct Metadata {
  double resolution;
  Pose2D origin;
  int width;
  int height;
  double log_odds_min;
  double log_odds_max;
  std::string image;
};

Metadata ParseMetadata(const std::string& text) {
  try {
    const YAML::Node root = YAML::Load(text);
    Metadata m;
    m.image = root["image"].as<std::string>();
    m.resolution = root["resolution"].as<double>();
    const auto origin = root["origin"].as<std::vector<double>>();
    if (origin.size() != 3) {
      throw Error(ErrorCode::kMalformedMetadata, "origin needs [x, y, theta]");
    }
    m.origin = {origin[0], origin[1], origin[2]};
    m.width = root["width"].as<int>();
    m.height = root["height"].as<int>();
    m.log_odds_min = root["log_odds_min"].as<double>();
    m.log_odds_max = root["log_odds_max"].as<double>();
    if (root["encoding"] && root["encoding"].as<std::string>() != kEncoding) {
      throw Error(ErrorCode::kMalformedMetadata, "unknown map encoding");
    }
    if (!(m.resolution > 0.0) || m.width <= 0 || m.height <= 0 ||
        !(m.log_odds_min < 0.0 && m.log_odds_max > 0.0)) {
      throw Error(ErrorCode::kMalformedMetadata, "metadata values out of range");
    }
    return m;
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kMalformedMetadata, e.what());
  }
}

OccupancyGrid DecodePgm(std::span<const std::uint8_t> bytes, const Metadata& m) {
  std::size_t pos = 0;
  auto next_token = [&]() -> std::string {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    std::string token;
    while (pos < bytes.size() && !std::isspace(bytes[pos]) && bytes[pos] != '#') {
      token.push_back(static_cast<char>(bytes[pos++]));
    }
    return token;
  };
  if (next_token() != "P5") {
    throw Error(ErrorCode::kMalformedImage, "not a binary PGM (P5)");
  }
  int width = 0, height = 0, maxval = 0;
  try {
    width = std::stoi(next_token());
    height = std::stoi(next_token());
    maxval = std::stoi(next_token());
  } catch (const std::exception&) {
    throw Error(ErrorCode::kMalformedImage, "bad PGM header");
  }
  if (maxval != 255) throw Error(ErrorCode::kMalformedImage, "PGM maxval must be 255");
  ++pos;  // single whitespace before raster
  if (width != m.width || height != m.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "image is " + std::to_string(width) + "x" + std::to_string(height) +
                    ", metadata says " + std::to_string(m.width) + "x" +
                    std::to_string(m.height));
  }
  const std::size_t expected =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (pos > bytes.size() || bytes.size() - pos != expected) {
    throw Error(ErrorCode::kDimensionMismatch, "raster size does not match header");
  }
  OccupancyGrid grid(m.resolution, m.origin, width, height, m.log_odds_min,
                     m.log_odds_max);
  for (int row = 0; row < height; ++row) {
    const int y = height - 1 - row;
    for (int x = 0; x < width; ++x) {
      const std::uint8_t pixel =
          bytes[pos + static_cast<std::size_t>(row) * width + x];
      grid.SetLogOdds({x, y}, DequantizeLogOdds(static_cast<std::uint8_t>(255 - pixel),
                                                m.log_odds_min, m.log_odds_max));
    }
  }
  return grid;
}

std::vector<std::uint8_t> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path);
}

}  // namespace

std::uint8_t QuantizeLogOdds(double log_odds, double lo, double hi) {
  const double scaled = std::floor((log_odds - lo) / (hi - lo) * 256.0);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

double DequantizeLogOdds(std::uint8_t bin, double lo, double hi) {
  return lo + (static_cast<double>(bin) + 0.5) * (hi - lo) / 256.0;
}

MapFiles SaveGrid(const OccupancyGrid& grid, const std::string& base_path) {
  MapFiles files{base_path + ".pgm", base_path + ".yaml"};
  const std::string image_name =
      std::filesystem::path(files.image_path).filename().string();
  WriteFile(files.image_path, EncodePgm(grid));
  const std::string meta = MetadataYaml(grid, image_name);
  WriteFile(files.metadata_path,
            std::span(reinterpret_cast<const std::uint8_t*>(meta.data()), meta.size()));
  return files;
}

OccupancyGrid LoadGrid(const std::string& metadata_path) {
  const auto meta_bytes = ReadFile(metadata_path);
  const Metadata m = ParseMetadata(std::string(meta_bytes.begin(), meta_bytes.end()));
  std::filesystem::path image(m.image);
  if (image.is_relative()) {
    image = std::filesystem::path(metadata_path).parent_path() / image;
  }
  return DecodePgm(ReadFile(image.string()), m);
}

std::vector<std::uint8_t> EncodeGridSnapshot(const OccupancyGrid& grid) {
  const std::string meta = MetadataYaml(grid, "inline");
  const auto pgm = EncodePgm(grid);
  std::vector<std::uint8_t> out;
  out.reserve(4 + meta.size() + pgm.size());
  const auto len = static_cast<std::uint32_t>(meta.size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
  out.insert(out.end(), meta.begin(), meta.end());
  out.insert(out.end(), pgm.begin(), pgm.end());
  return out;
}

OccupancyGrid DecodeGridSnapshot(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw Error(ErrorCode::kMalformedMetadata, "snapshot too short");
  std::uint32_t len = 0;
  for (int i = 0; i < 4; ++i) len |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
  if (bytes.size() - 4 < len) {
    throw Error(ErrorCode::kMalformedMetadata, "snapshot metadata truncated");
  }
  const Metadata m = ParseMetadata(
      std::string(reinterpret_cast<const char*>(bytes.data() + 4), len));
  return DecodePgm(bytes.subspan(4 + len), m);
}

}  // namespace scaletwin::world
