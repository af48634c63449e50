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

#ifndef SCALETWIN_WORLD_MAP_IO_H_
#define SCALETWIN_WORLD_MAP_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scaletwin/world/occupancy_grid.h"

namespace scaletwin::world {

// Log-odds are stored on disk in 256 equal bins spanning the clamp range and
// restored to the bin midpoint. Pixels are inverted (255 - bin) so occupied
// cells render dark, as map viewers expect. The image's top row is the
// grid's highest y.
std::uint8_t QuantizeLogOdds(double log_odds, double lo, double hi);
double DequantizeLogOdds(std::uint8_t bin, double lo, double hi);

struct MapFiles {
  std::string image_path;     // <base>.pgm
  std::string metadata_path;  // <base>.yaml
};

// Writes a binary PGM (P5, maxval 255) and its YAML sidecar. Throws
// Error(kIoError).
MapFiles SaveGrid(const OccupancyGrid& grid, const std::string& base_path);

// Loads from the YAML sidecar; the image path inside it is resolved relative
// to the sidecar's directory. Throws kIoError, kMalformedMetadata,
// kMalformedImage or kDimensionMismatch.
OccupancyGrid LoadGrid(const std::string& metadata_path);

// Single-buffer form used for bus snapshots: u32 metadata length (LE) |
// metadata YAML | PGM bytes.
std::vector<std::uint8_t> EncodeGridSnapshot(const OccupancyGrid& grid);
OccupancyGrid DecodeGridSnapshot(std::span<const std::uint8_t> bytes);

}  // namespace scaletwin::world

#endif  // SCALETWIN_WORLD_MAP_IO_H_
