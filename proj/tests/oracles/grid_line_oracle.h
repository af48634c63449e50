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

#ifndef SCALETWIN_TESTS_ORACLES_GRID_LINE_ORACLE_H_
#define SCALETWIN_TESTS_ORACLES_GRID_LINE_ORACLE_H_

#include <cmath>
#include <cstdlib>
#include <vector>

namespace scaletwin::oracles {

struct Cell {
  int x;
  int y;
};

// Cells of a digital line between two cells computed by sampling the ideal
// line once per major-axis step and rounding the minor coordinate. Ties
// (exact .5) are the only place this may legitimately differ from an
// integer-error Bresenham, so callers compare cell counts, or use lines
// without ties.
inline std::vector<Cell> SampledLine(Cell from, Cell to) {
  const int dx = to.x - from.x;
  const int dy = to.y - from.y;
  const int steps = std::max(std::abs(dx), std::abs(dy));
  std::vector<Cell> cells;
  for (int i = 0; i <= steps; ++i) {
    const double f = steps == 0 ? 0.0 : static_cast<double>(i) / steps;
    cells.push_back({from.x + static_cast<int>(std::lround(f * dx)),
                     from.y + static_cast<int>(std::lround(f * dy))});
  }
  return cells;
}

// Cells a Bresenham line from `from` to `to` must visit: one per step of the
// major axis, both endpoints included.
inline int BresenhamCellCount(Cell from, Cell to) {
  return std::max(std::abs(to.x - from.x), std::abs(to.y - from.y)) + 1;
}

}  // namespace scaletwin::oracles

#endif  // SCALETWIN_TESTS_ORACLES_GRID_LINE_ORACLE_H_
