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

#ifndef SCALETWIN_TESTS_ORACLES_SCALAR_KALMAN_H_
#define SCALETWIN_TESTS_ORACLES_SCALAR_KALMAN_H_

namespace scaletwin::oracles {

struct ScalarEstimate {
  double mean;
  double variance;
};

// Closed form of n repeated scalar Kalman updates with the same measurement
// z and noise r, from the information form:
//   1 / p_n = 1 / p_0 + n / r,   x_n - z = (p_n / p_0) (x_0 - z).
inline ScalarEstimate RepeatedUpdate(ScalarEstimate prior, double z, double r, int n) {
  const double p_n = 1.0 / (1.0 / prior.variance + n / r);
  return {z + (p_n / prior.variance) * (prior.mean - z), p_n};
}

}  // namespace scaletwin::oracles

#endif  // SCALETWIN_TESTS_ORACLES_SCALAR_KALMAN_H_
