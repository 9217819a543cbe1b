// Copyright 2026 The pairlike Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAIRLIKE_TESTS_FIXTURES_HPP_
#define PAIRLIKE_TESTS_FIXTURES_HPP_

#include "pairlike/eval.hpp"

namespace fixture {

// Ten-class baseline confusion counts (rows true, columns predicted) from a
// published Fashion-MNIST classifier.
inline pairlike::ConfusionMatrix baseline_confusion() {
  pairlike::CountMatrix m(10, 10);
  m << 881, 2, 12, 9, 6, 2, 86, 0, 2, 0,  //
      3, 987, 1, 4, 1, 0, 3, 0, 1, 0,     //
      24, 2, 872, 6, 45, 1, 49, 0, 1, 0,  //
      22, 6, 8, 896, 21, 0, 46, 0, 0, 1,  //
      3, 0, 30, 22, 886, 0, 58, 0, 1, 0,  //
      0, 0, 0, 0, 0, 987, 0, 8, 0, 5,     //
      91, 0, 43, 21, 58, 0, 781, 0, 6, 0, //
      0, 0, 0, 0, 0, 10, 0, 977, 0, 13,   //
      3, 0, 1, 5, 1, 2, 4, 3, 980, 1,     //
      0, 0, 0, 0, 1, 6, 0, 37, 1, 955;
  return pairlike::ConfusionMatrix{m};
}

}  // namespace fixture

#endif  // PAIRLIKE_TESTS_FIXTURES_HPP_
