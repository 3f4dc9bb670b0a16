// Copyright 2026 The hse3s Authors.
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

#ifndef HSE3S_LEARN_PARALLEL_HPP_
#define HSE3S_LEARN_PARALLEL_HPP_

#include <functional>

namespace hse3s::learn {

// Calls fn(i) for i in [0, n) on up to `workers` threads. Work items must be
// independent; the first exception (by index) is rethrown after all
// threads finish.
void ParallelFor(int n, int workers, const std::function<void(int)>& fn);

}  // namespace hse3s::learn

#endif  // HSE3S_LEARN_PARALLEL_HPP_
