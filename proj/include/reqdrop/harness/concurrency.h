// Copyright 2026 The Reqdrop Authors.
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

#ifndef REQDROP_HARNESS_CONCURRENCY_H_
#define REQDROP_HARNESS_CONCURRENCY_H_

#include <cstddef>
#include <functional>

namespace reqdrop {

// Runs fn(0..count-1) on at most `max_in_flight` worker threads. Indices are
// claimed in increasing order; after the first failure no new index is
// claimed, in-flight work drains, and the exception from the lowest failing
// index is rethrown. Every index below that one has run, so the reported
// failure does not depend on scheduling.
void BoundedParallelFor(size_t count, int max_in_flight,
                        const std::function<void(size_t)>& fn);

}  // namespace reqdrop

#endif  // REQDROP_HARNESS_CONCURRENCY_H_
