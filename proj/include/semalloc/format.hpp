// Copyright 2026 The semalloc Authors
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

#ifndef SEMALLOC_FORMAT_HPP
#define SEMALLOC_FORMAT_HPP

#include <string>

namespace semalloc {

// Shortest round-trip decimal form of `value`, independent of the global
// locale. Used for every number written to CSV or console tables.
std::string format_number(double value);

}  // namespace semalloc

#endif  // SEMALLOC_FORMAT_HPP
