// Copyright 2026 The cachepool Authors
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

#ifndef CACHEPOOL_ERRORS_H_
#define CACHEPOOL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cachepool {

// Bad caller input: out-of-range parameters, malformed configs, unknown names.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A placement policy could not find a legal cache for some sub-file copy.
class PlacementInfeasible : public std::runtime_error {
 public:
  PlacementInfeasible(const std::string& what, int content)
      : std::runtime_error(what), content_(content) {}
  int content() const { return content_; }

 private:
  int content_;
};

// A library invariant was violated; indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cachepool

#endif  // CACHEPOOL_ERRORS_H_
