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

#ifndef CACHEPOOL_EMIT_H_
#define CACHEPOOL_EMIT_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cachepool/config.h"
#include "cachepool/harness.h"

namespace cachepool {

// Header of every CSV table.
inline constexpr char kCsvHeader[] =
    "axis,value,placement,delivery,mean_rate,stddev,ci95,iterations,seed,"
    "lower_bound";

// Numbers are written with std::to_chars (shortest round-trip form, '.'
// decimal point regardless of locale); lines end in '\n'. Empty value and
// lower_bound fields mean "not applicable". Throws std::ios_base::failure
// if the stream goes bad.
void EmitCsv(std::span<const SweepRow> rows, std::ostream& out);

// A JSON array of row objects. Also carries zero_rate_fraction, best_a/best_k
// (as "a"/"k") for "ak" sweeps, and delta for knapsack-storage rows.
void EmitJson(std::span<const SweepRow> rows, std::ostream& out);

void Emit(std::span<const SweepRow> rows, OutputFormat format,
          std::ostream& out);

// Inverse of EmitCsv. Fields that are not CSV columns come back empty.
// Throws InvalidArgument on malformed input.
std::vector<SweepRow> ParseCsv(std::istream& in);
std::vector<SweepRow> ParseJson(std::istream& in);

// Shortest round-trip text for a double.
std::string FormatDouble(double value);

}  // namespace cachepool

#endif  // CACHEPOOL_EMIT_H_
