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

#include "cachepool/emit.h"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "cachepool/errors.h"

namespace cachepool {
namespace {

using nlohmann::json;

void CheckStream(const std::ostream& out) {
  if (!out) throw std::ios_base::failure("output stream write failed");
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

double ToDouble(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw InvalidArgument("CSV: bad number '" + text + "'");
  }
  return value;
}

template <typename Int>
Int ToInt(const std::string& text) {
  Int value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw InvalidArgument("CSV: bad integer '" + text + "'");
  }
  return value;
}

json RowToJson(const SweepRow& row) {
  json out = json::object();
  out["axis"] = row.axis;
  out["value"] = row.value ? json(*row.value) : json(nullptr);
  out["placement"] = std::string(ToString(row.placement));
  out["delivery"] = std::string(ToString(row.delivery));
  out["mean_rate"] = row.summary.mean;
  out["stddev"] = row.summary.stddev;
  out["ci95"] = row.summary.ci95_halfwidth;
  out["iterations"] = row.summary.iterations;
  out["zero_rate_fraction"] = row.summary.zero_rate_fraction;
  out["seed"] = row.seed;
  out["lower_bound"] =
      row.lower_bound ? json(*row.lower_bound) : json(nullptr);
  if (row.best_a) out["a"] = *row.best_a;
  if (row.best_k) out["k"] = *row.best_k;
  if (row.delta) out["delta"] = *row.delta;
  return out;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void EmitCsv(std::span<const SweepRow> rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const SweepRow& row : rows) {
    out << row.axis << ',' << (row.value ? FormatDouble(*row.value) : "")
        << ',' << ToString(row.placement) << ',' << ToString(row.delivery)
        << ',' << FormatDouble(row.summary.mean) << ','
        << FormatDouble(row.summary.stddev) << ','
        << FormatDouble(row.summary.ci95_halfwidth) << ','
        << row.summary.iterations << ',' << row.seed << ','
        << (row.lower_bound ? FormatDouble(*row.lower_bound) : "") << '\n';
  }
  out.flush();
  CheckStream(out);
}

void EmitJson(std::span<const SweepRow> rows, std::ostream& out) {
  json doc = json::array();
  for (const SweepRow& row : rows) doc.push_back(RowToJson(row));
  out << doc.dump(2) << '\n';
  out.flush();
  CheckStream(out);
}

void Emit(std::span<const SweepRow> rows, OutputFormat format,
          std::ostream& out) {
  if (format == OutputFormat::kCsv) {
    EmitCsv(rows, out);
  } else {
    EmitJson(rows, out);
  }
}

std::vector<SweepRow> ParseCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw InvalidArgument("CSV: missing or unexpected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 10) {
      throw InvalidArgument("CSV: expected 10 fields, got " +
                            std::to_string(f.size()));
    }
    SweepRow row;
    row.axis = f[0];
    if (!f[1].empty()) row.value = ToDouble(f[1]);
    row.placement = ParsePlacementPolicy(f[2]);
    row.delivery = ParseDeliveryPolicy(f[3]);
    row.summary.mean = ToDouble(f[4]);
    row.summary.stddev = ToDouble(f[5]);
    row.summary.ci95_halfwidth = ToDouble(f[6]);
    row.summary.iterations = ToInt<int64_t>(f[7]);
    row.seed = ToInt<uint64_t>(f[8]);
    if (!f[9].empty()) row.lower_bound = ToDouble(f[9]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> ParseJson(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InvalidArgument("JSON: expected an array");
  std::vector<SweepRow> rows;
  try {
    for (const json& item : doc) {
      SweepRow row;
      row.axis = item.at("axis").get<std::string>();
      if (!item.at("value").is_null()) row.value = item["value"].get<double>();
      row.placement =
          ParsePlacementPolicy(item.at("placement").get<std::string>());
      row.delivery = ParseDeliveryPolicy(item.at("delivery").get<std::string>());
      row.summary.mean = item.at("mean_rate").get<double>();
      row.summary.stddev = item.at("stddev").get<double>();
      row.summary.ci95_halfwidth = item.at("ci95").get<double>();
      row.summary.iterations = item.at("iterations").get<int64_t>();
      row.summary.zero_rate_fraction =
          item.at("zero_rate_fraction").get<double>();
      row.seed = item.at("seed").get<uint64_t>();
      if (!item.at("lower_bound").is_null()) {
        row.lower_bound = item["lower_bound"].get<double>();
      }
      if (item.contains("a")) row.best_a = item["a"].get<int64_t>();
      if (item.contains("k")) row.best_k = item["k"].get<int64_t>();
      if (item.contains("delta")) row.delta = item["delta"].get<double>();
      rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("JSON: ") + e.what());
  }
  return rows;
}

}  // namespace cachepool
