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

#include "cachepool/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cachepool/errors.h"
#include "cachepool/placement.h"

namespace cachepool {
namespace {

using nlohmann::json;

std::string Lower(std::string_view text) {
  std::string out(text);
  for (char& ch : out) {
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

std::string Trim(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  return std::string(text.substr(begin, end - begin));
}

std::vector<std::string> SplitCommas(std::string_view text) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t comma = text.find(',', start);
    parts.push_back(Trim(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

double ParseNumber(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InvalidArgument("not a number: '" + text + "'");
  }
  return value;
}

bool IsIntegerAxis(const std::string& axis) {
  return axis == "k" || axis == "a" || axis == "ak" || axis == "n";
}

int64_t GetInt(const json& value, const std::string& key) {
  if (!value.is_number_integer()) {
    throw InvalidArgument("config key '" + key + "' must be an integer");
  }
  return value.get<int64_t>();
}

double GetReal(const json& value, const std::string& key) {
  if (!value.is_number()) {
    throw InvalidArgument("config key '" + key + "' must be a number");
  }
  return value.get<double>();
}

std::string GetString(const json& value, const std::string& key) {
  if (!value.is_string()) {
    throw InvalidArgument("config key '" + key + "' must be a string");
  }
  return value.get<std::string>();
}

std::string JoinPolicies(const std::vector<DeliveryPolicy>& policies) {
  std::string out;
  for (DeliveryPolicy p : policies) {
    if (!out.empty()) out += ',';
    out += ToString(p);
  }
  return out;
}

}  // namespace

std::string_view ToString(PlacementPolicy policy) {
  return policy == PlacementPolicy::kPp ? "pp" : "ks";
}

PlacementPolicy ParsePlacementPolicy(std::string_view name) {
  const std::string lower = Lower(name);
  if (lower == "pp") return PlacementPolicy::kPp;
  if (lower == "ks") return PlacementPolicy::kKs;
  throw InvalidArgument("unknown placement policy '" + std::string(name) +
                        "'");
}

std::string_view ToString(OutputFormat format) {
  return format == OutputFormat::kCsv ? "csv" : "json";
}

OutputFormat ParseOutputFormat(std::string_view name) {
  const std::string lower = Lower(name);
  if (lower == "csv") return OutputFormat::kCsv;
  if (lower == "json") return OutputFormat::kJson;
  throw InvalidArgument("unknown output format '" + std::string(name) + "'");
}

int64_t SimConfig::caches() const {
  if (m) return *m;
  if (c) {
    return std::max<int64_t>(
        1, std::llround(static_cast<double>(n) / *c));
  }
  throw InvalidArgument("config needs m or c");
}

int64_t SimConfig::requests() const {
  if (r) return *r;
  if (rho) {
    return std::max<int64_t>(
        1, std::llround(*rho * static_cast<double>(caches())));
  }
  throw InvalidArgument("config needs r or rho");
}

double SimConfig::ks_delta() const {
  return delta ? *delta : DefaultKsDelta(beta);
}

void SimConfig::Validate() const {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw InvalidArgument(message);
  };
  require(n >= 1, "n must be >= 1");
  require(m.has_value() != c.has_value(), "give exactly one of m and c");
  require(!(r.has_value() && rho.has_value()), "r and rho are exclusive");
  require(r.has_value() || rho.has_value(), "give one of r and rho");
  if (m) require(*m >= 1, "m must be >= 1");
  if (c) require(std::isfinite(*c) && *c > 0.0, "c must be > 0");
  if (r) require(*r >= 1, "r must be >= 1");
  if (rho) require(*rho > 0.0 && *rho <= 1.0, "rho must lie in (0, 1]");
  require(k >= 1, "k must be >= 1");
  require(a >= 1, "a must be >= 1");
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite, >= 0");
  require(iterations >= 1, "iterations must be >= 1");
  require(n <= (int64_t{1} << 30) && caches() <= (int64_t{1} << 30) &&
              a <= (int64_t{1} << 20) && k <= (int64_t{1} << 20),
          "parameters too large");
  if (placement == PlacementPolicy::kKs) {
    require(beta > 1.0, "knapsack storage needs beta > 1");
    const double d = ks_delta();
    require(d > 0.0 && d < beta - 1.0,
            "knapsack storage needs 0 < delta < beta - 1");
  } else if (delta) {
    require(std::isfinite(*delta) && *delta > 0.0, "delta must be > 0");
  }
}

std::vector<DeliveryPolicy> SweepSpec::policies() const {
  if (deliveries.empty()) return {base.delivery};
  return deliveries;
}

void SweepSpec::Validate() const {
  static const std::set<std::string> kAxes = {"none", "k",  "a",
                                              "ak",   "n",  "beta"};
  if (!kAxes.count(axis)) {
    throw InvalidArgument("unknown sweep axis '" + axis + "'");
  }
  if (axis == "none") {
    if (!values.empty()) throw InvalidArgument("axis none takes no values");
    base.Validate();
    return;
  }
  if (values.empty()) throw InvalidArgument("sweep needs at least one value");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("sweep values must be finite");
    if (IsIntegerAxis(axis) && (v < 1.0 || v != std::floor(v))) {
      throw InvalidArgument("sweep over " + axis +
                            " needs positive integer values");
    }
  }
}

void ParseSweepArgument(std::string_view text, SweepSpec* spec) {
  const size_t eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw InvalidArgument("sweep must look like axis=v1,v2,...");
  }
  spec->axis = Lower(Trim(text.substr(0, eq)));
  spec->values.clear();
  for (const std::string& part : SplitCommas(text.substr(eq + 1))) {
    spec->values.push_back(ParseNumber(part));
  }
}

std::string FormatSweepArgument(const SweepSpec& spec) {
  std::string out = spec.axis + "=";
  for (size_t i = 0; i < spec.values.size(); ++i) {
    if (i > 0) out += ',';
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), spec.values[i]);
    out.append(buf, res.ptr);
  }
  return out;
}

SweepSpec SweepSpecFromJson(const json& doc) {
  if (!doc.is_object()) {
    throw InvalidArgument("config must be a JSON object");
  }
  SweepSpec spec;
  // A config always states its own m/r forms.
  spec.base.m.reset();
  spec.base.r.reset();
  for (const auto& [key, value] : doc.items()) {
    if (key == "n") {
      spec.base.n = GetInt(value, key);
    } else if (key == "m") {
      spec.base.m = GetInt(value, key);
    } else if (key == "c") {
      spec.base.c = GetReal(value, key);
    } else if (key == "r") {
      spec.base.r = GetInt(value, key);
    } else if (key == "rho") {
      spec.base.rho = GetReal(value, key);
    } else if (key == "k") {
      spec.base.k = GetInt(value, key);
    } else if (key == "a") {
      spec.base.a = GetInt(value, key);
    } else if (key == "beta") {
      spec.base.beta = GetReal(value, key);
    } else if (key == "delta") {
      spec.base.delta = GetReal(value, key);
    } else if (key == "placement") {
      spec.base.placement = ParsePlacementPolicy(GetString(value, key));
    } else if (key == "delivery") {
      std::vector<DeliveryPolicy> list;
      for (const std::string& name : SplitCommas(GetString(value, key))) {
        list.push_back(ParseDeliveryPolicy(name));
      }
      spec.base.delivery = list.front();
      if (list.size() > 1) spec.deliveries = std::move(list);
    } else if (key == "iters") {
      spec.base.iterations = GetInt(value, key);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw InvalidArgument("config key 'seed' must be a nonnegative integer");
      }
      spec.base.master_seed = value.get<uint64_t>();
    } else if (key == "sweep") {
      ParseSweepArgument(GetString(value, key), &spec);
    } else if (key == "lower_bound") {
      if (!value.is_boolean()) {
        throw InvalidArgument("config key 'lower_bound' must be a boolean");
      }
      spec.lower_bound = value.get<bool>();
    } else if (key == "format") {
      spec.format = ParseOutputFormat(GetString(value, key));
    } else {
      throw InvalidArgument("unknown config key '" + key + "'");
    }
  }
  if (doc.contains("m") && doc.contains("c")) {
    throw InvalidArgument("config keys m and c are exclusive");
  }
  if (doc.contains("r") && doc.contains("rho")) {
    throw InvalidArgument("config keys r and rho are exclusive");
  }
  return spec;
}

json SweepSpecToJson(const SweepSpec& spec) {
  const SimConfig& b = spec.base;
  json doc = json::object();
  doc["n"] = b.n;
  if (b.m) doc["m"] = *b.m;
  if (b.c) doc["c"] = *b.c;
  if (b.r) doc["r"] = *b.r;
  if (b.rho) doc["rho"] = *b.rho;
  doc["k"] = b.k;
  doc["a"] = b.a;
  doc["beta"] = b.beta;
  if (b.delta) doc["delta"] = *b.delta;
  doc["placement"] = std::string(ToString(b.placement));
  doc["delivery"] = spec.deliveries.size() > 1
                        ? JoinPolicies(spec.deliveries)
                        : std::string(ToString(b.delivery));
  doc["iters"] = b.iterations;
  doc["seed"] = b.master_seed;
  if (spec.axis != "none") doc["sweep"] = FormatSweepArgument(spec);
  doc["lower_bound"] = spec.lower_bound;
  doc["format"] = std::string(ToString(spec.format));
  return doc;
}

SweepSpec LoadSweepSpec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("config file '" + path + "': " + e.what());
  }
  return SweepSpecFromJson(doc);
}

std::vector<std::string> PresetNames() {
  return {"fig8i", "fig8ii", "fig8iii", "fig9i", "fig9ii", "fig9iii"};
}

SweepSpec NamedPreset(std::string_view name) {
  const std::string key = Lower(name);
  SweepSpec spec;
  SimConfig& b = spec.base;
  b.master_seed = 1;
  if (key == "fig8i" || key == "fig8ii" || key == "fig8iii") {
    const bool small = key == "fig8iii";
    b.n = small ? 100 : 1000;
    b.m = small ? 100 : 1000;
    b.r = small ? 80 : 800;
    b.beta = 0.3;
    b.placement = PlacementPolicy::kPp;
    b.iterations = 1000;
    b.k = 1;
    b.a = 1;
    if (small) {
      spec.deliveries = {DeliveryPolicy::kOmr, DeliveryPolicy::kMlp,
                         DeliveryPolicy::kOrr, DeliveryPolicy::kOllr};
      spec.axis = "ak";
      spec.values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    } else {
      spec.deliveries = {DeliveryPolicy::kMlp, DeliveryPolicy::kOrr,
                         DeliveryPolicy::kOllr};
      spec.axis = key == "fig8i" ? "k" : "a";
      spec.values = {1, 2, 3, 4, 5, 6};
    }
    b.delivery = spec.deliveries.front();
    return spec;
  }
  if (key == "fig9i" || key == "fig9ii" || key == "fig9iii") {
    b.placement = PlacementPolicy::kKs;
    b.beta = 1.4;
    b.a = 1;
    b.rho = 1.0;
    b.r.reset();
    b.m.reset();
    b.iterations = 10000;
    spec.deliveries = {DeliveryPolicy::kMlp, DeliveryPolicy::kOrr};
    b.delivery = spec.deliveries.front();
    spec.lower_bound = true;
    if (key == "fig9i") {
      b.c = 5.0;
      b.n = 1000;
      b.k = 3;
      spec.axis = "n";
      spec.values = {250, 500, 1000, 2000};
    } else if (key == "fig9ii") {
      b.n = 1000;
      b.m = 100;
      b.k = 1;
      spec.axis = "k";
      spec.values = {1, 2, 4, 6, 8, 10, 12, 14};
    } else {
      b.n = 1000;
      b.m = 200;
      b.k = 3;
      spec.axis = "beta";
      spec.values = {1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9};
    }
    return spec;
  }
  throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

}  // namespace cachepool
