// Copyright 2026 The ahsim Authors
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

#include "ahsim/timeseries.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "ahsim/common.hpp"

namespace ahsim {

TimeSeries::TimeSeries(std::vector<std::string> channels,
                       nlohmann::json metadata)
    : names_(std::move(channels)),
      columns_(names_.size()),
      metadata_(std::move(metadata)) {
  std::set<std::string> seen{"t"};
  for (const auto& n : names_) {
    if (n.empty() || !seen.insert(n).second) {
      throw InvalidArgument("channel names must be unique and non-empty: '" +
                            n + "'");
    }
  }
}

void TimeSeries::append(double t, const std::vector<double>& row) {
  if (row.size() != names_.size()) {
    throw InvalidArgument("row has " + std::to_string(row.size()) +
                          " values for " + std::to_string(names_.size()) +
                          " channels");
  }
  if (!std::isfinite(t) || (!times_.empty() && !(t > times_.back()))) {
    throw InvalidArgument("times must increase strictly");
  }
  times_.push_back(t);
  for (size_t c = 0; c < row.size(); ++c) columns_[c].push_back(row[c]);
}

const std::vector<double>& TimeSeries::column(const std::string& name) const {
  for (size_t c = 0; c < names_.size(); ++c) {
    if (names_[c] == name) return columns_[c];
  }
  throw InvalidArgument("no channel '" + name + "'");
}

void TimeSeries::validate() const {
  for (size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].size() != times_.size()) {
      throw InvalidArgument("channel '" + names_[c] + "' length mismatch");
    }
  }
  for (size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw InvalidArgument("times must increase strictly");
    }
  }
}

std::string formatNumber(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string TimeSeries::toCsv() const {
  validate();
  std::string out = "t";
  for (const auto& n : names_) out += "," + csvField(n);
  out += "\r\n";
  for (size_t i = 0; i < times_.size(); ++i) {
    out += formatNumber(times_[i]);
    for (const auto& col : columns_) out += "," + formatNumber(col[i]);
    out += "\r\n";
  }
  return out;
}

nlohmann::json TimeSeries::toJson() const {
  validate();
  nlohmann::json j;
  j["schema"] = "ahsim.timeseries.v1";
  j["metadata"] = metadata_;
  j["times"] = times_;
  j["channels"] = nlohmann::json::array();
  for (size_t c = 0; c < names_.size(); ++c) {
    j["channels"].push_back({{"name", names_[c]}, {"values", columns_[c]}});
  }
  return j;
}

}  // namespace ahsim
