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

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ahsim {

/// Recorded real channels on a strictly increasing time grid.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<std::string> channels,
                      nlohmann::json metadata = nlohmann::json::object());

  void append(double t, const std::vector<double>& row);

  size_t size() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<std::string>& channels() const { return names_; }
  const std::vector<double>& column(const std::string& name) const;
  nlohmann::json& metadata() { return metadata_; }
  const nlohmann::json& metadata() const { return metadata_; }

  /// Throws when a channel length differs from the grid or times repeat.
  void validate() const;

  /// RFC 4180 with CRLF line ends; numbers in shortest round-trip form.
  std::string toCsv() const;
  nlohmann::json toJson() const;

 private:
  std::vector<double> times_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
  nlohmann::json metadata_;
};

/// Shortest decimal text that parses back to the same double.
std::string formatNumber(double x);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csvField(const std::string& s);

}  // namespace ahsim
