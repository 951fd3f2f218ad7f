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

#include <optional>
#include <string>
#include <vector>

#include "ahsim/common.hpp"

namespace ahsim {

struct DictionaryEntry {
  std::string name;
  DenseMatrix matrix;
};

struct FitResult {
  struct Entry {
    std::string name;
    std::optional<double> coefficient;  // empty when aliased or absent
    std::string note;                   // alias or absence explanation
  };
  std::vector<Entry> entries;
  double residualNorm = 0.0;  // Frobenius norm of target minus the fit
  double targetNorm = 0.0;
};

/// Least squares of `target` onto the real span of the dictionary. Entries
/// are orthogonalized in order (Gram-Schmidt); an entry whose orthogonal
/// part is below `aliasTol` relative to its norm is merged into the earlier
/// ones and reported as an alias.
FitResult fitCoefficients(const DenseMatrix& target,
                          const std::vector<DictionaryEntry>& dictionary,
                          double aliasTol = 1e-9);

/// Least-squares slope of log(y) against log(x) over positive pairs.
double powerLawExponent(const std::vector<double>& x,
                        const std::vector<double>& y);

}  // namespace ahsim
