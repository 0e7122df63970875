// Copyright 2026 The fiscalopt Authors
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

#include "fiscalopt/tax/support.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fiscalopt/error.hpp"

namespace fiscalopt::tax {

Support::Support(std::vector<double> cutoffs) : cutoffs_(std::move(cutoffs)) {
  double previous = 0.0;
  for (std::size_t i = 0; i < cutoffs_.size(); ++i) {
    const double c = cutoffs_[i];
    if (!std::isfinite(c) || c <= previous) {
      throw DomainError("support cutoffs must be finite, positive and strictly "
                        "increasing (offending cutoff #" +
                        std::to_string(i) + ")");
    }
    previous = c;
  }
}

std::size_t Support::active_bracket(double x) const {
  // First cutoff >= x: at x == cutoff the lower bracket stays active.
  auto it = std::lower_bound(cutoffs_.begin(), cutoffs_.end(), x);
  return static_cast<std::size_t>(it - cutoffs_.begin());
}

Support Support::merge(std::span<const Support> supports) {
  std::vector<double> all;
  for (const auto& s : supports) all.insert(all.end(), s.cutoffs_.begin(), s.cutoffs_.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return Support(std::move(all));
}

void bracketize_into(double x, const Support& support, std::span<double> out) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError("cannot bracketize " + std::to_string(x) +
                      ": input must be finite and non-negative");
  }
  const auto cutoffs = support.cutoffs();
  double lower = 0.0;
  for (std::size_t b = 0; b < cutoffs.size(); ++b) {
    const double upper = cutoffs[b];
    out[b] = std::clamp(x - lower, 0.0, upper - lower);
    lower = upper;
  }
  out[cutoffs.size()] = std::max(x - lower, 0.0);
}

std::vector<double> bracketize(double x, const Support& support) {
  std::vector<double> out(support.bracket_count());
  bracketize_into(x, support, out);
  return out;
}

}  // namespace fiscalopt::tax
