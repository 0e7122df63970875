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

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace fiscalopt::tax {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Ordered cutoff points partitioning a non-negative input into brackets.
///
/// With cutoffs p1 < p2 < ... < pB the brackets are [0, p1], [p1, p2], ...,
/// [pB, inf). An empty support is a single unbounded bracket.
class Support {
 public:
  Support() = default;
  /// Throws DomainError unless the cutoffs are finite, positive and strictly
  /// increasing.
  explicit Support(std::vector<double> cutoffs);

  std::span<const double> cutoffs() const { return cutoffs_; }
  std::size_t bracket_count() const { return cutoffs_.size() + 1; }

  double lower(std::size_t bracket) const {
    return bracket == 0 ? 0.0 : cutoffs_[bracket - 1];
  }
  double upper(std::size_t bracket) const {
    return bracket < cutoffs_.size() ? cutoffs_[bracket] : kInfinity;
  }

  /// Bracket whose marginal rate applies at x. At a cutoff the lower bracket
  /// is returned (left-continuous marginal rates).
  std::size_t active_bracket(double x) const;

  /// Sorted, deduplicated union of all cutoffs.
  static Support merge(std::span<const Support> supports);

  friend bool operator==(const Support&, const Support&) = default;

 private:
  std::vector<double> cutoffs_;
};

/// Splits x across the brackets of `support`. Entry b is the part of x
/// falling in bracket b; the entries sum to x.
std::vector<double> bracketize(double x, const Support& support);

/// Allocation-free variant of bracketize. `out` must hold
/// support.bracket_count() entries.
void bracketize_into(double x, const Support& support, std::span<double> out);

}  // namespace fiscalopt::tax
