// Copyright 2026 The eqdesign Authors
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

#include <cstddef>
#include <utility>
#include <vector>

#include "eqdesign/rational.hpp"

namespace eqd {

/// Dense two-phase simplex over exact rationals with Bland's rule.
/// All variables are nonnegative.
class LinearProgram {
 public:
  enum class Relation { LessEqual, Equal, GreaterEqual };
  enum class Status { Optimal, Infeasible, Unbounded };
  using Term = std::pair<std::size_t, Rational>;

  struct Result {
    Status status = Status::Infeasible;
    Rational objective;
    std::vector<Rational> values;
  };

  explicit LinearProgram(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }
  void add_constraint(std::vector<Term> terms, Relation rel, Rational rhs);
  /// The objective is maximized; an empty objective only tests feasibility.
  void set_objective(std::vector<Term> terms) { objective_ = std::move(terms); }
  void minimize(std::vector<Term> terms);

  Result solve() const;

 private:
  struct Row {
    std::vector<Term> terms;
    Relation rel;
    Rational rhs;
  };
  std::size_t num_vars_;
  std::vector<Row> rows_;
  std::vector<Term> objective_;
  bool negated_ = false;
};

}  // namespace eqd
