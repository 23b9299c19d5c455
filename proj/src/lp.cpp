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

#include "eqdesign/lp.hpp"

#include <stdexcept>

namespace eqd {

void LinearProgram::add_constraint(std::vector<Term> terms, Relation rel, Rational rhs) {
  for (const auto& t : terms)
    if (t.first >= num_vars_) throw std::out_of_range("constraint refers to an unknown variable");
  rows_.push_back(Row{std::move(terms), rel, std::move(rhs)});
}

void LinearProgram::minimize(std::vector<Term> terms) {
  for (auto& t : terms) t.second = -t.second;
  objective_ = std::move(terms);
  negated_ = true;
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows, std::vector<mpq_class>(cols + 1)) {}

  std::vector<mpq_class>& row(std::size_t i) { return t_[i]; }
  std::vector<std::size_t> basis;
  std::vector<bool> usable;  // columns allowed to enter

  // Maximizes c.x over the current basis. Returns false when unbounded.
  bool optimize(const std::vector<mpq_class>& c) {
    obj_.assign(n_ + 1, 0);
    for (std::size_t j = 0; j < n_; ++j) obj_[j] = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const mpq_class& cb = c[basis[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= n_; ++j)
        if (sgn(t_[i][j]) != 0) obj_[j] -= cb * t_[i][j];
    }
    while (true) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (usable[j] && sgn(obj_[j]) > 0) {
          enter = j;
          break;
        }
      if (enter == n_) return true;
      std::size_t leave = m_;
      mpq_class best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        mpq_class ratio = t_[i][n_] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    auto& pr = t_[r];
    mpq_class inv = 1 / pr[col];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= n_; ++j)
      if (sgn(pr[j]) != 0) {
        pr[j] *= inv;
        nz.push_back(j);
      }
    auto eliminate = [&](std::vector<mpq_class>& row) {
      if (sgn(row[col]) == 0) return;
      mpq_class f = row[col];
      for (std::size_t j : nz) row[j] -= f * pr[j];
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != r) eliminate(t_[i]);
    if (!obj_.empty()) eliminate(obj_);
    basis[r] = col;
  }

  // Current objective value of the last optimize() call.
  mpq_class value() const { return -obj_[n_]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void drop_row(std::size_t i) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<mpq_class>> t_;
  std::vector<mpq_class> obj_;
};

}  // namespace

LinearProgram::Result LinearProgram::solve() const {
  using R = Relation;
  const std::size_t m = rows_.size();
  // Normalize to nonnegative right-hand sides.
  std::vector<Row> rows = rows_;
  for (auto& r : rows)
    if (r.rhs.sign() < 0) {
      for (auto& t : r.terms) t.second = -t.second;
      r.rhs = -r.rhs;
      if (r.rel != R::Equal) r.rel = r.rel == R::LessEqual ? R::GreaterEqual : R::LessEqual;
    }
  std::size_t slack = 0, art = 0;
  for (const auto& r : rows) {
    if (r.rel != R::Equal) ++slack;
    if (r.rel != R::LessEqual) ++art;
  }
  const std::size_t first_slack = num_vars_, first_art = num_vars_ + slack, cols = first_art + art;
  Tableau tab(m, cols);
  tab.basis.assign(m, 0);
  tab.usable.assign(cols, true);
  std::size_t si = first_slack, ai = first_art;
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = tab.row(i);
    for (const auto& [j, c] : rows[i].terms) row[j] += c.value();
    row[cols] = rows[i].rhs.value();
    if (rows[i].rel == R::LessEqual) {
      row[si] = 1;
      tab.basis[i] = si++;
    } else if (rows[i].rel == R::GreaterEqual) {
      row[si++] = -1;
      row[ai] = 1;
      tab.basis[i] = ai++;
    } else {
      row[ai] = 1;
      tab.basis[i] = ai++;
    }
  }

  Result res;
  if (art > 0) {
    std::vector<mpq_class> c1(cols, 0);
    for (std::size_t j = first_art; j < cols; ++j) c1[j] = -1;
    tab.optimize(c1);
    if (sgn(tab.value()) < 0) {
      res.status = Status::Infeasible;
      return res;
    }
    // Drive zero-level artificials out of the basis.
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basis[i] < first_art) {
        ++i;
        continue;
      }
      std::size_t j = 0;
      while (j < first_art && sgn(tab.row(i)[j]) == 0) ++j;
      if (j == first_art) {
        tab.drop_row(i);
        continue;
      }
      tab.pivot(i, j);
      ++i;
    }
    for (std::size_t j = first_art; j < cols; ++j) tab.usable[j] = false;
  }

  std::vector<mpq_class> c2(cols, 0);
  for (const auto& [j, c] : objective_) c2[j] += c.value();
  if (!tab.optimize(c2)) {
    res.status = Status::Unbounded;
    return res;
  }
  res.status = Status::Optimal;
  res.values.assign(num_vars_, Rational(0));
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis[i] < num_vars_) res.values[tab.basis[i]] = Rational(tab.row(i)[cols]);
  res.objective = Rational(tab.value());
  if (negated_) res.objective = -res.objective;
  return res;
}

}  // namespace eqd
