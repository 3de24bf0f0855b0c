#pragma once

// Sparse matrices over an exact field and a rank routine with Markowitz-style
// pivot selection (fewest-entries column, then shortest row). Tensor-power
// complexes are very sparse, and the pivot order keeps fill-in small.

#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_set>
#include <utility>
#include <vector>

#include "catdyn/exact/field.hpp"

namespace catdyn {

template <ExactField F>
class SparseMatrix {
 public:
  using Element = typename F::Element;
  using Entry = std::pair<std::uint32_t, Element>;
  using Row = std::vector<Entry>;  // sorted by column, no explicit zeros

  SparseMatrix(F field, std::size_t rows, std::size_t cols) : field_(std::move(field)), cols_(cols), rows_(rows) {}

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const Row& row(std::size_t i) const { return rows_[i]; }

  /// Adds `value` to entry (i, j). Entries may be pushed in any order;
  /// call `finalize()` before reading.
  void add(std::size_t i, std::size_t j, const Element& value) {
    if (field_.is_zero(value)) return;
    rows_[i].emplace_back(static_cast<std::uint32_t>(j), value);
    dirty_ = true;
  }

  void finalize() {
    if (!dirty_) return;
    for (auto& r : rows_) {
      std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
      Row merged;
      for (auto& e : r) {
        if (!merged.empty() && merged.back().first == e.first) merged.back().second = field_.add(merged.back().second, e.second);
        else merged.push_back(std::move(e));
      }
      std::erase_if(merged, [&](const Entry& e) { return field_.is_zero(e.second); });
      r = std::move(merged);
    }
    dirty_ = false;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

 private:
  F field_;
  std::size_t cols_;
  std::vector<Row> rows_;
  bool dirty_ = false;
};

/// Rank of a sparse matrix. Consumes a copy of the rows.
template <ExactField F>
std::size_t sparse_rank(SparseMatrix<F> m) {
  using Element = typename F::Element;
  using Row = typename SparseMatrix<F>::Row;
  m.finalize();
  const F& k = m.field();
  const std::size_t nrows = m.rows(), ncols = m.cols();

  std::vector<Row> rows(nrows);
  for (std::size_t i = 0; i < nrows; ++i) rows[i] = m.row(i);
  std::vector<std::unordered_set<std::uint32_t>> col_rows(ncols);
  for (std::uint32_t i = 0; i < nrows; ++i)
    for (const auto& [c, v] : rows[i]) col_rows[c].insert(i);

  std::set<std::pair<std::size_t, std::uint32_t>> queue;  // (count, column)
  for (std::uint32_t c = 0; c < ncols; ++c)
    if (!col_rows[c].empty()) queue.emplace(col_rows[c].size(), c);
  std::vector<std::size_t> queued_count(ncols);
  for (std::uint32_t c = 0; c < ncols; ++c) queued_count[c] = col_rows[c].size();

  auto requeue = [&](std::uint32_t c) {
    if (queued_count[c] != 0) queue.erase({queued_count[c], c});
    queued_count[c] = col_rows[c].size();
    if (queued_count[c] != 0) queue.emplace(queued_count[c], c);
  };

  std::size_t rank = 0;
  std::vector<std::uint32_t> touched;
  while (!queue.empty()) {
    const std::uint32_t pc = queue.begin()->second;
    queue.erase(queue.begin());
    queued_count[pc] = 0;
    // Shortest row in the pivot column.
    std::uint32_t pr = 0;
    std::size_t best = SIZE_MAX;
    for (std::uint32_t r : col_rows[pc])
      if (rows[r].size() < best) best = rows[r].size(), pr = r;
    ++rank;

    Row pivot_row = std::move(rows[pr]);
    rows[pr].clear();
    Element pivot_value{};
    for (const auto& [c, v] : pivot_row)
      if (c == pc) pivot_value = v;
    const Element pivot_inv = k.inv(pivot_value);
    for (const auto& [c, v] : pivot_row) {
      col_rows[c].erase(pr);
      if (c != pc) touched.push_back(c);
    }

    std::vector<std::uint32_t> targets(col_rows[pc].begin(), col_rows[pc].end());
    for (std::uint32_t r : targets) {
      Row& target = rows[r];
      Element factor{};
      for (const auto& [c, v] : target)
        if (c == pc) factor = k.mul(v, pivot_inv);
      Row merged;
      merged.reserve(target.size() + pivot_row.size());
      std::size_t a = 0, b = 0;
      while (a < target.size() || b < pivot_row.size()) {
        if (b == pivot_row.size() || (a < target.size() && target[a].first < pivot_row[b].first)) {
          merged.push_back(std::move(target[a++]));
        } else if (a == target.size() || pivot_row[b].first < target[a].first) {
          const auto c = pivot_row[b].first;
          merged.emplace_back(c, k.neg(k.mul(factor, pivot_row[b].second)));
          col_rows[c].insert(r);
          touched.push_back(c);
          ++b;
        } else {
          const auto c = target[a].first;
          Element v = k.sub(target[a].second, k.mul(factor, pivot_row[b].second));
          if (k.is_zero(v)) {
            col_rows[c].erase(r);
            touched.push_back(c);
          } else {
            merged.emplace_back(c, std::move(v));
          }
          ++a, ++b;
        }
      }
      target = std::move(merged);
    }
    col_rows[pc].clear();
    for (std::uint32_t c : touched)
      if (c != pc) requeue(c);
    touched.clear();
  }
  return rank;
}

}  // namespace catdyn
