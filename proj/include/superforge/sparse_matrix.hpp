#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "superforge/error.hpp"
#include "superforge/rational.hpp"

namespace superforge {

// A sparse vector over Q: index -> nonzero coefficient.
using SparseVec = std::map<int, Rat>;

inline void vec_add_scaled(SparseVec& dst, const SparseVec& src, const Rat& c) {
  if (c == 0) return;
  for (const auto& [j, v] : src) {
    Rat& slot = dst[j];
    slot += c * v;
    if (slot == 0) dst.erase(j);
  }
}

inline SparseVec vec_scaled(const SparseVec& v, const Rat& c) {
  SparseVec out;
  if (c == 0) return out;
  for (const auto& [j, x] : v) out.emplace(j, c * x);
  return out;
}

inline Rat vec_at(const SparseVec& v, int j) {
  auto it = v.find(j);
  return it == v.end() ? Rat(0) : it->second;
}

// Sparse rational matrix, row-major. No explicit zeros are stored.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<SparseVec> row_data;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), row_data(r) {}

  void set(int r, int c, const Rat& v) {
    check_index(r, c);
    if (v == 0)
      row_data[r].erase(c);
    else
      row_data[r][c] = v;
  }

  Rat at(int r, int c) const {
    check_index(r, c);
    return vec_at(row_data[r], c);
  }

  void append_row(SparseVec row) {
    row_data.push_back(std::move(row));
    ++rows;
  }

  // y = M x
  SparseVec apply(const SparseVec& x) const {
    SparseVec y;
    for (int r = 0; r < rows; ++r) {
      Rat acc = 0;
      for (const auto& [j, v] : row_data[r]) acc += v * vec_at(x, j);
      if (acc != 0) y[r] = acc;
    }
    return y;
  }

  bool operator==(const SparseMatrix& o) const {
    return rows == o.rows && cols == o.cols && row_data == o.row_data;
  }

 private:
  void check_index(int r, int c) const {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw error(errc::index_out_of_range, "matrix index");
  }
};

struct RrefResult {
  SparseMatrix matrix;      // zero rows dropped, pivot entries 1, pivot columns clean
  std::vector<int> pivots;  // pivot column per row
};

// Reduced row-echelon form over Q. Pivot choice: leftmost nonzero column,
// smallest numerator bit-length as tie-break, then lowest row index. The
// result is canonical for the row space.
inline RrefResult rref(const SparseMatrix& m) {
  std::vector<SparseVec> work = m.row_data;
  std::vector<int> pivots;
  int next = 0;  // rows [0, next) are finished pivot rows
  for (int col = 0; col < m.cols && next < static_cast<int>(work.size()); ++col) {
    int best = -1;
    unsigned best_bits = 0;
    for (int r = next; r < static_cast<int>(work.size()); ++r) {
      auto it = work[r].begin();
      if (it == work[r].end() || it->first != col) continue;
      unsigned bits = num_bit_length(it->second);
      if (best < 0 || bits < best_bits) {
        best = r;
        best_bits = bits;
      }
    }
    if (best < 0) continue;
    std::swap(work[best], work[next]);
    Rat lead = work[next].begin()->second;
    if (lead != 1)
      for (auto& [j, v] : work[next]) v /= lead;
    for (int r = 0; r < static_cast<int>(work.size()); ++r) {
      if (r == next) continue;
      auto it = work[r].find(col);
      if (it == work[r].end()) continue;
      Rat factor = -it->second;
      vec_add_scaled(work[r], work[next], factor);
    }
    pivots.push_back(col);
    ++next;
  }
  SparseMatrix out(0, m.cols);
  for (int r = 0; r < next; ++r) out.append_row(std::move(work[r]));
  return {std::move(out), std::move(pivots)};
}

inline int rank(const SparseMatrix& m) { return static_cast<int>(rref(m).pivots.size()); }

// Basis of the right null space; basis vectors are indexed by the free
// columns in ascending order, each normalized with a 1 in its free slot.
inline std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int p : r.pivots) is_pivot[p] = true;
  std::vector<SparseVec> out;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    SparseVec v;
    v[f] = 1;
    for (size_t i = 0; i < r.pivots.size(); ++i) {
      Rat c = r.matrix.at(static_cast<int>(i), f);
      if (c != 0) v[r.pivots[i]] = -c;
    }
    out.push_back(std::move(v));
  }
  return out;
}

struct AffineSolution {
  bool consistent = false;
  SparseVec particular;           // one exact solution (free variables at 0)
  std::vector<SparseVec> kernel;  // basis of the homogeneous solutions
};

// Solves m x = rhs exactly. The solution set is particular + span(kernel).
inline AffineSolution solve_affine(const SparseMatrix& m, const SparseVec& rhs) {
  for (const auto& [r, v] : rhs)
    if (r < 0 || r >= m.rows) throw error(errc::dimension_mismatch, "rhs length");
  SparseMatrix aug(m.rows, m.cols + 1);
  aug.row_data = m.row_data;
  for (const auto& [r, v] : rhs) aug.row_data[r][m.cols] = v;
  RrefResult rr = rref(aug);
  AffineSolution sol;
  for (size_t i = 0; i < rr.pivots.size(); ++i) {
    if (rr.pivots[i] == m.cols) return sol;  // pivot in augmented column
  }
  sol.consistent = true;
  for (size_t i = 0; i < rr.pivots.size(); ++i) {
    Rat c = rr.matrix.at(static_cast<int>(i), m.cols);
    if (c != 0) sol.particular[rr.pivots[i]] = c;
  }
  sol.kernel = kernel_basis(m);
  return sol;
}

// Incremental row-space basis in reduced echelon form. Used for spans,
// subalgebra closures and quotient bookkeeping all over the project.
class RowSpace {
 public:
  explicit RowSpace(int cols) : cols_(cols) {}

  int cols() const { return cols_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  // Remainder of v after elimination against the stored rows.
  SparseVec reduce(SparseVec v) const {
    for (auto it = v.begin(); it != v.end();) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      Rat c = -it->second;
      vec_add_scaled(v, row->second, c);
      it = v.upper_bound(row->first);
    }
    return v;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  // Inserts v; returns true when v enlarges the span.
  bool insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    int pivot = v.begin()->first;
    Rat lead = v.begin()->second;
    if (lead != 1)
      for (auto& [j, x] : v) x /= lead;
    for (auto& [p, row] : rows_) {
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      Rat c = -it->second;
      vec_add_scaled(row, v, c);
    }
    rows_.emplace(pivot, std::move(v));
    return true;
  }

  // In-span coordinates relative to the canonical basis rows: for a reduced
  // echelon basis the coefficient of row p is just v[p].
  std::optional<SparseVec> coordinates(const SparseVec& v) const {
    if (!contains(v)) return std::nullopt;
    SparseVec coords;
    int i = 0;
    for (const auto& [p, row] : rows_) {
      Rat c = vec_at(v, p);
      if (c != 0) coords[i] = c;
      ++i;
    }
    return coords;
  }

  // Canonical basis rows in pivot order.
  std::vector<SparseVec> basis() const {
    std::vector<SparseVec> out;
    out.reserve(rows_.size());
    for (const auto& [p, row] : rows_) out.push_back(row);
    return out;
  }

  std::vector<int> pivot_columns() const {
    std::vector<int> out;
    out.reserve(rows_.size());
    for (const auto& [p, row] : rows_) out.push_back(p);
    return out;
  }

 private:
  int cols_;
  std::map<int, SparseVec> rows_;  // pivot column -> row
};

// Row space that also tracks, for every stored canonical row, its expression
// as a combination of the vectors inserted so far. Lets callers recover
// preimages under spanning maps.
class TrackedRowSpace {
 public:
  explicit TrackedRowSpace(int cols) : cols_(cols) {}

  int cols() const { return cols_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  int inserted() const { return inserted_; }

  // Inserts v; returns true when independent. Tracked expressions refer to
  // originals by tag: with the default tag, independent inserts are numbered
  // consecutively; an explicit tag names the original regardless.
  bool insert(SparseVec v, int tag = -1) {
    SparseVec combo;
    combo[tag < 0 ? inserted_ : tag] = 1;
    reduce_inplace(v, combo);
    if (v.empty()) return false;
    if (tag < 0) ++inserted_;
    Rat lead = v.begin()->second;
    int pivot = v.begin()->first;
    if (lead != 1) {
      for (auto& [j, x] : v) x /= lead;
      for (auto& [j, x] : combo) x /= lead;
    }
    for (auto& [p, rc] : rows_) {
      auto it = rc.first.find(pivot);
      if (it == rc.first.end()) continue;
      Rat c = -it->second;
      vec_add_scaled(rc.first, v, c);
      vec_add_scaled(rc.second, combo, c);
    }
    rows_.emplace(pivot, std::make_pair(std::move(v), std::move(combo)));
    return true;
  }

  bool contains(const SparseVec& v) const {
    SparseVec w = v, combo;
    reduce_tracking(w, combo);
    return w.empty();
  }

  // Expression of an in-span vector over the inserted originals.
  std::optional<SparseVec> express(const SparseVec& v) const {
    SparseVec w = v, combo;
    reduce_tracking(w, combo);
    if (!w.empty()) return std::nullopt;
    return combo;
  }

  // In-span coordinates relative to the canonical rows (pivot read-off).
  std::optional<SparseVec> coordinates(const SparseVec& v) const {
    SparseVec w = v, combo;
    reduce_tracking(w, combo);
    if (!w.empty()) return std::nullopt;
    SparseVec coords;
    int i = 0;
    for (const auto& [p, rc] : rows_) {
      Rat c = vec_at(v, p);
      if (c != 0) coords[i] = c;
      ++i;
    }
    return coords;
  }

  std::vector<SparseVec> basis() const {
    std::vector<SparseVec> out;
    for (const auto& [p, rc] : rows_) out.push_back(rc.first);
    return out;
  }

  // Per canonical row: combination over inserted originals.
  std::vector<SparseVec> basis_exprs() const {
    std::vector<SparseVec> out;
    for (const auto& [p, rc] : rows_) out.push_back(rc.second);
    return out;
  }

 private:
  // w -> remainder; combo accumulates the expression of (v - remainder)
  // over originals, on top of whatever it already holds.
  void reduce_tracking(SparseVec& w, SparseVec& combo) const {
    for (auto it = w.begin(); it != w.end();) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      Rat f = it->second;
      vec_add_scaled(w, row->second.first, -f);
      vec_add_scaled(combo, row->second.second, f);
      it = w.upper_bound(row->first);
    }
  }
  // same, but combo tracks the remainder's own expression (starts at v's)
  void reduce_inplace(SparseVec& w, SparseVec& combo) const {
    for (auto it = w.begin(); it != w.end();) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      Rat f = it->second;
      vec_add_scaled(w, row->second.first, -f);
      vec_add_scaled(combo, row->second.second, -f);
      it = w.upper_bound(row->first);
    }
  }

  int cols_;
  int inserted_ = 0;
  std::map<int, std::pair<SparseVec, SparseVec>> rows_;  // pivot -> (row, combo)
};

}  // namespace superforge
