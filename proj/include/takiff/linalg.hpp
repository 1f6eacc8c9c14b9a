#pragma once

#include "takiff/rational.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace takiff {

using Vec = std::vector<Rational>;
using Matr = std::vector<Vec>;

/// Reduced row echelon form in place, exact over the rationals. Pivots are
/// chosen as the first row with a nonzero entry in the leftmost unfinished
/// column, so the result is deterministic. Returns the pivot column indices.
std::vector<std::size_t> rref(Matr& m);

std::size_t rank(Matr m);

/// Basis of the right kernel {x : m x = 0} for a matrix with ncols columns.
/// One vector per free column in increasing column order, free coordinate 1.
std::vector<Vec> kernel_basis(const Matr& m, std::size_t ncols);

/// Incrementally echelonized span of dense rational rows. Rows are kept fully
/// reduced against each other, so rows() is the canonical reduced echelon
/// basis of the span no matter the insertion order.
class RowSpan {
 public:
  explicit RowSpan(std::size_t width) : width_(width) {}

  /// Reduces v against the span; inserts the residue if nonzero.
  /// Returns true when the span grew.
  bool insert(Vec v);
  bool contains(Vec v) const;

  /// The residue of v after reduction against the span, without inserting.
  Vec reduce_copy(Vec v) const {
    reduce(v);
    return v;
  }

  std::size_t dim() const { return rows_.size(); }
  std::size_t width() const { return width_; }

  /// Basis rows in increasing leading-column order.
  std::vector<Vec> rows() const;

  /// Leading (pivot) columns of the echelon basis, increasing.
  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> p;
    p.reserve(rows_.size());
    for (const auto& [lead, row] : rows_) p.push_back(lead);
    return p;
  }

 private:
  void reduce(Vec& v) const;

  std::size_t width_;
  std::map<std::size_t, Vec> rows_;  // leading column -> row, lead entry 1
};

}  // namespace takiff
