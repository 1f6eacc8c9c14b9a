#include "takiff/linalg.hpp"

#include <stdexcept>

namespace takiff {

std::vector<std::size_t> rref(Matr& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t ncols = m[0].size();
  for (const Vec& row : m)
    if (row.size() != ncols) throw std::invalid_argument("ragged matrix");

  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < m.size(); ++col) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    Rational inv = m[r][col];
    for (std::size_t j = col; j < ncols; ++j)
      m[r][j] = Rational(m[r][j] / inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (std::size_t j = col; j < ncols; ++j)
        m[i][j] -= f * m[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

std::size_t rank(Matr m) { return rref(m).size(); }

std::vector<Vec> kernel_basis(const Matr& m, std::size_t ncols) {
  Matr w = m;
  for (const Vec& row : w)
    if (row.size() != ncols) throw std::invalid_argument("bad row width");
  std::vector<std::size_t> pivots = rref(w);

  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;

  std::vector<Vec> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vec x(ncols, Rational(0));
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      x[pivots[i]] = Rational(-w[i][free]);
    basis.push_back(std::move(x));
  }
  return basis;
}

void RowSpan::reduce(Vec& v) const {
  for (const auto& [lead, row] : rows_) {
    if (v[lead] == 0) continue;
    Rational f = v[lead];
    for (std::size_t j = lead; j < width_; ++j) v[j] -= f * row[j];
  }
}

bool RowSpan::insert(Vec v) {
  if (v.size() != width_) throw std::invalid_argument("bad row width");
  reduce(v);
  std::size_t lead = 0;
  while (lead < width_ && v[lead] == 0) ++lead;
  if (lead == width_) return false;
  Rational inv = v[lead];
  for (std::size_t j = lead; j < width_; ++j) v[j] = Rational(v[j] / inv);
  // Keep earlier rows reduced against the new one as well.
  for (auto& [l, row] : rows_) {
    if (row[lead] == 0) continue;
    Rational f = row[lead];
    for (std::size_t j = lead; j < width_; ++j) row[j] -= f * v[j];
  }
  rows_.emplace(lead, std::move(v));
  return true;
}

bool RowSpan::contains(Vec v) const {
  if (v.size() != width_) throw std::invalid_argument("bad row width");
  reduce(v);
  for (const Rational& x : v)
    if (x != 0) return false;
  return true;
}

std::vector<Vec> RowSpan::rows() const {
  std::vector<Vec> out;
  out.reserve(rows_.size());
  for (const auto& [lead, row] : rows_) out.push_back(row);
  return out;
}

}  // namespace takiff
