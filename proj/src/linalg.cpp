#include "xops/linalg.hpp"

#include <stdexcept>

namespace xops {

namespace {

// Fraction-free forward elimination (Bareiss). Returns pivot column per row.
std::vector<int> bareiss(Mat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size();
  Scalar prev(1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pr = r;
    while (pr < rows && m[pr][c].is_zero()) ++pr;
    if (pr == rows) continue;
    std::swap(m[r], m[pr]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j)
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = Scalar(0);
    }
    prev = m[r][c];
    pivots.push_back(int(c));
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(Mat m) { return int(bareiss(m).size()); }

Scalar determinant(Mat m) {
  if (m.empty()) return Scalar(1);
  size_t n = m.size();
  if (m[0].size() != n) throw std::invalid_argument("determinant of non-square matrix");
  int swaps = 0;
  Scalar prev(1);
  for (size_t c = 0; c < n; ++c) {
    size_t pr = c;
    while (pr < n && m[pr][c].is_zero()) ++pr;
    if (pr == n) return Scalar(0);
    if (pr != c) {
      std::swap(m[c], m[pr]);
      ++swaps;
    }
    for (size_t i = c + 1; i < n; ++i) {
      for (size_t j = c + 1; j < n; ++j)
        m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) / prev;
      m[i][c] = Scalar(0);
    }
    prev = m[c][c];
  }
  Scalar det = m[n - 1][n - 1];
  return (swaps % 2) ? -det : det;
}

std::vector<Vec> nullspace(const Mat& m_in) {
  if (m_in.empty()) return {};
  Mat m = m_in;
  size_t cols = m[0].size();
  std::vector<int> pivots = bareiss(m);
  // back-substitute to reduced row echelon
  for (size_t r = pivots.size(); r-- > 0;) {
    int pc = pivots[r];
    Scalar inv = m[r][pc].inverse();
    for (size_t j = pc; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < r; ++i) {
      Scalar f = m[i][pc];
      if (f.is_zero()) continue;
      for (size_t j = pc; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
  }
  std::vector<bool> is_pivot(cols, false);
  for (int pc : pivots) is_pivot[pc] = true;
  std::vector<Vec> basis;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    Vec v(cols, Scalar(0));
    v[fc] = Scalar(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AffineSolution> solve_affine(const Mat& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_affine: size mismatch");
  if (a.empty()) return AffineSolution{{}, {}};
  size_t cols = a[0].size();
  Mat aug = a;
  for (size_t i = 0; i < a.size(); ++i) aug[i].push_back(b[i]);
  Mat red = aug;
  std::vector<int> pivots = bareiss(red);
  for (size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] == int(cols)) return std::nullopt;  // pivot in rhs column
  for (size_t r = pivots.size(); r-- > 0;) {
    int pc = pivots[r];
    Scalar inv = red[r][pc].inverse();
    for (size_t j = pc; j <= cols; ++j) red[r][j] *= inv;
    for (size_t i = 0; i < r; ++i) {
      Scalar f = red[i][pc];
      if (f.is_zero()) continue;
      for (size_t j = pc; j <= cols; ++j) red[i][j] -= f * red[r][j];
    }
  }
  Vec part(cols, Scalar(0));
  for (size_t r = 0; r < pivots.size(); ++r) part[pivots[r]] = red[r][cols];
  std::vector<bool> is_pivot(cols, false);
  for (int pc : pivots) is_pivot[pc] = true;
  std::vector<Vec> hom;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    Vec v(cols, Scalar(0));
    v[fc] = Scalar(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red[r][fc];
    hom.push_back(std::move(v));
  }
  return AffineSolution{std::move(part), std::move(hom)};
}

bool in_span(const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }
  Mat m;
  for (size_t j = 0; j < v.size(); ++j) {
    Vec row;
    row.reserve(basis.size());
    for (const auto& b : basis) row.push_back(b.at(j));
    m.push_back(std::move(row));
  }
  return solve_affine(m, v).has_value();
}

}  // namespace xops
