#include "conecalc/linalg.hpp"

#include <numeric>
#include <utility>

#include "conecalc/errors.hpp"

namespace conecalc {

Matrix to_matrix(const std::vector<WeightVector>& rows) {
  Matrix m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back(to_point(r));
  return m;
}

Matrix columns_matrix(const std::vector<WeightVector>& columns) {
  return transpose(to_matrix(columns));
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m[0].size(), RationalPoint(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Rational det(Matrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw MathError(ErrorKind::kDimensionMismatch, "det of non-square matrix");
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

RowEchelon rref(Matrix m) {
  RowEchelon out;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(Matrix m) { return rref(std::move(m)).pivots.size(); }

std::size_t rank(const std::vector<WeightVector>& vectors) {
  if (vectors.empty()) return 0;
  return rank(to_matrix(vectors));
}

LinearSolution solve_linear(const Matrix& matrix, const RationalPoint& rhs) {
  if (matrix.size() != rhs.size())
    throw MathError(ErrorKind::kDimensionMismatch, "rhs length differs from row count");
  const std::size_t cols = matrix.empty() ? 0 : matrix[0].size();
  Matrix aug = matrix;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    if (aug[i].size() != cols) throw MathError(ErrorKind::kDimensionMismatch, "ragged matrix");
    aug[i].push_back(rhs[i]);
  }
  RowEchelon e = rref(aug);
  LinearSolution sol;
  for (std::size_t p : e.pivots)
    if (p == cols) {
      sol.kind = LinearSolution::Kind::kNone;
      return sol;
    }
  sol.particular = zero_point(cols);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) sol.particular[e.pivots[i]] = e.reduced[i][cols];
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalPoint k = zero_point(cols);
    k[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) k[e.pivots[i]] = -e.reduced[i][f];
    sol.kernel.push_back(std::move(k));
  }
  sol.kind = sol.kernel.empty() ? LinearSolution::Kind::kUnique : LinearSolution::Kind::kFamily;
  return sol;
}

std::vector<RationalPoint> nullspace(const Matrix& matrix) {
  if (matrix.empty()) return {};
  return solve_linear(matrix, zero_point(matrix.size())).kernel;
}

WeightVector primitive(const WeightVector& v) {
  std::int64_t g = 0;
  for (auto c : v) g = std::gcd(g, c);
  if (g == 0) throw MathError(ErrorKind::kZeroVector, "primitive of zero vector");
  WeightVector r(v);
  for (auto& c : r) c /= g;
  return r;
}

WeightVector primitive_integer(const RationalPoint& v) {
  Integer l = 1;
  for (const auto& c : v) l = lcm(l, Integer(c.get_den()));
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& c : v) {
    Rational s = c * l;
    ints.push_back(s.get_num());
    g = gcd(g, s.get_num());
  }
  if (g == 0) throw MathError(ErrorKind::kZeroVector, "primitive of zero vector");
  WeightVector r;
  for (auto& x : ints) {
    Integer q = x / g;
    if (!q.fits_slong_p()) throw MathError(ErrorKind::kInvalidInput, "integer vector overflow");
    r.push_back(q.get_si());
  }
  return r;
}

namespace {

// Column-style Hermite reduction: returns (H, U) with A * U = H, U unimodular,
// H in column echelon form. pivot_rows[j] gives the pivot row of column j for
// the first `rank` columns.
struct ColumnHermite {
  IntegerMatrix h;
  IntegerMatrix u;
  std::vector<std::size_t> pivot_rows;
};

ColumnHermite column_hermite(const IntegerMatrix& a, std::size_t cols) {
  ColumnHermite out;
  out.h = a;
  out.u.assign(cols, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) out.u[i][i] = 1;
  auto& h = out.h;
  auto& u = out.u;
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
    // column dst -= f * column src
    for (auto& row : h) row[dst] -= f * row[src];
    for (auto& row : u) row[dst] -= f * row[src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (auto& row : h) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };
  auto col_neg = [&](std::size_t x) {
    for (auto& row : h) row[x] = -row[x];
    for (auto& row : u) row[x] = -row[x];
  };
  std::size_t c = 0;
  for (std::size_t r = 0; r < h.size() && c < cols; ++r) {
    // Euclid across columns c..cols-1 on row r.
    while (true) {
      std::size_t best = cols;
      for (std::size_t j = c; j < cols; ++j)
        if (h[r][j] != 0 && (best == cols || abs(h[r][j]) < abs(h[r][best]))) best = j;
      if (best == cols) break;
      bool done = true;
      for (std::size_t j = c; j < cols; ++j) {
        if (j == best || h[r][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), h[r][j].get_mpz_t(), h[r][best].get_mpz_t());
        col_op(j, best, q);
        if (h[r][j] != 0) done = false;
      }
      if (done) {
        if (best != c) col_swap(best, c);
        if (h[r][c] < 0) col_neg(c);
        out.pivot_rows.push_back(r);
        ++c;
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<WeightVector> integer_annihilator_basis(const std::vector<WeightVector>& rows,
                                                    std::size_t n) {
  IntegerMatrix a;
  for (const auto& r : rows) {
    if (r.size() != n) throw MathError(ErrorKind::kDimensionMismatch, "annihilator row length");
    std::vector<Integer> row;
    for (auto c : r) row.emplace_back(static_cast<long>(c));
    a.push_back(row);
  }
  ColumnHermite ch = column_hermite(a, n);
  std::vector<WeightVector> basis;
  for (std::size_t j = ch.pivot_rows.size(); j < n; ++j) {
    WeightVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = ch.u[i][j].get_si();
    basis.push_back(v);
  }
  return basis;
}

std::optional<std::vector<Integer>> solve_integer(const IntegerMatrix& a,
                                                  const std::vector<Rational>& b) {
  for (const auto& q : b)
    if (!is_integer(q)) return std::nullopt;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  ColumnHermite ch = column_hermite(a, cols);
  const std::size_t rk = ch.pivot_rows.size();
  std::vector<Integer> y(cols, 0);
  for (std::size_t j = 0; j < rk; ++j) {
    std::size_t r = ch.pivot_rows[j];
    Integer acc = b[r].get_num();
    for (std::size_t k = 0; k < j; ++k) acc -= ch.h[r][k] * y[k];
    if (acc % ch.h[r][j] != 0) return std::nullopt;
    y[j] = acc / ch.h[r][j];
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    Integer acc = 0;
    for (std::size_t k = 0; k < rk; ++k) acc += ch.h[r][k] * y[k];
    if (acc != b[r].get_num()) return std::nullopt;
  }
  std::vector<Integer> x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < rk; ++j) x[i] += ch.u[i][j] * y[j];
  return x;
}

Integer lattice_index(const std::vector<WeightVector>& vectors) {
  if (vectors.empty()) return 1;
  const std::size_t n = vectors[0].size();
  // Saturated basis of span(vectors) ∩ Z^n: annihilator of the annihilator.
  auto ann = integer_annihilator_basis(vectors, n);
  auto sat = integer_annihilator_basis(ann, n);
  if (sat.size() != vectors.size())
    throw MathError(ErrorKind::kDimensionMismatch, "lattice_index needs independent vectors");
  // Coordinates of each vector in the saturated basis.
  Matrix basis_cols = columns_matrix(sat);
  Matrix coords;
  for (const auto& v : vectors) {
    auto sol = solve_linear(basis_cols, to_point(v));
    coords.push_back(sol.particular);
  }
  Rational d = det(coords);
  return abs(d.get_num());
}

}  // namespace conecalc
