#pragma once

#include <optional>
#include <vector>

#include "conecalc/rational.hpp"

namespace conecalc {

// Row-major dense matrix over Q.
using Matrix = std::vector<RationalPoint>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

Matrix to_matrix(const std::vector<WeightVector>& rows);
// Matrix whose columns are the given vectors.
Matrix columns_matrix(const std::vector<WeightVector>& columns);
Matrix transpose(const Matrix& m);

Rational det(Matrix m);
std::size_t rank(Matrix m);
std::size_t rank(const std::vector<WeightVector>& vectors);

struct RowEchelon {
  Matrix reduced;                     // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column per nonzero row
};
RowEchelon rref(Matrix m);

struct LinearSolution {
  enum class Kind { kUnique, kFamily, kNone };
  Kind kind = Kind::kNone;
  RationalPoint particular;           // free variables set to zero
  std::vector<RationalPoint> kernel;  // basis of the homogeneous solutions
};

// Solves matrix * x = rhs exactly. Inconsistency is a valid result.
LinearSolution solve_linear(const Matrix& matrix, const RationalPoint& rhs);

// Basis of {x : matrix * x = 0} over Q.
std::vector<RationalPoint> nullspace(const Matrix& matrix);

// v / gcd(v); throws kZeroVector on the zero vector.
WeightVector primitive(const WeightVector& v);
// Clears denominators and divides by the content.
WeightVector primitive_integer(const RationalPoint& v);

// Z-basis of the saturated lattice {y in Z^n : <y, l> = 0 for all rows l}.
// The resulting map x -> (<y_i, x>) sends Z^n onto Z^(n - rank).
std::vector<WeightVector> integer_annihilator_basis(const std::vector<WeightVector>& rows,
                                                    std::size_t n);

// Integer solution of A x = b (A integer, b rational), if one exists.
std::optional<std::vector<Integer>> solve_integer(const IntegerMatrix& a,
                                                  const std::vector<Rational>& b);

// |det| of the vectors expressed in a lattice basis of their saturation, i.e.
// the index of the lattice they generate inside span ∩ Z^n. Vectors must be
// linearly independent.
Integer lattice_index(const std::vector<WeightVector>& vectors);

}  // namespace conecalc
