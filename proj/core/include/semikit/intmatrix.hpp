#pragma once

#include <optional>
#include <vector>

#include "semikit/numeric.hpp"

namespace semikit {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Int& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    std::vector<Int> col(int c) const;
    std::vector<Int> apply(const std::vector<Int>& x) const;  // matrix * vector
    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

/* Fraction-free determinant (Bareiss). */
Int det(const IntMatrix& m);

/* Column-style Hermite normal form of the column lattice of m.
 * Returns the echelon basis columns (one per pivot row). For a full-rank
 * lattice in Z^d this is a d x d lower-triangular matrix with positive
 * diagonal and 0 <= h[i][j] < h[i][i] for j < i, which is a canonical
 * basis: two generator sets span the same lattice iff their HNFs agree. */
IntMatrix hnf_column_basis(const IntMatrix& m);

/* Solve h * c = x by forward substitution for lower-triangular h with
 * positive diagonal. Empty result means x is not in the lattice. */
std::optional<std::vector<Int>> hnf_solve(const IntMatrix& h, const std::vector<Int>& x);

/* U * m * V = diag(d_1..d_n) with d_i >= 0 and d_i | d_{i+1}; V is not
 * materialized. Uinv is maintained alongside U, so quotient constructions
 * get both the projection x -> Ux mod D and the lift r -> Uinv r. */
struct SmithDecomposition {
    std::vector<Int> diag;
    IntMatrix U, Uinv;
};
SmithDecomposition smith(IntMatrix m);

/* Exact solve m * x = rhs for square m via rational elimination; throws
 * consistency_error if m is singular, returns nullopt if the solution is
 * not integral. */
std::optional<std::vector<Int>> solve_integer(const IntMatrix& m, const std::vector<Int>& rhs);

}  // namespace semikit
