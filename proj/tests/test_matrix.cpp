#include "doctest.h"
#include "semikit/intmatrix.hpp"
#include "semikit/rng.hpp"

using namespace semikit;

namespace {

IntMatrix random_matrix(int n, Rng& rng, int span) {
    IntMatrix m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = rng.range(-span, span);
    return m;
}

/* Cofactor-expansion determinant, the independent oracle for Bareiss. */
Int det_oracle(const IntMatrix& m) {
    int n = m.rows();
    if (n == 1) return m(0, 0);
    Int acc(0);
    for (int c = 0; c < n; ++c) {
        if (m(0, c) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int k = 0; k < n; ++k) {
                if (k == c) continue;
                minor(r - 1, cc++) = m(r, k);
            }
        }
        Int term = m(0, c) * det_oracle(minor);
        acc += (c % 2 == 0) ? term : -term;
    }
    return acc;
}

}  // namespace

TEST_CASE("bareiss determinant vs cofactor oracle") {
    Rng rng(5);
    for (int n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            IntMatrix m = random_matrix(n, rng, 9);
            CHECK(det(m) == det_oracle(m));
        }
}

TEST_CASE("column HNF of the sqrt2 ideal lattice") {
    // columns (2,0) and (0,1): the lattice of sqrt2 * Z[sqrt2] in coordinates
    IntMatrix m(2, 4);
    m(0, 0) = 2; m(1, 0) = 0;
    m(0, 1) = 0; m(1, 1) = 1;
    m(0, 2) = 2; m(1, 2) = 3;   // redundant combinations
    m(0, 3) = -4; m(1, 3) = 1;
    IntMatrix h = hnf_column_basis(m);
    REQUIRE(h.cols() == 2);
    CHECK(h(0, 0) == 2);
    CHECK(h(1, 1) == 1);
    CHECK(h(0, 1) == 0);
    CHECK(h(1, 0) == 0);
    CHECK(det(h) == 2);
}

TEST_CASE("HNF is a canonical form for column lattices") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(rng.below(2));
        IntMatrix m = random_matrix(n, rng, 6);
        if (det(m) == 0) continue;
        // append random integer combinations of the columns
        IntMatrix wide(n, n + 2);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) wide(r, c) = m(r, c);
        for (int extra = 0; extra < 2; ++extra) {
            std::vector<Int> combo(static_cast<size_t>(n), Int(0));
            for (int c = 0; c < n; ++c) {
                Int t = rng.range(-3, 3);
                for (int r = 0; r < n; ++r) combo[static_cast<size_t>(r)] += t * m(r, c);
            }
            for (int r = 0; r < n; ++r) wide(r, n + extra) = combo[static_cast<size_t>(r)];
        }
        IntMatrix h1 = hnf_column_basis(m);
        IntMatrix h2 = hnf_column_basis(wide);
        CHECK(h1 == h2);
        CHECK(abs_int(det(h1)) == abs_int(det(m)));
    }
}

TEST_CASE("hnf_solve decides membership") {
    IntMatrix h(2, 2);
    h(0, 0) = 2; h(0, 1) = 0;
    h(1, 0) = 0; h(1, 1) = 1;
    CHECK(hnf_solve(h, {Int(0), Int(3)}).has_value());   // 3*sqrt2 in (sqrt2)
    CHECK(!hnf_solve(h, {Int(1), Int(0)}).has_value());  // 1 not in (sqrt2)
    CHECK(hnf_solve(h, {Int(0), Int(0)}).has_value());
    auto c = hnf_solve(h, {Int(4), Int(-5)});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 2);
    CHECK((*c)[1] == -5);
}

TEST_CASE("smith decomposition") {
    Rng rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng.below(2));
        IntMatrix m = random_matrix(n, rng, 5);
        if (det(m) == 0) continue;
        SmithDecomposition s = smith(m);

        CHECK(abs_int(det(s.U)) == 1);
        CHECK(s.U * s.Uinv == IntMatrix::identity(n));

        Int prod(1);
        for (size_t i = 0; i < s.diag.size(); ++i) {
            prod *= s.diag[i];
            if (i + 1 < s.diag.size() && s.diag[i] != 0)
                CHECK(s.diag[i + 1] % s.diag[i] == 0);
        }
        CHECK(prod == abs_int(det(m)));

        /* Lattice equality: U*(col of m) must be divisible componentwise by
         * diag, and Uinv*(d_i e_i) must lie in the column lattice of m. */
        IntMatrix hm = hnf_column_basis(m);
        for (int c = 0; c < n; ++c) {
            auto v = s.U.apply(m.col(c));
            for (int i = 0; i < n; ++i) CHECK(v[static_cast<size_t>(i)] % s.diag[static_cast<size_t>(i)] == 0);
        }
        for (int i = 0; i < n; ++i) {
            std::vector<Int> e(static_cast<size_t>(n), Int(0));
            e[static_cast<size_t>(i)] = s.diag[static_cast<size_t>(i)];
            CHECK(hnf_solve(hm, s.Uinv.apply(e)).has_value());
        }
    }
}

TEST_CASE("solve_integer") {
    IntMatrix m(2, 2);
    m(0, 0) = 1; m(0, 1) = 2;
    m(1, 0) = 3; m(1, 1) = 5;
    auto x = solve_integer(m, {Int(7), Int(18)});
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == std::vector<Int>{Int(7), Int(18)});

    m(0, 0) = 2; m(0, 1) = 0;
    m(1, 0) = 0; m(1, 1) = 2;
    CHECK(!solve_integer(m, {Int(1), Int(0)}).has_value());
}
