#include "semikit/intmatrix.hpp"

#include <algorithm>

#include "semikit/errors.hpp"

namespace semikit {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::vector<Int> IntMatrix::col(int c) const {
    std::vector<Int> v(static_cast<size_t>(rows_));
    for (int r = 0; r < rows_; ++r) v[static_cast<size_t>(r)] = (*this)(r, c);
    return v;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    std::vector<Int> v(static_cast<size_t>(rows_), Int(0));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) v[static_cast<size_t>(r)] += (*this)(r, c) * x[static_cast<size_t>(c)];
    return v;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    IntMatrix m(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Int& a = (*this)(r, k);
            if (a == 0) continue;
            for (int c = 0; c < o.cols_; ++c) m(r, c) += a * o(k, c);
        }
    return m;
}

Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw invalid_input_error("det of non-square matrix");
    int n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (a(r, k) != 0) { p = r; break; }
            if (p < 0) return 0;
            for (int c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

IntMatrix hnf_column_basis(const IntMatrix& m) {
    const int d = m.rows();
    int k = m.cols();
    IntMatrix a = m;
    int pivot = 0;
    auto col_sub = [&](int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < d; ++r) a(r, dst) -= q * a(r, src);
    };
    auto col_swap = [&](int c1, int c2) {
        if (c1 == c2) return;
        for (int r = 0; r < d; ++r) std::swap(a(r, c1), a(r, c2));
    };
    for (int row = 0; row < d && pivot < k; ++row) {
        /* Euclidean elimination in this row across columns >= pivot. */
        while (true) {
            int best = -1;
            for (int c = pivot; c < k; ++c)
                if (a(row, c) != 0 && (best < 0 || abs_int(a(row, c)) < abs_int(a(row, best)))) best = c;
            if (best < 0) break;  // row identically zero from pivot on
            col_swap(pivot, best);
            bool clean = true;
            for (int c = pivot + 1; c < k; ++c) {
                if (a(row, c) == 0) continue;
                Int q = floor_div(a(row, c), a(row, pivot));
                col_sub(c, pivot, q);
                if (a(row, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (pivot < k && a(row, pivot) != 0) {
            if (a(row, pivot) < 0)
                for (int r = 0; r < d; ++r) a(r, pivot) = -a(r, pivot);
            /* Canonical off-diagonal reduction of earlier pivot columns. */
            for (int c = 0; c < pivot; ++c) {
                Int q = floor_div(a(row, c), a(row, pivot));
                col_sub(c, pivot, q);
            }
            ++pivot;
        }
    }
    IntMatrix h(d, pivot);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < pivot; ++c) h(r, c) = a(r, c);
    return h;
}

std::optional<std::vector<Int>> hnf_solve(const IntMatrix& h, const std::vector<Int>& x) {
    const int d = h.rows();
    if (h.cols() != d) throw invalid_input_error("hnf_solve wants a square basis");
    std::vector<Int> rem = x, c(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        if (rem[static_cast<size_t>(i)] % h(i, i) != 0) return std::nullopt;
        c[static_cast<size_t>(i)] = rem[static_cast<size_t>(i)] / h(i, i);
        for (int r = i; r < d; ++r) rem[static_cast<size_t>(r)] -= c[static_cast<size_t>(i)] * h(r, i);
    }
    return c;
}

SmithDecomposition smith(IntMatrix a) {
    if (a.rows() != a.cols()) throw invalid_input_error("smith of non-square matrix");
    const int n = a.rows();
    IntMatrix u = IntMatrix::identity(n), uinv = IntMatrix::identity(n);

    auto row_swap = [&](int r1, int r2) {
        if (r1 == r2) return;
        for (int c = 0; c < n; ++c) {
            std::swap(a(r1, c), a(r2, c));
            std::swap(u(r1, c), u(r2, c));
            std::swap(uinv(c, r1), uinv(c, r2));
        }
    };
    auto row_sub = [&](int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int c = 0; c < n; ++c) {
            a(dst, c) -= q * a(src, c);
            u(dst, c) -= q * u(src, c);
            uinv(c, src) += q * uinv(c, dst);
        }
    };
    auto row_negate = [&](int r) {
        for (int c = 0; c < n; ++c) {
            a(r, c) = -a(r, c);
            u(r, c) = -u(r, c);
            uinv(c, r) = -uinv(c, r);
        }
    };
    auto col_swap = [&](int c1, int c2) {
        if (c1 == c2) return;
        for (int r = 0; r < n; ++r) std::swap(a(r, c1), a(r, c2));
    };
    auto col_sub = [&](int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < n; ++r) a(r, dst) -= q * a(r, src);
    };

    for (int t = 0; t < n; ++t) {
        while (true) {
            int pr = -1, pc = -1;
            for (int r = t; r < n; ++r)
                for (int c = t; c < n; ++c)
                    if (a(r, c) != 0 &&
                        (pr < 0 || abs_int(a(r, c)) < abs_int(a(pr, pc)))) { pr = r; pc = c; }
            if (pr < 0) break;  // rest is zero
            row_swap(t, pr);
            col_swap(t, pc);
            bool dirty = false;
            for (int r = t + 1; r < n; ++r) {
                Int q = floor_div(a(r, t), a(t, t));
                row_sub(r, t, q);
                if (a(r, t) != 0) dirty = true;
            }
            for (int c = t + 1; c < n; ++c) {
                Int q = floor_div(a(t, c), a(t, t));
                col_sub(c, t, q);
                if (a(t, c) != 0) dirty = true;
            }
            if (dirty) continue;
            /* Divisibility sweep: pivot must divide every remaining entry. */
            int bad_r = -1;
            for (int r = t + 1; r < n && bad_r < 0; ++r)
                for (int c = t + 1; c < n; ++c)
                    if (a(r, c) % a(t, t) != 0) { bad_r = r; break; }
            if (bad_r < 0) break;
            row_sub(t, bad_r, Int(-1));  // fold the offending row in and redo
        }
        if (a(t, t) < 0) row_negate(t);
    }

    SmithDecomposition out;
    out.diag.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out.diag.push_back(a(i, i));
    out.U = std::move(u);
    out.Uinv = std::move(uinv);
    return out;
}

std::optional<std::vector<Int>> solve_integer(const IntMatrix& m, const std::vector<Int>& rhs) {
    if (m.rows() != m.cols()) throw invalid_input_error("solve_integer wants a square matrix");
    const int n = m.rows();
    std::vector<std::vector<Rat>> a(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n) + 1));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) a[static_cast<size_t>(r)][static_cast<size_t>(c)] = Rat(m(r, c));
        a[static_cast<size_t>(r)][static_cast<size_t>(n)] = Rat(rhs[static_cast<size_t>(r)]);
    }
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int r = k; r < n; ++r)
            if (a[static_cast<size_t>(r)][static_cast<size_t>(k)] != 0) { p = r; break; }
        if (p < 0) throw consistency_error("solve_integer: singular matrix");
        std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(p)]);
        for (int r = 0; r < n; ++r) {
            if (r == k || a[static_cast<size_t>(r)][static_cast<size_t>(k)] == 0) continue;
            Rat f = a[static_cast<size_t>(r)][static_cast<size_t>(k)] / a[static_cast<size_t>(k)][static_cast<size_t>(k)];
            for (int c = k; c <= n; ++c)
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] -= f * a[static_cast<size_t>(k)][static_cast<size_t>(c)];
        }
    }
    std::vector<Int> x(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        Rat v = a[static_cast<size_t>(k)][static_cast<size_t>(n)] / a[static_cast<size_t>(k)][static_cast<size_t>(k)];
        if (denominator(v) != 1) return std::nullopt;
        x[static_cast<size_t>(k)] = numerator(v);
    }
    return x;
}

}  // namespace semikit
