#ifndef NSPEC_EXACTLA_HPP
#define NSPEC_EXACTLA_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nspec/errors.hpp"

namespace nspec {

// All arithmetic in this library is exact. Integers and rationals are
// arbitrary precision; overflow is a correctness bug, not an error path.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }
inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

// floor(p/q) with exact sign handling.
inline Int rat_floor(const Rat& r) {
    Int p = rat_num(r), q = rat_den(r);
    Int d = p / q;
    if (p < 0 && d * q != p) --d;
    return d;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

namespace exactla {

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int gcd_vec(const IVec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

// Scales a nonzero integer vector down to content 1; zero stays zero.
inline IVec primitive(IVec v) {
    Int g = gcd_vec(v);
    if (g > 1)
        for (Int& x : v) x /= g;
    return v;
}

inline Int dot(const IVec& a, const IVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dotq(const QVec& a, const IVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
    return s;
}

inline Rat dotqq(const QVec& a, const QVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool lex_less(const IVec& a, const IVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static IntMatrix from_rows(const std::vector<IVec>& rws, std::size_t cols_hint = 0) {
        std::size_t c = rws.empty() ? cols_hint : rws[0].size();
        IntMatrix m(rws.size(), c);
        for (std::size_t i = 0; i < rws.size(); ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rws[i][j];
        return m;
    }
    Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    IVec row(std::size_t r) const { return IVec(a.begin() + r * cols, a.begin() + (r + 1) * cols); }
    IntMatrix transposed() const {
        IntMatrix t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

struct HnfResult {
    IntMatrix h; // row Hermite normal form
    IntMatrix u; // unimodular, u*m == h
};

// Row Hermite normal form by extended-gcd row operations. Pivots positive,
// entries above a pivot reduced into [0, pivot), zero rows last.
inline HnfResult hermite_normal_form(const IntMatrix& m) {
    if (m.rows == 0 || m.cols == 0) fail(errc::internal, "hermite_normal_form: empty matrix");
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.rows);
    std::size_t pr = 0;

    auto combine = [&](std::size_t r1, std::size_t r2, const Int& a11, const Int& a12,
                       const Int& a21, const Int& a22) {
        for (std::size_t j = 0; j < h.cols; ++j) {
            Int x = h.at(r1, j), y = h.at(r2, j);
            h.at(r1, j) = a11 * x + a12 * y;
            h.at(r2, j) = a21 * x + a22 * y;
        }
        for (std::size_t j = 0; j < u.cols; ++j) {
            Int x = u.at(r1, j), y = u.at(r2, j);
            u.at(r1, j) = a11 * x + a12 * y;
            u.at(r2, j) = a21 * x + a22 * y;
        }
    };

    for (std::size_t col = 0; col < m.cols && pr < m.rows; ++col) {
        std::size_t nz = pr;
        while (nz < m.rows && h.at(nz, col) == 0) ++nz;
        if (nz == m.rows) continue;
        if (nz != pr) combine(pr, nz, 0, 1, 1, 0); // swap (det -1, still unimodular)
        for (std::size_t r = pr + 1; r < m.rows; ++r) {
            if (h.at(r, col) == 0) continue;
            Int a = h.at(pr, col), b = h.at(r, col);
            Int s, t;
            Int g = boost::multiprecision::gcd(a, b);
            // extended gcd: s*a + t*b = g
            {
                Int x0 = 1, y0 = 0, x1 = 0, y1 = 1, aa = a, bb = b;
                while (bb != 0) {
                    Int q = aa / bb; // truncated is fine for the gcd recurrence
                    Int r2 = aa - q * bb;
                    Int x2 = x0 - q * x1, y2 = y0 - q * y1;
                    aa = bb; bb = r2; x0 = x1; y0 = y1; x1 = x2; y1 = y2;
                }
                if (aa < 0) { aa = -aa; x0 = -x0; y0 = -y0; }
                s = x0; t = y0;
                if (aa != g) fail(errc::internal, "xgcd mismatch");
            }
            combine(pr, r, s, t, -(b / g), a / g); // second row det contribution: s*a/g + t*b/g = 1
        }
        if (h.at(pr, col) < 0) {
            for (std::size_t j = 0; j < h.cols; ++j) h.at(pr, j) = -h.at(pr, j);
            for (std::size_t j = 0; j < u.cols; ++j) u.at(pr, j) = -u.at(pr, j);
        }
        // reduce entries above the pivot into [0, pivot)
        Int p = h.at(pr, col);
        for (std::size_t r = 0; r < pr; ++r) {
            Int v = h.at(r, col);
            Int q = v / p;
            if (v - q * p < 0) --q;
            if (q != 0) {
                for (std::size_t j = 0; j < h.cols; ++j) h.at(r, j) -= q * h.at(pr, j);
                for (std::size_t j = 0; j < u.cols; ++j) u.at(r, j) -= q * u.at(pr, j);
            }
        }
        ++pr;
    }
    return {h, u};
}

// Elementary divisors d1 | d2 | ... of m, length min(rows, cols), zeros last.
inline std::vector<Int> smith_normal_form(IntMatrix m) {
    if (m.rows == 0 || m.cols == 0) fail(errc::internal, "smith_normal_form: empty matrix");
    std::size_t k = std::min(m.rows, m.cols);
    auto abs_ = [](const Int& x) { return x < 0 ? Int(-x) : x; };

    for (std::size_t t = 0; t < k; ++t) {
        // locate a minimal nonzero entry in the trailing submatrix
        bool found = false;
        for (;;) {
            std::size_t bi = t, bj = t;
            Int best = 0;
            for (std::size_t i = t; i < m.rows; ++i)
                for (std::size_t j = t; j < m.cols; ++j)
                    if (m.at(i, j) != 0 && (best == 0 || abs_(m.at(i, j)) < best)) {
                        best = abs_(m.at(i, j));
                        bi = i; bj = j;
                    }
            if (best == 0) break;
            found = true;
            // move pivot to (t,t)
            if (bi != t)
                for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(t, j), m.at(bi, j));
            if (bj != t)
                for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, t), m.at(i, bj));
            bool dirty = false;
            for (std::size_t i = t + 1; i < m.rows; ++i) {
                Int q = m.at(i, t) / m.at(t, t);
                if (q != 0)
                    for (std::size_t j = t; j < m.cols; ++j) m.at(i, j) -= q * m.at(t, j);
                if (m.at(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < m.cols; ++j) {
                Int q = m.at(t, j) / m.at(t, t);
                if (q != 0)
                    for (std::size_t i = t; i < m.rows; ++i) m.at(i, j) -= q * m.at(i, t);
                if (m.at(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // divisibility sweep: fold in any entry the pivot does not divide
            bool fixed = true;
            for (std::size_t i = t + 1; i < m.rows && fixed; ++i)
                for (std::size_t j = t + 1; j < m.cols && fixed; ++j)
                    if (m.at(i, j) % m.at(t, t) != 0) {
                        for (std::size_t jj = t; jj < m.cols; ++jj) m.at(t, jj) += m.at(i, jj);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (!found) break;
        if (m.at(t, t) < 0)
            for (std::size_t j = t; j < m.cols; ++j) m.at(t, j) = -m.at(t, j);
    }
    std::vector<Int> d(k);
    for (std::size_t t = 0; t < k; ++t) d[t] = abs_(m.at(t, t));
    return d;
}

inline std::size_t rank(const IntMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    auto d = smith_normal_form(m);
    std::size_t r = 0;
    for (const Int& x : d)
        if (x != 0) ++r;
    return r;
}

inline std::size_t rank_rows(const std::vector<IVec>& rows, std::size_t cols) {
    if (rows.empty()) return 0;
    return rank(IntMatrix::from_rows(rows, cols));
}

// Basis of the saturated lattice {x in Z^n : m x = 0}.
inline std::vector<IVec> kernel_basis(const IntMatrix& m) {
    // Zero rows of HNF(m^T) correspond to rows of the transform spanning the kernel.
    if (m.cols == 0) return {};
    if (m.rows == 0) {
        std::vector<IVec> id;
        for (std::size_t i = 0; i < m.cols; ++i) {
            IVec e(m.cols, 0);
            e[i] = 1;
            id.push_back(e);
        }
        return id;
    }
    HnfResult hr = hermite_normal_form(m.transposed());
    std::vector<IVec> out;
    for (std::size_t r = 0; r < hr.h.rows; ++r) {
        bool zero = true;
        for (std::size_t j = 0; j < hr.h.cols; ++j)
            if (hr.h.at(r, j) != 0) { zero = false; break; }
        if (zero) out.push_back(primitive(hr.u.row(r)));
    }
    return out;
}

// One rational solution of A x = b (A given as rows), or nullopt if inconsistent.
inline std::optional<QVec> solve(std::vector<QVec> a, QVec b) {
    std::size_t rows = a.size();
    if (rows == 0) return QVec{};
    std::size_t cols = a[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < cols && pr < rows; ++c) {
        std::size_t nz = pr;
        while (nz < rows && a[nz][c] == 0) ++nz;
        if (nz == rows) continue;
        std::swap(a[pr], a[nz]);
        std::swap(b[pr], b[nz]);
        Rat inv = a[pr][c];
        for (std::size_t j = c; j < cols; ++j) a[pr][j] /= inv;
        b[pr] /= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr || a[r][c] == 0) continue;
            Rat f = a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[pr][j];
            b[r] -= f * b[pr];
        }
        pivot_col.push_back(c);
        ++pr;
    }
    for (std::size_t r = pr; r < rows; ++r)
        if (b[r] != 0) return std::nullopt;
    QVec x(cols, Rat(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

// Rational functionals dual to independent integer rows: g_j . row_k = delta_jk.
// Values are only meaningful on the span of the rows.
inline std::vector<QVec> dual_functionals(const std::vector<IVec>& rows) {
    std::size_t d = rows.size();
    std::size_t n = rows.empty() ? 0 : rows[0].size();
    std::vector<QVec> out;
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<QVec> sys;
        QVec rhs;
        for (std::size_t k = 0; k < d; ++k) {
            QVec row(n);
            for (std::size_t c = 0; c < n; ++c) row[c] = Rat(rows[k][c]);
            sys.push_back(std::move(row));
            rhs.push_back(k == j ? Rat(1) : Rat(0));
        }
        auto x = solve(sys, rhs);
        if (!x) fail(errc::internal, "dual_functionals: dependent rows");
        out.push_back(*x);
    }
    return out;
}

} // namespace exactla
} // namespace nspec

#endif
