#ifndef NSPEC_POLYHEDRA_HPP
#define NSPEC_POLYHEDRA_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "nspec/exactla.hpp"

namespace nspec {
namespace exactla {

// H-representation: inequalities <normal, u> >= offset with primitive normals.
struct HRep {
    struct Ineq {
        IVec normal;
        Int offset;
        bool operator==(const Ineq& o) const { return normal == o.normal && offset == o.offset; }
        bool operator<(const Ineq& o) const {
            if (normal != o.normal) return lex_less(normal, o.normal);
            return offset < o.offset;
        }
    };
    std::vector<Ineq> ineqs;
};

struct DDCone {
    std::vector<IVec> lineality; // basis of the lineality space
    std::vector<IVec> rays;      // extreme rays modulo lineality, primitive, lex sorted
};

// Extreme rays of {x : <a,x> >= 0 for all constraint rows a}, by incremental
// double description. Constraints are inserted one at a time; the lineality
// space shrinks first, then rays are cut and adjacent pairs combined. The
// adjacency test is the combinatorial one on tight sets of processed rows.
inline DDCone dual_rays(const std::vector<IVec>& constraints, std::size_t dim) {
    struct Ray {
        IVec v;
        std::vector<bool> tight; // indexed by constraint position
    };
    std::vector<IVec> lin;
    for (std::size_t i = 0; i < dim; ++i) {
        IVec e(dim, 0);
        e[i] = 1;
        lin.push_back(e);
    }
    std::vector<Ray> rays;
    std::size_t m = constraints.size();

    for (std::size_t ci = 0; ci < m; ++ci) {
        const IVec& a = constraints[ci];
        if (a.size() != dim) fail(errc::dimension_mismatch, "dual_rays: constraint length");
        bool zero = std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
        if (zero) continue;

        std::size_t l0 = lin.size();
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (dot(a, lin[i]) != 0) { l0 = i; break; }

        if (l0 < lin.size()) {
            IVec pivot = lin[l0];
            Int pv = dot(a, pivot);
            if (pv < 0) {
                for (Int& x : pivot) x = -x;
                pv = -pv;
            }
            std::vector<IVec> nlin;
            for (std::size_t i = 0; i < lin.size(); ++i) {
                if (i == l0) continue;
                Int w = dot(a, lin[i]);
                IVec c(dim);
                for (std::size_t j = 0; j < dim; ++j) c[j] = pv * lin[i][j] - w * pivot[j];
                nlin.push_back(primitive(std::move(c)));
            }
            lin = std::move(nlin);
            for (Ray& r : rays) {
                Int w = dot(a, r.v);
                if (w != 0) {
                    for (std::size_t j = 0; j < dim; ++j) r.v[j] = pv * r.v[j] - w * pivot[j];
                    r.v = primitive(std::move(r.v));
                }
                r.tight.push_back(true);
            }
            Ray nr;
            nr.v = std::move(pivot);
            nr.tight.assign(ci, true); // previous constraints all vanish on the old lineality
            nr.tight.push_back(false);
            rays.push_back(std::move(nr));
            continue;
        }

        std::vector<std::size_t> plus, minus;
        std::vector<Int> vals(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            vals[i] = dot(a, rays[i].v);
            if (vals[i] > 0) plus.push_back(i);
            else if (vals[i] < 0) minus.push_back(i);
        }
        if (minus.empty()) {
            for (std::size_t i = 0; i < rays.size(); ++i) rays[i].tight.push_back(vals[i] == 0);
            continue;
        }

        auto adjacent = [&](std::size_t p, std::size_t q) {
            std::vector<bool> t(ci, false);
            for (std::size_t j = 0; j < ci; ++j) t[j] = rays[p].tight[j] && rays[q].tight[j];
            for (std::size_t r = 0; r < rays.size(); ++r) {
                if (r == p || r == q) continue;
                bool super = true;
                for (std::size_t j = 0; j < ci && super; ++j)
                    if (t[j] && !rays[r].tight[j]) super = false;
                if (super) return false;
            }
            return true;
        };

        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (vals[i] < 0) continue;
            Ray r = rays[i];
            r.tight.push_back(vals[i] == 0);
            next.push_back(std::move(r));
        }
        for (std::size_t p : plus)
            for (std::size_t q : minus) {
                if (!adjacent(p, q)) continue;
                Ray w;
                w.v.resize(dim);
                for (std::size_t j = 0; j < dim; ++j)
                    w.v[j] = vals[p] * rays[q].v[j] - vals[q] * rays[p].v[j];
                w.v = primitive(std::move(w.v));
                w.tight.resize(ci + 1);
                for (std::size_t j = 0; j < ci; ++j)
                    w.tight[j] = rays[p].tight[j] && rays[q].tight[j];
                w.tight[ci] = true;
                next.push_back(std::move(w));
            }
        rays = std::move(next);
    }

    DDCone out;
    out.lineality = std::move(lin);
    for (Ray& r : rays) out.rays.push_back(std::move(r.v));
    std::sort(out.rays.begin(), out.rays.end(), lex_less);
    out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
    return out;
}

// H-representation of conv(points) + cone(rays). Points are lifted to height 1
// and rays to height 0; facets are the extreme rays of the dual of the lifted
// cone. Lineality in the dual signals a lower-dimensional polyhedron; each
// such direction contributes an opposite pair of inequalities.
inline HRep double_description(const std::vector<IVec>& points, const std::vector<IVec>& rays) {
    if (points.empty()) fail(errc::internal, "double_description: no points");
    std::size_t n = points[0].size();
    std::vector<IVec> cons;
    for (const IVec& p : points) {
        if (p.size() != n) fail(errc::dimension_mismatch, "double_description: point length");
        IVec c(n + 1);
        c[0] = 1;
        for (std::size_t j = 0; j < n; ++j) c[j + 1] = p[j];
        cons.push_back(std::move(c));
    }
    for (const IVec& r : rays) {
        if (r.size() != n) fail(errc::dimension_mismatch, "double_description: ray length");
        IVec c(n + 1, 0);
        for (std::size_t j = 0; j < n; ++j) c[j + 1] = r[j];
        cons.push_back(std::move(c));
    }
    DDCone dual = dual_rays(cons, n + 1);

    HRep h;
    auto push = [&](const IVec& w, bool both) {
        IVec normal(w.begin() + 1, w.end());
        bool zero = std::all_of(normal.begin(), normal.end(), [](const Int& x) { return x == 0; });
        if (zero) return; // the lifted height inequality, not a facet
        h.ineqs.push_back({normal, -w[0]});
        if (both) {
            IVec neg(n);
            for (std::size_t j = 0; j < n; ++j) neg[j] = -normal[j];
            h.ineqs.push_back({neg, w[0]});
        }
    };
    for (const IVec& w : dual.rays) push(w, false);
    for (const IVec& w : dual.lineality) push(w, true);
    std::sort(h.ineqs.begin(), h.ineqs.end());
    h.ineqs.erase(std::unique(h.ineqs.begin(), h.ineqs.end()), h.ineqs.end());
    return h;
}

// A single rational constraint <a, u> >= b (weak) or > b (strict).
struct Constraint {
    QVec a;
    Rat b;
    bool strict = false;
};

namespace detail {

struct FMBound {
    bool has_low = false, has_high = false;
    Rat low, high;
    bool low_strict = false, high_strict = false;
    bool empty = false;
};

// Exact Fourier-Motzkin projection of the constraint region onto coordinate
// `keep`. Detects an empty region (contradictory constant row) and reports
// missing bounds, which is exactly the boundedness certificate needed.
inline FMBound fm_project(std::vector<Constraint> cs, std::size_t n, std::size_t keep) {
    FMBound out;
    auto normalize = [&](Constraint& c) {
        // scale so the first nonzero coefficient has absolute value with content 1
        Int l = 1;
        for (const Rat& x : c.a) l = l / exactla::gcd(l, rat_den(x)) * rat_den(x);
        l = l / exactla::gcd(l, rat_den(c.b)) * rat_den(c.b);
        Int g = 0;
        for (const Rat& x : c.a) g = exactla::gcd(g, rat_num(x * Rat(l)));
        g = exactla::gcd(g, rat_num(c.b * Rat(l)));
        if (g != 0) {
            Rat f = Rat(l) / Rat(g);
            for (Rat& x : c.a) x *= f;
            c.b *= f;
        }
    };
    for (std::size_t var = 0; var < n; ++var) {
        if (var == keep) continue;
        std::vector<Constraint> zero, pos, neg;
        for (Constraint& c : cs) {
            if (c.a[var] == 0) zero.push_back(std::move(c));
            else if (c.a[var] > 0) pos.push_back(std::move(c));
            else neg.push_back(std::move(c));
        }
        std::vector<Constraint> next = std::move(zero);
        std::vector<Constraint> combined;
        for (const Constraint& p : pos)
            for (const Constraint& q : neg) {
                Constraint c;
                c.a.resize(n);
                Rat fp = -q.a[var], fq = p.a[var];
                for (std::size_t j = 0; j < n; ++j) c.a[j] = fp * p.a[j] + fq * q.a[j];
                c.b = fp * p.b + fq * q.b;
                c.strict = p.strict || q.strict;
                normalize(c);
                combined.push_back(std::move(c));
            }
        // dedupe combined rows; keeps FM growth in check at this scale
        std::sort(combined.begin(), combined.end(), [](const Constraint& x, const Constraint& y) {
            if (x.a != y.a) return std::lexicographical_compare(x.a.begin(), x.a.end(), y.a.begin(), y.a.end());
            if (x.b != y.b) return x.b < y.b;
            return x.strict < y.strict;
        });
        combined.erase(std::unique(combined.begin(), combined.end(),
                                   [](const Constraint& x, const Constraint& y) {
                                       return x.a == y.a && x.b == y.b && x.strict == y.strict;
                                   }),
                       combined.end());
        for (Constraint& c : combined) next.push_back(std::move(c));
        if (next.size() > 200000) fail(errc::internal, "fm_project: blowup");
        cs = std::move(next);
    }
    for (const Constraint& c : cs) {
        if (c.a[keep] == 0) {
            // constant row: 0 >= b (or > b)
            if (c.b > 0 || (c.strict && c.b == 0)) {
                out.empty = true;
                return out;
            }
            continue;
        }
        Rat bound = c.b / c.a[keep];
        if (c.a[keep] > 0) {
            if (!out.has_low || bound > out.low) {
                out.has_low = true;
                out.low = bound;
                out.low_strict = c.strict;
            } else if (bound == out.low && c.strict) {
                out.low_strict = true;
            }
        } else {
            if (!out.has_high || bound < out.high) {
                out.has_high = true;
                out.high = bound;
                out.high_strict = c.strict;
            } else if (bound == out.high && c.strict) {
                out.high_strict = true;
            }
        }
    }
    return out;
}

} // namespace detail

// All integer points satisfying every constraint. The region must be bounded;
// bounds are extracted per coordinate by exact Fourier-Motzkin projection and
// the resulting integral box is scanned.
inline std::vector<IVec> lattice_points(const std::vector<Constraint>& cs) {
    if (cs.empty()) fail(errc::unbounded_region, "lattice_points: no constraints");
    std::size_t n = cs[0].a.size();
    for (const Constraint& c : cs)
        if (c.a.size() != n) fail(errc::dimension_mismatch, "lattice_points: constraint length");

    std::vector<Int> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        detail::FMBound b = detail::fm_project(cs, n, i);
        if (b.empty) return {};
        if (!b.has_low || !b.has_high)
            fail(errc::unbounded_region, "lattice_points: region unbounded in a coordinate");
        lo[i] = b.low_strict && is_integer(b.low) ? rat_ceil(b.low) + 1 : rat_ceil(b.low);
        hi[i] = b.high_strict && is_integer(b.high) ? rat_floor(b.high) - 1 : rat_floor(b.high);
        if (lo[i] > hi[i]) return {};
    }

    std::vector<IVec> out;
    IVec u(lo);
    for (;;) {
        bool ok = true;
        for (const Constraint& c : cs) {
            Rat v = dotq(c.a, u) - c.b;
            if (v < 0 || (c.strict && v == 0)) { ok = false; break; }
        }
        if (ok) out.push_back(u);
        std::size_t i = n;
        for (;;) {
            if (i == 0) return out;
            --i;
            if (u[i] < hi[i]) {
                ++u[i];
                for (std::size_t j = i + 1; j < n; ++j) u[j] = lo[j];
                break;
            }
            u[i] = lo[i];
        }
    }
}

} // namespace exactla
} // namespace nspec

#endif
