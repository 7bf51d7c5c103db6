#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nspec/exactla.hpp"
#include "nspec/newton.hpp"
#include "nspec/polyhedra.hpp"

using namespace nspec;
using namespace nspec::exactla;

namespace {

IntMatrix mk(std::vector<std::vector<long>> rows) {
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[0].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

IVec iv(std::vector<long> v) { return IVec(v.begin(), v.end()); }

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            Int s = 0;
            for (std::size_t k = 0; k < a.cols; ++k) s += a.at(i, k) * b.at(k, j);
            c.at(i, j) = s;
        }
    return c;
}

Int det2(const IntMatrix& m) { return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0); }

} // namespace

TEST_CASE("hermite normal form on frozen examples") {
    auto r1 = hermite_normal_form(mk({{2, 0}, {0, 3}}));
    CHECK(r1.h == mk({{2, 0}, {0, 3}}));

    auto r2 = hermite_normal_form(mk({{2, 4}, {1, 3}}));
    CHECK(r2.h == mk({{1, 1}, {0, 2}}));
    CHECK(mat_mul(r2.u, mk({{2, 4}, {1, 3}})) == r2.h);
    Int d = det2(r2.u);
    CHECK((d == 1 || d == -1));

    auto r3 = hermite_normal_form(mk({{0, 0}}));
    CHECK(r3.h == mk({{0, 0}}));
}

TEST_CASE("hermite normal form properties on random matrices") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<int> dim(1, 4), entry(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = entry(rng);
        auto hr = hermite_normal_form(m);
        CHECK(mat_mul(hr.u, m) == hr.h);
        // re-running on the result is the identity
        auto again = hermite_normal_form(hr.h);
        CHECK(again.h == hr.h);
        // pivots positive, entries above reduced, zero rows last
        bool seen_zero_row = false;
        std::size_t prev_col = 0;
        bool first = true;
        for (std::size_t i = 0; i < r; ++i) {
            std::size_t p = 0;
            while (p < c && hr.h.at(i, p) == 0) ++p;
            if (p == c) { seen_zero_row = true; continue; }
            CHECK(!seen_zero_row);
            CHECK(hr.h.at(i, p) > 0);
            if (!first) CHECK(p > prev_col);
            prev_col = p;
            first = false;
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(hr.h.at(k, p) >= 0);
                CHECK(hr.h.at(k, p) < hr.h.at(i, p));
            }
        }
    }
}

TEST_CASE("smith normal form examples and divisibility chain") {
    CHECK(smith_normal_form(mk({{2, 0}, {0, 3}})) == std::vector<Int>{1, 6});
    CHECK(smith_normal_form(mk({{2, 4}, {1, 3}})) == std::vector<Int>{1, 2});
    CHECK(smith_normal_form(IntMatrix::identity(3)) == std::vector<Int>{1, 1, 1});

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dim(1, 4), entry(-8, 8);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = entry(rng);
        auto d = smith_normal_form(m);
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            if (d[i + 1] != 0) {
                REQUIRE(d[i] != 0);
                CHECK(d[i + 1] % d[i] == 0);
            }
        }
        if (r == c) {
            Int prod = 1;
            for (const Int& x : d) prod *= x;
            Int dd = newton::detail::det_bareiss(m);
            if (dd < 0) dd = -dd;
            CHECK(prod == dd);
        }
    }
}

TEST_CASE("kernel basis is a saturated kernel") {
    auto k = kernel_basis(mk({{-2, 3}}));
    REQUIRE(k.size() == 1);
    CHECK(dot(k[0], iv({-2, 3})) == 0);
    CHECK(gcd_vec(k[0]) == 1);

    auto k2 = kernel_basis(mk({{1, 1, 1}, {1, 2, 3}}));
    REQUIRE(k2.size() == 1);
    CHECK(dot(k2[0], iv({1, 1, 1})) == 0);
    CHECK(dot(k2[0], iv({1, 2, 3})) == 0);
}

TEST_CASE("double description of shifted orthants and hulls") {
    std::vector<IVec> e2 = {iv({1, 0}), iv({0, 1})};

    auto h1 = double_description({iv({2, 0}), iv({0, 3})}, e2);
    REQUIRE(h1.ineqs.size() == 3);
    bool has_slant = false, has_x = false, has_y = false;
    for (const auto& iq : h1.ineqs) {
        if (iq.normal == iv({3, 2})) { has_slant = true; CHECK(iq.offset == 6); }
        if (iq.normal == iv({1, 0})) { has_x = true; CHECK(iq.offset == 0); }
        if (iq.normal == iv({0, 1})) { has_y = true; CHECK(iq.offset == 0); }
    }
    CHECK((has_slant && has_x && has_y));

    auto h2 = double_description({iv({1, 1})}, e2);
    REQUIRE(h2.ineqs.size() == 2);
    CHECK(h2.ineqs[0].normal == iv({0, 1}));
    CHECK(h2.ineqs[0].offset == 1);
    CHECK(h2.ineqs[1].normal == iv({1, 0}));
    CHECK(h2.ineqs[1].offset == 1);

    std::vector<IVec> e3 = {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})};
    auto h3 = double_description({iv({7, 0, 0}), iv({0, 7, 0}), iv({0, 0, 7}), iv({2, 2, 2})}, e3);
    int through_center = 0;
    for (const auto& iq : h3.ineqs) {
        CHECK(iq.normal != iv({1, 1, 1}));
        if (dot(iq.normal, iv({2, 2, 2})) == iq.offset) ++through_center;
    }
    CHECK(through_center == 3);
}

TEST_CASE("double description round-trip on random supports") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> ndist(1, 3), cnt(1, 6), expo(0, 6), dir_num(1, 9);
    for (int trial = 0; trial < 200; ++trial) {
        int n = ndist(rng);
        std::vector<IVec> pts;
        int c = cnt(rng);
        for (int i = 0; i < c; ++i) {
            IVec p(n);
            bool zero = true;
            for (int j = 0; j < n; ++j) {
                p[j] = expo(rng);
                if (p[j] != 0) zero = false;
            }
            if (zero) p[0] = 1;
            pts.push_back(p);
        }
        std::vector<IVec> rays;
        for (int j = 0; j < n; ++j) {
            IVec e(n, 0);
            e[j] = 1;
            rays.push_back(e);
        }
        auto h = double_description(pts, rays);
        for (const auto& iq : h.ineqs) {
            for (const IVec& p : pts) CHECK(dot(iq.normal, p) >= iq.offset);
            for (const IVec& r : rays) CHECK(dot(iq.normal, r) >= 0);
        }

        // the minimizing face read from the H-representation matches the argmin
        // over the input points, for strictly positive rational directions
        auto support = newton::make_support(n, [&] {
            std::vector<std::pair<IVec, Rat>> mv;
            for (const IVec& p : pts) mv.emplace_back(p, Rat(1));
            return mv;
        }());
        auto poly = newton::build_polyhedron(support);
        std::uniform_int_distribution<int> dir_den(1, 4);
        for (int d = 0; d < 50; ++d) {
            QVec v(n);
            for (int j = 0; j < n; ++j) v[j] = Rat(dir_num(rng), dir_den(rng));
            Rat best;
            bool first = true;
            for (const IVec& p : pts) {
                Rat val = dotq(v, p);
                if (first || val < best) { best = val; first = false; }
            }
            std::vector<int> arg_verts;
            for (std::size_t i = 0; i < poly.vertices.size(); ++i)
                if (dotq(v, poly.vertices[i]) == best) arg_verts.push_back((int)i);
            REQUIRE(!arg_verts.empty()); // the min over points is attained at a vertex
            bool is_face = false;
            for (const auto& f : poly.faces)
                if (f.id != 0 && f.vertex_ids == arg_verts) is_face = true;
            CHECK(is_face);
            // every argmin input point lies on that face's tight facets
            for (const IVec& p : pts) {
                if (dotq(v, p) != best) continue;
                for (const auto& iq : h.ineqs) {
                    bool tight_on_face = true;
                    for (int vi : arg_verts)
                        if (dot(iq.normal, poly.vertices[vi]) != iq.offset) tight_on_face = false;
                    if (tight_on_face) CHECK(dot(iq.normal, p) == iq.offset);
                }
            }
        }
    }
}

TEST_CASE("lattice point enumeration of parallelepiped regions") {
    // open parallelepiped on (2,0), (0,3): barycentric forms x/2 and y/3
    std::vector<Constraint> open_box = {
        {{Rat(1, 2), Rat(0)}, Rat(0), true},  {{Rat(-1, 2), Rat(0)}, Rat(-1), true},
        {{Rat(0), Rat(1, 3)}, Rat(0), true},  {{Rat(0), Rat(-1, 3)}, Rat(-1), true},
    };
    auto pts = lattice_points(open_box);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0] == iv({1, 1}));
    CHECK(pts[1] == iv({1, 2}));

    std::vector<Constraint> half_open = {
        {{Rat(1, 2), Rat(0)}, Rat(0), false}, {{Rat(-1, 2), Rat(0)}, Rat(-1), true},
        {{Rat(0), Rat(1, 3)}, Rat(0), false}, {{Rat(0), Rat(-1, 3)}, Rat(-1), true},
    };
    auto pts2 = lattice_points(half_open);
    std::vector<IVec> expect = {iv({0, 0}), iv({0, 1}), iv({0, 2}),
                                iv({1, 0}), iv({1, 1}), iv({1, 2})};
    CHECK(pts2 == expect);

    std::vector<Constraint> empty_box = {
        {{Rat(1)}, Rat(0), true},
        {{Rat(-1)}, Rat(0), true},
    };
    CHECK(lattice_points(empty_box).empty());

    std::vector<Constraint> unbounded = {{{Rat(1)}, Rat(0), false}};
    CHECK_THROWS_AS(lattice_points(unbounded), error);
}

TEST_CASE("lattice point enumeration agrees with a naive box scan") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> gen(-3, 3), nd(1, 3);
    for (int trial = 0; trial < 50; ++trial) {
        int n = nd(rng);
        // random rational constraints around a bounded box [-2,2]^n
        std::vector<Constraint> cs;
        for (int j = 0; j < n; ++j) {
            QVec lo(n, Rat(0)), hi(n, Rat(0));
            lo[j] = 1;
            hi[j] = -1;
            cs.push_back({lo, Rat(-2), false});
            cs.push_back({hi, Rat(-2), false});
        }
        for (int extra = 0; extra < 2; ++extra) {
            QVec a(n);
            bool zero = true;
            for (int j = 0; j < n; ++j) {
                a[j] = Rat(gen(rng), 2);
                if (a[j] != 0) zero = false;
            }
            if (zero) a[0] = Rat(1, 2);
            cs.push_back({a, Rat(gen(rng), 3), (trial + extra) % 2 == 0});
        }
        auto got = lattice_points(cs);
        std::vector<IVec> want;
        IVec u(n, Int(-2));
        for (;;) {
            bool ok = true;
            for (const auto& c : cs) {
                Rat v = dotq(c.a, u) - c.b;
                if (v < 0 || (c.strict && v == 0)) { ok = false; break; }
            }
            if (ok) want.push_back(u);
            int i = n;
            for (;;) {
                if (i == 0) goto done;
                --i;
                if (u[i] < 2) {
                    ++u[i];
                    for (int j2 = i + 1; j2 < n; ++j2) u[j2] = -2;
                    break;
                }
                u[i] = -2;
            }
        }
    done:
        CHECK(got == want);
    }
}
