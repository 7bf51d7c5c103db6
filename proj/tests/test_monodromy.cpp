#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "corpus.hpp"
#include "nspec/monodromy.hpp"
#include "nspec/spectrum.hpp"

using namespace nspec;
using namespace nspec::monodromy;

namespace {
IVec iv(std::vector<long> v) { return IVec(v.begin(), v.end()); }

Int blocks(const newton::NewtonPolyhedron& p, long pp, long qq, int k) {
    auto c = jordan_blocks(p, make_eigenvalue(Int(pp), Int(qq)), k);
    REQUIRE(c.has_value());
    return *c;
}
} // namespace

TEST_CASE("compact face sets and internal flags") {
    auto p5 = corpus::build(corpus::brieskorn({5, 5, 5}) + "+x1*x2*x3");
    auto sets = compact_face_sets(p5);
    REQUIRE(sets.internal_by_dim[0].size() == 1);
    CHECK(p5.vertices[p5.faces[sets.internal_by_dim[0][0]].vertex_ids[0]] == iv({1, 1, 1}));

    auto cusp = corpus::build(corpus::cusp());
    auto csets = compact_face_sets(cusp);
    CHECK(csets.internal_by_dim[0].empty());
    CHECK(csets.internal_by_dim[1].size() == 1);

    auto p7 = corpus::build(corpus::septic_double_core());
    auto s7 = compact_face_sets(p7);
    REQUIRE(s7.internal_by_dim[0].size() == 1);
    CHECK(p7.vertices[p7.faces[s7.internal_by_dim[0][0]].vertex_ids[0]] == iv({2, 2, 2}));
}

TEST_CASE("edge weights") {
    auto cusp = corpus::build(corpus::cusp());
    auto w = edge_weights(cusp);
    auto sets = compact_face_sets(cusp);
    CHECK(w.segment_points[sets.by_dim[1][0]] == 1); // gcd(2,3) = 1
    for (int v : sets.by_dim[0]) CHECK(w.star_count[v] == 1);

    auto p5 = corpus::build("x^5+y^5+z^5+x*y*z");
    auto w5 = edge_weights(p5);
    auto s5 = compact_face_sets(p5);
    for (int e : s5.internal_by_dim[1]) CHECK(w5.segment_points[e] == 1);
    // the internal vertex meets all three internal edges
    int center = s5.internal_by_dim[0][0];
    CHECK(w5.star_count[center] == 3);
}

TEST_CASE("jordan blocks on the golden examples") {
    auto p5 = corpus::build("x^5+y^5+z^5+x*y*z");
    CHECK(blocks(p5, 0, 1, 2) == 1);  // one strictly positive point on the internal edges
    CHECK(blocks(p5, 1, 3, 3) == 0);  // the internal vertex is primitive
    CHECK(blocks(p5, 0, 1, 3) == 0);  // no maximal unipotent blocks, ever
    CHECK(blocks(p5, 1, 5, 3) == 0);
    CHECK(!jordan_blocks(p5, make_eigenvalue(Int(1), Int(5)), 1).has_value());

    auto p7 = corpus::build(corpus::septic_double_core());
    CHECK(blocks(p7, 1, 2, 3) == 1); // the center (2,2,2) has scale 2
    CHECK(blocks(p7, 0, 1, 2) == 1);
    CHECK(blocks(p7, 1, 2, 2) == 0);

    auto cusp = corpus::build(corpus::cusp());
    CHECK(blocks(cusp, 0, 1, 1) == 0);
    CHECK(blocks(cusp, 1, 6, 1) == 1);
    CHECK(blocks(cusp, 5, 6, 1) == 1);
    CHECK(blocks(cusp, 1, 2, 1) == 0); // the vertex term cancels the edge term
    CHECK(blocks(cusp, 1, 3, 1) == 0);
    CHECK(blocks(cusp, 0, 1, 2) == 0);

    auto ayz = corpus::build(corpus::axis_plus_yz(4));
    CHECK_THROWS_AS(jordan_blocks(ayz, make_eigenvalue(Int(0), Int(1)), 2), error);
}

TEST_CASE("counts depend on the eigenvalue only through its order") {
    auto p7 = corpus::build(corpus::septic_double_core());
    for (int k : {2, 3})
        for (long pp : {1L, 3L, 5L, 9L, 11L, 13L})
            CHECK(blocks(p7, pp, 14, k) == blocks(p7, 1, 14, k));
}

TEST_CASE("jordan table groups orders") {
    auto cusp = corpus::build(corpus::cusp());
    auto table = jordan_table(cusp);
    bool found_q6 = false;
    for (const auto& row : table.rows) {
        if (row.q == 6 && row.k == 1) {
            found_q6 = true;
            CHECK(row.count == 1);
        }
        if (row.q == 1 && row.k == 1) CHECK(row.count == 0);
        if (row.k == 2) CHECK(row.count == 0);
    }
    CHECK(found_q6);
    CHECK(!table.unsupported_note.empty());
}

TEST_CASE("subtop counts match the interior series of internal edges") {
    // for every eigenvalue of order q >= 2, the subtop block count equals the
    // number of open-parallelepiped exponents on internal edges hitting the
    // eigenvalue's rotation class
    std::mt19937_64 rng(90210);
    std::vector<newton::NewtonPolyhedron> corpus_polys;
    for (const auto& text : corpus::golden_texts()) {
        auto p = corpus::build(text, true, true);
        if (p.cls.isolated) corpus_polys.push_back(std::move(p));
    }
    for (int i = 0; i < 15; ++i)
        corpus_polys.push_back(newton::build_polyhedron(corpus::random_convenient_support(rng)));

    for (const auto& p : corpus_polys) {
        if (p.n < 2) continue;
        auto tabs = spectrum::build_tables(p);
        auto sets = compact_face_sets(p);
        std::set<Int> orders;
        for (const auto& f : p.faces) {
            if (f.id == 0) continue;
            Int d = f.lattice_scale;
            for (Int q = 2; q <= d; ++q)
                if (d % q == 0) orders.insert(q);
        }
        for (const Int& q : orders) {
            for (Int pp = 1; pp < q; ++pp) {
                if (exactla::gcd(pp, q) != 1) continue;
                Rat beta(pp, q);
                Int expected = 0;
                for (int e : sets.internal_by_dim[1]) {
                    expected += tabs.face[e].interior.coeff(beta);
                    expected += tabs.face[e].interior.coeff(beta + 1);
                }
                CHECK(blocks(p, (long)pp, (long)q, p.n - 1) == expected);
            }
        }
    }
}

TEST_CASE("unipotent subtop count matches the weight extremes of the pairs") {
    auto check_against_pairs = [](const newton::NewtonPolyhedron& p) {
        auto tabs = spectrum::build_tables(p);
        auto pairs = spectrum::spectral_pairs(p, tabs);
        Int top = 0, bottom = 0;
        for (const auto& [key, c] : pairs.terms()) {
            if (!is_integer(key.first)) continue;
            if (key.second == p.n) top += c;
            if (key.second == p.n - 2) bottom += c;
        }
        CHECK(top == bottom);
        CHECK(blocks(p, 0, 1, p.n - 1) == top);
    };
    check_against_pairs(corpus::build("x^5+y^5+z^5+x*y*z"));
    check_against_pairs(corpus::build(corpus::fermat_plus_core(4)));
    check_against_pairs(corpus::build(corpus::cusp()));
    check_against_pairs(corpus::build(corpus::septic_double_core()));
}
