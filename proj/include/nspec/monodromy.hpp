#ifndef NSPEC_MONODROMY_HPP
#define NSPEC_MONODROMY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nspec/newton.hpp"

namespace nspec {
namespace monodromy {

// A root of unity exp(2*pi*i*p/q) stored as an exact rotation. Only the order
// q enters the block counts; the monodromy is defined over the rationals, so
// conjugate eigenvalues always count alike.
struct Eigenvalue {
    Int p, q;
};

inline Eigenvalue make_eigenvalue(Int p, Int q) {
    if (q < 1) fail(errc::internal, "eigenvalue order must be positive");
    p %= q;
    if (p < 0) p += q;
    if (exactla::gcd(p == 0 ? q : p, q) != 1 && !(p == 0 && q == 1))
        fail(errc::internal, "eigenvalue rotation must be reduced");
    return {p, q};
}

struct CFSets {
    std::vector<std::vector<int>> by_dim;       // face ids per dimension
    std::vector<std::vector<int>> internal_by_dim;
};

inline CFSets compact_face_sets(const newton::NewtonPolyhedron& p) {
    CFSets out;
    out.by_dim.resize((std::size_t)p.n);
    out.internal_by_dim.resize((std::size_t)p.n);
    for (const auto& f : p.faces) {
        if (f.id == 0) continue;
        out.by_dim[(std::size_t)f.dim].push_back(f.id);
        if (f.internal) out.internal_by_dim[(std::size_t)f.dim].push_back(f.id);
    }
    return out;
}

struct EdgeWeights {
    std::map<int, Int> segment_points; // edge id -> lattice points on the closed edge, minus one
    std::map<int, Int> star_count;     // vertex id -> internal edges through the vertex
};

inline EdgeWeights edge_weights(const newton::NewtonPolyhedron& p) {
    EdgeWeights w;
    auto sets = compact_face_sets(p);
    if (p.n >= 2)
        for (int e : sets.by_dim[1]) {
            const auto& f = p.faces[e];
            const IVec& a = p.vertices[f.vertex_ids[0]];
            const IVec& b = p.vertices[f.vertex_ids[1]];
            IVec d((std::size_t)p.n);
            for (int j = 0; j < p.n; ++j) d[j] = b[j] - a[j];
            w.segment_points[e] = exactla::gcd_vec(d);
        }
    for (int v : sets.by_dim[0]) {
        Int beta = 0;
        if (p.n >= 2)
            for (int e : sets.internal_by_dim[1])
                if (p.face_leq(v, e)) ++beta;
        w.star_count[v] = beta;
    }
    return w;
}

namespace detail {

// All lattice points on a closed edge, walking the primitive direction.
inline std::vector<IVec> edge_lattice_points(const newton::NewtonPolyhedron& p, int edge_id) {
    const auto& f = p.faces[edge_id];
    const IVec& a = p.vertices[f.vertex_ids[0]];
    const IVec& b = p.vertices[f.vertex_ids[1]];
    IVec d((std::size_t)p.n);
    for (int j = 0; j < p.n; ++j) d[j] = b[j] - a[j];
    Int g = exactla::gcd_vec(d);
    std::vector<IVec> out;
    for (Int t = 0; t <= g; ++t) {
        IVec pt((std::size_t)p.n);
        for (int j = 0; j < p.n; ++j) pt[j] = a[j] + t * d[j] / g;
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace detail

// Number of strictly positive lattice points on the union of internal edges;
// shared endpoints are counted once.
inline Int unipotent_subtop_count(const newton::NewtonPolyhedron& p) {
    if (p.n < 2) return 0;
    auto sets = compact_face_sets(p);
    std::set<IVec> pts;
    for (int e : sets.internal_by_dim[1])
        for (IVec& pt : detail::edge_lattice_points(p, e)) {
            bool positive = std::all_of(pt.begin(), pt.end(), [](const Int& x) { return x > 0; });
            if (positive) pts.insert(std::move(pt));
        }
    return Int(pts.size());
}

// Jordan block count of the Milnor monodromy for the given eigenvalue and
// block size. Only the top two sizes have a polyhedral formula; anything else
// reports unsupported rather than zero.
inline std::optional<Int> jordan_blocks(const newton::NewtonPolyhedron& p, const Eigenvalue& ev,
                                        int k) {
    if (!p.cls.isolated)
        fail(errc::isolatedness_not_established,
             "jordan block counts need an isolated singularity; pass assume-isolated or use a "
             "convenient non-degenerate support");
    auto sets = compact_face_sets(p);
    auto w = edge_weights(p);
    bool unit = ev.q == 1;
    auto divides = [&](const Int& delta) { return delta % ev.q == 0; };

    if (unit && k == p.n) return Int(0);
    if (unit && k == p.n - 1) return unipotent_subtop_count(p);
    if (!unit && k == p.n) {
        Int c = 0;
        for (int v : sets.internal_by_dim[0])
            if (divides(p.faces[v].lattice_scale)) ++c;
        return c;
    }
    if (!unit && k == p.n - 1) {
        Int c = 0;
        if (p.n >= 2)
            for (int e : sets.internal_by_dim[1])
                if (divides(p.faces[e].lattice_scale)) c += w.segment_points[e];
        for (int v : sets.by_dim[0])
            if (divides(p.faces[v].lattice_scale)) c -= w.star_count[v];
        return c;
    }
    return std::nullopt;
}

struct JordanTable {
    struct Row {
        Int q; // eigenvalue order; order 1 is the unipotent part
        int k;
        Int count;
    };
    std::vector<Row> rows;
    std::string unsupported_note;
};

inline JordanTable jordan_table(const newton::NewtonPolyhedron& p) {
    JordanTable table;
    std::set<Int> orders{Int(1)};
    for (const auto& f : p.faces) {
        if (f.id == 0) continue;
        Int d = f.lattice_scale;
        for (Int q = 1; q * q <= d; ++q)
            if (d % q == 0) {
                orders.insert(q);
                orders.insert(d / q);
            }
    }
    for (const Int& q : orders) {
        Eigenvalue ev = make_eigenvalue(q == 1 ? Int(0) : Int(1), q);
        for (int k : {p.n, p.n - 1}) {
            if (k < 1) continue;
            auto c = jordan_blocks(p, ev, k);
            table.rows.push_back({q, k, *c});
        }
    }
    table.unsupported_note =
        "block sizes below n-1 carry no polyhedral formula and are not reported";
    return table;
}

} // namespace monodromy
} // namespace nspec

#endif
