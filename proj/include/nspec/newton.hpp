#ifndef NSPEC_NEWTON_HPP
#define NSPEC_NEWTON_HPP

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nspec/polyhedra.hpp"
#include "nspec/puiseux.hpp"

namespace nspec {
namespace newton {

struct MonomialSupport {
    int n = 0;
    std::vector<std::pair<IVec, Rat>> monomials; // exponent vector -> coefficient, lex sorted
    bool assume_nondegenerate = true;
    bool assume_isolated = false;
};

// Normalizes raw monomial data: merges duplicate exponents, drops zero
// coefficients, rejects a constant term and the zero polynomial.
inline MonomialSupport make_support(int n, std::vector<std::pair<IVec, Rat>> monos,
                                    bool assume_nondegenerate = true, bool assume_isolated = false) {
    if (n < 1) fail(errc::syntax_error, "dimension must be >= 1");
    std::map<IVec, Rat> merged;
    for (auto& [e, c] : monos) {
        if ((int)e.size() != n) fail(errc::dimension_mismatch, "exponent vector length != n");
        for (const Int& x : e)
            if (x < 0) fail(errc::syntax_error, "negative exponent");
        merged[e] += c;
    }
    MonomialSupport s;
    s.n = n;
    s.assume_nondegenerate = assume_nondegenerate;
    s.assume_isolated = assume_isolated;
    for (auto& [e, c] : merged) {
        if (c == 0) continue;
        bool zero = std::all_of(e.begin(), e.end(), [](const Int& x) { return x == 0; });
        if (zero) fail(errc::constant_term_present, "constant term present: f(0) != 0");
        s.monomials.emplace_back(e, c);
    }
    if (s.monomials.empty()) fail(errc::zero_polynomial, "zero polynomial");
    return s;
}

namespace detail {

struct Token {
    enum Kind { number, name, caret, star, plus, minus, end } kind;
    std::string text;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (std::isspace((unsigned char)ch)) { ++i; continue; }
        if (std::isdigit((unsigned char)ch)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            if (j < s.size() && s[j] == '/') {
                std::size_t k = j + 1;
                while (k < s.size() && std::isdigit((unsigned char)s[k])) ++k;
                if (k == j + 1) fail(errc::syntax_error, "expected digits after '/'");
                out.push_back({Token::number, s.substr(i, k - i)});
                i = k;
            } else {
                out.push_back({Token::number, s.substr(i, j - i)});
                i = j;
            }
            continue;
        }
        if (std::isalpha((unsigned char)ch)) {
            std::size_t j = i + 1;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            out.push_back({Token::name, s.substr(i, j - i)});
            i = j;
            continue;
        }
        switch (ch) {
            case '^': out.push_back({Token::caret, "^"}); break;
            case '*': out.push_back({Token::star, "*"}); break;
            case '+': out.push_back({Token::plus, "+"}); break;
            case '-': out.push_back({Token::minus, "-"}); break;
            default: fail(errc::syntax_error, std::string("unexpected character '") + ch + "'");
        }
        ++i;
    }
    out.push_back({Token::end, ""});
    return out;
}

} // namespace detail

// Grammar: terms joined by +/-; term = [rational '*']? var('^'exp)? ('*' var('^'exp)?)*
// or a bare rational (which is then rejected as a constant term). Variables are
// x,y,z,w (n <= 4) or x1..xN; the two styles cannot be mixed.
inline MonomialSupport parse_polynomial(const std::string& text, bool assume_nondegenerate = true,
                                        bool assume_isolated = false) {
    using detail::Token;
    auto toks = detail::tokenize(text);
    std::size_t pos = 0;

    bool saw_letter_style = false, saw_indexed_style = false;
    int max_index = 0;
    struct RawTerm {
        Rat coeff;
        std::vector<std::pair<int, Int>> powers; // variable index (1-based) -> exponent
    };
    std::vector<RawTerm> raw;

    auto var_index = [&](const std::string& name) -> int {
        if (name.size() == 1) {
            switch (name[0]) {
                case 'x': saw_letter_style = true; return 1;
                case 'y': saw_letter_style = true; return 2;
                case 'z': saw_letter_style = true; return 3;
                case 'w': saw_letter_style = true; return 4;
                default: fail(errc::syntax_error, "unknown variable '" + name + "'");
            }
        }
        if (name[0] != 'x') fail(errc::syntax_error, "unknown variable '" + name + "'");
        saw_indexed_style = true;
        int idx = 0;
        for (std::size_t i = 1; i < name.size(); ++i) idx = idx * 10 + (name[i] - '0');
        if (idx < 1) fail(errc::syntax_error, "variable index must be >= 1");
        return idx;
    };

    bool negate = false;
    if (toks[pos].kind == Token::plus) ++pos;
    else if (toks[pos].kind == Token::minus) { negate = true; ++pos; }

    for (;;) {
        RawTerm term;
        term.coeff = negate ? Rat(-1) : Rat(1);
        bool saw_factor = false, coeff_seen = false;
        for (;;) {
            const Token& t = toks[pos];
            if (t.kind == Token::number) {
                if (saw_factor) fail(errc::syntax_error, "coefficient must lead its term");
                term.coeff *= puiseux::parse_rat(t.text);
                coeff_seen = true;
                saw_factor = true;
                ++pos;
            } else if (t.kind == Token::name) {
                int idx = var_index(t.text);
                max_index = std::max(max_index, idx);
                ++pos;
                Int e = 1;
                if (toks[pos].kind == Token::caret) {
                    ++pos;
                    if (toks[pos].kind != Token::number || toks[pos].text.find('/') != std::string::npos)
                        fail(errc::syntax_error, "exponent must be a positive integer");
                    e = Int(toks[pos].text);
                    if (e < 1) fail(errc::syntax_error, "exponent must be a positive integer");
                    ++pos;
                }
                term.powers.emplace_back(idx, e);
                saw_factor = true;
            } else {
                fail(errc::syntax_error, "expected a factor");
            }
            if (toks[pos].kind == Token::star) { ++pos; continue; }
            break;
        }
        if (!saw_factor) fail(errc::syntax_error, "empty term");
        if (term.powers.empty() && coeff_seen)
            fail(errc::constant_term_present, "constant term present: f(0) != 0");
        raw.push_back(std::move(term));

        if (toks[pos].kind == Token::end) break;
        if (toks[pos].kind == Token::plus) { negate = false; ++pos; }
        else if (toks[pos].kind == Token::minus) { negate = true; ++pos; }
        else fail(errc::syntax_error, "expected '+' or '-' between terms");
    }

    if (saw_letter_style && saw_indexed_style)
        fail(errc::syntax_error, "cannot mix x,y,z,w and x1..xN variable styles");
    int n = std::max(max_index, 1);

    std::vector<std::pair<IVec, Rat>> monos;
    for (const RawTerm& t : raw) {
        IVec e(n, 0);
        for (const auto& [idx, p] : t.powers) e[idx - 1] += p;
        monos.emplace_back(std::move(e), t.coeff);
    }
    return make_support(n, std::move(monos), assume_nondegenerate, assume_isolated);
}

// A compact face of the Newton polyhedron (id 0 is the bottom face).
struct Face {
    int id = 0;
    std::vector<int> vertex_ids; // sorted; empty for the bottom face
    int dim = -1;                // affine dimension; -1 for the bottom face
    int cone_dim = 0;            // dim + 1
    std::vector<int> supp;       // coordinates positive somewhere on the face
    int k = 0;                   // |J union supp|
    Int lattice_scale = 0;       // largest d with d*v in the affine span for integral v
    QVec grading_form;           // rational functional with value 1 on the face
    bool simplex = false;
    bool internal = false;
};

// Any face of the unbounded polyhedron, identified by vertex incidence plus
// recession directions; this is what the normal fan is built from.
struct HullFace {
    std::vector<int> vertex_ids; // sorted
    std::vector<int> recession;  // coordinates i whose axis ray lies in the face
    std::vector<int> facets;     // hrep rows whose facet contains the face
    int dim = 0;
    int compact_face = -1; // Face id when the face is compact
};

struct Classification {
    std::vector<int> jf; // coordinates dividing every monomial (0-based)
    bool convenient = false;
    bool simplicial = false;
    bool isolated = false;
    Rat diagonal_c = 0; // the c with (c,...,c) on the boundary
};

// The largest non-negative integer d such that d*v lies in the affine space
// base + span(dirs) for some integral v; 0 exactly when the space contains the
// origin. Computed through the quotient by the saturated direction lattice.
inline Int face_lattice_scale(const QVec& base, const std::vector<IVec>& dirs) {
    std::size_t n = base.size();
    exactla::IntMatrix m = exactla::IntMatrix::from_rows(dirs, n);
    std::vector<IVec> q = exactla::kernel_basis(m); // functionals vanishing on span(dirs)
    Int g = 0;
    for (const IVec& row : q) {
        Rat alpha = 0;
        for (std::size_t j = 0; j < n; ++j) alpha += base[j] * Rat(row[j]);
        if (!is_integer(alpha))
            fail(errc::no_lattice_scale, "affine space has no integral scale");
        Int a = rat_num(alpha);
        g = exactla::gcd(g, a);
    }
    return g;
}

class NewtonPolyhedron {
  public:
    MonomialSupport support;
    int n = 0;
    exactla::HRep hrep;
    std::vector<IVec> vertices;       // lex sorted
    std::vector<Face> faces;          // compact face lattice, faces[0] = bottom
    std::vector<HullFace> hull_faces; // every face of the polyhedron
    Classification cls;

    const Face& face(int id) const { return faces[id]; }

    // bottom <= everything; otherwise vertex-set containment
    bool face_leq(int a, int b) const {
        if (a == 0) return true;
        if (b == 0) return false;
        return std::includes(faces[b].vertex_ids.begin(), faces[b].vertex_ids.end(),
                             faces[a].vertex_ids.begin(), faces[a].vertex_ids.end());
    }

    std::vector<int> subfaces(int id) const { // includes bottom and id itself
        std::vector<int> out;
        for (const Face& f : faces)
            if (face_leq(f.id, id)) out.push_back(f.id);
        return out;
    }

    std::vector<int> superfaces(int id) const { // compact faces >= id, including id
        std::vector<int> out;
        for (const Face& f : faces)
            if (f.id != 0 && face_leq(id, f.id)) out.push_back(f.id);
        return out;
    }
};

namespace detail {

struct ClosedSet {
    std::vector<int> verts, rec, facets;
};

inline ClosedSet close_facet_set(const std::vector<std::vector<int>>& facet_verts,
                                 const std::vector<IVec>& normals, std::size_t nverts,
                                 std::size_t n, std::vector<int> K) {
    std::sort(K.begin(), K.end());
    for (;;) {
        std::vector<int> V;
        if (K.empty()) {
            for (std::size_t i = 0; i < nverts; ++i) V.push_back((int)i);
        } else {
            V = facet_verts[K[0]];
            for (std::size_t t = 1; t < K.size(); ++t) {
                std::vector<int> tmp;
                std::set_intersection(V.begin(), V.end(), facet_verts[K[t]].begin(),
                                      facet_verts[K[t]].end(), std::back_inserter(tmp));
                V = std::move(tmp);
            }
        }
        std::vector<int> R;
        for (std::size_t i = 0; i < n; ++i) {
            bool all_zero = true;
            for (int k : K)
                if (normals[k][i] != 0) { all_zero = false; break; }
            if (all_zero) R.push_back((int)i);
        }
        std::vector<int> K2;
        for (std::size_t k = 0; k < facet_verts.size(); ++k) {
            if (!std::includes(facet_verts[k].begin(), facet_verts[k].end(), V.begin(), V.end()))
                continue;
            bool rec_ok = true;
            for (int i : R)
                if (normals[k][i] != 0) { rec_ok = false; break; }
            if (rec_ok) K2.push_back((int)k);
        }
        if (K2 == K) return {V, R, K};
        K = std::move(K2);
    }
}

} // namespace detail

// Builds the Newton polyhedron conv(support) + R^n_{>=0}, its full face poset
// and the compact-face lattice with all per-face invariants.
inline NewtonPolyhedron build_polyhedron(const MonomialSupport& s) {
    NewtonPolyhedron p;
    p.support = s;
    p.n = s.n;
    std::size_t n = (std::size_t)s.n;

    std::vector<IVec> points;
    for (const auto& [e, c] : s.monomials) points.push_back(e);
    std::vector<IVec> orthant;
    for (std::size_t i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        orthant.push_back(e);
    }
    p.hrep = exactla::double_description(points, orthant);
    std::size_t m = p.hrep.ineqs.size();

    // vertices: support points where the tight facet normals have full rank
    for (const IVec& pt : points) {
        std::vector<IVec> tight;
        for (const auto& iq : p.hrep.ineqs)
            if (exactla::dot(iq.normal, pt) == iq.offset) tight.push_back(iq.normal);
        if (exactla::rank_rows(tight, n) == n) p.vertices.push_back(pt);
    }
    std::sort(p.vertices.begin(), p.vertices.end(), exactla::lex_less);
    p.vertices.erase(std::unique(p.vertices.begin(), p.vertices.end()), p.vertices.end());

    std::vector<std::vector<int>> facet_verts(m);
    std::vector<IVec> normals(m);
    for (std::size_t k = 0; k < m; ++k) {
        normals[k] = p.hrep.ineqs[k].normal;
        for (std::size_t i = 0; i < p.vertices.size(); ++i)
            if (exactla::dot(normals[k], p.vertices[i]) == p.hrep.ineqs[k].offset)
                facet_verts[k].push_back((int)i);
    }

    // face poset: closure system generated by the facets under intersection
    std::map<std::vector<int>, detail::ClosedSet> found; // keyed by facet set
    std::vector<std::vector<int>> queue;
    auto add = [&](std::vector<int> K) {
        auto cs = detail::close_facet_set(facet_verts, normals, p.vertices.size(), n, std::move(K));
        if (cs.verts.empty()) return; // empty intersection, not a face
        if (found.emplace(cs.facets, cs).second) queue.push_back(cs.facets);
    };
    add({});
    for (std::size_t k = 0; k < m; ++k) add({(int)k});
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::vector<int> base = queue[qi];
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<int> K = base;
            if (std::find(K.begin(), K.end(), (int)k) != K.end()) continue;
            K.push_back((int)k);
            add(std::move(K));
        }
    }

    auto face_dim = [&](const std::vector<int>& verts, const std::vector<int>& rec) {
        std::vector<IVec> dirs;
        const IVec& v0 = p.vertices[verts[0]];
        for (std::size_t t = 1; t < verts.size(); ++t) {
            IVec d(n);
            for (std::size_t j = 0; j < n; ++j) d[j] = p.vertices[verts[t]][j] - v0[j];
            dirs.push_back(std::move(d));
        }
        for (int i : rec) {
            IVec d(n, 0);
            d[i] = 1;
            dirs.push_back(std::move(d));
        }
        return (int)exactla::rank_rows(dirs, n);
    };

    for (auto& [K, cs] : found) {
        HullFace hf;
        hf.vertex_ids = cs.verts;
        hf.recession = cs.rec;
        hf.facets = cs.facets;
        hf.dim = face_dim(cs.verts, cs.rec);
        p.hull_faces.push_back(std::move(hf));
    }
    std::sort(p.hull_faces.begin(), p.hull_faces.end(), [](const HullFace& a, const HullFace& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.vertex_ids != b.vertex_ids) return a.vertex_ids < b.vertex_ids;
        return a.recession < b.recession;
    });

    // classification pieces needed by per-face invariants
    std::vector<int> jf;
    for (std::size_t i = 0; i < n; ++i) {
        bool divides_all = true;
        for (const auto& [e, c] : s.monomials)
            if (e[i] == 0) { divides_all = false; break; }
        if (divides_all) jf.push_back((int)i);
    }

    // compact faces: empty recession cone
    Face bottom;
    bottom.id = 0;
    bottom.dim = -1;
    bottom.cone_dim = 0;
    bottom.k = 0;
    p.faces.push_back(bottom);
    for (HullFace& hf : p.hull_faces) {
        if (!hf.recession.empty()) continue;
        Face f;
        f.vertex_ids = hf.vertex_ids;
        f.dim = hf.dim;
        f.cone_dim = f.dim + 1;
        std::set<int> supp;
        for (int vi : f.vertex_ids)
            for (std::size_t j = 0; j < n; ++j)
                if (p.vertices[vi][j] > 0) supp.insert((int)j);
        f.supp.assign(supp.begin(), supp.end());
        std::set<int> ksup(supp.begin(), supp.end());
        for (int j : jf) ksup.insert(j);
        f.k = (int)ksup.size();
        f.simplex = (int)f.vertex_ids.size() == f.dim + 1;
        f.internal = (int)f.supp.size() == (int)n;

        const IVec& v0 = p.vertices[f.vertex_ids[0]];
        QVec base(n);
        for (std::size_t j = 0; j < n; ++j) base[j] = Rat(v0[j]);
        std::vector<IVec> dirs;
        for (std::size_t t = 1; t < f.vertex_ids.size(); ++t) {
            IVec d(n);
            for (std::size_t j = 0; j < n; ++j) d[j] = p.vertices[f.vertex_ids[t]][j] - v0[j];
            dirs.push_back(std::move(d));
        }
        f.lattice_scale = face_lattice_scale(base, dirs);
        if (f.lattice_scale < 1)
            fail(errc::internal, "compact face with lattice scale 0");

        std::vector<QVec> sys;
        QVec rhs;
        for (int vi : f.vertex_ids) {
            QVec row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = Rat(p.vertices[vi][j]);
            sys.push_back(std::move(row));
            rhs.push_back(Rat(1));
        }
        auto w = exactla::solve(sys, rhs);
        if (!w) fail(errc::internal, "no grading form; face affine span meets the origin");
        f.grading_form = *w;

        f.id = (int)p.faces.size();
        hf.compact_face = f.id;
        p.faces.push_back(std::move(f));
    }

    // classification
    p.cls.jf = jf;
    p.cls.convenient = true;
    for (std::size_t i = 0; i < n && p.cls.convenient; ++i) {
        bool axis = false;
        for (const auto& [e, c] : s.monomials) {
            bool pure = e[i] > 0;
            for (std::size_t j = 0; j < n && pure; ++j)
                if (j != i && e[j] != 0) pure = false;
            if (pure) { axis = true; break; }
        }
        p.cls.convenient = axis;
    }
    p.cls.simplicial = true;
    for (const Face& f : p.faces)
        if (f.id != 0 && !f.simplex) p.cls.simplicial = false;
    Rat c = 0;
    for (const auto& iq : p.hrep.ineqs) {
        if (iq.offset <= 0) continue;
        Int s1 = 0;
        for (const Int& x : iq.normal) s1 += x;
        Rat cand = Rat(iq.offset) / Rat(s1);
        if (cand > c) c = cand;
    }
    p.cls.diagonal_c = c;
    p.cls.isolated = s.assume_isolated || (p.cls.convenient && s.assume_nondegenerate);
    return p;
}

struct Summary {
    std::vector<int> jf;
    bool convenient, simplicial, isolated;
    Rat c;
};

inline Summary classify(const NewtonPolyhedron& p) {
    return {p.cls.jf, p.cls.convenient, p.cls.simplicial, p.cls.isolated, p.cls.diagonal_c};
}

// max { r : u in r * polyhedron }, as min over facets with positive offset.
inline Rat newton_degree(const NewtonPolyhedron& p, const IVec& u) {
    if ((int)u.size() != p.n) fail(errc::dimension_mismatch, "newton_degree: bad vector length");
    if (std::all_of(u.begin(), u.end(), [](const Int& x) { return x == 0; }))
        fail(errc::infinite_degree, "degree of the origin is infinite");
    bool have = false;
    Rat best = 0;
    for (const auto& iq : p.hrep.ineqs) {
        if (iq.offset <= 0) continue;
        Rat v = Rat(exactla::dot(iq.normal, u)) / Rat(iq.offset);
        if (!have || v < best) { best = v; have = true; }
    }
    if (!have) fail(errc::internal, "newton_degree: no positive facet");
    return best;
}

// Pulling triangulation of a compact face, recursing through the stored face
// lattice: the apex of each face is its priority-minimal vertex. Returns
// simplices as vertex-id lists of size dim+1.
inline std::vector<std::vector<int>> triangulate_face(
    const NewtonPolyhedron& p, int face_id,
    const std::function<bool(const IVec&, const IVec&)>& before = exactla::lex_less) {
    const Face& f = p.faces[face_id];
    if (f.id == 0) return {};
    if (f.simplex) return {f.vertex_ids};
    int apex = f.vertex_ids[0];
    for (int vi : f.vertex_ids)
        if (before(p.vertices[vi], p.vertices[apex])) apex = vi;
    std::vector<std::vector<int>> out;
    for (const Face& sub : p.faces) {
        if (sub.id == 0 || sub.dim != f.dim - 1 || !p.face_leq(sub.id, f.id)) continue;
        if (std::binary_search(sub.vertex_ids.begin(), sub.vertex_ids.end(), apex)) continue;
        for (auto simplex : triangulate_face(p, sub.id, before)) {
            simplex.push_back(apex);
            std::sort(simplex.begin(), simplex.end());
            out.push_back(std::move(simplex));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline Int det_bareiss(exactla::IntMatrix m) {
    std::size_t n = m.rows;
    if (n != m.cols) fail(errc::internal, "det: not square");
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && m.at(s, k) == 0) ++s;
            if (s == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

} // namespace detail

// Deterministic sample of a convenient support: a pure power on every axis
// plus a few extra monomials. Used by the randomized cross-check commands and
// the property suites; spectra depend only on the polyhedron, so coefficients
// stay 1.
template <class Rng>
MonomialSupport sample_convenient_support(Rng& rng, int max_n = 3, int max_exp = 7) {
    std::uniform_int_distribution<int> ndist(2, max_n);
    int n = ndist(rng);
    std::uniform_int_distribution<int> axis(2, max_exp), extra_count(1, 3), coord(0, max_exp);
    std::vector<std::pair<IVec, Rat>> monos;
    for (int i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = axis(rng);
        monos.emplace_back(std::move(e), Rat(1));
    }
    int extras = extra_count(rng);
    for (int t = 0; t < extras; ++t) {
        IVec e(n);
        bool zero = true;
        for (int j = 0; j < n; ++j) {
            e[j] = coord(rng) / 2; // bias small
            if (e[j] != 0) zero = false;
        }
        if (zero) continue;
        monos.emplace_back(std::move(e), Rat(1));
    }
    return make_support(n, std::move(monos));
}

// Alternating sum over coordinate subspaces of factorial-normalized volumes
// under the Newton boundary; equals the Milnor number for convenient
// non-degenerate input. Volumes come from pyramids over pulling triangulations
// of the top-dimensional compact faces of each restriction.
inline Int newton_number(const NewtonPolyhedron& p) {
    if (!p.cls.convenient) fail(errc::not_convenient, "newton_number requires a convenient support");
    std::size_t n = (std::size_t)p.n;
    Int total = (p.n % 2 == 0) ? 1 : -1; // term for the empty coordinate set
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        std::size_t m = idx.size();

        std::vector<std::pair<IVec, Rat>> monos;
        for (const auto& [e, c] : p.support.monomials) {
            bool inside = true;
            for (std::size_t i = 0; i < n && inside; ++i)
                if (e[i] != 0 && !(mask & (1u << i))) inside = false;
            if (!inside) continue;
            IVec r(m);
            for (std::size_t t = 0; t < m; ++t) r[t] = e[idx[t]];
            monos.emplace_back(std::move(r), c);
        }
        NewtonPolyhedron sub = build_polyhedron(make_support((int)m, std::move(monos)));

        Int scaled_vol = 0; // m! * Vol_m of the region under the boundary
        for (const Face& f : sub.faces) {
            if (f.dim != (int)m - 1) continue;
            for (const auto& simplex : triangulate_face(sub, f.id)) {
                exactla::IntMatrix mat((std::size_t)m, (std::size_t)m);
                for (std::size_t r = 0; r < m; ++r)
                    for (std::size_t c2 = 0; c2 < m; ++c2)
                        mat.at(r, c2) = sub.vertices[simplex[r]][c2];
                Int d = detail::det_bareiss(mat);
                if (d < 0) d = -d;
                scaled_vol += d;
            }
        }
        total += ((n - m) % 2 == 0) ? scaled_vol : -scaled_vol;
    }
    return total;
}

} // namespace newton
} // namespace nspec

#endif
