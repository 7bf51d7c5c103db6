#ifndef NSPEC_SPECTRUM_HPP
#define NSPEC_SPECTRUM_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nspec/newton.hpp"
#include "nspec/parallel.hpp"
#include "nspec/puiseux.hpp"

namespace nspec {
namespace spectrum {

using puiseux::FracPoly;
using puiseux::FracPoly2;

// Per-face series data:
//   hilbert  - numerator of the Hilbert series of the face's cone semigroup,
//              graded so the face sits in degree 1 (the half-open box sum)
//   interior - generating polynomial of the lattice points in the open
//              parallelepiped on the face's vertices
//   comb     - the combinatorial polynomial, an alternating (t-1)-power sum
//              over the faces above this one
struct FaceSeries {
    FracPoly hilbert, interior, comb;
};

struct Tables {
    std::vector<FaceSeries> face; // indexed by face id; id 0 is the bottom face
};

using VertexOrder = std::function<bool(const IVec&, const IVec&)>;

namespace detail {

struct HalfOpenCone {
    std::vector<IVec> gens;          // cone generators (face vertices of one simplex)
    std::vector<QVec> barycentric;   // dual functionals
    std::vector<bool> open_facet;    // facet j excluded iff true
};

// Half-open decomposition of the cone over a face along a pulling
// triangulation: a facet of a simplicial piece is excluded exactly when a
// fixed generic interior point of the first piece lies on its negative side.
// The reference point is the first barycenter nudged by a power tail 1/D^i;
// the denominator doubles until the point is generic and interior.
inline std::vector<HalfOpenCone> half_open_cover(const newton::NewtonPolyhedron& p, int face_id,
                                                 const VertexOrder& before) {
    std::vector<std::vector<int>> simplices = newton::triangulate_face(p, face_id, before);
    std::size_t n = (std::size_t)p.n;
    std::vector<HalfOpenCone> cones;
    for (const auto& s : simplices) {
        HalfOpenCone c;
        for (int vi : s) c.gens.push_back(p.vertices[vi]);
        c.barycentric = exactla::dual_functionals(c.gens);
        c.open_facet.assign(c.gens.size(), false);
        cones.push_back(std::move(c));
    }
    if (cones.size() <= 1) return cones;

    std::size_t d = cones[0].gens.size();
    QVec bary(n, Rat(0));
    for (const IVec& g : cones[0].gens)
        for (std::size_t j = 0; j < n; ++j) bary[j] += Rat(g[j], (long)d);

    Int D = 64;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 64) fail(errc::internal, "half_open_cover: no generic reference point");
        QVec tail(n);
        Rat f(1, D);
        for (std::size_t j = 0; j < n; ++j) {
            tail[j] = f;
            f /= Rat(D);
        }
        // project the tail into the span of the first cone
        QVec z = bary;
        bool interior = true;
        for (std::size_t j = 0; j < d; ++j) {
            Rat cj = exactla::dotqq(cones[0].barycentric[j], tail);
            for (std::size_t t = 0; t < n; ++t) z[t] += cj * Rat(cones[0].gens[j][t]);
            if (Rat(1, (long)d) + cj <= 0) interior = false;
        }
        bool generic = true;
        for (const HalfOpenCone& c : cones)
            for (const QVec& g : c.barycentric)
                if (exactla::dotqq(g, z) == 0) generic = false;
        if (!interior || !generic) {
            D *= 2;
            continue;
        }
        for (HalfOpenCone& c : cones)
            for (std::size_t j = 0; j < c.barycentric.size(); ++j)
                c.open_facet[j] = exactla::dotqq(c.barycentric[j], z) < 0;
        return cones;
    }
}

// Lattice points of the fundamental domain of a half-open simplicial cone:
// coordinates in [0,1) on closed facets and (0,1] on open ones.
inline std::vector<IVec> fundamental_points(const HalfOpenCone& c, std::size_t n) {
    std::vector<exactla::Constraint> cs;
    for (std::size_t j = 0; j < c.gens.size(); ++j) {
        const QVec& g = c.barycentric[j];
        QVec neg(n);
        for (std::size_t t = 0; t < n; ++t) neg[t] = -g[t];
        if (c.open_facet[j]) {
            cs.push_back({g, Rat(0), true});
            cs.push_back({neg, Rat(-1), false});
        } else {
            cs.push_back({g, Rat(0), false});
            cs.push_back({neg, Rat(-1), true});
        }
    }
    auto kernel = exactla::kernel_basis(exactla::IntMatrix::from_rows(c.gens, n));
    for (const IVec& k : kernel) {
        QVec a(n), na(n);
        for (std::size_t t = 0; t < n; ++t) {
            a[t] = Rat(k[t]);
            na[t] = -Rat(k[t]);
        }
        cs.push_back({a, Rat(0), false});
        cs.push_back({na, Rat(0), false});
    }
    return exactla::lattice_points(cs);
}

inline FracPoly pow_t_minus_1(int e) {
    FracPoly base = FracPoly::monomial(Rat(1), Int(1)) - FracPoly::one();
    return puiseux::pow(base, (unsigned)e);
}

inline FracPoly pow_1_minus_t(int e) {
    FracPoly base = FracPoly::one() - FracPoly::monomial(Rat(1), Int(1));
    return puiseux::pow(base, (unsigned)e);
}

} // namespace detail

// Numerator of the Hilbert series of the cone semigroup of a face: the sum of
// t^(grading) over the fundamental domains of a half-open simplicial cover.
inline FracPoly hilbert_numerator(const newton::NewtonPolyhedron& p, int face_id,
                                  const VertexOrder& before = exactla::lex_less) {
    if (face_id == 0) return FracPoly::one();
    const newton::Face& f = p.faces[face_id];
    FracPoly total;
    for (const auto& cone : detail::half_open_cover(p, face_id, before))
        for (const IVec& pt : detail::fundamental_points(cone, (std::size_t)p.n))
            total.add_term(exactla::dotq(f.grading_form, pt), Int(1));
    return total;
}

// Open-parallelepiped generating polynomial, defined by alternating the
// hilbert numerators over the subface lattice. For simplex faces this equals
// the direct open-box count, and that equality is enforced.
inline FracPoly interior_numerator(const newton::NewtonPolyhedron& p, int face_id,
                                   const std::vector<FracPoly>& hilbert_by_face) {
    const newton::Face& f = p.faces[face_id];
    FracPoly total;
    for (int sub : p.subfaces(face_id)) {
        int diff = f.cone_dim - p.faces[sub].cone_dim;
        FracPoly term = hilbert_by_face[sub];
        total += (diff % 2 == 0) ? term : -term;
    }
    if (face_id != 0 && f.simplex) {
        std::vector<IVec> gens;
        for (int vi : f.vertex_ids) gens.push_back(p.vertices[vi]);
        detail::HalfOpenCone c;
        c.gens = gens;
        c.barycentric = exactla::dual_functionals(gens);
        std::size_t n = (std::size_t)p.n;
        std::vector<exactla::Constraint> cs;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            QVec neg(n);
            for (std::size_t t = 0; t < n; ++t) neg[t] = -c.barycentric[j][t];
            cs.push_back({c.barycentric[j], Rat(0), true});
            cs.push_back({neg, Rat(-1), true});
        }
        for (const IVec& k : exactla::kernel_basis(exactla::IntMatrix::from_rows(gens, n))) {
            QVec a(n), na(n);
            for (std::size_t t = 0; t < n; ++t) {
                a[t] = Rat(k[t]);
                na[t] = -Rat(k[t]);
            }
            cs.push_back({a, Rat(0), false});
            cs.push_back({na, Rat(0), false});
        }
        FracPoly direct;
        for (const IVec& pt : exactla::lattice_points(cs))
            direct.add_term(exactla::dotq(f.grading_form, pt), Int(1));
        if (!(direct == total))
            fail(errc::internal, "open-box count disagrees with the alternating sum");
    }
    return total;
}

// Alternating (t-1)-power sum over the compact faces above the given one;
// the bottom face additionally collects its own term.
inline FracPoly combinatorial_poly(const newton::NewtonPolyhedron& p, int face_id) {
    FracPoly total;
    auto add_term = [&](const newton::Face& f) {
        FracPoly term = detail::pow_t_minus_1(f.k - f.cone_dim);
        total += ((p.n - f.k) % 2 == 0) ? term : -term;
    };
    if (face_id == 0)
        for (const newton::Face& f : p.faces) add_term(f);
    else
        for (int sup : p.superfaces(face_id)) add_term(p.faces[sup]);
    return total;
}

inline Tables build_tables(const newton::NewtonPolyhedron& p,
                           const VertexOrder& before = exactla::lex_less) {
    Tables t;
    t.face.resize(p.faces.size());
    std::vector<FracPoly> hilbert(p.faces.size());
    parallel_for(p.faces.size(),
                 [&](std::size_t i) { hilbert[i] = hilbert_numerator(p, (int)i, before); });
    parallel_for(p.faces.size(), [&](std::size_t i) {
        t.face[i].hilbert = hilbert[i];
        t.face[i].interior = interior_numerator(p, (int)i, hilbert);
        t.face[i].comb = combinatorial_poly(p, (int)i);
    });
    return t;
}

enum class validity { convenient_nondegenerate, simplicial_isolated, formal_only };

inline const char* validity_name(validity v) {
    switch (v) {
        case validity::convenient_nondegenerate: return "ConvenientNondegenerate";
        case validity::simplicial_isolated: return "SimplicialIsolated";
        case validity::formal_only: return "FormalOnly";
    }
    return "?";
}

struct SpectrumReport {
    FracPoly hodge;      // exponents in (0, n)
    FracPoly steenbrink; // the dual at n
    Int mu = 0;
    validity trust = validity::formal_only;
};

// The spectrum as an alternating sum of twisted hilbert numerators over all
// compact faces including the bottom one.
inline SpectrumReport hodge_spectrum(const newton::NewtonPolyhedron& p, const Tables& t) {
    SpectrumReport rep;
    for (const newton::Face& f : p.faces) {
        FracPoly term = detail::pow_1_minus_t(f.k - f.cone_dim) * t.face[f.id].hilbert;
        rep.hodge += ((p.n - f.cone_dim) % 2 == 0) ? term : -term;
    }
    rep.steenbrink = rep.hodge.dual(Rat(p.n));
    rep.mu = rep.hodge.evaluate_at_one();
    if (p.cls.convenient && p.support.assume_nondegenerate)
        rep.trust = validity::convenient_nondegenerate;
    else if (p.cls.simplicial && p.cls.isolated)
        rep.trust = validity::simplicial_isolated;
    else
        rep.trust = validity::formal_only;
    return rep;
}

inline SpectrumReport hodge_spectrum(const newton::NewtonPolyhedron& p) {
    return hodge_spectrum(p, build_tables(p));
}

// Generating function of the spectral pairs: sum of comb(t u^2) u^dim interior(t)
// over all faces, the bottom face contributing with dimension -1. Requires a
// simplicial polyhedron and an established isolated singularity.
inline FracPoly2 spectral_pairs(const newton::NewtonPolyhedron& p, const Tables& t) {
    if (!p.cls.simplicial)
        fail(errc::not_simplicial,
             "spectral pairs need every compact face to be a simplex; a quadrilateral face "
             "breaks the formula (e.g. x^2+y^2+x*z+y*z+z^4)");
    if (!p.cls.isolated)
        fail(errc::isolatedness_not_established,
             "spectral pairs are defined for isolated singularities; pass assume-isolated or "
             "use a convenient non-degenerate support");
    FracPoly2 out;
    for (const newton::Face& f : p.faces)
        out += puiseux::substitute_pairs(t.face[f.id].comb, Int(f.dim), t.face[f.id].interior);
    if (out.total_mass() != hodge_spectrum(p, t).mu)
        fail(errc::internal, "spectral pair mass diverges from the spectrum mass");
    return out;
}

inline FracPoly2 spectral_pairs(const newton::NewtonPolyhedron& p) {
    return spectral_pairs(p, build_tables(p));
}

struct BernsteinRoot {
    Rat root;
    bool reduced; // true when the stated root is for b(s)/(s+1)
};

// Maximal Bernstein-Sato root from the diagonal constant: -1/c when c > 1,
// otherwise minus the minimal Steenbrink exponent (the reduced polynomial).
inline BernsteinRoot bernstein_max_root(const newton::NewtonPolyhedron& p, const Tables& t) {
    if (!p.cls.simplicial)
        fail(errc::not_simplicial, "the maximal-root formula needs a simplicial polyhedron");
    if (p.cls.diagonal_c > 1) return {Rat(-1) / p.cls.diagonal_c, false};
    auto rep = hodge_spectrum(p, t);
    auto alpha1 = rep.steenbrink.min_exponent();
    if (!alpha1) fail(errc::internal, "empty spectrum");
    return {-*alpha1, true};
}

inline BernsteinRoot bernstein_max_root(const newton::NewtonPolyhedron& p) {
    return bernstein_max_root(p, build_tables(p));
}

// Independent oracle for sums of pure powers: the spectrum of x1^a1+...+xn^an
// is the sum of t^(k1/a1+...+kn/an) over interior integer boxes.
inline FracPoly bp_oracle(const std::vector<int>& a) {
    for (int ai : a)
        if (ai < 2) fail(errc::internal, "bp_oracle: exponents must be >= 2");
    FracPoly out;
    std::vector<int> k(a.size(), 1);
    for (;;) {
        Rat e = 0;
        for (std::size_t i = 0; i < a.size(); ++i) e += Rat(k[i], a[i]);
        out.add_term(e, Int(1));
        std::size_t i = a.size();
        for (;;) {
            if (i == 0) return out;
            --i;
            if (k[i] < a[i] - 1) {
                ++k[i];
                for (std::size_t j = i + 1; j < a.size(); ++j) k[j] = 1;
                break;
            }
            k[i] = 1;
        }
    }
}

struct IdentityReport {
    // present = applicable; value = holds exactly
    std::optional<bool> twisted_sum_vs_product; // I1
    std::optional<bool> moebius;                // I2
    std::optional<bool> comb_symmetry;          // I3 (convenient simplicial)
    std::optional<bool> spectrum_palindrome;    // I4 (isolated)
    std::optional<bool> interior_self_duality;  // I5 (per simplex face)
    std::optional<bool> pairs_involution;       // I6 (simplicial isolated)

    bool all_applicable_hold() const {
        for (const auto& o : {twisted_sum_vs_product, moebius, comb_symmetry,
                              spectrum_palindrome, interior_self_duality, pairs_involution})
            if (o && !*o) return false;
        return true;
    }
};

inline IdentityReport check_identities(const newton::NewtonPolyhedron& p, const Tables& t) {
    IdentityReport rep;

    FracPoly lhs, rhs;
    for (const newton::Face& f : p.faces) {
        FracPoly term = detail::pow_1_minus_t(f.k - f.cone_dim) * t.face[f.id].hilbert;
        lhs += ((p.n - f.cone_dim) % 2 == 0) ? term : -term;
        rhs += t.face[f.id].comb * t.face[f.id].interior;
    }
    rep.twisted_sum_vs_product = (lhs == rhs);

    bool moebius_ok = true;
    for (const newton::Face& f : p.faces) {
        FracPoly sum;
        for (int sub : p.subfaces(f.id)) sum += t.face[sub].interior;
        if (!(sum == t.face[f.id].hilbert)) moebius_ok = false;
    }
    rep.moebius = moebius_ok;

    if (p.cls.convenient && p.cls.simplicial) {
        bool ok = true;
        for (const newton::Face& f : p.faces) {
            const FracPoly& r = t.face[f.id].comb;
            if (!(r.dual(Rat(p.n - f.cone_dim)) == r)) ok = false;
        }
        rep.comb_symmetry = ok;
    }

    if (p.cls.isolated) {
        auto sp = hodge_spectrum(p, t);
        rep.spectrum_palindrome = (sp.hodge.dual(Rat(p.n)) == sp.hodge);
    }

    bool self_dual_ok = true;
    for (const newton::Face& f : p.faces) {
        if (f.id == 0 || !f.simplex) continue;
        const FracPoly& q = t.face[f.id].interior;
        if (!(q.dual(Rat(f.cone_dim)) == q)) self_dual_ok = false;
    }
    rep.interior_self_duality = self_dual_ok;

    if (p.cls.simplicial && p.cls.isolated) {
        FracPoly2 pairs = spectral_pairs(p, t);
        FracPoly2 mirrored;
        for (const auto& [key, c] : pairs.terms())
            mirrored.add_term(Rat(p.n) - key.first, Int(2 * p.n - 2) - key.second, c);
        rep.pairs_involution = (pairs == mirrored);
    }
    return rep;
}

inline IdentityReport check_identities(const newton::NewtonPolyhedron& p) {
    return check_identities(p, build_tables(p));
}

} // namespace spectrum
} // namespace nspec

#endif
