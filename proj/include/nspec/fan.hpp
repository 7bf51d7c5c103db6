#ifndef NSPEC_FAN_HPP
#define NSPEC_FAN_HPP

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "nspec/newton.hpp"

namespace nspec {
namespace fan {

struct Cone {
    std::vector<int> rays; // indices into Fan::rays, sorted; empty for the zero cone
    int dim = 0;

    bool operator==(const Cone& o) const { return rays == o.rays; }
};

struct Fan {
    int n = 0;
    std::vector<IVec> rays;  // primitive generators
    std::vector<Cone> cones; // closed under taking faces; cone 0 is the zero cone
    std::vector<int> parent; // refinement only: cone index -> cone index in the base fan

    const IVec& ray(int i) const { return rays[i]; }

    int cone_index(const std::vector<int>& rayset) const {
        for (std::size_t i = 0; i < cones.size(); ++i)
            if (cones[i].rays == rayset) return (int)i;
        return -1;
    }

    bool simplicial(int ci) const { return (int)cones[ci].rays.size() == cones[ci].dim; }

    std::vector<int> maximal_cones() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < cones.size(); ++i) {
            bool maximal = true;
            for (std::size_t j = 0; j < cones.size() && maximal; ++j) {
                if (i == j) continue;
                if (std::includes(cones[j].rays.begin(), cones[j].rays.end(),
                                  cones[i].rays.begin(), cones[i].rays.end()) &&
                    cones[j].rays.size() > cones[i].rays.size())
                    maximal = false;
            }
            if (maximal) out.push_back((int)i);
        }
        return out;
    }
};

// The normal fan plus the two-way association between compact faces and the
// cones dual to them.
struct NormalFan {
    Fan sigma;
    std::vector<int> cone_of_face; // compact face id -> cone index (bottom maps to -1)
    std::vector<int> face_of_cone; // cone index -> compact face id or -1
};

namespace detail {

inline int cone_dim(const Fan& f, const std::vector<int>& rayset) {
    std::vector<IVec> rows;
    for (int r : rayset) rows.push_back(f.rays[r]);
    return (int)exactla::rank_rows(rows, (std::size_t)f.n);
}

struct ConeHRep {
    std::vector<IVec> ineqs; // <a, x> >= 0
    std::vector<IVec> eqs;   // <a, x> == 0
};

inline ConeHRep cone_hrep(const Fan& f, int ci) {
    std::vector<IVec> gens;
    for (int r : f.cones[ci].rays) gens.push_back(f.rays[r]);
    auto dual = exactla::dual_rays(gens, (std::size_t)f.n);
    return {dual.rays, dual.lineality};
}

inline bool hrep_contains(const ConeHRep& h, const IVec& x) {
    for (const IVec& a : h.ineqs)
        if (exactla::dot(a, x) < 0) return false;
    for (const IVec& a : h.eqs)
        if (exactla::dot(a, x) != 0) return false;
    return true;
}

inline void sort_cones(Fan& f) {
    std::sort(f.cones.begin(), f.cones.end(), [](const Cone& a, const Cone& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.rays < b.rays;
    });
}

} // namespace detail

// Dual cones of all faces of the Newton polyhedron: the cone of a face is
// spanned by the normals of the facets containing it. Supported on the
// non-negative orthant.
inline NormalFan normal_fan(const newton::NewtonPolyhedron& p) {
    NormalFan nf;
    Fan& f = nf.sigma;
    f.n = p.n;
    for (const auto& iq : p.hrep.ineqs) f.rays.push_back(iq.normal);

    nf.cone_of_face.assign(p.faces.size(), -1);
    std::vector<std::pair<Cone, int>> built; // cone, compact face id
    for (const auto& hf : p.hull_faces) {
        Cone c;
        c.rays = hf.facets;
        std::sort(c.rays.begin(), c.rays.end());
        c.dim = detail::cone_dim(f, c.rays);
        if (c.dim + hf.dim != p.n) fail(errc::internal, "normal fan: dual dimension mismatch");
        built.emplace_back(std::move(c), hf.compact_face);
    }
    std::sort(built.begin(), built.end(), [](const auto& a, const auto& b) {
        if (a.first.dim != b.first.dim) return a.first.dim < b.first.dim;
        return a.first.rays < b.first.rays;
    });
    nf.face_of_cone.clear();
    for (auto& [c, face_id] : built) {
        f.cones.push_back(c);
        nf.face_of_cone.push_back(face_id);
        if (face_id >= 0) nf.cone_of_face[face_id] = (int)f.cones.size() - 1;
    }
    return nf;
}

inline bool cone_contains(const Fan& f, int ci, const IVec& x) {
    const Cone& c = f.cones[ci];
    if (c.rays.empty())
        return std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
    if (f.simplicial(ci)) {
        std::size_t n = (std::size_t)f.n, d = c.rays.size();
        std::vector<QVec> sys(n, QVec(d));
        QVec rhs(n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < d; ++i) sys[j][i] = Rat(f.rays[c.rays[i]][j]);
            rhs[j] = Rat(x[j]);
        }
        auto sol = exactla::solve(sys, rhs);
        if (!sol) return false;
        for (const Rat& v : *sol)
            if (v < 0) return false;
        return true;
    }
    return detail::hrep_contains(detail::cone_hrep(f, ci), x);
}

// Star subdivision at a primitive ray: every cone containing the ray is
// replaced by the joins of the ray with its faces not containing it.
// Subdividing at an existing ray of a simplicial cone is the identity there.
inline Fan stellar_subdivide(const Fan& f, const IVec& ray) {
    IVec w = exactla::primitive(ray);
    std::vector<char> has(f.cones.size(), 0);
    bool inside = false;
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        has[i] = cone_contains(f, (int)i, w) ? 1 : 0;
        if (has[i] && !f.cones[i].rays.empty()) inside = true;
    }
    if (!inside) fail(errc::ray_outside_support, "stellar subdivision ray outside the fan support");

    Fan out;
    out.n = f.n;
    out.rays = f.rays;
    int wid = -1;
    for (std::size_t i = 0; i < out.rays.size(); ++i)
        if (out.rays[i] == w) wid = (int)i;
    if (wid < 0) {
        out.rays.push_back(w);
        wid = (int)out.rays.size() - 1;
    }

    std::set<std::vector<int>> seen;
    auto push = [&](std::vector<int> rayset) {
        std::sort(rayset.begin(), rayset.end());
        if (!seen.insert(rayset).second) return;
        Cone c;
        c.dim = detail::cone_dim(out, rayset);
        c.rays = std::move(rayset);
        out.cones.push_back(std::move(c));
    };

    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        if (!has[i]) {
            push(f.cones[i].rays);
            continue;
        }
        // joins of w with the faces of this cone that miss w
        for (std::size_t j = 0; j < f.cones.size(); ++j) {
            if (has[j]) continue;
            if (!std::includes(f.cones[i].rays.begin(), f.cones[i].rays.end(),
                               f.cones[j].rays.begin(), f.cones[j].rays.end()))
                continue;
            std::vector<int> rs = f.cones[j].rays;
            rs.push_back(wid);
            push(std::move(rs));
        }
    }
    detail::sort_cones(out);
    return out;
}

// Index of the sublattice spanned by the rays inside the lattice points of the
// cone's span; 1 exactly for unimodular cones.
inline Int cone_multiplicity(const Fan& f, int ci) {
    const Cone& c = f.cones[ci];
    if (c.rays.empty()) return 1;
    if (!f.simplicial(ci)) fail(errc::internal, "multiplicity of a non-simplicial cone");
    std::vector<IVec> rows;
    for (int r : c.rays) rows.push_back(f.rays[r]);
    auto d = exactla::smith_normal_form(exactla::IntMatrix::from_rows(rows, (std::size_t)f.n));
    Int m = 1;
    for (const Int& x : d)
        if (x != 0) m *= x;
    return m;
}

// Nonzero lattice points of the half-open fundamental parallelepiped of a
// simplicial cone, with their barycentric coordinate sums.
inline std::vector<std::pair<IVec, Rat>> cone_box_points(const Fan& f, int ci) {
    const Cone& c = f.cones[ci];
    std::vector<IVec> rows;
    for (int r : c.rays) rows.push_back(f.rays[r]);
    auto g = exactla::dual_functionals(rows);
    auto kernel = exactla::kernel_basis(exactla::IntMatrix::from_rows(rows, (std::size_t)f.n));
    std::vector<exactla::Constraint> cs;
    for (const QVec& gj : g) {
        QVec neg(gj.size());
        for (std::size_t t = 0; t < gj.size(); ++t) neg[t] = -gj[t];
        cs.push_back({gj, Rat(0), false});
        cs.push_back({neg, Rat(-1), true});
    }
    for (const IVec& k : kernel) {
        QVec a(k.size()), na(k.size());
        for (std::size_t t = 0; t < k.size(); ++t) {
            a[t] = Rat(k[t]);
            na[t] = -Rat(k[t]);
        }
        cs.push_back({a, Rat(0), false});
        cs.push_back({na, Rat(0), false});
    }
    std::vector<std::pair<IVec, Rat>> out;
    for (IVec& pt : exactla::lattice_points(cs)) {
        bool zero = std::all_of(pt.begin(), pt.end(), [](const Int& x) { return x == 0; });
        if (zero) continue;
        Rat s = 0;
        for (const QVec& gj : g) s += exactla::dotq(gj, pt);
        out.emplace_back(std::move(pt), s);
    }
    return out;
}

enum class subdivision_strategy { pull_min, pull_min_reversed };

// Unimodular refinement: first a pulling pass makes every cone simplicial by
// star subdivisions at its own rays, then non-unimodular cones are repeatedly
// subdivided at a fundamental-parallelepiped point of minimal coordinate sum
// (the multiplicity of every split piece drops strictly). The reversed
// strategy processes cones back-to-front and breaks ties the other way,
// producing a genuinely different refinement on most inputs; downstream
// results are checked to be independent of the choice.
inline Fan smooth_subdivision(const Fan& sigma,
                              subdivision_strategy strategy = subdivision_strategy::pull_min) {
    Fan f = sigma;
    std::vector<IVec> original_rays = sigma.rays;
    std::sort(original_rays.begin(), original_rays.end(), exactla::lex_less);
    for (const IVec& r : original_rays) f = stellar_subdivide(f, r);
    for (const auto& c : f.cones)
        if ((int)c.rays.size() != c.dim) fail(errc::internal, "pulling pass left a non-simplex");

    bool reversed = strategy == subdivision_strategy::pull_min_reversed;
    for (int iter = 0;; ++iter) {
        if (iter > 100000) fail(errc::internal, "smooth_subdivision: iteration cap");
        int target = -1;
        for (std::size_t t = 0; t < f.cones.size(); ++t) {
            std::size_t i = reversed ? f.cones.size() - 1 - t : t;
            if (cone_multiplicity(f, (int)i) > 1) {
                target = (int)i;
                break;
            }
        }
        if (target < 0) break;
        auto box = cone_box_points(f, target);
        if (box.empty()) fail(errc::internal, "non-unimodular cone with empty box");
        std::size_t pick = 0;
        for (std::size_t i = 1; i < box.size(); ++i) {
            bool tie = box[i].second == box[pick].second;
            bool lex = reversed ? exactla::lex_less(box[pick].first, box[i].first)
                                : exactla::lex_less(box[i].first, box[pick].first);
            if (box[i].second < box[pick].second || (tie && lex)) pick = i;
        }
        f = stellar_subdivide(f, box[pick].first);
    }

    // parent: the minimal-dimension base cone containing each refined cone
    f.parent.assign(f.cones.size(), -1);
    std::vector<detail::ConeHRep> hreps;
    for (std::size_t i = 0; i < sigma.cones.size(); ++i)
        hreps.push_back(detail::cone_hrep(sigma, (int)i));
    for (std::size_t i = 0; i < f.cones.size(); ++i) {
        int best = -1;
        for (std::size_t s = 0; s < sigma.cones.size(); ++s) {
            bool inside = true;
            for (int r : f.cones[i].rays)
                if (!detail::hrep_contains(hreps[s], f.rays[r])) { inside = false; break; }
            if (!inside) continue;
            if (best < 0 || sigma.cones[s].dim < sigma.cones[best].dim) best = (int)s;
        }
        if (best < 0) fail(errc::refinement_invalid, "refined cone escapes the base fan");
        f.parent[i] = best;
    }
    return f;
}

inline bool in_prime_subset(const Fan& f, int ci) {
    const Cone& c = f.cones[ci];
    if (c.rays.empty()) return false;
    for (int i = 0; i < f.n; ++i) {
        bool coordinate_vanishes = true;
        for (int r : c.rays)
            if (f.rays[r][i] != 0) { coordinate_vanishes = false; break; }
        if (coordinate_vanishes) return false;
    }
    return true;
}

struct ConeBadge {
    int dim = 0;
    int unit_count = 0; // unit vectors inside the cone away from the divisor coordinates
    bool prime = false; // not contained in any coordinate hyperplane
};

inline ConeBadge cone_badge(const Fan& f, int ci, const std::vector<int>& jf) {
    ConeBadge b;
    b.dim = f.cones[ci].dim;
    b.prime = in_prime_subset(f, ci);
    for (int i = 0; i < f.n; ++i) {
        if (std::find(jf.begin(), jf.end(), i) != jf.end()) continue;
        IVec e((std::size_t)f.n, Int(0));
        e[i] = 1;
        for (int r : f.cones[ci].rays)
            if (f.rays[r] == e) { ++b.unit_count; break; }
    }
    return b;
}

// Multiplicity of the pull-back divisor attached to a face and a cone lying
// over its dual cone: the lattice scale of (affine span of the face) + cone^perp.
inline Int pullback_multiplicity(const newton::NewtonPolyhedron& p, const NormalFan& nf,
                                 int face_id, const std::vector<IVec>& xi_rays) {
    if (face_id <= 0 || face_id >= (int)p.faces.size())
        fail(errc::parent_mismatch, "pullback multiplicity needs a nonempty compact face");
    int eta = nf.cone_of_face[face_id];
    auto h = detail::cone_hrep(nf.sigma, eta);
    for (const IVec& r : xi_rays)
        if (!detail::hrep_contains(h, r))
            fail(errc::parent_mismatch, "cone does not lie over the face's dual cone");

    const newton::Face& f = p.faces[face_id];
    std::size_t n = (std::size_t)p.n;
    const IVec& v0 = p.vertices[f.vertex_ids[0]];
    QVec base(n);
    for (std::size_t j = 0; j < n; ++j) base[j] = Rat(v0[j]);
    std::vector<IVec> dirs;
    for (std::size_t t = 1; t < f.vertex_ids.size(); ++t) {
        IVec d(n);
        for (std::size_t j = 0; j < n; ++j) d[j] = p.vertices[f.vertex_ids[t]][j] - v0[j];
        dirs.push_back(std::move(d));
    }
    for (IVec& k : exactla::kernel_basis(exactla::IntMatrix::from_rows(xi_rays, n)))
        dirs.push_back(std::move(k)); // cone^perp directions
    return newton::face_lattice_scale(base, dirs);
}

// Signed census of refined cones lying over a dual cone, per subset of the
// unit vectors present. The alternating counts must all equal 1, and their
// strict-subset versions must vanish away from the full unit set.
struct CensusReport {
    std::vector<int> unit_coords; // I0
    std::vector<std::pair<std::vector<int>, long long>> eps, eps_strict;
    bool ok = true;
    bool vacuous = false;
};

inline CensusReport epsilon_census(const NormalFan& nf, const Fan& xi, int eta_id) {
    CensusReport rep;
    const Fan& sigma = nf.sigma;
    const Cone& eta = sigma.cones[eta_id];
    if (eta.rays.empty()) {
        rep.vacuous = true;
        return rep;
    }
    if (!in_prime_subset(sigma, eta_id))
        fail(errc::refinement_invalid, "census cone lies inside a coordinate hyperplane");
    if (xi.parent.empty()) fail(errc::refinement_invalid, "refinement has no parent map");

    for (int i = 0; i < sigma.n; ++i) {
        IVec e((std::size_t)sigma.n, Int(0));
        e[i] = 1;
        for (int r : eta.rays)
            if (sigma.rays[r] == e) { rep.unit_coords.push_back(i); break; }
    }

    struct Member {
        int dim;
        std::vector<int> units; // unit coordinates among its rays
    };
    std::vector<Member> members;
    for (std::size_t c = 0; c < xi.cones.size(); ++c) {
        if (xi.parent[c] != eta_id || xi.cones[c].rays.empty()) continue;
        if (!in_prime_subset(xi, (int)c))
            fail(errc::refinement_invalid, "refined cone over a prime cone is not prime");
        Member m;
        m.dim = xi.cones[c].dim;
        for (int i : rep.unit_coords) {
            IVec e((std::size_t)xi.n, Int(0));
            e[i] = 1;
            for (int r : xi.cones[c].rays)
                if (xi.rays[r] == e) { m.units.push_back(i); break; }
        }
        members.push_back(std::move(m));
    }

    std::size_t u = rep.unit_coords.size();
    std::vector<long long> eps(1u << u, 0);
    for (unsigned mask = 0; mask < (1u << u); ++mask) {
        for (const Member& m : members) {
            bool covered = true;
            for (std::size_t t = 0; t < u && covered; ++t)
                if ((mask >> t) & 1u) {
                    if (std::find(m.units.begin(), m.units.end(), rep.unit_coords[t]) ==
                        m.units.end())
                        covered = false;
                }
            if (!covered) continue;
            int j = eta.dim - m.dim;
            eps[mask] += (j % 2 == 0) ? 1 : -1;
        }
    }
    std::vector<long long> eps_strict(1u << u, 0);
    for (unsigned mask = 0; mask < (1u << u); ++mask) {
        long long v = 0;
        for (unsigned sup = 0; sup < (1u << u); ++sup) {
            if ((sup & mask) != mask) continue;
            int extra = __builtin_popcount(sup) - __builtin_popcount(mask);
            v += (extra % 2 == 0 ? 1 : -1) * eps[sup];
        }
        eps_strict[mask] = v;
    }
    unsigned full = (1u << u) - 1;
    for (unsigned mask = 0; mask < (1u << u); ++mask) {
        std::vector<int> I;
        for (std::size_t t = 0; t < u; ++t)
            if ((mask >> t) & 1u) I.push_back(rep.unit_coords[t]);
        rep.eps.emplace_back(I, eps[mask]);
        rep.eps_strict.emplace_back(I, eps_strict[mask]);
        if (eps[mask] != 1) rep.ok = false;
        if (mask == full ? eps_strict[mask] != 1 : eps_strict[mask] != 0) rep.ok = false;
    }
    return rep;
}

// Exact cover test for a simplicial fan on the orthant: slice volumes against
// the standard simplex must sum to one.
inline bool covers_orthant(const Fan& f) {
    Rat total = 0;
    for (int ci : f.maximal_cones()) {
        const Cone& c = f.cones[ci];
        if (c.dim != f.n || (int)c.rays.size() != f.n) return false;
        exactla::IntMatrix m((std::size_t)f.n, (std::size_t)f.n);
        Rat denom = 1;
        for (int i = 0; i < f.n; ++i) {
            Int rowsum = 0;
            for (int j = 0; j < f.n; ++j) {
                m.at(i, j) = f.rays[c.rays[i]][j];
                rowsum += m.at(i, j);
            }
            denom *= Rat(rowsum);
        }
        Int d = newton::detail::det_bareiss(m);
        if (d < 0) d = -d;
        total += Rat(d) / denom;
    }
    return total == 1;
}

// Pairwise intersection of maximal cones must be the cone on their common rays.
inline bool pairwise_intersections_ok(const Fan& f) {
    auto maxc = f.maximal_cones();
    std::vector<detail::ConeHRep> hreps;
    for (int ci : maxc) hreps.push_back(detail::cone_hrep(f, ci));
    for (std::size_t a = 0; a < maxc.size(); ++a)
        for (std::size_t b = a + 1; b < maxc.size(); ++b) {
            std::vector<IVec> cons;
            for (const IVec& v : hreps[a].ineqs) cons.push_back(v);
            for (const IVec& v : hreps[a].eqs) {
                cons.push_back(v);
                IVec neg(v.size());
                for (std::size_t t = 0; t < v.size(); ++t) neg[t] = -v[t];
                cons.push_back(neg);
            }
            for (const IVec& v : hreps[b].ineqs) cons.push_back(v);
            for (const IVec& v : hreps[b].eqs) {
                cons.push_back(v);
                IVec neg(v.size());
                for (std::size_t t = 0; t < v.size(); ++t) neg[t] = -v[t];
                cons.push_back(neg);
            }
            auto meet = exactla::dual_rays(cons, (std::size_t)f.n);
            if (!meet.lineality.empty()) return false;
            std::vector<IVec> common;
            for (int r : f.cones[maxc[a]].rays)
                for (int s : f.cones[maxc[b]].rays)
                    if (r == s) common.push_back(f.rays[r]);
            std::sort(common.begin(), common.end(), exactla::lex_less);
            if (meet.rays != common) return false;
        }
    return true;
}

} // namespace fan
} // namespace nspec

#endif
