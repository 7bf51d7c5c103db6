#ifndef NSPEC_MOTIVIC_HPP
#define NSPEC_MOTIVIC_HPP

#include <map>
#include <sstream>
#include <string>

#include "nspec/fan.hpp"

namespace nspec {
namespace motivic {

// Integer Laurent polynomials in the class L of the affine line. The Tate
// twist on the Hodge side is the same rank-one class, so a single symbol
// serves both readings.
class LaurentPoly {
  public:
    using Terms = std::map<long, Int>;

    LaurentPoly() = default;
    explicit LaurentPoly(Int c) {
        if (c != 0) terms_[0] = std::move(c);
    }
    static LaurentPoly monomial(long e, Int c) {
        LaurentPoly p;
        if (c != 0) p.terms_[e] = std::move(c);
        return p;
    }
    static LaurentPoly one() { return LaurentPoly(Int(1)); }
    // (1 - L)^e
    static LaurentPoly one_minus_L_pow(int e) {
        if (e < 0) fail(errc::internal, "negative twist exponent");
        LaurentPoly base;
        base.terms_[0] = 1;
        base.terms_[1] = -1;
        LaurentPoly r = one();
        for (int i = 0; i < e; ++i) r = r * base;
        return r;
    }
    // (L - 1)^e
    static LaurentPoly L_minus_one_pow(int e) {
        LaurentPoly r = one_minus_L_pow(e);
        if (e % 2 != 0)
            for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(long e, const Int& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) terms_[e] = c;
        else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
        for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
        return a;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [e1, c1] : a.terms_)
            for (const auto& [e2, c2] : b.terms_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }

    std::string text() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << c << "*L^" << e;
        }
        return os.str();
    }

  private:
    Terms terms_;
};

// Opaque stratum symbols: the open part of a covering over a stratum, or its
// proper-transform intersection, at either the face level or the refined-cone
// level. The geometry behind them is never materialized.
struct Generator {
    enum class Kind { open_cover, proper_stratum };
    enum class Level { face, cone };
    Kind kind;
    Level level;
    int id;

    bool operator<(const Generator& o) const {
        if (level != o.level) return level < o.level;
        if (id != o.id) return id < o.id;
        return kind < o.kind;
    }
    bool operator==(const Generator& o) const {
        return kind == o.kind && level == o.level && id == o.id;
    }
};

class MotivicExpr {
  public:
    using Terms = std::map<Generator, LaurentPoly>;

    const Terms& terms() const { return terms_; }
    void add(const Generator& g, const LaurentPoly& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(g);
        if (it == terms_.end()) {
            terms_[g] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    MotivicExpr& operator+=(const MotivicExpr& o) {
        for (const auto& [g, c] : o.terms_) add(g, c);
        return *this;
    }
    friend bool operator==(const MotivicExpr& a, const MotivicExpr& b) {
        return a.terms_ == b.terms_;
    }
    LaurentPoly coeff(const Generator& g) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? LaurentPoly() : it->second;
    }

  private:
    Terms terms_;
};

// Face-level nearby fiber: over each nonempty compact face, the twisted open
// class plus a once-more-twisted proper class.
inline MotivicExpr nearby_fiber_faces(const newton::NewtonPolyhedron& p) {
    MotivicExpr out;
    for (const auto& f : p.faces) {
        if (f.id == 0) continue;
        LaurentPoly twist = LaurentPoly::one_minus_L_pow(f.k - f.cone_dim);
        out.add({Generator::Kind::open_cover, Generator::Level::face, f.id}, twist);
        out.add({Generator::Kind::proper_stratum, Generator::Level::face, f.id},
                twist * LaurentPoly::one_minus_L_pow(1));
    }
    return out;
}

// Cone-level nearby fiber over a smooth refinement: one term per refined cone
// not inside a coordinate hyperplane, twisted by dim - units - 1.
inline MotivicExpr nearby_fiber_cones(const newton::NewtonPolyhedron& p, const fan::Fan& xi) {
    if (xi.parent.empty() || xi.parent.size() != xi.cones.size())
        fail(errc::refinement_invalid, "refinement lacks a parent map");
    MotivicExpr out;
    for (std::size_t c = 0; c < xi.cones.size(); ++c) {
        if (!fan::in_prime_subset(xi, (int)c)) continue;
        auto badge = fan::cone_badge(xi, (int)c, p.cls.jf);
        int e = badge.dim - badge.unit_count - 1;
        if (e < 0) fail(errc::internal, "negative twist exponent on a prime cone");
        LaurentPoly twist = LaurentPoly::one_minus_L_pow(e);
        out.add({Generator::Kind::open_cover, Generator::Level::cone, (int)c}, twist);
        out.add({Generator::Kind::proper_stratum, Generator::Level::cone, (int)c},
                twist * LaurentPoly::one_minus_L_pow(1));
    }
    return out;
}

// Direct image to the face level: a cone generator collapses onto the compact
// face dual to its parent cone, picking up (L-1)^(relative dimension).
inline MotivicExpr pushforward(const MotivicExpr& e, const fan::NormalFan& nf,
                               const fan::Fan& xi) {
    MotivicExpr out;
    for (const auto& [g, c] : e.terms()) {
        if (g.level != Generator::Level::cone)
            fail(errc::parent_mismatch, "pushforward input must live at the cone level");
        int eta = xi.parent[(std::size_t)g.id];
        int face_id = nf.face_of_cone[eta];
        if (face_id <= 0)
            fail(errc::parent_mismatch, "cone lies over a non-compact face");
        int rel = nf.sigma.cones[eta].dim - xi.cones[(std::size_t)g.id].dim;
        out.add({g.kind, Generator::Level::face, face_id},
                c * LaurentPoly::L_minus_one_pow(rel));
    }
    return out;
}

struct DescentReport {
    bool ok = true;
    std::string diagnostic;
    MotivicExpr pushed, direct;
};

// Symbolic descent: pushing the cone-level nearby fiber down must reproduce
// the face-level one coefficient-by-coefficient.
inline DescentReport descent_check(const newton::NewtonPolyhedron& p,
                                   fan::subdivision_strategy strategy =
                                       fan::subdivision_strategy::pull_min) {
    auto nf = fan::normal_fan(p);
    fan::Fan xi = fan::smooth_subdivision(nf.sigma, strategy);
    DescentReport rep;
    rep.pushed = pushforward(nearby_fiber_cones(p, xi), nf, xi);
    rep.direct = nearby_fiber_faces(p);
    rep.ok = (rep.pushed == rep.direct);
    if (!rep.ok) {
        for (const auto& f : p.faces) {
            if (f.id == 0) continue;
            for (auto kind : {Generator::Kind::open_cover, Generator::Kind::proper_stratum}) {
                Generator g{kind, Generator::Level::face, f.id};
                if (!(rep.pushed.coeff(g) == rep.direct.coeff(g))) {
                    std::ostringstream os;
                    os << "face " << f.id
                       << (kind == Generator::Kind::open_cover ? " open" : " proper")
                       << ": pushed " << rep.pushed.coeff(g).text() << " vs direct "
                       << rep.direct.coeff(g).text();
                    rep.diagnostic = os.str();
                    return rep;
                }
            }
        }
        rep.diagnostic = "stray cone-level generators remain";
    }
    return rep;
}

} // namespace motivic
} // namespace nspec

#endif
