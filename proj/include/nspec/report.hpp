#ifndef NSPEC_REPORT_HPP
#define NSPEC_REPORT_HPP

#include <sstream>
#include <string>

#include <json.hpp>

#include "nspec/fan.hpp"
#include "nspec/monodromy.hpp"
#include "nspec/motivic.hpp"
#include "nspec/newton.hpp"
#include "nspec/spectrum.hpp"

namespace nspec {
namespace report {

using json = nlohmann::json;

// Integers beyond the double-exact window are emitted as strings; everything
// produced at desk scale stays numeric.
inline json json_int(const Int& x) {
    static const Int lo = -(Int(1) << 53), hi = Int(1) << 53;
    if (x > lo && x < hi) return (long long)x;
    return x.str();
}

inline json fracpoly_json(const puiseux::FracPoly& p) {
    json arr = json::array();
    for (const auto& [e, c] : p.terms())
        arr.push_back({{"e", puiseux::rat_string(e)}, {"c", json_int(c)}});
    return arr;
}

inline puiseux::FracPoly fracpoly_from_json(const json& arr) {
    puiseux::FracPoly p;
    for (const auto& term : arr)
        p.add_term(puiseux::parse_rat(term.at("e").get<std::string>()),
                   Int(term.at("c").is_string() ? Int(term.at("c").get<std::string>())
                                                : Int(term.at("c").get<long long>())));
    return p;
}

inline json pairs_json(const puiseux::FracPoly2& p) {
    json arr = json::array();
    for (const auto& [key, c] : p.terms())
        arr.push_back({{"e", puiseux::rat_string(key.first)},
                       {"w", json_int(key.second)},
                       {"c", json_int(c)}});
    return arr;
}

inline std::string pairs_text(const puiseux::FracPoly2& p) {
    if (p.terms().empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << c << "*t^(" << puiseux::rat_string(key.first) << ")*u^" << key.second;
    }
    return os.str();
}

inline json vertex_json(const IVec& v) {
    json arr = json::array();
    for (const Int& x : v) arr.push_back(json_int(x));
    return arr;
}

inline json face_table_json(const newton::NewtonPolyhedron& p) {
    json faces = json::array();
    for (const auto& f : p.faces) {
        json verts = json::array();
        for (int vi : f.vertex_ids) verts.push_back(vertex_json(p.vertices[vi]));
        faces.push_back({{"id", f.id},
                         {"dim", f.dim},
                         {"k", f.k},
                         {"delta", json_int(f.lattice_scale)},
                         {"vertices", verts},
                         {"internal", f.internal},
                         {"simplex", f.simplex}});
    }
    return faces;
}

inline json classification_json(const newton::NewtonPolyhedron& p) {
    json j;
    j["n"] = p.n;
    json jf = json::array();
    for (int i : p.cls.jf) jf.push_back(i + 1); // 1-based coordinates in reports
    j["j_divisors"] = jf;
    j["convenient"] = p.cls.convenient;
    j["simplicial"] = p.cls.simplicial;
    j["isolated"] = p.cls.isolated;
    j["assume_nondegenerate"] = p.support.assume_nondegenerate;
    j["assume_isolated"] = p.support.assume_isolated;
    j["c"] = puiseux::rat_string(p.cls.diagonal_c);
    return j;
}

// Input assumptions are echoed in every invariant report.
inline json assumptions_json(const newton::NewtonPolyhedron& p) {
    return {{"nondegenerate", p.support.assume_nondegenerate},
            {"isolated", p.cls.isolated}};
}

inline json spectrum_json(const spectrum::SpectrumReport& rep) {
    return {{"hodge", fracpoly_json(rep.hodge)},
            {"steenbrink", fracpoly_json(rep.steenbrink)},
            {"mu", json_int(rep.mu)},
            {"validity", spectrum::validity_name(rep.trust)}};
}

inline json jordan_json(const monodromy::JordanTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"q", json_int(r.q)}, {"k", r.k}, {"count", json_int(r.count)}});
    return {{"blocks", rows}, {"unsupported_note", t.unsupported_note}};
}

inline json fan_json(const fan::Fan& f) {
    json rays = json::array();
    for (const IVec& r : f.rays) rays.push_back(vertex_json(r));
    json cones = json::array();
    for (const auto& c : f.cones) {
        json ids = json::array();
        for (int r : c.rays) ids.push_back(r);
        cones.push_back(ids);
    }
    json j = {{"rays", rays}, {"cones", cones}};
    if (!f.parent.empty()) {
        json par = json::array();
        for (int pa : f.parent) par.push_back(pa);
        j["parent"] = par;
    }
    return j;
}

inline json motivic_json(const motivic::MotivicExpr& e) {
    json terms = json::array();
    for (const auto& [g, c] : e.terms()) {
        json coeff = json::array();
        for (const auto& [le, lc] : c.terms())
            coeff.push_back({{"Lexp", le}, {"c", json_int(lc)}});
        std::string level =
            (g.level == motivic::Generator::Level::face ? "face:" : "cone:") + std::to_string(g.id);
        terms.push_back(
            {{"kind", g.kind == motivic::Generator::Kind::open_cover ? "open" : "proper"},
             {"level", level},
             {"coeff", coeff}});
    }
    return {{"terms", terms}};
}

inline json tribool_json(const std::optional<bool>& o) {
    if (!o) return nullptr;
    return *o;
}

inline json identities_json(const spectrum::IdentityReport& rep) {
    return {{"twisted_sum_vs_product", tribool_json(rep.twisted_sum_vs_product)},
            {"moebius", tribool_json(rep.moebius)},
            {"comb_symmetry", tribool_json(rep.comb_symmetry)},
            {"spectrum_palindrome", tribool_json(rep.spectrum_palindrome)},
            {"interior_self_duality", tribool_json(rep.interior_self_duality)},
            {"pairs_involution", tribool_json(rep.pairs_involution)}};
}

inline json error_json(const error& e) {
    return {{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
}

// Deterministic serialization: nlohmann objects keep keys sorted, and dump()
// introduces no whitespace variance.
inline std::string dump(const json& j) { return j.dump(); }

} // namespace report
} // namespace nspec

#endif
