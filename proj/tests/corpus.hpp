// Shared fixtures: the golden instances exercised across the suites plus a
// deterministic generator of random convenient supports.
#ifndef NSPEC_TESTS_CORPUS_HPP
#define NSPEC_TESTS_CORPUS_HPP

#include <random>
#include <string>
#include <vector>

#include "nspec/newton.hpp"

namespace corpus {

using nspec::IVec;
using nspec::Rat;

inline nspec::newton::NewtonPolyhedron build(const std::string& text, bool nondeg = true,
                                             bool isolated = false) {
    return nspec::newton::build_polyhedron(
        nspec::newton::parse_polynomial(text, nondeg, isolated));
}

inline std::string cusp() { return "x^2+y^3"; }
inline std::string quadrilateral_example() { return "x^2+y^2+x*z+y*z+z^4"; }

inline std::string fermat_plus_core(int p) {
    return "x^" + std::to_string(p) + "+y^" + std::to_string(p) + "+z^" + std::to_string(p) +
           "+x*y*z";
}

inline std::string septic_double_core() { return "x^7+y^7+z^7+x^2*y^2*z^2"; }

inline std::string axis_plus_yz(int a) { return "x^" + std::to_string(a) + "+y*z"; }

inline std::string brieskorn(const std::vector<int>& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += "+";
        s += "x" + std::to_string(i + 1) + "^" + std::to_string(a[i]);
    }
    return s;
}

inline std::string quadruple_nonconvenient() { return "x^3*y+y^3+x^2*z+z^3+z*w^3"; }

// Golden corpus for identity sweeps: names only, built on demand.
inline std::vector<std::string> golden_texts() {
    return {
        cusp(),
        "x^2+y^2",
        "x^3+y^5",
        quadrilateral_example(),
        fermat_plus_core(4),
        fermat_plus_core(5),
        septic_double_core(),
        axis_plus_yz(3),
        axis_plus_yz(4),
        axis_plus_yz(5),
        axis_plus_yz(6),
        brieskorn({5, 6, 7}),
        brieskorn({2, 3, 5}),
        "x^4+y^6",
        "x^2*y+y^3+z^3",   // non-convenient, simplicial, isolated
        "x^3*y+x*y^3+z^2", // symmetric, convenient
    };
}

inline nspec::newton::MonomialSupport random_convenient_support(std::mt19937_64& rng, int max_n = 3,
                                                                int max_exp = 7) {
    return nspec::newton::sample_convenient_support(rng, max_n, max_exp);
}

} // namespace corpus

#endif
