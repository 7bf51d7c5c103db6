#ifndef NSPEC_ERRORS_HPP
#define NSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nspec {

// Typed failure classes. Input errors (bad text, bad JSON) map to CLI exit 1,
// domain errors (well-formed input outside an operation's hypotheses) to exit 2.
enum class errc {
    syntax_error,
    constant_term_present,
    zero_polynomial,
    dimension_mismatch,
    unbounded_region,
    infinite_degree,
    not_convenient,
    not_simplicial,
    isolatedness_not_established,
    no_lattice_scale,
    non_integer_exponent,
    ray_outside_support,
    parent_mismatch,
    refinement_invalid,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::syntax_error: return "SyntaxError";
        case errc::constant_term_present: return "ConstantTermPresent";
        case errc::zero_polynomial: return "ZeroPolynomial";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::unbounded_region: return "UnboundedRegion";
        case errc::infinite_degree: return "InfiniteDegree";
        case errc::not_convenient: return "NotConvenient";
        case errc::not_simplicial: return "NotSimplicial";
        case errc::isolatedness_not_established: return "IsolatednessNotEstablished";
        case errc::no_lattice_scale: return "NoLatticeScale";
        case errc::non_integer_exponent: return "NonIntegerExponentInR";
        case errc::ray_outside_support: return "RayOutsideSupport";
        case errc::parent_mismatch: return "ParentMismatch";
        case errc::refinement_invalid: return "RefinementInvalid";
        case errc::internal: return "InternalError";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }
    bool is_input_error() const {
        return code_ == errc::syntax_error || code_ == errc::constant_term_present ||
               code_ == errc::zero_polynomial;
    }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace nspec

#endif
