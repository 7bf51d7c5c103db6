#ifndef NSPEC_PUISEUX_HPP
#define NSPEC_PUISEUX_HPP

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "nspec/exactla.hpp"

namespace nspec {
namespace puiseux {

// Finitely supported map from rational exponents of t to integer coefficients.
// No zero coefficients are stored; iteration order is ascending exponent.
class FracPoly {
  public:
    using Terms = std::map<Rat, Int>;

    FracPoly() = default;
    explicit FracPoly(Int constant) {
        if (constant != 0) terms_[Rat(0)] = std::move(constant);
    }
    static FracPoly monomial(Rat e, Int c) {
        FracPoly p;
        if (c != 0) p.terms_[std::move(e)] = std::move(c);
        return p;
    }
    static FracPoly one() { return FracPoly(Int(1)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Int coeff(const Rat& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Int(0) : it->second;
    }
    void add_term(const Rat& e, const Int& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) terms_[e] = c;
        else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    FracPoly& operator+=(const FracPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    FracPoly& operator-=(const FracPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend FracPoly operator+(FracPoly a, const FracPoly& b) { return a += b; }
    friend FracPoly operator-(FracPoly a, const FracPoly& b) { return a -= b; }
    friend FracPoly operator*(const FracPoly& a, const FracPoly& b) {
        FracPoly r;
        for (const auto& [e1, c1] : a.terms_)
            for (const auto& [e2, c2] : b.terms_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }
    FracPoly operator-() const {
        FracPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    friend bool operator==(const FracPoly& a, const FracPoly& b) { return a.terms_ == b.terms_; }

    // p(1/t) * t^s: reflects every exponent e to s - e.
    FracPoly dual(const Rat& s) const {
        FracPoly r;
        for (const auto& [e, c] : terms_) r.terms_[s - e] = c;
        return r;
    }

    Int evaluate_at_one() const {
        Int s = 0;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    bool integer_exponents() const {
        for (const auto& [e, c] : terms_)
            if (!is_integer(e)) return false;
        return true;
    }

    std::optional<Rat> min_exponent() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first;
    }

  private:
    Terms terms_;
};

enum class binop { add, sub, mul };

inline FracPoly combine(const FracPoly& a, const FracPoly& b, binop op) {
    switch (op) {
        case binop::add: return a + b;
        case binop::sub: return a - b;
        case binop::mul: return a * b;
    }
    fail(errc::internal, "combine: bad op");
}

inline FracPoly pow(const FracPoly& base, unsigned e) {
    FracPoly r = FracPoly::one();
    for (unsigned i = 0; i < e; ++i) r = r * base;
    return r;
}

// Two-variable variant: exponent pairs (rational in t, integer in u).
class FracPoly2 {
  public:
    using Key = std::pair<Rat, Int>;
    using Terms = std::map<Key, Int>;

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Rat& e, const Int& w, const Int& c) {
        if (c == 0) return;
        Key k{e, w};
        auto it = terms_.find(k);
        if (it == terms_.end()) terms_[k] = c;
        else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    FracPoly2& operator+=(const FracPoly2& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }
    friend bool operator==(const FracPoly2& a, const FracPoly2& b) { return a.terms_ == b.terms_; }

    Int total_mass() const {
        Int s = 0;
        for (const auto& [k, c] : terms_) s += c;
        return s;
    }

  private:
    Terms terms_;
};

// r(t u^2) * u^d * q(t). Every r-term c t^e (e integral) lands on u-exponent
// 2e + d; q multiplies in t only.
inline FracPoly2 substitute_pairs(const FracPoly& r, const Int& d, const FracPoly& q) {
    FracPoly2 out;
    for (const auto& [e, c] : r.terms()) {
        if (!is_integer(e))
            fail(errc::non_integer_exponent, "substitute_pairs: non-integer exponent in r");
        Int w = 2 * rat_num(e) + d;
        for (const auto& [eq, cq] : q.terms()) out.add_term(e + eq, w, c * cq);
    }
    return out;
}

inline std::string rat_string(const Rat& r) {
    std::ostringstream os;
    os << rat_num(r);
    if (rat_den(r) != 1) os << "/" << rat_den(r);
    return os.str();
}

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den <= 0) fail(errc::syntax_error, "rational with nonpositive denominator: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw;
    } catch (...) {
        fail(errc::syntax_error, "bad rational: " + s);
    }
}

// Canonical text form "c*t^(e) + ...", ascending exponent; "0" when empty.
inline std::string to_text(const FracPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << c << "*t^(" << rat_string(e) << ")";
    }
    return os.str();
}

inline FracPoly from_text(const std::string& s) {
    FracPoly p;
    if (s == "0") return p;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(" + ", pos);
        std::string term = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        std::size_t star = term.find("*t^(");
        if (star == std::string::npos || term.back() != ')')
            fail(errc::syntax_error, "bad series term: " + term);
        Int c;
        try {
            c = Int(term.substr(0, star));
        } catch (...) {
            fail(errc::syntax_error, "bad series coefficient: " + term);
        }
        Rat e = parse_rat(term.substr(star + 4, term.size() - star - 5));
        p.add_term(e, c);
        pos = next == std::string::npos ? s.size() : next + 3;
    }
    return p;
}

} // namespace puiseux
} // namespace nspec

#endif
