#pragma once

// Exact splitting types of pulled-back (co)tangent bundles along
// parameterized rational curves on hypersurfaces, over Q or F_p, plus the
// freeness bookkeeping built on them: positive-rank lower bounds and
// separable-uniruledness evidence.

#include "fanokit/arith.hpp"
#include "fanokit/tri.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fanokit {

using ExponentVector = std::vector<int>;  // length n+1, entries >= 0

// A homogeneous form of degree d >= 2 in x0..xn, sparse monomial map.
// Coefficients are stored as integers and read through the field, so the
// same object describes the hypersurface over Q or after reduction mod p;
// monomials whose coefficient dies in the field are dropped at construction.
struct HypersurfaceForm {
    int n = 1;
    int degree = 2;
    FieldSpec field;
    std::map<ExponentVector, Int> coeffs;

    HypersurfaceForm(int ambient_dim, std::map<ExponentVector, Int> terms,
                     FieldSpec f = FieldSpec());
};

// phi: P^1 -> P^n with components of common degree e >= 1; the components
// are required to have no common projective zero (gcd test over the field).
struct RationalCurveMap {
    int n = 1;
    int degree = 1;  // e
    FieldSpec field;
    std::vector<std::vector<Int>> components;  // n+1 vectors of length e+1, s-lex order

    RationalCurveMap(int ambient_dim, int e, std::vector<std::vector<Int>> comps,
                     FieldSpec f = FieldSpec());
};

// phi(a*s + b*t, c*s + d*t); (a b; c d) must be invertible over the field.
RationalCurveMap reparameterize(const RationalCurveMap& phi, const Int& a, const Int& b,
                                const Int& c, const Int& d);

struct SplittingType {
    std::vector<int> parts;  // a_1 >= ... >= a_m

    int rank() const { return static_cast<int>(parts.size()); }
    long long degree() const {
        long long s = 0;
        for (int a : parts) s += a;
        return s;
    }
    bool free() const {
        for (int a : parts)
            if (a < 0) return false;
        return true;
    }
    int positive_count() const {
        int c = 0;
        for (int a : parts)
            if (a > 0) ++c;
        return c;
    }
    bool operator==(const SplittingType& o) const { return parts == o.parts; }
};

// F(phi_0, ..., phi_n) == 0 as a binary form.
bool on_curve_check(const HypersurfaceForm& X, const RationalCurveMap& phi);

enum class ProbeResult { Ok, Degenerate };

// Formal partial derivatives along the curve: degenerate when they all
// vanish identically or share a projective zero. Guards the smoothness the
// normal-bundle sequence needs -- along the curve only, never globally.
ProbeResult singularity_probe_along(const HypersurfaceForm& X, const RationalCurveMap& phi);

// phi^* T_{P^n} via the pulled-back dual Euler sequence.
SplittingType splitting_of_pullback_tangent_pn(const RationalCurveMap& phi);
SplittingType splitting_of_pullback_cotangent_pn(const RationalCurveMap& phi);

// phi^* T_X for X the hypersurface: gradient kernel bundle, quotient by the
// Euler section taken as a dual kernel, splitting recovered degree by
// degree. Throws std::invalid_argument when phi is not on X and
// std::domain_error when the gradient probe is degenerate.
SplittingType splitting_of_pullback_tangent(const HypersurfaceForm& X,
                                            const RationalCurveMap& phi);
SplittingType splitting_of_pullback_cotangent(const HypersurfaceForm& X,
                                              const RationalCurveMap& phi);

struct PositiveRankBound {
    int bound = 0;
    std::optional<size_t> witness;  // index into the supplied curve list
    std::optional<SplittingType> witness_splitting;
};

// Max of positive_count over the supplied free curves: a certified lower
// bound for the positive rank. Non-free curves contribute nothing.
PositiveRankBound positive_rank_lower_bound(const HypersurfaceForm& X,
                                            const std::vector<RationalCurveMap>& curves);

struct UniruledEvidence {
    Tri separably_uniruled = Tri::Unknown;
    std::optional<size_t> witness;
    std::optional<SplittingType> witness_splitting;
};

// A single free curve witnesses separable uniruledness of the smooth locus.
UniruledEvidence uniruledness_evidence(const HypersurfaceForm& X,
                                       const std::vector<RationalCurveMap>& curves);

// ---------------------------------------------------------------------------
// Plain-text input format: lines of the shape
//     F: x0^3 + x1^3 + x2^3 + x3^3 @ char 0
//     phi: (s, -s, t, -t)
// with integer coefficients; '#' starts a comment. The F line is optional --
// without it the problem asks for the P^n splitting of phi alone.
// ---------------------------------------------------------------------------

struct CurveProblem {
    std::optional<HypersurfaceForm> hypersurface;
    std::optional<RationalCurveMap> curve;
};

CurveProblem parse_curve_problem(const std::string& text, FieldSpec default_field);

nlohmann::ordered_json splitting_to_json(const SplittingType& st);
std::string splitting_to_string(const SplittingType& st);  // "O(2) (+) O(0)"

}  // namespace fanokit
