#pragma once

// Slope computations and classification for complete intersections, the
// subsheaf slope bound extracted from the vanishing engine, and the boolean
// implication rules connecting uniruledness, stability and separable
// rational connectedness.

#include "fanokit/tri.hpp"
#include "fanokit/vanish.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace fanokit {

enum class Exceptional { None, Linear, Quadric };
enum class StabilityVerdict { Stable, ExcludedExceptional, NotApplicable };

const char* exceptional_name(Exceptional e);
const char* verdict_name(StabilityVerdict v);

struct SlopeReport {
    CompleteIntersectionSpec spec;
    Int degree;                    // prod d_i
    bool fano = false;             // sum d_i <= n
    Exceptional exceptional = Exceptional::None;
    long long canonical_twist = 0; // sum d_i - n - 1
    Rat mu_omega;                  // deg X * (sum d_i - n - 1) / dim X
    Rat subsheaf_slope_bound;      // -deg X
    StabilityVerdict verdict = StabilityVerdict::NotApplicable;
    std::string verdict_detail;
    // for a stable verdict: one certificate per subsheaf rank r = 1..dim-1,
    // proving H^0(X, Omega^r(r-1)) = 0 (the tightest twist the bound needs)
    std::vector<VanishingCertificate> certificates;
};

SlopeReport slope_report(const CompleteIntersectionSpec& spec);

// Max slope of a rank-r reflexive subsheaf of Omega_X permitted by the
// certified vanishing: det F = O(k) with H^0(Omega^r(-k)) = 0 forcing
// -k >= r, so mu(F) <= -deg X. Certificates for H^0(Omega^r(t)) = 0,
// t = r-1 .. -1, come attached.
struct SubsheafSlopeBound {
    Rat ceiling;
    std::vector<VanishingCertificate> certificates;
};

SubsheafSlopeBound subsheaf_slope_ceiling(const CompleteIntersectionSpec& spec, int r);

struct ImplicationInput {
    bool picard_rank_one = false;
    Tri separably_uniruled = Tri::Unknown;
    Tri tangent_stable = Tri::Unknown;
    Tri tangent_semistable = Tri::Unknown;
    bool fano = false;
    Tri n1_generated_by_free = Tri::Unknown;
};

struct RuleTrace {
    std::string rule;
    std::vector<std::string> premises;
};

struct ImplicationVerdict {
    Tri src = Tri::Unknown;
    std::vector<RuleTrace> trace;  // every rule that fired; empty iff unknown
};

// Applies the implication rules with unknown-propagation: a rule fires only
// when all its premises are affirmative. Inconsistent input (stable yes,
// semistable no) is an argument error.
ImplicationVerdict implication_verdict(const ImplicationInput& input);

nlohmann::ordered_json slope_report_to_json(const SlopeReport& report,
                                            bool include_certificates = true);
nlohmann::ordered_json implication_to_json(const ImplicationVerdict& verdict);

}  // namespace fanokit
