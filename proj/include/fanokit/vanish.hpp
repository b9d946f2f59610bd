#pragma once

// Certificate engine for the vanishing H^p(X, Omega_X^q(t)) = 0 on a
// complete-intersection tower P^n = X_0 ⊃ X_1 ⊃ ... ⊃ X_c. Claims inside
// the range p+q < dim X_level, t < q-p are discharged by a recursion along
// three exact-sequence rules down to line-bundle base facts; the result is
// a replayable derivation tree.

#include "fanokit/projective.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fanokit {

enum class Rule {
    LineBundleBase,    // leaf: dimension 0 by the projective module
    EulerPowerSeq,     // level 0: exterior power of the Euler sequence
    RestrictionSeq,    // restriction of Omega_X^q to the next hypersurface
    ConormalPowerSeq,  // exterior power of the conormal sequence
};

const char* rule_name(Rule r);
Rule rule_from_name(const std::string& name);

struct VanishingClaim {
    CompleteIntersectionSpec spec;
    int level = 0;  // which member of the tower (0 = P^n)
    CohomologyQuery query;

    VanishingClaim() = default;
    VanishingClaim(CompleteIntersectionSpec s, int lvl, CohomologyQuery q)
        : spec(std::move(s)), level(lvl), query(q) {
        if (level < 0 || level > spec.codim())
            throw std::invalid_argument("claim level out of range for the multidegree");
    }

    int dim_at_level() const { return spec.n - level; }
    // the certified range: p+q < dim, t < q-p
    bool in_range() const {
        return query.p + query.q < dim_at_level() && query.t < query.q - query.p;
    }
};

struct VanishingCertificate {
    VanishingClaim claim;
    Rule rule = Rule::LineBundleBase;
    std::vector<VanishingCertificate> premises;
};

enum class FailureReason { OutOfRange, RecursionFailed };

struct VanishingOutcome {
    std::optional<VanishingCertificate> certificate;  // engaged iff certified
    std::optional<FailureReason> reason;

    bool certified() const { return certificate.has_value(); }
    static VanishingOutcome certify(VanishingCertificate c) {
        return VanishingOutcome{std::move(c), std::nullopt};
    }
    static VanishingOutcome fail(FailureReason r) {
        return VanishingOutcome{std::nullopt, r};
    }
};

// Malformed certificate trees (wrong premise arity, rules applied to claims
// they cannot speak about) are structural errors, distinct from replay
// failures which just return false.
struct CertificateStructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Total: out-of-range claims come back NotCertified(out-of-range) instead of
// being attempted, since outside the range the sequences force nothing.
VanishingOutcome verify_vanishing(const VanishingClaim& claim);

// Independent replay of a derivation tree: every rule schema, side
// condition and leaf base fact is re-verified without re-running the search.
bool check_certificate(const VanishingCertificate& cert);

// All claims for X itself (level = c) with p+q < dim X, t_min <= t < q-p,
// in the fixed enumeration order (p, then q, then t ascending).
std::vector<std::pair<CohomologyQuery, VanishingOutcome>> sweep_range(
    const CompleteIntersectionSpec& spec, long long t_min);

long long default_sweep_tmin(const CompleteIntersectionSpec& spec);

// Canonical JSON: {"claim": {"n", "degrees", "level", "p", "q", "t"},
// "rule": ..., "premises": [...]}; leaves carry {"dimension": 0,
// "source": "line-bundle"} instead of premises.
nlohmann::ordered_json certificate_to_json(const VanishingCertificate& cert);
VanishingCertificate certificate_from_json(const nlohmann::ordered_json& j);

}  // namespace fanokit
