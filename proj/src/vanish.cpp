#include "fanokit/vanish.hpp"

namespace fanokit {

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::LineBundleBase: return "LineBundleBase";
        case Rule::EulerPowerSeq: return "EulerPowerSeq";
        case Rule::RestrictionSeq: return "RestrictionSeq";
        case Rule::ConormalPowerSeq: return "ConormalPowerSeq";
    }
    throw std::logic_error("unknown rule");
}

Rule rule_from_name(const std::string& name) {
    if (name == "LineBundleBase") return Rule::LineBundleBase;
    if (name == "EulerPowerSeq") return Rule::EulerPowerSeq;
    if (name == "RestrictionSeq") return Rule::RestrictionSeq;
    if (name == "ConormalPowerSeq") return Rule::ConormalPowerSeq;
    throw CertificateStructureError("unknown rule name: " + name);
}

namespace {

// Line-bundle dimension for a leaf claim, when the projective module can
// evaluate it: q = 0 at any level, or any (p,q,t) on P^n itself.
Int leaf_dimension(const VanishingClaim& c) {
    if (c.query.q == 0)
        return line_bundle_cohomology(c.spec.prefix(c.level), c.query.p, c.query.t);
    if (c.level == 0) return bott_dimension(c.spec.n, c.query);
    throw CertificateStructureError(
        "LineBundleBase leaf is not a line-bundle or P^n fact");
}

struct Measure {
    int level;
    int q;
    bool operator<(const Measure& o) const {
        return level < o.level || (level == o.level && q < o.q);
    }
};

// Recursive search. `bound` is the lexicographic termination measure of the
// caller; every recursive premise must strictly decrease it.
std::optional<VanishingCertificate> build(const VanishingClaim& claim,
                                          std::optional<Measure> bound) {
    Measure here{claim.level, claim.query.q};
    if (bound && !(here < *bound))
        throw std::logic_error("vanishing recursion: termination measure failed to decrease");
    if (!claim.in_range()) return std::nullopt;

    const int p = claim.query.p;
    const int q = claim.query.q;
    const long long t = claim.query.t;

    if (q == 0) {
        if (leaf_dimension(claim) != 0) return std::nullopt;
        return VanishingCertificate{claim, Rule::LineBundleBase, {}};
    }

    if (claim.level == 0) {
        // H^{p-1}(Omega^{q-1}(t)) -> H^p(Omega^q(t)) -> H^p(\wedge^q V (t-q))
        std::vector<VanishingCertificate> premises;
        if (p >= 1) {
            VanishingClaim rec(claim.spec, 0, CohomologyQuery(p - 1, q - 1, t));
            auto sub = build(rec, here);
            if (!sub) return std::nullopt;
            premises.push_back(std::move(*sub));
        }
        VanishingClaim base(claim.spec, 0, CohomologyQuery(p, 0, t - q));
        if (leaf_dimension(base) != 0) return std::nullopt;
        premises.push_back(VanishingCertificate{base, Rule::LineBundleBase, {}});
        return VanishingCertificate{claim, Rule::EulerPowerSeq, std::move(premises)};
    }

    // hypersurface step: Y = level, X = level-1, d = degrees[level-1]
    const int level = claim.level;
    const int d = claim.spec.degrees[level - 1];
    // side conditions that keep the twisted premises inside the range
    if (!((p + 1) + q < claim.spec.n - (level - 1))) return std::nullopt;
    if (!(t - d < q - (p + 1))) return std::nullopt;

    VanishingClaim onX(claim.spec, level - 1, CohomologyQuery(p, q, t));
    VanishingClaim onXTwisted(claim.spec, level - 1, CohomologyQuery(p + 1, q, t - d));
    auto premX = build(onX, here);
    if (!premX) return std::nullopt;
    auto premXTwisted = build(onXTwisted, here);
    if (!premXTwisted) return std::nullopt;
    VanishingCertificate restriction{
        claim, Rule::RestrictionSeq, {std::move(*premX), std::move(*premXTwisted)}};

    VanishingClaim lower(claim.spec, level, CohomologyQuery(p + 1, q - 1, t - d));
    auto premLower = build(lower, here);
    if (!premLower) return std::nullopt;

    return VanishingCertificate{
        claim, Rule::ConormalPowerSeq, {std::move(restriction), std::move(*premLower)}};
}

bool same_tower(const VanishingClaim& a, const VanishingClaim& b) {
    return a.spec.n == b.spec.n && a.spec.degrees == b.spec.degrees;
}

bool claims_match(const VanishingClaim& have, int level, int p, int q, long long t) {
    return have.level == level && have.query.p == p && have.query.q == q && have.query.t == t;
}

bool check_node(const VanishingCertificate& cert) {
    const VanishingClaim& c = cert.claim;
    const int p = c.query.p;
    const int q = c.query.q;
    const long long t = c.query.t;

    switch (cert.rule) {
        case Rule::LineBundleBase: {
            if (!cert.premises.empty())
                throw CertificateStructureError("LineBundleBase must not have premises");
            return leaf_dimension(c) == 0;
        }
        case Rule::EulerPowerSeq: {
            if (c.level != 0 || q < 1)
                throw CertificateStructureError("EulerPowerSeq applies on P^n with q >= 1");
            size_t want = (p == 0) ? 1 : 2;
            if (cert.premises.size() != want)
                throw CertificateStructureError("EulerPowerSeq premise count mismatch");
            if (!c.in_range()) return false;
            size_t idx = 0;
            if (p >= 1) {
                const auto& rec = cert.premises[idx++];
                if (!same_tower(rec.claim, c) ||
                    !claims_match(rec.claim, 0, p - 1, q - 1, t))
                    return false;
                if (!check_node(rec)) return false;
            }
            const auto& base = cert.premises[idx];
            if (base.rule != Rule::LineBundleBase) return false;
            if (!same_tower(base.claim, c) || !claims_match(base.claim, 0, p, 0, t - q))
                return false;
            return check_node(base);
        }
        case Rule::RestrictionSeq: {
            if (c.level < 1)
                throw CertificateStructureError("RestrictionSeq needs a hypersurface level");
            if (cert.premises.size() != 2)
                throw CertificateStructureError("RestrictionSeq premise count mismatch");
            if (!c.in_range()) return false;
            const int d = c.spec.degrees[c.level - 1];
            const auto& a = cert.premises[0];
            const auto& b = cert.premises[1];
            if (!same_tower(a.claim, c) || !claims_match(a.claim, c.level - 1, p, q, t))
                return false;
            if (!same_tower(b.claim, c) ||
                !claims_match(b.claim, c.level - 1, p + 1, q, t - d))
                return false;
            return check_node(a) && check_node(b);
        }
        case Rule::ConormalPowerSeq: {
            if (c.level < 1 || q < 1)
                throw CertificateStructureError(
                    "ConormalPowerSeq applies at hypersurface levels with q >= 1");
            if (cert.premises.size() != 2)
                throw CertificateStructureError("ConormalPowerSeq premise count mismatch");
            if (!c.in_range()) return false;
            const int d = c.spec.degrees[c.level - 1];
            // side conditions that keep the twisted premises inside the range
            if (!((p + 1) + q < c.spec.n - (c.level - 1))) return false;
            if (!(t - d < q - (p + 1))) return false;
            const auto& restr = cert.premises[0];
            const auto& lower = cert.premises[1];
            if (restr.rule != Rule::RestrictionSeq) return false;
            if (!same_tower(restr.claim, c) || !claims_match(restr.claim, c.level, p, q, t))
                return false;
            if (!same_tower(lower.claim, c) ||
                !claims_match(lower.claim, c.level, p + 1, q - 1, t - d))
                return false;
            return check_node(restr) && check_node(lower);
        }
    }
    throw CertificateStructureError("unknown rule tag");
}

}  // namespace

VanishingOutcome verify_vanishing(const VanishingClaim& claim) {
    if (!claim.in_range()) return VanishingOutcome::fail(FailureReason::OutOfRange);
    auto cert = build(claim, std::nullopt);
    if (!cert) return VanishingOutcome::fail(FailureReason::RecursionFailed);
    return VanishingOutcome::certify(std::move(*cert));
}

bool check_certificate(const VanishingCertificate& cert) { return check_node(cert); }

std::vector<std::pair<CohomologyQuery, VanishingOutcome>> sweep_range(
    const CompleteIntersectionSpec& spec, long long t_min) {
    if (t_min > -1) throw std::invalid_argument("sweep: t_min must be <= -1");
    std::vector<std::pair<CohomologyQuery, VanishingOutcome>> out;
    const int level = spec.codim();
    const int dim = spec.dim();
    for (int p = 0; p < dim; ++p) {
        for (int q = 0; p + q < dim; ++q) {
            for (long long t = t_min; t < static_cast<long long>(q) - p; ++t) {
                CohomologyQuery query(p, q, t);
                out.emplace_back(query, verify_vanishing(VanishingClaim(spec, level, query)));
            }
        }
    }
    return out;
}

long long default_sweep_tmin(const CompleteIntersectionSpec& spec) {
    int maxd = 0;
    for (int d : spec.degrees) maxd = std::max(maxd, d);
    return -(static_cast<long long>(spec.n) + maxd + 5);
}

nlohmann::ordered_json certificate_to_json(const VanishingCertificate& cert) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json claim;
    claim["n"] = cert.claim.spec.n;
    claim["degrees"] = cert.claim.spec.degrees;
    claim["level"] = cert.claim.level;
    claim["p"] = cert.claim.query.p;
    claim["q"] = cert.claim.query.q;
    claim["t"] = cert.claim.query.t;
    j["claim"] = std::move(claim);
    j["rule"] = rule_name(cert.rule);
    if (cert.rule == Rule::LineBundleBase) {
        j["dimension"] = 0;
        j["source"] = "line-bundle";
    } else {
        nlohmann::ordered_json premises = nlohmann::ordered_json::array();
        for (const auto& p : cert.premises) premises.push_back(certificate_to_json(p));
        j["premises"] = std::move(premises);
    }
    return j;
}

VanishingCertificate certificate_from_json(const nlohmann::ordered_json& j) {
    try {
        if (!j.contains("claim") || !j.contains("rule"))
            throw CertificateStructureError("certificate JSON needs claim and rule");
        const auto& cj = j.at("claim");
        CompleteIntersectionSpec spec(cj.at("n").get<int>(),
                                      cj.at("degrees").get<std::vector<int>>());
        VanishingClaim claim(spec, cj.at("level").get<int>(),
                             CohomologyQuery(cj.at("p").get<int>(), cj.at("q").get<int>(),
                                             cj.at("t").get<long long>()));
        VanishingCertificate cert;
        cert.claim = std::move(claim);
        cert.rule = rule_from_name(j.at("rule").get<std::string>());
        if (j.contains("premises"))
            for (const auto& pj : j.at("premises"))
                cert.premises.push_back(certificate_from_json(pj));
        return cert;
    } catch (const CertificateStructureError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw CertificateStructureError(std::string("malformed certificate JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw CertificateStructureError(std::string("malformed certificate claim: ") + e.what());
    }
}

}  // namespace fanokit
