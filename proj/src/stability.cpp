#include "fanokit/stability.hpp"

#include <limits>

namespace fanokit {

const char* exceptional_name(Exceptional e) {
    switch (e) {
        case Exceptional::None: return "none";
        case Exceptional::Linear: return "linear";
        case Exceptional::Quadric: return "quadric";
    }
    throw std::logic_error("unknown exceptional tag");
}

const char* verdict_name(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::Stable: return "stable";
        case StabilityVerdict::ExcludedExceptional: return "excluded-exceptional";
        case StabilityVerdict::NotApplicable: return "not-applicable";
    }
    throw std::logic_error("unknown verdict tag");
}

SubsheafSlopeBound subsheaf_slope_ceiling(const CompleteIntersectionSpec& spec, int r) {
    if (r < 1 || r >= spec.dim())
        throw std::invalid_argument("subsheaf rank must satisfy 1 <= r < dim X");
    SubsheafSlopeBound out;
    out.ceiling = -Rat(spec.degree());
    const int level = spec.codim();
    for (long long t = r - 1; t >= -1; --t) {
        auto outcome = verify_vanishing(VanishingClaim(spec, level, CohomologyQuery(0, r, t)));
        if (!outcome.certified())
            throw std::logic_error("subsheaf bound: in-range vanishing failed to certify");
        out.certificates.push_back(std::move(*outcome.certificate));
    }
    return out;
}

SlopeReport slope_report(const CompleteIntersectionSpec& spec) {
    SlopeReport rep;
    rep.spec = spec;
    rep.degree = spec.degree();
    rep.fano = spec.fano();
    rep.canonical_twist = spec.canonical_twist();
    rep.mu_omega = Rat(rep.degree * rep.canonical_twist) / spec.dim();
    rep.subsheaf_slope_bound = -Rat(rep.degree);

    if (spec.codim() == 0)
        rep.exceptional = Exceptional::Linear;
    else if (spec.codim() == 1 && spec.degrees[0] == 2)
        rep.exceptional = Exceptional::Quadric;
    else
        rep.exceptional = Exceptional::None;

    if (!rep.fano) {
        rep.verdict = StabilityVerdict::NotApplicable;
        rep.verdict_detail = "not Fano";
        return rep;
    }
    if (spec.dim() < 3) {
        rep.verdict = StabilityVerdict::NotApplicable;
        rep.verdict_detail = "dim < 3";
        return rep;
    }
    if (rep.exceptional != Exceptional::None) {
        rep.verdict = StabilityVerdict::ExcludedExceptional;
        rep.verdict_detail = exceptional_name(rep.exceptional);
        return rep;
    }
    // the corrected hypothesis; automatic once the exceptional cases are out
    if (spec.degree_sum() - 1 - spec.codim() <= 0) {
        rep.verdict = StabilityVerdict::NotApplicable;
        rep.verdict_detail = "sum d_i - 1 - c <= 0";
        return rep;
    }
    rep.verdict = StabilityVerdict::Stable;
    for (int r = 1; r < spec.dim(); ++r) {
        auto outcome = verify_vanishing(
            VanishingClaim(spec, spec.codim(), CohomologyQuery(0, r, r - 1)));
        if (!outcome.certified())
            throw std::logic_error("slope report: in-range vanishing failed to certify");
        rep.certificates.push_back(std::move(*outcome.certificate));
    }
    return rep;
}

namespace {

bool affirmative(Tri t) { return t == Tri::Yes; }

}  // namespace

ImplicationVerdict implication_verdict(const ImplicationInput& input) {
    if (input.tangent_stable == Tri::Yes && input.tangent_semistable == Tri::No)
        throw std::invalid_argument("inconsistent input: stable yes with semistable no");
    ImplicationInput in = input;
    if (in.tangent_stable == Tri::Yes) in.tangent_semistable = Tri::Yes;

    ImplicationVerdict verdict;
    auto fire = [&](const char* id, std::initializer_list<const char*> premises) {
        RuleTrace tr;
        tr.rule = id;
        for (const char* p : premises) tr.premises.emplace_back(p);
        verdict.trace.push_back(std::move(tr));
    };

    // On a normal projective variety of Picard rank one with separably
    // uniruled smooth locus, a tangent sheaf that is not unstable
    // (= semistable) forces separable rational connectedness.
    if (in.picard_rank_one && affirmative(in.separably_uniruled) &&
        affirmative(in.tangent_semistable)) {
        verdict.src = Tri::Yes;
        fire("picard-one-semistable-src",
             {"picard_rank_one", "separably_uniruled", "tangent_semistable"});
    }
    // Fano + separably uniruled + N_1 generated by free curve classes +
    // semistable tangent sheaf.
    if (in.fano && affirmative(in.separably_uniruled) &&
        affirmative(in.n1_generated_by_free) && affirmative(in.tangent_semistable)) {
        verdict.src = Tri::Yes;
        fire("fano-free-classes-src",
             {"fano", "separably_uniruled", "n1_generated_by_free", "tangent_semistable"});
    }
    // For a smooth Fano complete intersection of dimension >= 3 (Picard
    // rank one by Grothendieck-Lefschetz) with stable cotangent sheaf,
    // separable uniruledness already gives SRC.
    if (in.fano && affirmative(in.separably_uniruled) && affirmative(in.tangent_stable)) {
        verdict.src = Tri::Yes;
        fire("fano-ci-stable-src", {"fano", "separably_uniruled", "tangent_stable"});
    }
    // SRC implies separable uniruledness, so its failure rules SRC out.
    if (in.separably_uniruled == Tri::No) {
        verdict.src = Tri::No;
        fire("src-implies-separably-uniruled", {"separably_uniruled=no"});
    }
    return verdict;
}

nlohmann::ordered_json slope_report_to_json(const SlopeReport& rep, bool include_certificates) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json spec;
    spec["n"] = rep.spec.n;
    spec["degrees"] = rep.spec.degrees;
    spec["char"] = rep.spec.field.characteristic;
    j["spec"] = std::move(spec);
    j["dim"] = rep.spec.dim();
    if (rep.degree <= std::numeric_limits<long long>::max())
        j["degree"] = rep.degree.convert_to<long long>();
    else
        j["degree"] = to_decimal(rep.degree);
    j["fano"] = rep.fano;
    j["exceptional"] = exceptional_name(rep.exceptional);
    j["canonical_twist"] = rep.canonical_twist;
    j["mu_omega"] = to_fraction_string(rep.mu_omega);
    j["subsheaf_slope_bound"] = to_fraction_string(rep.subsheaf_slope_bound);
    j["verdict"] = verdict_name(rep.verdict);
    if (!rep.verdict_detail.empty()) j["verdict_detail"] = rep.verdict_detail;
    if (include_certificates && !rep.certificates.empty()) {
        nlohmann::ordered_json certs = nlohmann::ordered_json::array();
        for (const auto& c : rep.certificates) certs.push_back(certificate_to_json(c));
        j["certificates"] = std::move(certs);
    }
    return j;
}

nlohmann::ordered_json implication_to_json(const ImplicationVerdict& v) {
    nlohmann::ordered_json j;
    j["src"] = tri_name(v.src);
    nlohmann::ordered_json rules = nlohmann::ordered_json::array();
    for (const auto& tr : v.trace) {
        nlohmann::ordered_json r;
        r["rule"] = tr.rule;
        r["premises"] = tr.premises;
        rules.push_back(std::move(r));
    }
    j["rules"] = std::move(rules);
    return j;
}

}  // namespace fanokit
