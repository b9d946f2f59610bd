#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fanokit/vanish.hpp"

using namespace fanokit;

namespace {

VanishingClaim pn_claim(int n, int p, int q, long long t) {
    return VanishingClaim(CompleteIntersectionSpec(n, {}), 0, CohomologyQuery(p, q, t));
}

void collect_leaves(VanishingCertificate& cert, std::vector<VanishingCertificate*>& out) {
    if (cert.rule == Rule::LineBundleBase) {
        out.push_back(&cert);
        return;
    }
    for (auto& p : cert.premises) collect_leaves(p, out);
}

}  // namespace

TEST_CASE("worked claims") {
    CHECK(verify_vanishing(pn_claim(3, 0, 1, 0)).certified());
    CHECK(bott_dimension(3, 0, 1, 0) == 0);

    // quadric threefold, H^1(Omega^1(-1)) = 0: p+q = 2 < 3, t = -1 < 0
    VanishingClaim quadric(CompleteIntersectionSpec(4, {2}), 1, CohomologyQuery(1, 1, -1));
    auto outcome = verify_vanishing(quadric);
    CHECK(outcome.certified());
    CHECK(check_certificate(*outcome.certificate));

    auto diagonal = verify_vanishing(pn_claim(3, 1, 1, 0));
    CHECK(!diagonal.certified());
    CHECK(diagonal.reason == FailureReason::OutOfRange);
    CHECK(bott_dimension(3, 1, 1, 0) == 1);
}

TEST_CASE("soundness against the bott oracle, small window") {
    for (int n = 1; n <= 4; ++n)
        for (int p = 0; p <= n; ++p)
            for (int q = 0; p + q <= n; ++q)
                for (long long t = -8; t <= 8; ++t) {
                    auto outcome = verify_vanishing(pn_claim(n, p, q, t));
                    if (outcome.certified()) CHECK(bott_dimension(n, p, q, t) == 0);
                }
}

TEST_CASE("completeness on the claimed range, small window") {
    for (int n = 1; n <= 4; ++n)
        for (int p = 0; p <= n; ++p)
            for (int q = 0; p + q < n; ++q)
                for (long long t = -8; t < q - p; ++t)
                    CHECK(verify_vanishing(pn_claim(n, p, q, t)).certified());
}

TEST_CASE("sweep over P^3 and a (2,3) complete intersection") {
    auto p3 = sweep_range(CompleteIntersectionSpec(3, {}), -6);
    CHECK(!p3.empty());
    for (const auto& [query, outcome] : p3) CHECK(outcome.certified());

    auto ci = sweep_range(CompleteIntersectionSpec(5, {2, 3}), -8);
    CHECK(!ci.empty());
    for (const auto& [query, outcome] : ci) CHECK(outcome.certified());

    // P^2: claims limited to p+q < 2, cross-checked against the oracle
    auto p2 = sweep_range(CompleteIntersectionSpec(2, {}), -3);
    for (const auto& [query, outcome] : p2) {
        CHECK(outcome.certified());
        CHECK(bott_dimension(2, query) == 0);
    }

    CHECK_THROWS_AS(sweep_range(CompleteIntersectionSpec(3, {}), 0), std::invalid_argument);
}

TEST_CASE("certificates replay and reject twisted leaves") {
    VanishingClaim claim(CompleteIntersectionSpec(5, {2, 3}), 2, CohomologyQuery(1, 1, -2));
    auto outcome = verify_vanishing(claim);
    REQUIRE(outcome.certified());
    auto cert = *outcome.certificate;
    CHECK(check_certificate(cert));

    std::vector<VanishingCertificate*> leaves;
    collect_leaves(cert, leaves);
    REQUIRE(!leaves.empty());
    for (auto* leaf : leaves) {
        auto saved = leaf->claim.query.t;
        leaf->claim.query.t = saved + 1;
        // every leaf sits under a rule node, so the premise schema breaks
        CHECK(!check_certificate(cert));
        leaf->claim.query.t = saved;
    }
    CHECK(check_certificate(cert));
}

TEST_CASE("a leaf pushed onto the diagonal fails the base fact") {
    auto outcome = verify_vanishing(pn_claim(3, 0, 0, -1));
    REQUIRE(outcome.certified());
    auto cert = *outcome.certificate;
    REQUIRE(cert.rule == Rule::LineBundleBase);
    cert.claim.query.t = 0;  // h^0(O) = 1
    CHECK(!check_certificate(cert));
}

TEST_CASE("hand-built leaves re-verify against the oracle") {
    // a leaf claiming h^1(P^3, Omega^1(0)) = 0 is false: the diagonal class
    VanishingCertificate bogus{pn_claim(3, 1, 1, 0), Rule::LineBundleBase, {}};
    CHECK(!check_certificate(bogus));
}

TEST_CASE("malformed trees are structural errors") {
    VanishingClaim claim(CompleteIntersectionSpec(4, {2}), 1, CohomologyQuery(1, 1, -1));
    auto outcome = verify_vanishing(claim);
    REQUIRE(outcome.certified());
    auto cert = *outcome.certificate;
    REQUIRE(cert.rule == Rule::ConormalPowerSeq);
    cert.premises.pop_back();
    CHECK_THROWS_AS(check_certificate(cert), CertificateStructureError);
}

TEST_CASE("certificates are deterministic and round-trip through JSON") {
    VanishingClaim claim(CompleteIntersectionSpec(5, {2, 3}), 2, CohomologyQuery(0, 2, -1));
    auto a = verify_vanishing(claim);
    auto b = verify_vanishing(claim);
    REQUIRE(a.certified());
    REQUIRE(b.certified());
    auto ja = certificate_to_json(*a.certificate);
    auto jb = certificate_to_json(*b.certificate);
    CHECK(ja.dump() == jb.dump());

    // byte-identical round trip through parse + reserialize
    std::string text = ja.dump(2);
    auto parsed = nlohmann::ordered_json::parse(text);
    CHECK(parsed.dump(2) == text);

    // and through the typed representation
    auto rebuilt = certificate_from_json(parsed);
    CHECK(certificate_to_json(rebuilt).dump(2) == text);
    CHECK(check_certificate(rebuilt));
}

TEST_CASE("tampered JSON fails replay or is rejected as malformed") {
    VanishingClaim claim(CompleteIntersectionSpec(4, {2}), 1, CohomologyQuery(1, 1, -1));
    auto outcome = verify_vanishing(claim);
    REQUIRE(outcome.certified());
    std::string text = certificate_to_json(*outcome.certificate).dump();

    // shift a premise twist inside the serialized tree
    auto pos = text.rfind("\"t\":-3");
    REQUIRE(pos != std::string::npos);
    std::string twisted = text;
    twisted.replace(pos, 6, "\"t\":-2");
    CHECK(!check_certificate(certificate_from_json(nlohmann::ordered_json::parse(twisted))));

    // structurally broken input
    std::string bad_rule = text;
    auto rpos = bad_rule.find("ConormalPowerSeq");
    bad_rule.replace(rpos, 16, "NoSuchRule123456");
    CHECK_THROWS_AS(certificate_from_json(nlohmann::ordered_json::parse(bad_rule)),
                    CertificateStructureError);
    CHECK_THROWS_AS(certificate_from_json(nlohmann::ordered_json::parse("{}")),
                    CertificateStructureError);
}

TEST_CASE("default sweep floor") {
    CHECK(default_sweep_tmin(CompleteIntersectionSpec(4, {2, 2})) == -11);
    CHECK(default_sweep_tmin(CompleteIntersectionSpec(3, {})) == -8);
}
