// fanokit command line: exact cohomology dimensions, vanishing certificates,
// slope stability reports and splitting types, with deterministic JSON output.
//
// Exit codes: 0 success / all certified, 1 negative finding, 2 usage error.

#include "fanokit/curves.hpp"
#include "fanokit/stability.hpp"
#include "fanokit/vanish.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace fanokit;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

std::vector<int> normalize_degrees(std::vector<int> degrees) {
    for (int d : degrees) {
        if (d == 1)
            throw CLI::ValidationError(
                "--degrees",
                "degree-1 entries are hyperplane sections: intersect them away and lower n");
        if (d < 2) throw CLI::ValidationError("--degrees", "degrees must be >= 2");
    }
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

void print_json(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::string query_string(const CompleteIntersectionSpec& spec, const CohomologyQuery& q) {
    std::ostringstream os;
    os << "H^" << q.p << "(";
    if (spec.codim() == 0)
        os << "P^" << spec.n;
    else
        os << "X";
    os << ", Omega^" << q.q << "(" << q.t << "))";
    return os.str();
}

int cmd_bott(int n, int p, int q, long long t) {
    std::cout << bott_dimension(n, p, q, t) << "\n";
    return kExitOk;
}

int cmd_vanish(const CompleteIntersectionSpec& spec, bool sweep, long long tmin,
               std::optional<int> p, std::optional<int> q, std::optional<long long> t,
               bool json) {
    if (sweep) {
        auto results = sweep_range(spec, tmin);
        size_t certified = 0;
        const std::pair<CohomologyQuery, VanishingOutcome>* first_failure = nullptr;
        for (const auto& r : results) {
            if (r.second.certified())
                ++certified;
            else if (!first_failure)
                first_failure = &r;
        }
        if (json) {
            nlohmann::ordered_json j;
            nlohmann::ordered_json js;
            js["n"] = spec.n;
            js["degrees"] = spec.degrees;
            j["spec"] = std::move(js);
            j["tmin"] = tmin;
            j["claims"] = results.size();
            j["certified"] = certified;
            j["all_certified"] = certified == results.size();
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& r : results) {
                nlohmann::ordered_json e;
                e["p"] = r.first.p;
                e["q"] = r.first.q;
                e["t"] = r.first.t;
                e["certified"] = r.second.certified();
                if (!r.second.certified())
                    e["reason"] = r.second.reason == FailureReason::OutOfRange
                                      ? "out-of-range"
                                      : "recursion-failed";
                arr.push_back(std::move(e));
            }
            j["results"] = std::move(arr);
            print_json(j);
        } else if (certified == results.size()) {
            std::cout << "all " << results.size() << " claims certified\n";
        } else {
            std::cout << certified << " of " << results.size()
                      << " claims certified; first failure: "
                      << query_string(spec, first_failure->first) << "\n";
        }
        return certified == results.size() ? kExitOk : kExitNegative;
    }

    if (!p || !q || !t)
        throw CLI::ValidationError("vanish", "need either --sweep or all of -p, -q, -t");
    VanishingClaim claim(spec, spec.codim(), CohomologyQuery(*p, *q, *t));
    auto outcome = verify_vanishing(claim);
    if (json) {
        if (outcome.certified()) {
            print_json(certificate_to_json(*outcome.certificate));
        } else {
            nlohmann::ordered_json j;
            j["certified"] = false;
            j["reason"] = outcome.reason == FailureReason::OutOfRange ? "out-of-range"
                                                                      : "recursion-failed";
            print_json(j);
        }
    } else if (outcome.certified()) {
        std::cout << query_string(spec, claim.query) << " = 0 certified\n";
    } else {
        std::cout << "not certified: "
                  << (outcome.reason == FailureReason::OutOfRange ? "out of range"
                                                                  : "recursion failed")
                  << "\n";
    }
    return outcome.certified() ? kExitOk : kExitNegative;
}

int cmd_stability(const CompleteIntersectionSpec& spec, bool json) {
    auto rep = slope_report(spec);
    if (json) {
        print_json(slope_report_to_json(rep));
    } else {
        std::cout << "X: complete intersection of degree (";
        for (size_t i = 0; i < spec.degrees.size(); ++i)
            std::cout << (i ? "," : "") << spec.degrees[i];
        std::cout << ") in P^" << spec.n << ", dim " << spec.dim() << "\n";
        std::cout << "degree " << rep.degree << ", fano: " << (rep.fano ? "yes" : "no")
                  << ", exceptional: " << exceptional_name(rep.exceptional) << "\n";
        std::cout << "mu(Omega_X) = " << to_fraction_string(rep.mu_omega)
                  << ", subsheaf slope bound = " << to_fraction_string(rep.subsheaf_slope_bound)
                  << "\n";
        switch (rep.verdict) {
            case StabilityVerdict::Stable:
                std::cout << "verdict: stable (" << rep.certificates.size()
                          << " vanishing certificates attached)\n";
                break;
            case StabilityVerdict::ExcludedExceptional:
                std::cout << "verdict: excluded: " << rep.verdict_detail << "\n";
                break;
            case StabilityVerdict::NotApplicable:
                std::cout << "verdict: not-applicable: " << rep.verdict_detail << "\n";
                break;
        }
    }
    return rep.verdict == StabilityVerdict::Stable ? kExitOk : kExitNegative;
}

int cmd_splitting(const std::string& path, FieldSpec default_field, bool json) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("splitting", "cannot open input file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CurveProblem problem = parse_curve_problem(buffer.str(), default_field);
    const RationalCurveMap& phi = *problem.curve;

    SplittingType st;
    if (problem.hypersurface) {
        if (!on_curve_check(*problem.hypersurface, phi)) {
            std::cerr << "error: curve does not lie on the hypersurface\n";
            return kExitNegative;
        }
        st = splitting_of_pullback_tangent(*problem.hypersurface, phi);
    } else {
        st = splitting_of_pullback_tangent_pn(phi);
    }

    if (json) {
        nlohmann::ordered_json j;
        j["ambient_dim"] = phi.n;
        if (problem.hypersurface) j["hypersurface_degree"] = problem.hypersurface->degree;
        j["char"] = phi.field.characteristic;
        j["curve_degree"] = phi.degree;
        auto sj = splitting_to_json(st);
        for (auto& [k, v] : sj.items()) j[k] = v;
        print_json(j);
    } else {
        std::cout << splitting_to_string(st) << "; " << (st.free() ? "free" : "not free");
        if (st.free()) std::cout << "; positive rank >= " << st.positive_count();
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_survey(int nmax, int dmax, int cmax, std::optional<long long> tmin_opt, Tri uniruled,
               bool json) {
    struct Row {
        CompleteIntersectionSpec spec;
        SlopeReport report;
        std::string sweep_status;
        bool sweep_ok;
        ImplicationVerdict verdict;
    };
    std::vector<Row> rows;

    // ascending multidegrees, lexicographic within each (n, c)
    std::vector<int> stack;
    auto emit = [&](int n) {
        long long sum = 0;
        for (int d : stack) sum += d;
        if (sum > n) return false;  // survey covers the Fano range only
        CompleteIntersectionSpec spec(n, stack);
        Row row;
        row.spec = spec;
        row.report = slope_report(spec);
        long long tmin = tmin_opt.value_or(default_sweep_tmin(spec));
        auto results = sweep_range(spec, tmin);
        row.sweep_ok = true;
        for (const auto& r : results)
            if (!r.second.certified()) {
                row.sweep_ok = false;
                std::ostringstream os;
                os << "first-failure p=" << r.first.p << " q=" << r.first.q
                   << " t=" << r.first.t;
                row.sweep_status = os.str();
                break;
            }
        if (row.sweep_ok) row.sweep_status = "all-certified";
        ImplicationInput in;
        in.fano = row.report.fano;
        in.picard_rank_one = spec.dim() >= 3;
        in.separably_uniruled = uniruled;
        if (row.report.verdict == StabilityVerdict::Stable) {
            in.tangent_stable = Tri::Yes;
            in.tangent_semistable = Tri::Yes;
        }
        row.verdict = implication_verdict(in);
        rows.push_back(std::move(row));
        return true;
    };

    for (int n = 1; n <= nmax; ++n) {
        // c = 0 row (P^n itself), then deeper multidegrees
        std::function<void(int, int)> rec = [&](int c_left, int min_d) {
            if (!emit(n)) return;
            if (c_left == 0) return;
            for (int d = min_d; d <= dmax; ++d) {
                stack.push_back(d);
                rec(c_left - 1, d);
                stack.pop_back();
            }
        };
        rec(std::min(cmax, n - 1), 2);
    }

    bool all_ok = true;
    for (const auto& r : rows) all_ok = all_ok && r.sweep_ok;

    if (json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json j = slope_report_to_json(r.report, false);
            j["vanishing_sweep"] = r.sweep_status;
            j["implication"] = implication_to_json(r.verdict);
            arr.push_back(std::move(j));
        }
        print_json(arr);
    } else {
        for (const auto& r : rows) {
            std::cout << "P^" << r.spec.n << " deg (";
            for (size_t i = 0; i < r.spec.degrees.size(); ++i)
                std::cout << (i ? "," : "") << r.spec.degrees[i];
            std::cout << ")  dim " << r.spec.dim()
                      << "  mu=" << to_fraction_string(r.report.mu_omega)
                      << "  verdict=" << verdict_name(r.report.verdict)
                      << "  sweep=" << r.sweep_status << "  src=" << tri_name(r.verdict.src)
                      << "\n";
        }
    }
    return all_ok ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fanokit: sheaf cohomology vanishing certificates, slope stability and "
                 "splitting types for complete intersections"};
    app.require_subcommand(1);
    unsigned characteristic = 0;
    app.add_option("--char", characteristic, "base field characteristic (0 or a prime)")
        ->capture_default_str();

    // bott
    auto* bott = app.add_subcommand("bott", "h^p(P^n, Omega^q(t)) by the closed formula");
    int bn = 0, bp = 0, bq = 0;
    long long bt = 0;
    bott->add_option("-n", bn, "ambient dimension")->required();
    bott->add_option("-p", bp, "cohomological degree")->required();
    bott->add_option("-q", bq, "exterior power")->required();
    bott->add_option("-t", bt, "twist")->required();

    // vanish
    auto* vanish = app.add_subcommand("vanish", "certify H^p(X, Omega^q(t)) = 0");
    int vn = 0;
    std::vector<int> vdegrees;
    bool vsweep = false, vjson = false;
    std::optional<int> vp, vq;
    std::optional<long long> vt;
    std::optional<long long> vtmin;
    vanish->add_option("-n", vn, "ambient dimension")->required();
    vanish->add_option("-d,--degrees", vdegrees, "multidegree, comma separated")
        ->delimiter(',');
    vanish->add_option("-p", vp, "cohomological degree");
    vanish->add_option("-q", vq, "exterior power");
    vanish->add_option("-t", vt, "twist");
    vanish->add_flag("--sweep", vsweep, "verify the whole claimed range");
    vanish->add_option("--tmin", vtmin, "lower twist bound for the sweep");
    vanish->add_flag("--json", vjson, "machine readable output");

    // stability
    auto* stability = app.add_subcommand("stability", "slope report for a complete intersection");
    int sn = 0;
    std::vector<int> sdegrees;
    bool sjson = false;
    stability->add_option("-n", sn, "ambient dimension")->required();
    stability->add_option("-d,--degrees", sdegrees, "multidegree, comma separated")
        ->delimiter(',');
    stability->add_flag("--json", sjson, "machine readable output");

    // splitting
    auto* splitting = app.add_subcommand(
        "splitting", "splitting type of the pulled-back tangent bundle along a curve");
    std::string sfile;
    bool pjson = false;
    splitting->add_option("file", sfile, "input file with F and phi lines")->required();
    splitting->add_flag("--json", pjson, "machine readable output");

    // survey
    auto* survey = app.add_subcommand("survey", "batch report over Fano multidegrees");
    int nmax = 0;
    std::optional<int> dmax_opt, cmax_opt;
    std::optional<long long> survey_tmin;
    std::string uniruled_flag = "unknown";
    bool yjson = false;
    survey->add_option("--nmax", nmax, "largest ambient dimension")->required();
    survey->add_option("--dmax", dmax_opt, "largest degree factor");
    survey->add_option("--cmax", cmax_opt, "largest codimension");
    survey->add_option("--tmin", survey_tmin, "lower twist bound for the sweeps");
    survey->add_option("--uniruled", uniruled_flag,
                       "user-supplied separable uniruledness flag (yes/no/unknown)");
    survey->add_flag("--json", yjson, "machine readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        FieldSpec field(characteristic);
        if (bott->parsed()) return cmd_bott(bn, bp, bq, bt);
        if (vanish->parsed()) {
            CompleteIntersectionSpec spec(vn, normalize_degrees(vdegrees), field);
            long long tmin = vtmin.value_or(default_sweep_tmin(spec));
            return cmd_vanish(spec, vsweep, tmin, vp, vq, vt, vjson);
        }
        if (stability->parsed()) {
            CompleteIntersectionSpec spec(sn, normalize_degrees(sdegrees), field);
            return cmd_stability(spec, sjson);
        }
        if (splitting->parsed()) return cmd_splitting(sfile, field, pjson);
        if (survey->parsed())
            return cmd_survey(nmax, dmax_opt.value_or(nmax), cmax_opt.value_or(nmax),
                              survey_tmin, tri_from_name(uniruled_flag), yjson);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitNegative;
    }
    return kExitUsage;
}
