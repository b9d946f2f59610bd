#include "fanokit/curves.hpp"
#include "fanokit/stability.hpp"
#include "fanokit/vanish.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace fanokit;

namespace {

Int to_int(const py::handle& h) { return Int(py::str(h).cast<std::string>()); }

py::object from_int(const Int& v) {
    PyObject* p = PyLong_FromString(v.str().c_str(), nullptr, 10);
    if (!p) throw py::error_already_set();
    return py::reinterpret_steal<py::object>(p);
}

CompleteIntersectionSpec make_spec(int n, const std::vector<int>& degrees, unsigned p) {
    return CompleteIntersectionSpec(n, degrees, FieldSpec(p));
}

py::dict outcome_to_dict(const VanishingOutcome& outcome) {
    py::dict d;
    d["certified"] = outcome.certified();
    if (outcome.certified())
        d["certificate"] = certificate_to_json(*outcome.certificate).dump();
    else
        d["reason"] = outcome.reason == FailureReason::OutOfRange ? "out-of-range"
                                                                  : "recursion-failed";
    return d;
}

py::dict implication_to_dict(const ImplicationVerdict& v) {
    py::dict d;
    d["src"] = tri_name(v.src);
    py::list rules;
    for (const auto& tr : v.trace) {
        py::dict r;
        r["rule"] = tr.rule;
        r["premises"] = tr.premises;
        rules.append(r);
    }
    d["rules"] = rules;
    return d;
}

py::dict splitting_to_dict(const SplittingType& st) {
    py::dict d;
    d["splitting"] = st.parts;
    d["rank"] = st.rank();
    d["degree"] = st.degree();
    d["free"] = st.free();
    d["positive_count"] = st.positive_count();
    return d;
}

HypersurfaceForm make_hypersurface(int n,
                                   const std::vector<std::pair<std::vector<int>, py::object>>& terms,
                                   unsigned p) {
    std::map<ExponentVector, Int> coeffs;
    for (const auto& [exps, c] : terms) coeffs[exps] += to_int(c);
    return HypersurfaceForm(n, std::move(coeffs), FieldSpec(p));
}

RationalCurveMap make_curve(const std::vector<std::vector<py::object>>& comps, unsigned p) {
    if (comps.empty() || comps[0].empty())
        throw std::invalid_argument("curve components must be nonempty");
    std::vector<std::vector<Int>> cc;
    for (const auto& comp : comps) {
        std::vector<Int> v;
        for (const auto& x : comp) v.push_back(to_int(x));
        cc.push_back(std::move(v));
    }
    int e = static_cast<int>(cc[0].size()) - 1;
    int n = static_cast<int>(cc.size()) - 1;
    return RationalCurveMap(n, e, std::move(cc), FieldSpec(p));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact cohomology vanishing certificates, slope stability and splitting types";

    py::class_<CompleteIntersectionSpec>(m, "Spec")
        .def(py::init(&make_spec), py::arg("n"), py::arg("degrees") = std::vector<int>{},
             py::arg("char") = 0u)
        .def_readonly("n", &CompleteIntersectionSpec::n)
        .def_readonly("degrees", &CompleteIntersectionSpec::degrees)
        .def_property_readonly("char",
                               [](const CompleteIntersectionSpec& s) {
                                   return s.field.characteristic;
                               })
        .def("dim", &CompleteIntersectionSpec::dim)
        .def("codim", &CompleteIntersectionSpec::codim)
        .def("degree", [](const CompleteIntersectionSpec& s) { return from_int(s.degree()); })
        .def("fano", &CompleteIntersectionSpec::fano)
        .def("canonical_twist", &CompleteIntersectionSpec::canonical_twist)
        .def("__repr__", [](const CompleteIntersectionSpec& s) {
            std::string r = "Spec(n=" + std::to_string(s.n) + ", degrees=[";
            for (size_t i = 0; i < s.degrees.size(); ++i)
                r += (i ? "," : "") + std::to_string(s.degrees[i]);
            return r + "])";
        });

    m.def("binom", [](const py::object& a, const py::object& b) {
        return from_int(binom(to_int(a), to_int(b)));
    }, py::arg("a"), py::arg("b"), "binomial with the zero-outside-range convention");

    m.def("bott_dimension", [](int n, int p, int q, long long t) {
        return from_int(bott_dimension(n, p, q, t));
    }, py::arg("n"), py::arg("p"), py::arg("q"), py::arg("t"),
       "h^p(P^n, Omega^q(t)) by the closed formula");

    m.def("hilbert_h0", [](const CompleteIntersectionSpec& spec, long long t) {
        return from_int(hilbert_h0(spec, t));
    }, py::arg("spec"), py::arg("t"));

    m.def("line_bundle_cohomology",
          [](const CompleteIntersectionSpec& spec, int p, long long t) {
              return from_int(line_bundle_cohomology(spec, p, t));
          },
          py::arg("spec"), py::arg("p"), py::arg("t"));

    m.def("verify_vanishing",
          [](const CompleteIntersectionSpec& spec, int level, int p, int q, long long t) {
              return outcome_to_dict(
                  verify_vanishing(VanishingClaim(spec, level, CohomologyQuery(p, q, t))));
          },
          py::arg("spec"), py::arg("level"), py::arg("p"), py::arg("q"), py::arg("t"));

    m.def("check_certificate", [](const std::string& json_text) {
        auto j = nlohmann::ordered_json::parse(json_text);
        return check_certificate(certificate_from_json(j));
    }, py::arg("certificate_json"));

    m.def("sweep_range", [](const CompleteIntersectionSpec& spec, long long tmin) {
        py::list out;
        for (const auto& [query, outcome] : sweep_range(spec, tmin)) {
            py::dict d;
            d["p"] = query.p;
            d["q"] = query.q;
            d["t"] = query.t;
            d["certified"] = outcome.certified();
            if (!outcome.certified())
                d["reason"] = outcome.reason == FailureReason::OutOfRange ? "out-of-range"
                                                                          : "recursion-failed";
            out.append(d);
        }
        return out;
    }, py::arg("spec"), py::arg("tmin"));

    m.def("default_sweep_tmin", &default_sweep_tmin, py::arg("spec"));

    m.def("slope_report_json",
          [](const CompleteIntersectionSpec& spec, bool include_certificates) {
              return slope_report_to_json(slope_report(spec), include_certificates).dump();
          },
          py::arg("spec"), py::arg("include_certificates") = true,
          "canonical JSON rendering of the slope/stability report");

    m.def("subsheaf_slope_ceiling", [](const CompleteIntersectionSpec& spec, int r) {
        auto bound = subsheaf_slope_ceiling(spec, r);
        py::dict d;
        d["ceiling"] = to_fraction_string(bound.ceiling);
        py::list certs;
        for (const auto& c : bound.certificates)
            certs.append(certificate_to_json(c).dump());
        d["certificates"] = certs;
        return d;
    }, py::arg("spec"), py::arg("r"));

    m.def("implication_verdict",
          [](bool picard_rank_one, const std::string& separably_uniruled,
             const std::string& tangent_stable, const std::string& tangent_semistable,
             bool fano, const std::string& n1_generated_by_free) {
              ImplicationInput in;
              in.picard_rank_one = picard_rank_one;
              in.separably_uniruled = tri_from_name(separably_uniruled);
              in.tangent_stable = tri_from_name(tangent_stable);
              in.tangent_semistable = tri_from_name(tangent_semistable);
              in.fano = fano;
              in.n1_generated_by_free = tri_from_name(n1_generated_by_free);
              return implication_to_dict(implication_verdict(in));
          },
          py::arg("picard_rank_one") = false, py::arg("separably_uniruled") = "unknown",
          py::arg("tangent_stable") = "unknown", py::arg("tangent_semistable") = "unknown",
          py::arg("fano") = false, py::arg("n1_generated_by_free") = "unknown");

    py::class_<HypersurfaceForm>(m, "Hypersurface")
        .def(py::init(&make_hypersurface), py::arg("n"), py::arg("terms"),
             py::arg("char") = 0u,
             "terms: list of (exponent vector of length n+1, integer coefficient)")
        .def_readonly("n", &HypersurfaceForm::n)
        .def_readonly("degree", &HypersurfaceForm::degree)
        .def_property_readonly(
            "char", [](const HypersurfaceForm& h) { return h.field.characteristic; });

    py::class_<RationalCurveMap>(m, "CurveMap")
        .def(py::init(&make_curve), py::arg("components"), py::arg("char") = 0u,
             "components: n+1 coefficient lists (s-lex order) of common length e+1")
        .def_readonly("n", &RationalCurveMap::n)
        .def_readonly("degree", &RationalCurveMap::degree)
        .def_property_readonly(
            "char", [](const RationalCurveMap& c) { return c.field.characteristic; });

    m.def("reparameterize",
          [](const RationalCurveMap& phi, const py::object& a, const py::object& b,
             const py::object& c, const py::object& d) {
              return reparameterize(phi, to_int(a), to_int(b), to_int(c), to_int(d));
          },
          py::arg("phi"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));

    m.def("on_curve_check", &on_curve_check, py::arg("hypersurface"), py::arg("curve"));

    m.def("singularity_probe_along", [](const HypersurfaceForm& X, const RationalCurveMap& phi) {
        return singularity_probe_along(X, phi) == ProbeResult::Ok ? "ok" : "degenerate";
    }, py::arg("hypersurface"), py::arg("curve"));

    m.def("tangent_splitting_pn", [](const RationalCurveMap& phi) {
        return splitting_to_dict(splitting_of_pullback_tangent_pn(phi));
    }, py::arg("curve"));

    m.def("tangent_splitting", [](const HypersurfaceForm& X, const RationalCurveMap& phi) {
        return splitting_to_dict(splitting_of_pullback_tangent(X, phi));
    }, py::arg("hypersurface"), py::arg("curve"));

    m.def("cotangent_splitting", [](const HypersurfaceForm& X, const RationalCurveMap& phi) {
        return splitting_to_dict(splitting_of_pullback_cotangent(X, phi));
    }, py::arg("hypersurface"), py::arg("curve"));

    m.def("positive_rank_lower_bound",
          [](const HypersurfaceForm& X, const std::vector<RationalCurveMap>& curves) {
              auto b = positive_rank_lower_bound(X, curves);
              py::dict d;
              d["bound"] = b.bound;
              if (b.witness) {
                  d["witness"] = *b.witness;
                  d["witness_splitting"] = b.witness_splitting->parts;
              }
              return d;
          },
          py::arg("hypersurface"), py::arg("curves"));

    m.def("uniruledness_evidence",
          [](const HypersurfaceForm& X, const std::vector<RationalCurveMap>& curves) {
              auto ev = uniruledness_evidence(X, curves);
              py::dict d;
              d["separably_uniruled"] = tri_name(ev.separably_uniruled);
              if (ev.witness) {
                  d["witness"] = *ev.witness;
                  d["witness_splitting"] = ev.witness_splitting->parts;
              }
              return d;
          },
          py::arg("hypersurface"), py::arg("curves"));

    m.def("parse_problem", [](const std::string& text, unsigned p) {
        auto problem = parse_curve_problem(text, FieldSpec(p));
        py::object h = problem.hypersurface ? py::cast(*problem.hypersurface) : py::none();
        return py::make_tuple(h, py::cast(*problem.curve));
    }, py::arg("text"), py::arg("char") = 0u);

    m.attr("__version__") = "0.1.0";
}
