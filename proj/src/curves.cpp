#include "fanokit/curves.hpp"

#include "fanokit/forms.hpp"
#include "fanokit/splitting.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fanokit {

HypersurfaceForm::HypersurfaceForm(int ambient_dim, std::map<ExponentVector, Int> terms,
                                   FieldSpec f)
    : n(ambient_dim), field(f) {
    if (n < 1) throw std::invalid_argument("hypersurface: ambient dimension must be >= 1");
    // drop coefficients that die in the field so the degree is honest
    for (auto it = terms.begin(); it != terms.end();) {
        Int c = it->second;
        if (!field.is_rational()) {
            c %= field.characteristic;
            if (c < 0) c += field.characteristic;
        }
        if (c == 0)
            it = terms.erase(it);
        else {
            it->second = c;
            ++it;
        }
    }
    if (terms.empty()) throw std::invalid_argument("hypersurface: form is zero over the field");
    degree = -1;
    for (const auto& [exps, c] : terms) {
        if (exps.size() != static_cast<size_t>(n) + 1)
            throw std::invalid_argument("hypersurface: exponent vector length must be n+1");
        int total = 0;
        for (int e : exps) {
            if (e < 0) throw std::invalid_argument("hypersurface: negative exponent");
            total += e;
        }
        if (degree == -1) degree = total;
        if (total != degree)
            throw std::invalid_argument("hypersurface: form is not homogeneous");
    }
    if (degree < 2) throw std::invalid_argument("hypersurface: degree must be >= 2");
    coeffs = std::move(terms);
}

namespace {

template <class F>
std::vector<BinaryForm<F>> curve_forms(const F& field, const RationalCurveMap& phi) {
    std::vector<BinaryForm<F>> out;
    out.reserve(phi.components.size());
    for (const auto& comp : phi.components) {
        BinaryForm<F> g = zero_form(field, phi.degree);
        for (size_t i = 0; i < comp.size(); ++i) g.coeff[i] = field.from_int(comp[i]);
        out.push_back(std::move(g));
    }
    return out;
}

template <class F>
BinaryForm<F> monomial_at_curve(const F& field, const ExponentVector& exps,
                                const std::vector<BinaryForm<F>>& phi, int target_deg) {
    BinaryForm<F> prod = zero_form(field, 0);
    prod.coeff[0] = field.one();
    for (size_t i = 0; i < exps.size(); ++i)
        for (int k = 0; k < exps[i]; ++k) prod = form_mul(field, prod, phi[i]);
    if (prod.deg != target_deg)
        throw std::logic_error("monomial evaluation degree mismatch");
    return prod;
}

template <class F>
BinaryForm<F> evaluate_at_curve(const F& field, const HypersurfaceForm& X,
                                const std::vector<BinaryForm<F>>& phi, int e) {
    BinaryForm<F> acc = zero_form(field, X.degree * e);
    for (const auto& [exps, c] : X.coeffs) {
        auto term = monomial_at_curve(field, exps, phi, X.degree * e);
        acc = form_add(field, acc, form_scale(field, field.from_int(c), term));
    }
    return acc;
}

// formal partials dF/dx_i composed with phi; valid in any characteristic
template <class F>
std::vector<BinaryForm<F>> gradient_at_curve(const F& field, const HypersurfaceForm& X,
                                             const std::vector<BinaryForm<F>>& phi, int e) {
    const int gdeg = (X.degree - 1) * e;
    std::vector<BinaryForm<F>> out(X.n + 1, zero_form(field, gdeg));
    for (const auto& [exps, c] : X.coeffs) {
        for (int i = 0; i <= X.n; ++i) {
            if (exps[i] == 0) continue;
            auto factor = field.mul(field.from_int(c), field.from_int(exps[i]));
            if (field.is_zero(factor)) continue;
            ExponentVector lowered = exps;
            --lowered[i];
            auto term = monomial_at_curve(field, lowered, phi, gdeg);
            out[i] = form_add(field, out[i], form_scale(field, factor, term));
        }
    }
    return out;
}

template <class F>
bool components_valid(const F& field, const std::vector<BinaryForm<F>>& comps) {
    BinaryForm<F> g = zero_form(field, 0);
    bool any = false;
    for (const auto& c : comps) {
        if (form_is_zero(field, c)) continue;
        g = any ? form_gcd(field, g, c) : c;
        any = true;
    }
    return any && g.deg == 0;
}

template <class F>
ProbeResult probe_impl(const F& field, const HypersurfaceForm& X,
                       const RationalCurveMap& phi_pub) {
    auto phi = curve_forms(field, phi_pub);
    auto grad = gradient_at_curve(field, X, phi, phi_pub.degree);
    bool any = false;
    BinaryForm<F> g = zero_form(field, 0);
    for (const auto& gi : grad) {
        if (form_is_zero(field, gi)) continue;
        g = any ? form_gcd(field, g, gi) : gi;
        any = true;
    }
    if (!any) return ProbeResult::Degenerate;
    return g.deg == 0 ? ProbeResult::Ok : ProbeResult::Degenerate;
}

std::vector<int> negated_desc(const std::vector<int>& v) {
    std::vector<int> out;
    out.reserve(v.size());
    for (int b : v) out.push_back(-b);
    std::sort(out.begin(), out.end(), std::greater<int>());
    return out;
}

template <class F>
SplittingType cotangent_pn_impl(const F& field, const RationalCurveMap& phi_pub) {
    const int n = phi_pub.n;
    const int e = phi_pub.degree;
    auto phi = curve_forms(field, phi_pub);
    FormMatrix<F> m(field, {0}, std::vector<int>(n + 1, e), phi);
    auto split = detail::split_graded_kernel(field, m, n,
                                             -static_cast<long long>(e) * (n + 1),
                                             detail::default_window(e, 1, n));
    std::vector<int> parts = split.summands;
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    return SplittingType{std::move(parts)};
}

template <class F>
SplittingType cotangent_impl(const F& field, const HypersurfaceForm& X,
                             const RationalCurveMap& phi_pub) {
    const int n = X.n;
    const int d = X.degree;
    const int e = phi_pub.degree;
    auto phi = curve_forms(field, phi_pub);
    auto grad = gradient_at_curve(field, X, phi, e);
    const long long kdeg = static_cast<long long>(e) * (n + 1) - static_cast<long long>(e) * d;
    auto window = detail::default_window(e, d, n);

    // (1) K = kernel of the gradient row inside O(e)^{n+1}
    FormMatrix<F> m1(field, {-e * d}, std::vector<int>(n + 1, -e), grad);
    auto k = detail::split_graded_kernel(field, m1, n, kdeg, window);

    // (2) the Euler section (phi_0, ..., phi_n) lies in K: sum phi_i dF/dx_i
    // = d*F(phi) = 0 identically, in every characteristic
    auto c = detail::express_in_generators(field, k, phi, 0);
    for (int l = 0; l <= n; ++l) {
        BinaryForm<F> acc = zero_form(field, e);
        for (size_t i = 0; i < c.size(); ++i) {
            if (form_is_zero(field, c[i])) continue;
            acc = form_add(field, acc, form_mul(field, c[i], k.generators[i][l]));
        }
        if (!(acc.deg == phi[l].deg && [&] {
                for (int idx = 0; idx <= acc.deg; ++idx)
                    if (!field.eq(acc.coeff[idx], phi[l].coeff[idx])) return false;
                return true;
            }()))
            throw std::logic_error("euler section reconstruction failed");
    }

    // (3) phi^* Omega_X = kernel of the coefficient row on K^dual
    FormMatrix<F> m3(field, {0}, k.summands, c);
    auto omega = detail::split_graded_kernel(field, m3, n - 1, -kdeg, window);
    std::vector<int> parts = omega.summands;
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    return SplittingType{std::move(parts)};
}

void require_match(const HypersurfaceForm& X, const RationalCurveMap& phi) {
    if (X.n != phi.n)
        throw std::invalid_argument("hypersurface and curve ambient dimensions differ");
    if (X.field != phi.field)
        throw std::invalid_argument("hypersurface and curve fields differ");
}

Int lift_to_int(const RationalField&, const Rat& v) {
    if (boost::multiprecision::denominator(v) != 1)
        throw std::logic_error("expected an integer value");
    return boost::multiprecision::numerator(v);
}

Int lift_to_int(const PrimeField&, PrimeField::Elem v) { return Int(v); }

}  // namespace

RationalCurveMap::RationalCurveMap(int ambient_dim, int e, std::vector<std::vector<Int>> comps,
                                   FieldSpec f)
    : n(ambient_dim), degree(e), field(f), components(std::move(comps)) {
    if (n < 1) throw std::invalid_argument("curve: ambient dimension must be >= 1");
    if (degree < 1) throw std::invalid_argument("curve: component degree must be >= 1");
    if (components.size() != static_cast<size_t>(n) + 1)
        throw std::invalid_argument("curve: need n+1 components");
    for (auto& comp : components) {
        if (comp.size() != static_cast<size_t>(degree) + 1)
            throw std::invalid_argument("curve: each component needs degree+1 coefficients");
        if (!field.is_rational())
            for (auto& c : comp) {
                c %= field.characteristic;
                if (c < 0) c += field.characteristic;
            }
    }
    bool ok = with_field(field, [&](auto fld) {
        return components_valid(fld, curve_forms(fld, *this));
    });
    if (!ok)
        throw std::invalid_argument(
            "curve: components are all zero or share a projective zero");
}

RationalCurveMap reparameterize(const RationalCurveMap& phi, const Int& a, const Int& b,
                                const Int& c, const Int& d) {
    return with_field(phi.field, [&](auto fld) {
        auto det = fld.sub(fld.mul(fld.from_int(a), fld.from_int(d)),
                           fld.mul(fld.from_int(b), fld.from_int(c)));
        if (fld.is_zero(det))
            throw std::invalid_argument("reparameterization matrix is singular");
        std::vector<std::vector<Int>> comps;
        for (const auto& comp : phi.components) {
            BinaryForm<std::decay_t<decltype(fld)>> g = zero_form(fld, phi.degree);
            for (size_t i = 0; i < comp.size(); ++i) g.coeff[i] = fld.from_int(comp[i]);
            auto sub = form_substitute(fld, g, fld.from_int(a), fld.from_int(b),
                                       fld.from_int(c), fld.from_int(d));
            std::vector<Int> lifted;
            for (const auto& x : sub.coeff) lifted.push_back(lift_to_int(fld, x));
            comps.push_back(std::move(lifted));
        }
        return RationalCurveMap(phi.n, phi.degree, std::move(comps), phi.field);
    });
}

bool on_curve_check(const HypersurfaceForm& X, const RationalCurveMap& phi) {
    require_match(X, phi);
    return with_field(X.field, [&](auto fld) {
        auto comps = curve_forms(fld, phi);
        return form_is_zero(fld, evaluate_at_curve(fld, X, comps, phi.degree));
    });
}

ProbeResult singularity_probe_along(const HypersurfaceForm& X, const RationalCurveMap& phi) {
    require_match(X, phi);
    return with_field(X.field, [&](auto fld) { return probe_impl(fld, X, phi); });
}

SplittingType splitting_of_pullback_cotangent_pn(const RationalCurveMap& phi) {
    return with_field(phi.field, [&](auto fld) { return cotangent_pn_impl(fld, phi); });
}

SplittingType splitting_of_pullback_tangent_pn(const RationalCurveMap& phi) {
    auto omega = splitting_of_pullback_cotangent_pn(phi);
    return SplittingType{negated_desc(omega.parts)};
}

SplittingType splitting_of_pullback_cotangent(const HypersurfaceForm& X,
                                              const RationalCurveMap& phi) {
    require_match(X, phi);
    if (X.n < 2)
        throw std::invalid_argument("splitting needs an ambient dimension of at least 2");
    if (!on_curve_check(X, phi))
        throw std::invalid_argument("curve does not lie on the hypersurface");
    if (singularity_probe_along(X, phi) != ProbeResult::Ok)
        throw std::domain_error("degenerate gradient along curve");
    return with_field(X.field, [&](auto fld) { return cotangent_impl(fld, X, phi); });
}

SplittingType splitting_of_pullback_tangent(const HypersurfaceForm& X,
                                            const RationalCurveMap& phi) {
    auto omega = splitting_of_pullback_cotangent(X, phi);
    return SplittingType{negated_desc(omega.parts)};
}

PositiveRankBound positive_rank_lower_bound(const HypersurfaceForm& X,
                                            const std::vector<RationalCurveMap>& curves) {
    PositiveRankBound out;
    for (size_t i = 0; i < curves.size(); ++i) {
        auto st = splitting_of_pullback_tangent(X, curves[i]);
        if (!st.free()) continue;
        int pc = st.positive_count();
        if (!out.witness || pc > out.bound) {
            out.bound = pc;
            out.witness = i;
            out.witness_splitting = st;
        }
    }
    if (!out.witness) out.bound = 0;
    return out;
}

UniruledEvidence uniruledness_evidence(const HypersurfaceForm& X,
                                       const std::vector<RationalCurveMap>& curves) {
    UniruledEvidence out;
    for (size_t i = 0; i < curves.size(); ++i) {
        auto st = splitting_of_pullback_tangent(X, curves[i]);
        if (st.free()) {
            out.separably_uniruled = Tri::Yes;
            out.witness = i;
            out.witness_splitting = st;
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// text format
// ---------------------------------------------------------------------------

namespace {

struct PolyTerm {
    Int coeff;
    std::map<std::string, int> vars;
};

[[noreturn]] void parse_fail(const std::string& src, const std::string& why) {
    throw std::invalid_argument("cannot parse '" + src + "': " + why);
}

std::vector<PolyTerm> parse_poly(const std::string& src) {
    std::vector<PolyTerm> terms;
    size_t i = 0;
    const size_t nlen = src.size();
    auto skip_ws = [&] {
        while (i < nlen && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    };
    auto parse_uint = [&]() -> Int {
        size_t start = i;
        Int v = 0;
        while (i < nlen && std::isdigit(static_cast<unsigned char>(src[i]))) {
            v = v * 10 + (src[i] - '0');
            ++i;
        }
        if (i == start) parse_fail(src, "expected a number");
        return v;
    };
    skip_ws();
    while (i < nlen) {
        int sign = 1;
        while (i < nlen && (src[i] == '+' || src[i] == '-')) {
            if (src[i] == '-') sign = -sign;
            ++i;
            skip_ws();
        }
        if (i >= nlen) parse_fail(src, "dangling sign");
        PolyTerm term;
        term.coeff = sign;
        bool got_factor = false;
        for (;;) {
            skip_ws();
            if (i < nlen && std::isdigit(static_cast<unsigned char>(src[i]))) {
                term.coeff *= parse_uint();
                got_factor = true;
            } else if (i < nlen &&
                       (src[i] == 'x' || src[i] == 's' || src[i] == 't')) {
                std::string name(1, src[i]);
                ++i;
                if (name == "x") {
                    size_t start = i;
                    while (i < nlen && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
                    if (i == start) parse_fail(src, "variable x needs an index");
                    name += src.substr(start, i - start);
                }
                int exp = 1;
                skip_ws();
                if (i < nlen && src[i] == '^') {
                    ++i;
                    skip_ws();
                    Int e = parse_uint();
                    if (e > 64) parse_fail(src, "exponent too large");
                    exp = static_cast<int>(e);
                }
                term.vars[name] += exp;
                got_factor = true;
            } else {
                parse_fail(src, "unexpected character");
            }
            skip_ws();
            if (i < nlen && src[i] == '*') {
                ++i;
                continue;
            }
            if (i < nlen && (std::isalnum(static_cast<unsigned char>(src[i]))))
                continue;  // implicit multiplication like 2s^2
            break;
        }
        if (!got_factor) parse_fail(src, "empty term");
        terms.push_back(std::move(term));
        skip_ws();
        if (i < nlen && src[i] != '+' && src[i] != '-')
            parse_fail(src, "expected + or - between terms");
    }
    if (terms.empty()) parse_fail(src, "empty polynomial");
    return terms;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// binary form (in s, t) from parsed terms: map of t-exponent -> coefficient
std::pair<int, std::vector<Int>> poly_to_binary(const std::string& src,
                                                const std::vector<PolyTerm>& terms) {
    std::map<std::pair<int, int>, Int> mono;  // (s_exp, t_exp) -> coeff
    for (const auto& term : terms) {
        int es = 0, et = 0;
        for (const auto& [name, exp] : term.vars) {
            if (name == "s")
                es += exp;
            else if (name == "t")
                et += exp;
            else
                parse_fail(src, "curve components may only use s and t");
        }
        mono[{es, et}] += term.coeff;
    }
    for (auto it = mono.begin(); it != mono.end();)
        it = (it->second == 0) ? mono.erase(it) : std::next(it);
    if (mono.empty()) return {-1, {}};  // identically zero
    int deg = -1;
    for (const auto& [st, c] : mono) {
        int total = st.first + st.second;
        if (deg == -1) deg = total;
        if (total != deg) parse_fail(src, "component is not homogeneous in s, t");
    }
    std::vector<Int> coeff(deg + 1, Int(0));
    for (const auto& [st, c] : mono) coeff[st.second] = c;
    return {deg, coeff};
}

}  // namespace

CurveProblem parse_curve_problem(const std::string& text, FieldSpec default_field) {
    std::optional<std::string> f_src;
    std::optional<std::string> phi_src;
    std::optional<FieldSpec> file_field;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        if (line.rfind("F:", 0) == 0) {
            std::string rest = strip(line.substr(2));
            auto at = rest.find('@');
            if (at != std::string::npos) {
                std::string ann = strip(rest.substr(at + 1));
                rest = strip(rest.substr(0, at));
                if (ann.rfind("char", 0) != 0)
                    throw std::invalid_argument("expected '@ char <p>' annotation");
                std::string num = strip(ann.substr(4));
                file_field = FieldSpec(static_cast<std::uint32_t>(std::stoul(num)));
            }
            f_src = rest;
        } else if (line.rfind("phi:", 0) == 0) {
            phi_src = strip(line.substr(4));
        } else {
            throw std::invalid_argument("unrecognized input line: " + line);
        }
    }
    if (!phi_src) throw std::invalid_argument("input needs a 'phi:' line");
    FieldSpec field = file_field.value_or(default_field);

    std::string p = *phi_src;
    if (p.size() >= 2 && p.front() == '(' && p.back() == ')')
        p = p.substr(1, p.size() - 2);
    std::vector<std::string> comp_src;
    {
        std::string cur;
        for (char ch : p) {
            if (ch == ',') {
                comp_src.push_back(strip(cur));
                cur.clear();
            } else
                cur.push_back(ch);
        }
        comp_src.push_back(strip(cur));
    }
    if (comp_src.size() < 2)
        throw std::invalid_argument("curve needs at least two components");

    int e = -1;
    std::vector<std::pair<int, std::vector<Int>>> raw;
    for (const auto& cs : comp_src) {
        if (cs.empty()) throw std::invalid_argument("empty curve component");
        auto bin = poly_to_binary(cs, parse_poly(cs));
        if (bin.first >= 0) {
            if (e == -1) e = bin.first;
            if (bin.first != e)
                throw std::invalid_argument("curve components must share a common degree");
        }
        raw.push_back(std::move(bin));
    }
    if (e < 1) throw std::invalid_argument("curve components must have degree >= 1");
    std::vector<std::vector<Int>> comps;
    for (auto& [deg, coeff] : raw) {
        if (deg < 0) coeff.assign(e + 1, Int(0));
        comps.push_back(std::move(coeff));
    }
    const int n = static_cast<int>(comps.size()) - 1;

    CurveProblem problem;
    problem.curve = RationalCurveMap(n, e, std::move(comps), field);

    if (f_src) {
        std::map<ExponentVector, Int> terms;
        for (const auto& term : parse_poly(*f_src)) {
            ExponentVector exps(n + 1, 0);
            for (const auto& [name, exp] : term.vars) {
                if (name[0] != 'x')
                    throw std::invalid_argument("hypersurface may only use x variables");
                int idx = std::stoi(name.substr(1));
                if (idx < 0 || idx > n)
                    throw std::invalid_argument("variable index exceeds curve dimension: " + name);
                exps[idx] += exp;
            }
            terms[exps] += term.coeff;
        }
        for (auto it = terms.begin(); it != terms.end();)
            it = (it->second == 0) ? terms.erase(it) : std::next(it);
        problem.hypersurface = HypersurfaceForm(n, std::move(terms), field);
    }
    return problem;
}

nlohmann::ordered_json splitting_to_json(const SplittingType& st) {
    nlohmann::ordered_json j;
    j["splitting"] = st.parts;
    j["rank"] = st.rank();
    j["degree"] = st.degree();
    j["free"] = st.free();
    j["positive_count"] = st.positive_count();
    return j;
}

std::string splitting_to_string(const SplittingType& st) {
    std::ostringstream os;
    for (size_t i = 0; i < st.parts.size(); ++i) {
        if (i) os << " ⊕ ";
        os << "O(" << st.parts[i] << ")";
    }
    return os.str();
}

}  // namespace fanokit
