#include "fanokit/projective.hpp"

namespace fanokit {

CompleteIntersectionSpec::CompleteIntersectionSpec(int ambient_dim, std::vector<int> degs,
                                                   FieldSpec f)
    : n(ambient_dim), degrees(std::move(degs)), field(f) {
    if (n < 1) throw std::invalid_argument("ambient dimension must be positive");
    for (int d : degrees) {
        if (d == 1)
            throw std::invalid_argument(
                "degree-1 factor: cut the hyperplane first and lower the ambient dimension");
        if (d < 2) throw std::invalid_argument("multidegree entries must be >= 2");
    }
    if (dim() < 1) throw std::invalid_argument("complete intersection must have dim >= 1");
}

Int CompleteIntersectionSpec::degree() const {
    Int d = 1;
    for (int di : degrees) d *= di;
    return d;
}

long long CompleteIntersectionSpec::degree_sum() const {
    long long s = 0;
    for (int di : degrees) s += di;
    return s;
}

CompleteIntersectionSpec CompleteIntersectionSpec::prefix(int level) const {
    if (level < 0 || level > codim())
        throw std::invalid_argument("tower level out of range");
    return CompleteIntersectionSpec(
        n, std::vector<int>(degrees.begin(), degrees.begin() + level), field);
}

Int bott_dimension(int n, const CohomologyQuery& query) {
    return bott_dimension(n, query.p, query.q, query.t);
}

Int bott_dimension(int n, int p, int q, long long t) {
    if (n < 1) throw std::invalid_argument("ambient dimension must be positive");
    if (p < 0 || q < 0) throw std::invalid_argument("p and q must be nonnegative");
    if (p > n || q > n) return 0;
    if (p == 0 && t > q)
        return binom(Int(t) + n - q, Int(t)) * binom(Int(t) - 1, Int(q));
    if (p == q && t == 0) return 1;
    if (p == n && t < q - n)
        return binom(Int(-t) + q, Int(-t)) * binom(Int(-t) - 1, Int(n - q));
    return 0;
}

Int hilbert_h0(const CompleteIntersectionSpec& spec, long long t) {
    if (t < 0) return 0;
    // inclusion-exclusion over the Koszul resolution of the quotient ring
    int c = spec.codim();
    if (c > 62) throw std::invalid_argument("codimension too large");
    Int total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << c); ++mask) {
        long long shift = 0;
        int bits = 0;
        for (int i = 0; i < c; ++i)
            if (mask & (std::uint64_t(1) << i)) {
                shift += spec.degrees[i];
                ++bits;
            }
        Int term = binom(Int(spec.n) + t - shift, Int(spec.n));
        total += (bits % 2 == 0) ? term : -term;
    }
    return total;
}

Int line_bundle_cohomology(const CompleteIntersectionSpec& spec, int p, long long t) {
    if (p < 0) throw std::invalid_argument("p must be nonnegative");
    int d = spec.dim();
    if (p == 0) return hilbert_h0(spec, t);
    if (p < d) return 0;
    if (p == d) return hilbert_h0(spec, spec.canonical_twist() - t);
    return 0;
}

}  // namespace fanokit
