#pragma once

// Exact cohomology dimensions on projective space and line bundles on
// complete intersections: the base facts that the vanishing engine reduces
// to, and the independent oracle it is tested against.

#include "fanokit/arith.hpp"

#include <vector>

namespace fanokit {

// X in P^n cut by hypersurfaces of the given degrees (empty list = P^n).
// Degree-1 factors are rejected: a hyperplane section is again a projective
// space and must be absorbed by lowering n before construction.
struct CompleteIntersectionSpec {
    int n = 1;                  // ambient dimension
    std::vector<int> degrees;   // each >= 2, in tower order
    FieldSpec field;

    CompleteIntersectionSpec() = default;
    CompleteIntersectionSpec(int ambient_dim, std::vector<int> degs, FieldSpec f = FieldSpec());

    int codim() const { return static_cast<int>(degrees.size()); }
    int dim() const { return n - codim(); }
    Int degree() const;                    // product of the d_i (1 for P^n)
    long long degree_sum() const;
    long long canonical_twist() const { return degree_sum() - n - 1; }  // omega_X = O(sum d - n - 1)
    bool fano() const { return degree_sum() <= n; }

    // the tower member cut by the first `level` degrees
    CompleteIntersectionSpec prefix(int level) const;

    bool operator==(const CompleteIntersectionSpec& o) const {
        return n == o.n && degrees == o.degrees && field == o.field;
    }
};

struct CohomologyQuery {
    int p = 0;       // cohomological degree
    int q = 0;       // exterior power of Omega
    long long t = 0; // twist

    CohomologyQuery() = default;
    CohomologyQuery(int p_, int q_, long long t_) : p(p_), q(q_), t(t_) {
        if (p_ < 0 || q_ < 0)
            throw std::invalid_argument("cohomology query: p and q must be nonnegative");
    }

    bool operator==(const CohomologyQuery& o) const {
        return p == o.p && q == o.q && t == o.t;
    }
};

// h^p(P^n, Omega^q(t)) by the closed-form case split:
//   p = 0, t > q:      binom(t+n-q, t) * binom(t-1, q)
//   p = q, t = 0:      1
//   p = n, t < q - n:  binom(-t+q, -t) * binom(-t-1, n-q)
//   otherwise          0
Int bott_dimension(int n, const CohomologyQuery& query);
Int bott_dimension(int n, int p, int q, long long t);

// dim H^0(X, O_X(t)) = Hilbert function of the quotient ring: the
// coefficient of z^t in prod(1 - z^{d_i}) / (1-z)^{n+1}; 0 for t < 0.
Int hilbert_h0(const CompleteIntersectionSpec& spec, long long t);

// h^p(X, O_X(t)): sections for p = 0, zero in the middle range, Serre dual
// sections for p = dim X, zero above.
Int line_bundle_cohomology(const CompleteIntersectionSpec& spec, int p, long long t);

}  // namespace fanokit
