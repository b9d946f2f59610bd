#pragma once

// Homogeneous binary forms in s, t over an exact field, graded matrices of
// forms, and the degree-by-degree nullspace solver that everything
// splitting-related reduces to. Monomial order is lexicographic with s > t:
// coefficient i of a degree-d form belongs to s^(d-i) t^i.

#include "fanokit/arith.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fanokit {

template <class F>
struct BinaryForm {
    using Elem = typename F::Elem;

    int deg = 0;                 // nominal degree; the zero form keeps it
    std::vector<Elem> coeff;     // size deg+1, coeff[i] on s^(deg-i) t^i

    BinaryForm() = default;
    BinaryForm(int d, std::vector<Elem> c) : deg(d), coeff(std::move(c)) {
        if (d < 0 || coeff.size() != static_cast<size_t>(d) + 1)
            throw std::invalid_argument("binary form: coefficient count must be degree+1");
    }
};

template <class F>
BinaryForm<F> zero_form(const F& field, int deg) {
    return BinaryForm<F>(deg, std::vector<typename F::Elem>(deg + 1, field.zero()));
}

template <class F>
BinaryForm<F> monomial_form(const F& field, int deg, int t_power, typename F::Elem c) {
    auto f = zero_form(field, deg);
    f.coeff[t_power] = std::move(c);
    return f;
}

template <class F>
bool form_is_zero(const F& field, const BinaryForm<F>& f) {
    for (const auto& c : f.coeff)
        if (!field.is_zero(c)) return false;
    return true;
}

template <class F>
BinaryForm<F> form_add(const F& field, const BinaryForm<F>& a, const BinaryForm<F>& b) {
    if (a.deg != b.deg)
        throw std::invalid_argument("binary form addition needs equal degrees");
    BinaryForm<F> r = a;
    for (int i = 0; i <= a.deg; ++i) r.coeff[i] = field.add(r.coeff[i], b.coeff[i]);
    return r;
}

template <class F>
BinaryForm<F> form_scale(const F& field, const typename F::Elem& c, const BinaryForm<F>& a) {
    BinaryForm<F> r = a;
    for (auto& x : r.coeff) x = field.mul(c, x);
    return r;
}

template <class F>
BinaryForm<F> form_mul(const F& field, const BinaryForm<F>& a, const BinaryForm<F>& b) {
    BinaryForm<F> r = zero_form(field, a.deg + b.deg);
    for (int i = 0; i <= a.deg; ++i) {
        if (field.is_zero(a.coeff[i])) continue;
        for (int j = 0; j <= b.deg; ++j)
            r.coeff[i + j] = field.add(r.coeff[i + j], field.mul(a.coeff[i], b.coeff[j]));
    }
    return r;
}

// f(a*s + b*t, c*s + d*t): substitution by a linear change of coordinates.
template <class F>
BinaryForm<F> form_substitute(const F& field, const BinaryForm<F>& f,
                              const typename F::Elem& a, const typename F::Elem& b,
                              const typename F::Elem& c, const typename F::Elem& d) {
    BinaryForm<F> s_img = BinaryForm<F>(1, {a, b});
    BinaryForm<F> t_img = BinaryForm<F>(1, {c, d});
    // powers up to deg
    std::vector<BinaryForm<F>> sp{zero_form(field, 0)}, tp{zero_form(field, 0)};
    sp[0].coeff[0] = field.one();
    tp[0].coeff[0] = field.one();
    for (int k = 1; k <= f.deg; ++k) {
        sp.push_back(form_mul(field, sp.back(), s_img));
        tp.push_back(form_mul(field, tp.back(), t_img));
    }
    BinaryForm<F> r = zero_form(field, f.deg);
    for (int i = 0; i <= f.deg; ++i) {
        if (field.is_zero(f.coeff[i])) continue;
        auto term = form_mul(field, sp[f.deg - i], tp[i]);
        r = form_add(field, r, form_scale(field, f.coeff[i], term));
    }
    return r;
}

namespace detail {

// Univariate helpers for the projective gcd. Polynomials are coefficient
// vectors in ascending powers of u, trimmed.
template <class F>
using UniPoly = std::vector<typename F::Elem>;

template <class F>
void uni_trim(const F& field, UniPoly<F>& p) {
    while (!p.empty() && field.is_zero(p.back())) p.pop_back();
}

template <class F>
UniPoly<F> uni_rem(const F& field, UniPoly<F> a, const UniPoly<F>& b) {
    while (a.size() >= b.size() && !a.empty()) {
        auto q = field.div(a.back(), b.back());
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[off + i] = field.sub(a[off + i], field.mul(q, b[i]));
        uni_trim(field, a);
    }
    return a;
}

template <class F>
UniPoly<F> uni_gcd(const F& field, UniPoly<F> a, UniPoly<F> b) {
    uni_trim(field, a);
    uni_trim(field, b);
    while (!b.empty()) {
        auto r = uni_rem(field, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        auto lead = field.inv(a.back());
        for (auto& c : a) c = field.mul(c, lead);
    }
    return a;
}

}  // namespace detail

// gcd of two binary forms as homogeneous forms (monic in the fixed order).
// deg > 0 exactly when the forms share a projective zero over the algebraic
// closure; gcd computation commutes with field extension, so this is the
// common-zero test used throughout.
template <class F>
BinaryForm<F> form_gcd(const F& field, const BinaryForm<F>& f, const BinaryForm<F>& g) {
    if (form_is_zero(field, f)) return g;
    if (form_is_zero(field, g)) return f;
    // t-adic valuation = least index with nonzero coefficient
    auto vt = [&](const BinaryForm<F>& h) {
        int v = 0;
        while (field.is_zero(h.coeff[v])) ++v;
        return v;
    };
    int vf = vt(f), vg = vt(g);
    // dehomogenize at t = 1: coefficient of u^j is coeff[deg-j]
    detail::UniPoly<F> pf(f.deg + 1), pg(g.deg + 1);
    for (int i = 0; i <= f.deg; ++i) pf[f.deg - i] = f.coeff[i];
    for (int i = 0; i <= g.deg; ++i) pg[g.deg - i] = g.coeff[i];
    auto d = detail::uni_gcd(field, pf, pg);
    int core_deg = static_cast<int>(d.size()) - 1;
    int tpow = std::min(vf, vg);
    BinaryForm<F> r = zero_form(field, core_deg + tpow);
    for (int j = 0; j <= core_deg; ++j) r.coeff[core_deg - j + tpow] = d[j];
    return r;
}

// ---------------------------------------------------------------------------
// Dense exact matrices with canonical reduced row echelon form. RREF is
// unique, so nullspace bases and particular solutions are reproducible
// bit-for-bit regardless of how the matrix was assembled.
// ---------------------------------------------------------------------------

template <class F>
struct DenseMat {
    using Elem = typename F::Elem;
    size_t rows = 0, cols = 0;
    std::vector<Elem> a;

    DenseMat() = default;
    DenseMat(const F& field, size_t r, size_t c)
        : rows(r), cols(c), a(r * c, field.zero()) {}

    Elem& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Elem& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

// In-place RREF; returns the pivot column of each pivot row in order.
template <class F>
std::vector<size_t> rref_in_place(const F& field, DenseMat<F>& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t sel = row;
        while (sel < m.rows && field.is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows) continue;
        if (sel != row)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        auto piv = field.inv(m.at(row, col));
        for (size_t j = col; j < m.cols; ++j) m.at(row, j) = field.mul(piv, m.at(row, j));
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == row || field.is_zero(m.at(i, col))) continue;
            auto factor = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j)
                m.at(i, j) = field.sub(m.at(i, j), field.mul(factor, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Canonical nullspace basis from the RREF: one vector per free column, with
// a 1 in the free position; vectors ordered by ascending free column.
template <class F>
std::vector<std::vector<typename F::Elem>> nullspace_basis(const F& field, DenseMat<F> m) {
    auto pivots = rref_in_place(field, m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<typename F::Elem>> basis;
    for (size_t freec = 0; freec < m.cols; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<typename F::Elem> v(m.cols, field.zero());
        v[freec] = field.one();
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = field.neg(m.at(r, freec));
        basis.push_back(std::move(v));
    }
    return basis;
}

// Particular solution of A x = b with every free variable set to zero;
// nullopt when inconsistent.
template <class F>
std::optional<std::vector<typename F::Elem>> solve_particular(
    const F& field, const DenseMat<F>& a, const std::vector<typename F::Elem>& b) {
    if (b.size() != a.rows) throw std::invalid_argument("solve: rhs size mismatch");
    DenseMat<F> aug(field, a.rows, a.cols + 1);
    for (size_t i = 0; i < a.rows; ++i) {
        for (size_t j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols) = b[i];
    }
    auto pivots = rref_in_place(field, aug);
    if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;
    std::vector<typename F::Elem> x(a.cols, field.zero());
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols);
    return x;
}

// ---------------------------------------------------------------------------
// Graded matrices of forms. Entry (i,j) is required to be homogeneous of
// degree colDeg(j) - rowDeg(i); the labels encode a map of twisted sums
// O(-colDeg(j)) -> O(-rowDeg(i)) on the projective line.
// ---------------------------------------------------------------------------

template <class F>
struct FormMatrix {
    size_t rows = 0, cols = 0;
    std::vector<int> row_deg, col_deg;
    std::vector<BinaryForm<F>> entries;  // row major

    FormMatrix(const F& field, std::vector<int> rdeg, std::vector<int> cdeg,
               std::vector<BinaryForm<F>> es)
        : rows(rdeg.size()), cols(cdeg.size()),
          row_deg(std::move(rdeg)), col_deg(std::move(cdeg)), entries(std::move(es)) {
        if (entries.size() != rows * cols)
            throw std::invalid_argument("form matrix: entry count mismatch");
        for (size_t i = 0; i < rows; ++i) {
            for (size_t j = 0; j < cols; ++j) {
                const auto& e = entries[i * cols + j];
                int want = col_deg[j] - row_deg[i];
                if (form_is_zero(field, e)) continue;
                if (want < 0 || e.deg != want)
                    throw std::invalid_argument("form matrix: entry degree inconsistent with grading");
            }
        }
    }

    const BinaryForm<F>& at(size_t i, size_t j) const { return entries[i * cols + j]; }
};

// Basis of tuples (g_j), deg g_j = twist - colDeg(j), with M.g = 0; the
// degree-(twist) part of the kernel of the graded map. Deterministic via the
// canonical RREF and the fixed monomial order. Entries of prescribed
// negative degree are identically zero and contribute no unknowns.
template <class F>
std::vector<std::vector<BinaryForm<F>>> nullspace_by_degree(
    const F& field, const FormMatrix<F>& m, int twist) {
    std::vector<int> gdeg(m.cols);
    std::vector<size_t> offset(m.cols + 1, 0);
    for (size_t j = 0; j < m.cols; ++j) {
        gdeg[j] = twist - m.col_deg[j];
        offset[j + 1] = offset[j] + (gdeg[j] >= 0 ? gdeg[j] + 1 : 0);
    }
    size_t unknowns = offset[m.cols];

    // rows of the linear system: coefficient k of row i's product
    size_t eqs = 0;
    std::vector<int> out_deg(m.rows);
    for (size_t i = 0; i < m.rows; ++i) {
        out_deg[i] = twist - m.row_deg[i];
        if (out_deg[i] >= 0) eqs += out_deg[i] + 1;
    }

    DenseMat<F> sys(field, eqs, unknowns);
    size_t eq = 0;
    for (size_t i = 0; i < m.rows; ++i) {
        if (out_deg[i] < 0) continue;
        for (size_t j = 0; j < m.cols; ++j) {
            if (gdeg[j] < 0) continue;
            const auto& e = m.at(i, j);
            if (form_is_zero(field, e)) continue;
            // product coefficient k picks up e.coeff[k - l] * g.coeff[l]
            for (int l = 0; l <= gdeg[j]; ++l) {
                for (int k = l; k <= l + e.deg; ++k)
                    sys.at(eq + k, offset[j] + l) =
                        field.add(sys.at(eq + k, offset[j] + l), e.coeff[k - l]);
            }
        }
        eq += out_deg[i] + 1;
    }

    auto vecs = nullspace_basis(field, std::move(sys));
    std::vector<std::vector<BinaryForm<F>>> result;
    result.reserve(vecs.size());
    for (auto& v : vecs) {
        std::vector<BinaryForm<F>> tuple;
        tuple.reserve(m.cols);
        for (size_t j = 0; j < m.cols; ++j) {
            if (gdeg[j] < 0) {
                tuple.push_back(zero_form(field, 0));
                continue;
            }
            BinaryForm<F> g = zero_form(field, gdeg[j]);
            for (int l = 0; l <= gdeg[j]; ++l) g.coeff[l] = v[offset[j] + l];
            tuple.push_back(std::move(g));
        }
        result.push_back(std::move(tuple));
    }
    return result;
}

}  // namespace fanokit
