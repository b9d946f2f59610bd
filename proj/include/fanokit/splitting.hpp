#pragma once

// Splitting-type reconstruction for kernels of graded form maps on P^1.
// For a split bundle K = ⊕ O(b_i), the section-count function
// h(m) = dim H^0(K(m)) = Σ max(0, b_i+m+1) is piecewise linear, and its
// second difference at m = j counts the summands with b_i = -j, i.e. the
// minimal generators of the section module arriving in degree j. The engine
// computes h by exact nullspace solves over a twist window, extends the
// window until all rank-many generators with the right total degree are
// found, and extracts explicit generator tuples.

#include "fanokit/forms.hpp"

#include <map>
#include <sstream>
#include <string>

namespace fanokit {
namespace detail {

template <class F>
struct TwistSections {
    long long dim = 0;
    // flattened coefficient vectors; per column j the block is the
    // coefficient list of a form of degree (twist - colDeg(j)) when that is
    // nonnegative, and empty otherwise
    std::vector<std::vector<typename F::Elem>> basis;
};

template <class F>
class SectionTable {
public:
    SectionTable(const F& field, const FormMatrix<F>& m) : field_(field), m_(m) {}

    const TwistSections<F>& at(int twist) {
        auto it = cache_.find(twist);
        if (it != cache_.end()) return it->second;
        TwistSections<F> data;
        auto tuples = nullspace_by_degree(field_, m_, twist);
        data.dim = static_cast<long long>(tuples.size());
        for (auto& tup : tuples) data.basis.push_back(flatten(tup, twist));
        return cache_.emplace(twist, std::move(data)).first->second;
    }

    long long dim(int twist) { return at(twist).dim; }

    int block_size(int twist, size_t col) const {
        int d = twist - m_.col_deg[col];
        return d >= 0 ? d + 1 : 0;
    }

    std::vector<typename F::Elem> flatten(const std::vector<BinaryForm<F>>& tuple,
                                          int twist) const {
        std::vector<typename F::Elem> flat;
        for (size_t j = 0; j < m_.cols; ++j) {
            int len = block_size(twist, j);
            for (int l = 0; l < len; ++l) flat.push_back(tuple[j].coeff[l]);
        }
        return flat;
    }

    std::vector<BinaryForm<F>> unflatten(const std::vector<typename F::Elem>& flat,
                                         int twist) const {
        std::vector<BinaryForm<F>> tuple;
        size_t pos = 0;
        for (size_t j = 0; j < m_.cols; ++j) {
            int gdeg = twist - m_.col_deg[j];
            if (gdeg < 0) {
                tuple.push_back(zero_form(field_, 0));
                continue;
            }
            BinaryForm<F> g = zero_form(field_, gdeg);
            for (int l = 0; l <= gdeg; ++l) g.coeff[l] = flat[pos++];
            tuple.push_back(std::move(g));
        }
        return tuple;
    }

    // image of a section at twist-1 under multiplication by s resp. t
    std::vector<typename F::Elem> shift(const std::vector<typename F::Elem>& flat,
                                        int twist, bool by_t) const {
        std::vector<typename F::Elem> out;
        size_t pos = 0;
        for (size_t j = 0; j < m_.cols; ++j) {
            int src_len = block_size(twist - 1, j);
            int dst_len = block_size(twist, j);
            std::vector<typename F::Elem> block(dst_len, field_.zero());
            for (int l = 0; l < src_len; ++l)
                block[by_t ? l + 1 : l] = flat[pos + l];
            pos += src_len;
            out.insert(out.end(), block.begin(), block.end());
        }
        return out;
    }

    const FormMatrix<F>& matrix() const { return m_; }

private:
    const F& field_;
    const FormMatrix<F>& m_;
    std::map<int, TwistSections<F>> cache_;
};

// Incremental row space for membership tests, rows kept pivot-normalized.
template <class F>
class RowSpace {
public:
    explicit RowSpace(const F& field) : field_(field) {}

    // reduces v against the space; returns true (and absorbs it) when v adds
    // a new direction
    bool insert(std::vector<typename F::Elem> v) {
        reduce(v);
        size_t piv = v.size();
        for (size_t i = 0; i < v.size(); ++i)
            if (!field_.is_zero(v[i])) { piv = i; break; }
        if (piv == v.size()) return false;
        auto scale = field_.inv(v[piv]);
        for (auto& x : v) x = field_.mul(scale, x);
        rows_.emplace_back(piv, std::move(v));
        return true;
    }

    bool contains(std::vector<typename F::Elem> v) {
        reduce(v);
        for (const auto& x : v)
            if (!field_.is_zero(x)) return false;
        return true;
    }

private:
    void reduce(std::vector<typename F::Elem>& v) const {
        for (const auto& [piv, row] : rows_) {
            if (field_.is_zero(v[piv])) continue;
            auto factor = v[piv];
            for (size_t i = piv; i < v.size(); ++i)
                v[i] = field_.sub(v[i], field_.mul(factor, row[i]));
        }
    }

    const F& field_;
    std::vector<std::pair<size_t, std::vector<typename F::Elem>>> rows_;
};

template <class F>
struct KernelSplitting {
    // summand twists b_i (kernel = ⊕ O(b_i)), descending; parallel to the
    // minimal generators, which live in section degree -b_i
    std::vector<int> summands;
    std::vector<std::vector<BinaryForm<F>>> generators;
};

struct SplitWindow {
    int lo;
    int hi;
    int step;
    int max_extensions = 80;
};

inline SplitWindow default_window(int curve_degree, int form_degree, int ambient_dim) {
    int d = std::max(form_degree, 1);
    return SplitWindow{-(curve_degree * d + ambient_dim + 2), curve_degree + 2,
                       curve_degree + 1};
}

template <class F>
KernelSplitting<F> split_graded_kernel(const F& field, const FormMatrix<F>& m,
                                       int expected_rank, long long expected_degree,
                                       SplitWindow window) {
    SectionTable<F> table(field, m);
    int lo = window.lo, hi = window.hi;
    if (window.step < 1) throw std::invalid_argument("window step must be positive");
    if (hi < lo) std::swap(lo, hi);
    int extensions = 0;
    auto bail = [&](const std::string& why) -> void {
        std::ostringstream os;
        os << "kernel splitting did not close: " << why << " (window [" << lo << ", " << hi
           << "], expected rank " << expected_rank << ", expected degree " << expected_degree
           << ")";
        throw std::runtime_error(os.str());
    };

    std::map<int, int> multiplicity;
    for (;;) {
        if (extensions++ > window.max_extensions) bail("window extension limit reached");
        if (table.dim(lo) != 0 || table.dim(lo + 1) != 0) {
            lo -= window.step;
            continue;
        }
        multiplicity.clear();
        int rank_found = 0;
        long long degree_found = 0;
        bool negative = false;
        for (int j = lo + 2; j <= hi; ++j) {
            long long d2 = table.dim(j) - 2 * table.dim(j - 1) + table.dim(j - 2);
            if (d2 < 0) { negative = true; break; }
            if (d2 > 0) {
                multiplicity[j] = static_cast<int>(d2);
                rank_found += static_cast<int>(d2);
                degree_found += -static_cast<long long>(j) * d2;
            }
        }
        if (negative) bail("second difference of the section counts went negative");
        if (rank_found > expected_rank) bail("more generators than the expected rank");
        if (rank_found == expected_rank) {
            if (degree_found != expected_degree)
                bail("generator degrees do not sum to the expected bundle degree");
            // every summand must be contributing linearly at the top twist
            long long predicted = 0;
            for (auto [j, cnt] : multiplicity)
                predicted += static_cast<long long>(-j + hi + 1) * cnt;
            if (predicted != table.dim(hi)) bail("section counts disagree with the summands");
            break;
        }
        hi += window.step;
    }

    KernelSplitting<F> out;
    for (auto [j, cnt] : multiplicity) {
        // new generators in degree j: sections not reached from degree j-1
        RowSpace<F> space(field);
        for (const auto& w : table.at(j - 1).basis) {
            space.insert(table.shift(w, j, false));
            space.insert(table.shift(w, j, true));
        }
        int found = 0;
        for (const auto& b : table.at(j).basis) {
            if (space.insert(b)) {
                out.summands.push_back(-j);
                out.generators.push_back(table.unflatten(b, j));
                ++found;
            }
        }
        if (found != cnt) bail("generator extraction disagrees with the second difference");
    }
    return out;
}

// Writes a section v living at the given twist as v = Σ c_i · gen_i with
// deg c_i = twist + b_i; the representation in the free section module is
// unique.
template <class F>
std::vector<BinaryForm<F>> express_in_generators(const F& field,
                                                 const KernelSplitting<F>& split,
                                                 const std::vector<BinaryForm<F>>& v,
                                                 int twist) {
    const size_t comps = v.size();
    std::vector<int> cdeg(split.summands.size());
    std::vector<size_t> offset(split.summands.size() + 1, 0);
    for (size_t i = 0; i < split.summands.size(); ++i) {
        cdeg[i] = twist + split.summands[i];
        offset[i + 1] = offset[i] + (cdeg[i] >= 0 ? cdeg[i] + 1 : 0);
    }
    std::vector<size_t> eq_offset(comps + 1, 0);
    for (size_t l = 0; l < comps; ++l) eq_offset[l + 1] = eq_offset[l] + v[l].deg + 1;

    DenseMat<F> sys(field, eq_offset[comps], offset.back());
    std::vector<typename F::Elem> rhs;
    rhs.reserve(eq_offset[comps]);
    for (size_t l = 0; l < comps; ++l)
        for (int k = 0; k <= v[l].deg; ++k) rhs.push_back(v[l].coeff[k]);

    for (size_t i = 0; i < split.summands.size(); ++i) {
        if (cdeg[i] < 0) continue;
        const auto& gen = split.generators[i];
        for (size_t l = 0; l < comps; ++l) {
            const auto& g = gen[l];
            if (form_is_zero(field, g)) continue;
            for (int u = 0; u <= cdeg[i]; ++u)
                for (int k = u; k <= u + g.deg; ++k)
                    sys.at(eq_offset[l] + k, offset[i] + u) =
                        field.add(sys.at(eq_offset[l] + k, offset[i] + u), g.coeff[k - u]);
        }
    }

    auto sol = solve_particular(field, sys, rhs);
    if (!sol)
        throw std::runtime_error("section is not in the span of the kernel generators");
    std::vector<BinaryForm<F>> coeffs;
    for (size_t i = 0; i < split.summands.size(); ++i) {
        if (cdeg[i] < 0) {
            coeffs.push_back(zero_form(field, 0));
            continue;
        }
        BinaryForm<F> c = zero_form(field, cdeg[i]);
        for (int u = 0; u <= cdeg[i]; ++u) c.coeff[u] = (*sol)[offset[i] + u];
        coeffs.push_back(std::move(c));
    }
    return coeffs;
}

}  // namespace detail
}  // namespace fanokit
