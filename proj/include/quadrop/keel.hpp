#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "quadrop/qa.hpp"
#include "quadrop/subspace.hpp"

namespace quadrop {

/// Subset of the marks {0,...,m-1} as a bitmask.
using Mask = std::uint32_t;

/// Marked points of a moduli space.  Mark 0 is the distinguished output leg
/// when the model is used as an operad component P(m-1).
struct MarkSet {
    int m = 0;
    std::vector<int> labels; // defaults to 0..m-1

    explicit MarkSet(int m_) : m(m_) {
        labels.resize(m);
        for (int i = 0; i < m; ++i)
            labels[i] = i;
    }
    MarkSet(int m_, std::vector<int> labels_) : m(m_), labels(std::move(labels_)) {
        if (static_cast<int>(labels.size()) != m)
            throw DimensionError("MarkSet: need one label per mark");
    }
};

namespace keel_detail {

inline int popcount(Mask x) { return std::popcount(x); }

/// Lexicographic order on subsets viewed as sorted element sequences.
inline bool mask_lex_less(Mask a, Mask b) {
    while (a != 0 && b != 0) {
        int ia = std::countr_zero(a);
        int ib = std::countr_zero(b);
        if (ia != ib)
            return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

inline std::string mask_to_string(Mask s) {
    std::string out = "{";
    bool first = true;
    while (s != 0) {
        if (!first)
            out += ",";
        out += std::to_string(std::countr_zero(s));
        first = false;
        s &= s - 1;
    }
    return out + "}";
}

} // namespace keel_detail

/// Boundary divisor class δ_S of M̄_{0,m}, stored as the representative side
/// containing mark 0 (the lexicographically smaller side).
struct BoundaryClass {
    Mask rep = 0;

    static BoundaryClass normalized(Mask s, int m) {
        const Mask full = (m >= 32) ? ~Mask(0) : ((Mask(1) << m) - 1);
        Mask t = s & full;
        if ((t & 1u) == 0)
            t = full & ~t;
        const int size = keel_detail::popcount(t);
        if (size < 2 || size > m - 2)
            throw DomainError("BoundaryClass: side sizes must be between 2 and m-2");
        return BoundaryClass{t};
    }
};

/// Element of H^2 in the canonical basis of a KeelModel.
using H2Class = Vec;

/// One graded piece of the Keel ring together with its normal-form data.
/// The monomial coordinates range over admissible monomials only (multisets
/// of pairwise non-crossing boundary classes); monomials containing a
/// crossing pair are zero in the ring and are projected out up front.
struct GradedComponent {
    int degree = 0;
    std::vector<std::vector<int>> monomials;            // sorted class-index multisets
    std::map<std::vector<int>, std::int64_t> monomial_index;
    Subspace ideal;                                     // inside the admissible span
    std::vector<std::int64_t> basis;                    // non-pivot monomial indices
    std::vector<std::int64_t> basis_position;           // monomial idx -> coord or -1
    std::int64_t dim = 0;

    /// Normal-form coordinates of a vector given over admissible monomials.
    Vec reduce(const Vec& v) const {
        Vec nf = ideal.reduce(v);
        Vec coords(dim);
        for (const auto& [i, c] : nf.terms())
            coords.set(basis_position[i], c);
        return coords;
    }
};

/// Keel presentation of the cohomology ring H*(M̄_{0,m}, Q): boundary
/// generators δ_S with the linear four-point relations and vanishing
/// products of crossing classes.  Graded pieces are built on demand and
/// cached; models are otherwise immutable.
class KeelModel {
public:
    explicit KeelModel(MarkSet marks) : marks_(std::move(marks)) {
        const int m = marks_.m;
        if (m < 3)
            throw DomainError("KeelModel: need at least 3 marks");
        if (m > 16)
            throw BoundExceeded("KeelModel: mark masks support m <= 16");
        full_ = (Mask(1) << m) - 1;

        for (Mask s = 0; s <= full_; ++s) {
            if ((s & 1u) == 0)
                continue;
            const int size = keel_detail::popcount(s);
            if (size < 2 || size > m - 2)
                continue;
            classes_.push_back(s);
        }
        std::sort(classes_.begin(), classes_.end(), keel_detail::mask_lex_less);
        for (std::size_t i = 0; i < classes_.size(); ++i)
            class_index_[classes_[i]] = static_cast<int>(i);

        const std::size_t n = classes_.size();
        crossing_.assign(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                crossing_[i][j] = compute_crossing(classes_[i], classes_[j]);

        build_linear_relations();
        grade_cache_.resize(std::max(0, m - 1)); // degrees 0..m-2 are meaningful
    }

    KeelModel(const KeelModel&) = delete;
    KeelModel& operator=(const KeelModel&) = delete;

    int m() const { return marks_.m; }
    const MarkSet& marks() const { return marks_; }
    Mask full_mask() const { return full_; }
    std::int64_t class_count() const { return static_cast<std::int64_t>(classes_.size()); }
    const std::vector<Mask>& classes() const { return classes_; }
    const Subspace& linear_relations() const { return linear_relations_; }
    std::int64_t h2_dim() const { return static_cast<std::int64_t>(h2_basis_.size()); }
    const std::vector<std::int64_t>& h2_basis() const { return h2_basis_; }

    int index_of_class(Mask s) const {
        auto norm = BoundaryClass::normalized(s, marks_.m);
        auto it = class_index_.find(norm.rep);
        if (it == class_index_.end())
            throw DomainError("KeelModel: not a boundary class");
        return it->second;
    }

    bool crossing(int a, int b) const { return crossing_[a][b]; }

    std::string class_name(int idx) const { return "d" + keel_detail::mask_to_string(classes_[idx]); }

    /// Top nonzero cohomological degree (complex dimension of the space).
    int top_degree() const { return marks_.m - 3; }

    /// Reduce a formal sum of δ classes to H^2 coordinates.
    H2Class delta_reduce(const Vec& delta_sum) const {
        if (delta_sum.dim() != class_count())
            throw DimensionError("delta_reduce: wrong number of delta coordinates");
        Vec nf = linear_relations_.reduce(delta_sum);
        Vec coords(h2_dim());
        for (const auto& [i, c] : nf.terms())
            coords.set(h2_position_[i], c);
        return coords;
    }

    H2Class delta_reduce(const std::vector<std::pair<Scalar, Mask>>& expr) const {
        Vec v(class_count());
        for (const auto& [c, s] : expr)
            v.add_to(index_of_class(s), c);
        return delta_reduce(v);
    }

    /// ψ-class at mark i computed with reference legs j, k:
    /// ψ_i = Σ_{S: i∈S; j,k∉S} δ_S, independent of (j,k) modulo relations.
    H2Class psi_class(int i, int j, int k) const {
        const int m = marks_.m;
        if (i == j || i == k || j == k || i < 0 || j < 0 || k < 0 || i >= m || j >= m || k >= m)
            throw DomainError("psi_class: marks must be three distinct labels");
        Vec v(class_count());
        for (std::size_t idx = 0; idx < classes_.size(); ++idx) {
            Mask side = classes_[idx];
            if ((side & (Mask(1) << i)) == 0)
                side = full_ & ~side;
            if ((side & (Mask(1) << j)) == 0 && (side & (Mask(1) << k)) == 0)
                v.add_to(static_cast<std::int64_t>(idx), Scalar(1));
        }
        return delta_reduce(v);
    }

    /// Graded piece of degree d with normal-form machinery (cached).
    const GradedComponent& graded(int d) const {
        if (d < 0 || d > marks_.m - 2)
            throw DomainError("graded: degree out of range 0..m-2");
        std::lock_guard<std::mutex> lock(cache_mutex_);
        for (int k = 0; k <= d; ++k)
            if (!grade_cache_[k].has_value())
                build_graded(k);
        return *grade_cache_[d];
    }

    /// Computed honestly through degree m-2 (one past the top degree, where
    /// the ring must vanish); not merely read off the expected profile.
    std::int64_t graded_dim(int d) const {
        if (d < 0)
            throw DomainError("graded_dim: negative degree");
        return graded(d).dim;
    }

    /// Product of normal-form elements of degrees da and db.
    Vec multiply(const Vec& a, int da, const Vec& b, int db) const {
        const GradedComponent& ga = graded(da);
        const GradedComponent& gb = graded(db);
        const GradedComponent& gc = graded(da + db);
        if (a.dim() != ga.dim || b.dim() != gb.dim)
            throw DimensionError("multiply: coordinate dimensions do not match degrees");
        Vec acc(static_cast<std::int64_t>(gc.monomials.size()));
        for (const auto& [p, cp] : a.terms())
            for (const auto& [q, cq] : b.terms()) {
                const auto& mu = ga.monomials[ga.basis[p]];
                const auto& nu = gb.monomials[gb.basis[q]];
                bool compatible = true;
                for (int x : mu) {
                    for (int y : nu)
                        if (crossing_[x][y]) {
                            compatible = false;
                            break;
                        }
                    if (!compatible)
                        break;
                }
                if (!compatible)
                    continue;
                std::vector<int> prod;
                prod.reserve(mu.size() + nu.size());
                std::merge(mu.begin(), mu.end(), nu.begin(), nu.end(), std::back_inserter(prod));
                acc.add_to(gc.monomial_index.at(prod), cp * cq);
            }
        return gc.reduce(acc);
    }

    /// Euler characteristic of the graded dims (diagnostic cross-check).
    std::int64_t euler_characteristic() const {
        std::int64_t chi = 0;
        for (int d = 0; d <= top_degree(); ++d)
            chi += graded_dim(d);
        return chi;
    }

private:
    bool compute_crossing(Mask a, Mask b) const {
        if ((a & ~b) == 0 || (b & ~a) == 0)
            return false; // nested
        if ((a & b) == 0 || ((a | b) == full_))
            return false; // disjoint up to complement
        return true;
    }

    /// Linear four-point relations: for distinct marks i,j,k,l the class sums
    /// Σ_{ij|kl} δ_S − Σ_{ik|jl} δ_S and Σ_{ij|kl} δ_S − Σ_{il|jk} δ_S.
    void build_linear_relations() {
        const int m = marks_.m;
        const std::int64_t n = class_count();
        std::vector<Vec> rels;
        auto pair_sum = [&](int i, int j, int k, int l) {
            // classes whose (i,j)-side excludes k and l
            Vec v(n);
            for (std::size_t idx = 0; idx < classes_.size(); ++idx) {
                Mask side = classes_[idx];
                if ((side & (Mask(1) << i)) == 0)
                    side = full_ & ~side;
                const bool has_j = (side & (Mask(1) << j)) != 0;
                const bool has_k = (side & (Mask(1) << k)) != 0;
                const bool has_l = (side & (Mask(1) << l)) != 0;
                if (has_j && !has_k && !has_l)
                    v.add_to(static_cast<std::int64_t>(idx), Scalar(1));
            }
            return v;
        };
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                for (int k = j + 1; k < m; ++k)
                    for (int l = k + 1; l < m; ++l) {
                        Vec ij_kl = pair_sum(i, j, k, l);
                        Vec ik_jl = pair_sum(i, k, j, l);
                        Vec il_jk = pair_sum(i, l, j, k);
                        rels.push_back(ij_kl - ik_jl);
                        rels.push_back(ij_kl - il_jk);
                    }
        linear_relations_ = Subspace::span(rels, n);
        h2_basis_ = linear_relations_.non_pivots();
        h2_position_.assign(n, -1);
        for (std::size_t k = 0; k < h2_basis_.size(); ++k)
            h2_position_[h2_basis_[k]] = static_cast<std::int64_t>(k);
    }

    void build_graded(int d) const {
        auto& slot = grade_cache_[d];
        GradedComponent g;
        g.degree = d;
        // Enumerate admissible monomials in canonical (lex) order.
        std::vector<int> current;
        enumerate_monomials(d, 0, current, g.monomials);
        for (std::size_t i = 0; i < g.monomials.size(); ++i)
            g.monomial_index[g.monomials[i]] = static_cast<std::int64_t>(i);
        const std::int64_t nmono = static_cast<std::int64_t>(g.monomials.size());

        if (d == 0) {
            g.ideal = Subspace::zero(1);
            g.basis = {0};
            g.basis_position = {0};
            g.dim = 1;
            slot.emplace(std::move(g));
            return;
        }
        if (d == 1) {
            g.ideal = linear_relations_;
        } else {
            const GradedComponent& prev = *grade_cache_[d - 1]; // built below
            RrefBuilder builder(nmono);
            for (const auto& mu : prev.monomials) {
                for (const Vec& rel : linear_relations_.basis()) {
                    Vec v(nmono);
                    for (const auto& [cls, coeff] : rel.terms()) {
                        const int c = static_cast<int>(cls);
                        bool compatible = true;
                        for (int x : mu)
                            if (crossing_[x][c]) {
                                compatible = false;
                                break;
                            }
                        if (!compatible)
                            continue;
                        std::vector<int> prod = mu;
                        prod.insert(std::upper_bound(prod.begin(), prod.end(), c), c);
                        v.add_to(g.monomial_index.at(prod), coeff);
                    }
                    builder.insert(std::move(v));
                }
            }
            g.ideal = std::move(builder).finalize();
        }
        g.basis = g.ideal.non_pivots();
        g.basis_position.assign(nmono, -1);
        for (std::size_t k = 0; k < g.basis.size(); ++k)
            g.basis_position[g.basis[k]] = static_cast<std::int64_t>(k);
        g.dim = static_cast<std::int64_t>(g.basis.size());
        slot.emplace(std::move(g));
    }

    void enumerate_monomials(int remaining, int min_class, std::vector<int>& current,
                             std::vector<std::vector<int>>& out) const {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (int c = min_class; c < static_cast<int>(classes_.size()); ++c) {
            bool ok = true;
            for (int x : current)
                if (crossing_[x][c]) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            current.push_back(c);
            enumerate_monomials(remaining - 1, c, current, out);
            current.pop_back();
        }
    }

    MarkSet marks_;
    Mask full_ = 0;
    std::vector<Mask> classes_;
    std::map<Mask, int> class_index_;
    std::vector<std::vector<bool>> crossing_;
    Subspace linear_relations_;
    std::vector<std::int64_t> h2_basis_;
    std::vector<std::int64_t> h2_position_;
    mutable std::mutex cache_mutex_;
    mutable std::vector<std::optional<GradedComponent>> grade_cache_;
};

/// Shared canonical model per mark count.
inline const KeelModel& keel_model(int m) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<KeelModel>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end())
        it = cache.emplace(m, std::make_unique<KeelModel>(MarkSet(m))).first;
    return *it->second;
}

/// The quadratic algebra P(m-1) = (H^2, ker(H^2 ⊗ H^2 → H^4)) of the Keel
/// ring, with the model it came from.
struct KeelPresentation {
    const KeelModel* model;
    QuadraticAlgebra algebra;
    LinMap multiplication; // H^2 ⊗ H^2 -> H^4 in canonical bases
};

inline KeelPresentation keel_presentation(int m, int max_m = 7) {
    if (m < 4 || m > max_m)
        throw DomainError("keel_presentation: m must be between 4 and the configured bound");
    const KeelModel& model = keel_model(m);
    const std::int64_t h1 = model.h2_dim();
    const GradedComponent& g2 = model.graded(2);
    LinMap mult(h1 * h1, g2.dim);
    for (std::int64_t p = 0; p < h1; ++p)
        for (std::int64_t q = 0; q < h1; ++q)
            mult.set_row(p * h1 + q,
                         model.multiply(Vec::unit(h1, p), 1, Vec::unit(h1, q), 1));
    Subspace relations = kernel(mult);
    std::vector<std::string> names;
    names.reserve(h1);
    for (std::int64_t b : model.h2_basis())
        names.push_back(model.class_name(static_cast<int>(b)));
    return KeelPresentation{&model, QuadraticAlgebra(h1, std::move(relations), std::move(names)),
                            std::move(mult)};
}

} // namespace quadrop
