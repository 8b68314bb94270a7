#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quadrop/config.hpp"
#include "quadrop/qa.hpp"

namespace quadrop {

inline Vec vec_kron(const Vec& u, const Vec& v) {
    Vec out(u.dim() * v.dim());
    for (const auto& [i, ci] : u.terms())
        for (const auto& [j, cj] : v.terms())
            out.set(i * v.dim() + j, ci * cj);
    return out;
}

/// Internal hom of the black-monoidal enrichment: [B,C] = B! ∘ C, with
/// generators indexed by B1* ⊗ C1.
struct HomObject {
    QuadraticAlgebra source;  // B
    QuadraticAlgebra target;  // C
    QuadraticAlgebra algebra; // B! ∘ C
    TensorIndex index;        // (dim B1, dim C1)
};

inline HomObject hom_object(const QuadraticAlgebra& b, const QuadraticAlgebra& c) {
    return HomObject{b, c, white(dual(b), c), TensorIndex({b.dim1(), c.dim1()})};
}

/// Element of a hom-object generator space, flagged by the membership
/// criterion for being a morphism element.
struct EnrichmentElement {
    Vec d; // in B1* ⊗ C1
    QuadraticAlgebra source;
    QuadraticAlgebra target;
    bool valid = false;
};

/// The subspace R(B)^⊥ ⊗ C1^{⊗2} + (B1*)^{⊗2} ⊗ R(C) of (B1*⊗C1)^{⊗2}
/// after the S23 regrouping, i.e. inside (B1*)^{⊗2} ⊗ C1^{⊗2}.
inline Subspace element_condition_space(const QuadraticAlgebra& b, const QuadraticAlgebra& c) {
    const std::int64_t b2 = b.dim1() * b.dim1();
    const std::int64_t c2 = c.dim1() * c.dim1();
    Subspace left = tensor_of_subspaces(annihilator(b.relations()), Subspace::full(c2));
    Subspace right = tensor_of_subspaces(Subspace::full(b2), c.relations());
    return sum(left, right);
}

/// Membership test of the element-as-morphism criterion:
/// S23(d⊗d) ∈ R(B)^⊥ ⊗ C1^{⊗2} + (B1*)^{⊗2} ⊗ R(C).
inline bool element_is_morphism(const Vec& d, const QuadraticAlgebra& b,
                                const QuadraticAlgebra& c) {
    if (d.dim() != b.dim1() * c.dim1())
        throw DimensionError("element_is_morphism: element has wrong dimension");
    TensorIndex idx({b.dim1(), c.dim1(), b.dim1(), c.dim1()});
    Vec dd = shuffle_s23(vec_kron(d, d), idx);
    return member(dd, element_condition_space(b, c));
}

/// Reshape a map A1⊗B1 → C1 into its adjoint mate A1 → B1*⊗C1.
inline LinMap adjoint_mate(const LinMap& f, std::int64_t dim_a, std::int64_t dim_b,
                           std::int64_t dim_c) {
    if (f.src_dim() != dim_a * dim_b || f.dst_dim() != dim_c)
        throw DimensionError("adjoint_mate: dimensions do not match");
    LinMap g(dim_a, dim_b * dim_c);
    for (std::int64_t i = 0; i < dim_a; ++i) {
        Vec row(dim_b * dim_c);
        for (std::int64_t j = 0; j < dim_b; ++j)
            for (const auto& [k, ck] : f.row(i * dim_b + j).terms())
                row.set(j * dim_c + k, ck);
        g.set_row(i, std::move(row));
    }
    return g;
}

/// Inverse reshape: A1 → B1*⊗C1 back to A1⊗B1 → C1.
inline LinMap adjoint_mate_inverse(const LinMap& g, std::int64_t dim_a, std::int64_t dim_b,
                                   std::int64_t dim_c) {
    if (g.src_dim() != dim_a || g.dst_dim() != dim_b * dim_c)
        throw DimensionError("adjoint_mate_inverse: dimensions do not match");
    std::vector<Vec> rows(dim_a * dim_b, Vec(dim_c));
    for (std::int64_t i = 0; i < dim_a; ++i)
        for (const auto& [jk, c] : g.row(i).terms())
            rows[i * dim_b + jk / dim_c].set(jk % dim_c, c);
    return LinMap(dim_a * dim_b, dim_c, std::move(rows));
}

/// Reshape a morphism B → C into its hom-object element in B1*⊗C1.
inline EnrichmentElement morphism_to_element(const QAMorphism& f) {
    const std::int64_t b = f.src().dim1();
    const std::int64_t c = f.dst().dim1();
    Vec d(b * c);
    for (std::int64_t j = 0; j < b; ++j)
        for (const auto& [k, ck] : f.map().row(j).terms())
            d.set(j * c + k, ck);
    EnrichmentElement e{std::move(d), f.src(), f.dst(), false};
    e.valid = element_is_morphism(e.d, e.source, e.target);
    return e;
}

/// Reshape an element of B1*⊗C1 into the linear map B1 → C1.
inline LinMap element_to_map(const Vec& d, std::int64_t dim_b, std::int64_t dim_c) {
    if (d.dim() != dim_b * dim_c)
        throw DimensionError("element_to_map: wrong dimension");
    std::vector<Vec> rows(dim_b, Vec(dim_c));
    for (const auto& [jk, c] : d.terms())
        rows[jk / dim_c].set(jk % dim_c, c);
    return LinMap(dim_b, dim_c, std::move(rows));
}

/// Kelly composition μ: [B,C] • [A,B] → [A,C], contracting the inner B pair
/// on generators: (φ⊗c)⊗(ψ⊗b) -> φ(b)·(ψ⊗c).
inline QAMorphism composition_mu(const QuadraticAlgebra& a, const QuadraticAlgebra& b,
                                 const QuadraticAlgebra& c) {
    const std::int64_t da = a.dim1(), db = b.dim1(), dc = c.dim1();
    HomObject bc = hom_object(b, c);
    HomObject ab = hom_object(a, b);
    HomObject ac = hom_object(a, c);
    QuadraticAlgebra src = black(bc.algebra, ab.algebra);
    LinMap mu(db * dc * da * db, da * dc);
    for (std::int64_t j = 0; j < db; ++j)
        for (std::int64_t k = 0; k < dc; ++k)
            for (std::int64_t i = 0; i < da; ++i) {
                // Only the diagonal j2 == j contracts to a nonzero generator.
                std::int64_t s = (j * dc + k) * (da * db) + (i * db + j);
                mu.set_row(s, Vec::unit(da * dc, i * dc + k));
            }
    return QAMorphism(std::move(src), ac.algebra, std::move(mu));
}

/// Kelly identity element j_A = Σ_i e_i* ⊗ e_i together with the morphism
/// K[t]/(t^2) → [A,A] it generates.
struct UnitJ {
    EnrichmentElement element;
    QAMorphism morphism;
};

inline Vec coevaluation(std::int64_t n) {
    Vec j(n * n);
    for (std::int64_t i = 0; i < n; ++i)
        j.set(i * n + i, Scalar(1));
    return j;
}

inline UnitJ unit_j(const QuadraticAlgebra& a) {
    Vec j = coevaluation(a.dim1());
    HomObject aa = hom_object(a, a);
    LinMap f(1, j.dim());
    f.set_row(0, j);
    EnrichmentElement e{j, a, a, element_is_morphism(j, a, a)};
    return UnitJ{std::move(e), QAMorphism(unit_black(), aa.algebra, std::move(f))};
}

/// Kelly counit e: [B,C] • B → C, evaluation on generators:
/// (φ⊗c)⊗b -> φ(b)·c.
inline QAMorphism counit_e(const QuadraticAlgebra& b, const QuadraticAlgebra& c) {
    const std::int64_t db = b.dim1(), dc = c.dim1();
    HomObject bc = hom_object(b, c);
    QuadraticAlgebra src = black(bc.algebra, b);
    LinMap ev(db * dc * db, dc);
    for (std::int64_t j = 0; j < db; ++j)
        for (std::int64_t k = 0; k < dc; ++k)
            ev.set_row((j * dc + k) * db + j, Vec::unit(dc, k));
    return QAMorphism(std::move(src), c, std::move(ev));
}

/// Enrichment space for one operadic composition:
/// (P(k) ⊗ P(m_1) ⊗ ... ⊗ P(m_k))! ∘ P(m_1+...+m_k).
inline HomObject operad_enrichment_space(const std::vector<QuadraticAlgebra>& components,
                                         const QuadraticAlgebra& target) {
    QuadraticAlgebra folded = initial_algebra();
    for (const auto& p : components)
        folded = tensor_commuting(folded, p);
    return hom_object(folded, target);
}

/// Quantised action space P(n)! ∘ [Q^{⊗n}, Q^{⊗n}] of a component on a
/// quadratic algebra Q.
inline QuadraticAlgebra quantised_action_space(const QuadraticAlgebra& pn,
                                               const QuadraticAlgebra& q, std::int64_t n) {
    if (n < 1)
        throw DomainError("quantised_action_space: need n >= 1");
    const std::int64_t hom_dim = n * q.dim1() * n * q.dim1();
    const std::int64_t result_dim = pn.dim1() * hom_dim;
    if (result_dim * result_dim > max_ambient())
        throw BoundExceeded("quantised_action_space: relation space exceeds ambient bound");
    QuadraticAlgebra qn = initial_algebra();
    for (std::int64_t i = 0; i < n; ++i)
        qn = tensor_commuting(qn, q);
    HomObject h = hom_object(qn, qn);
    return white(dual(pn), h.algebra);
}

} // namespace quadrop
