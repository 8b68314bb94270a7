#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "quadrop/keel.hpp"
#include "quadrop/trees.hpp"

namespace quadrop {

inline H2Class h2_of_class(const KeelModel& model, int class_idx) {
    Vec v(model.class_count());
    v.set(class_idx, Scalar(1));
    return model.delta_reduce(v);
}

/// Coordinate layout of ⊕_{a+b=d} H^{2a}(side1) ⊗ H^{2b}(side2), blocks in
/// increasing side1-degree a, each block row-major.
struct ProductLayout {
    const KeelModel* s1 = nullptr;
    const KeelModel* s2 = nullptr;
    int degree = 0;
    std::vector<std::int64_t> offsets; // size degree+2
    std::int64_t total = 0;

    ProductLayout() = default;
    ProductLayout(const KeelModel& a, const KeelModel& b, int d) : s1(&a), s2(&b), degree(d) {
        offsets.assign(d + 2, 0);
        for (int deg_a = 0; deg_a <= d; ++deg_a)
            offsets[deg_a + 1] =
                offsets[deg_a] + block_dim_1(deg_a) * block_dim_2(d - deg_a);
        total = offsets[d + 1];
    }

    std::int64_t block_dim_1(int a) const {
        return (a <= s1->m() - 2) ? s1->graded_dim(a) : 0;
    }
    std::int64_t block_dim_2(int b) const {
        return (b <= s2->m() - 2) ? s2->graded_dim(b) : 0;
    }
    std::int64_t flat(int a, std::int64_t p, std::int64_t q) const {
        return offsets[a] + p * block_dim_2(degree - a) + q;
    }
};

/// Pullback of cohomology along the inclusion of the boundary divisor D_{S0}
/// ≅ M̄_{0,S0∪•} × M̄_{0,S0^c∪★}.  Side models put the original marks first
/// (in increasing position order) and the new leg last.  Construction
/// certifies that every linear Keel relation maps to zero.
struct EdgePullback {
    const KeelModel* source = nullptr;
    const KeelModel* side1 = nullptr;
    const KeelModel* side2 = nullptr;
    Mask s0 = 0;
    std::vector<int> side1_marks; // source positions of side1, new leg omitted
    std::vector<int> side2_marks;
    std::vector<std::pair<Vec, Vec>> class_image; // per source class: (x, y)

    ProductLayout layout(int d) const { return ProductLayout(*side1, *side2, d); }

    /// Generator-level map H^2(source) → H^2(s1) ⊕ H^2(s2), side2 block
    /// first (it is the a = 0 block of the degree-1 layout).
    LinMap degree1() const { return degree_map(1); }

    LinMap degree1_side1() const {
        LinMap f(source->h2_dim(), side1->h2_dim());
        for (std::int64_t i = 0; i < source->h2_dim(); ++i)
            f.set_row(i, class_image[source->h2_basis()[i]].first);
        return f;
    }

    LinMap degree1_side2() const {
        LinMap f(source->h2_dim(), side2->h2_dim());
        for (std::int64_t i = 0; i < source->h2_dim(); ++i)
            f.set_row(i, class_image[source->h2_basis()[i]].second);
        return f;
    }

    /// Full degree-d matrix: basis monomials of H^{2d}(source) mapped
    /// multiplicatively into the product layout.
    LinMap degree_map(int d) const {
        const GradedComponent& g = source->graded(d);
        ProductLayout lay = layout(d);
        LinMap f(g.dim, lay.total);
        for (std::int64_t row = 0; row < g.dim; ++row) {
            const auto& monomial = g.monomials[g.basis[row]];
            // blocks[a] holds the degree-(a, t-a) part of the partial product.
            std::vector<Vec> blocks = {Vec(1)};
            blocks[0].set(0, Scalar(1));
            int t = 0;
            for (int cls : monomial) {
                const auto& [x, y] = class_image[cls];
                std::vector<Vec> next(t + 2);
                for (int a = 0; a <= t + 1; ++a)
                    next[a] = Vec(lay.block_dim_1(a) *
                                  ((t + 1 - a <= side2->m() - 2)
                                       ? side2->graded_dim(t + 1 - a)
                                       : 0));
                for (int a = 0; a <= t; ++a) {
                    const std::int64_t hb = (t - a <= side2->m() - 2)
                                                ? side2->graded_dim(t - a)
                                                : 0;
                    for (const auto& [pq, c] : blocks[a].terms()) {
                        const std::int64_t p = pq / hb;
                        const std::int64_t q = pq % hb;
                        if (!x.is_zero() && a + 1 <= side1->m() - 2) {
                            Vec xp = side1->multiply(Vec::unit(side1->graded_dim(a), p), a, x, 1);
                            const std::int64_t hb1 = hb;
                            for (const auto& [pp, cc] : xp.terms())
                                next[a + 1].add_to(pp * hb1 + q, c * cc);
                        }
                        if (!y.is_zero() && t - a + 1 <= side2->m() - 2) {
                            Vec yq = side2->multiply(Vec::unit(hb, q), t - a, y, 1);
                            const std::int64_t hb2 = side2->graded_dim(t - a + 1);
                            for (const auto& [qq, cc] : yq.terms())
                                next[a].add_to(p * hb2 + qq, c * cc);
                        }
                    }
                }
                blocks = std::move(next);
                ++t;
            }
            Vec out(lay.total);
            for (int a = 0; a <= d; ++a)
                for (const auto& [pq, c] : blocks[a].terms())
                    out.add_to(lay.offsets[a] + pq, c);
            f.set_row(row, std::move(out));
        }
        return f;
    }
};

inline EdgePullback one_edge_pullback(const KeelModel& model, Mask s0) {
    const int m = model.m();
    const Mask full = model.full_mask();
    s0 &= full;
    const int k = keel_detail::popcount(s0);
    if (k < 2 || k > m - 2)
        throw DomainError("one_edge_pullback: side sizes must be between 2 and m-2");

    EdgePullback pb;
    pb.source = &model;
    pb.s0 = s0;
    for (int i = 0; i < m; ++i) {
        if (s0 & (Mask(1) << i))
            pb.side1_marks.push_back(i);
        else
            pb.side2_marks.push_back(i);
    }
    pb.side1 = &keel_model(k + 1);
    pb.side2 = &keel_model(m - k + 1);

    // Position of a source mark inside each side model; new legs sit last.
    std::vector<int> pos1(m, -1), pos2(m, -1);
    for (std::size_t i = 0; i < pb.side1_marks.size(); ++i)
        pos1[pb.side1_marks[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < pb.side2_marks.size(); ++i)
        pos2[pb.side2_marks[i]] = static_cast<int>(i);
    const int leg1 = k;         // • in side1
    const int leg2 = m - k;     // ★ in side2

    auto side_mask = [&](Mask subset, const std::vector<int>& pos) {
        Mask out = 0;
        for (int i = 0; i < m; ++i)
            if (subset & (Mask(1) << i))
                out |= Mask(1) << pos[i];
        return out;
    };

    const int source_class = model.index_of_class(s0);
    // ψ at the new leg, reference legs = the two lowest original marks.
    H2Class psi1 = (pb.side1->m() >= 4) ? pb.side1->psi_class(leg1, 0, 1)
                                        : H2Class(pb.side1->h2_dim());
    H2Class psi2 = (pb.side2->m() >= 4) ? pb.side2->psi_class(leg2, 0, 1)
                                        : H2Class(pb.side2->h2_dim());

    pb.class_image.resize(model.class_count());
    for (std::int64_t idx = 0; idx < model.class_count(); ++idx) {
        Vec x(pb.side1->h2_dim());
        Vec y(pb.side2->h2_dim());
        if (static_cast<int>(idx) == source_class) {
            x = Scalar(-1) * psi1;
            y = Scalar(-1) * psi2;
        } else if (!model.crossing(static_cast<int>(idx), source_class)) {
            Mask rep = model.classes()[idx];
            Mask inside = ((rep & ~s0) == 0) ? rep : ((full & ~rep & ~s0) == 0 ? (full & ~rep) : 0);
            if (inside != 0) {
                // representative nested strictly inside S0 -> side1 class
                x = h2_of_class(*pb.side1, pb.side1->index_of_class(side_mask(inside, pos1)));
            } else {
                Mask outside = ((rep & s0) == 0) ? rep : (full & ~rep);
                y = h2_of_class(*pb.side2, pb.side2->index_of_class(side_mask(outside, pos2)));
            }
        }
        pb.class_image[idx] = {std::move(x), std::move(y)};
    }

    // Well-definedness certificate: every linear Keel relation dies.
    for (const Vec& rel : model.linear_relations().basis()) {
        Vec sx(pb.side1->h2_dim());
        Vec sy(pb.side2->h2_dim());
        for (const auto& [cls, c] : rel.terms()) {
            sx.axpy(c, pb.class_image[cls].first);
            sy.axpy(c, pb.class_image[cls].second);
        }
        if (!sx.is_zero() || !sy.is_zero())
            throw DomainError("one_edge_pullback: a Keel relation survived (broken rule table)");
    }
    return pb;
}

// ---------------------------------------------------------------------------
// Relabelling
// ---------------------------------------------------------------------------

inline Mask apply_mark_permutation(Mask s, const std::vector<int>& perm) {
    Mask out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (s & (Mask(1) << i))
            out |= Mask(1) << perm[i];
    return out;
}

/// Matrix of the ring automorphism induced by a permutation of marks on the
/// degree-d component (perm[pos] = new position).
inline LinMap keel_relabel(const KeelModel& model, const std::vector<int>& perm, int d) {
    const int m = model.m();
    if (static_cast<int>(perm.size()) != m)
        throw DomainError("keel_relabel: permutation size must equal the mark count");
    std::vector<bool> seen(m, false);
    for (int p : perm) {
        if (p < 0 || p >= m || seen[p])
            throw DomainError("keel_relabel: not a permutation");
        seen[p] = true;
    }
    // The linear Keel relations are permutation-invariant as a family; the
    // induced class permutation must preserve their span.
    std::vector<int> class_perm(model.class_count());
    for (std::int64_t i = 0; i < model.class_count(); ++i)
        class_perm[i] = model.index_of_class(apply_mark_permutation(model.classes()[i], perm));
    Subspace moved = model.linear_relations().mapped(
        model.class_count(), [&](std::int64_t i) { return class_perm[i]; });
    if (!(moved == model.linear_relations()))
        throw DomainError("keel_relabel: relations not stable under the permutation");

    const GradedComponent& g = model.graded(d);
    LinMap f(g.dim, g.dim);
    for (std::int64_t row = 0; row < g.dim; ++row) {
        std::vector<int> moved_monomial;
        for (int cls : g.monomials[g.basis[row]])
            moved_monomial.push_back(class_perm[cls]);
        std::sort(moved_monomial.begin(), moved_monomial.end());
        Vec v(static_cast<std::int64_t>(g.monomials.size()));
        v.set(g.monomial_index.at(moved_monomial), Scalar(1));
        f.set_row(row, g.reduce(v));
    }
    return f;
}

/// Cached canonical presentation per mark count.
inline const KeelPresentation& keel_presentation_cached(int m) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<KeelPresentation>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end())
        it = cache.emplace(m, std::make_unique<KeelPresentation>(keel_presentation(m))).first;
    return *it->second;
}

/// Algebra automorphism of P(n) induced by a relabeling of the inputs 1..n
/// (mark 0, the output leg, stays fixed).
inline QAMorphism sn_relabel(int m, const std::vector<int>& perm) {
    if (perm.empty() || perm[0] != 0)
        throw DomainError("sn_relabel: permutation must fix the output mark 0");
    const KeelPresentation& pres = keel_presentation_cached(m);
    LinMap f = keel_relabel(*pres.model, perm, 1);
    return QAMorphism(pres.algebra, pres.algebra, std::move(f));
}

// ---------------------------------------------------------------------------
// Cooperadic comultiplication along a stable tree
// ---------------------------------------------------------------------------

/// The component algebra P(n): trivial for n < 3, Keel presentation above.
inline QuadraticAlgebra component_algebra(int n) {
    if (n < 1)
        throw DomainError("component_algebra: arity must be at least 1");
    if (n <= 2)
        return initial_algebra();
    return keel_presentation_cached(n + 1).algebra;
}

struct TreeComult {
    QuadraticAlgebra source;       // P(n)
    QuadraticAlgebra target;       // ⊗_v P(n_v), vertices in id order
    std::vector<int> vertex_arity; // n_v per vertex
    LinMap generator_map;          // H^2(P(n)) -> ⊕_v H^2(P(n_v))
    std::optional<QAMorphism> morphism;
};

namespace comult_detail {

struct Port {
    bool is_tail = false;
    int id = 0;     // tail label or tree edge index
    int vertex = 0; // attachment vertex in the original tree
};

struct Part {
    std::vector<int> vertices;
    std::vector<Port> ports;
};

} // namespace comult_detail

/// Comultiplication P(n) → ⊗_{v} P(|F(v)|−1) built by iterated one-edge
/// pullbacks.  `edge_order` (a permutation of the edge indices) selects the
/// processing order; the result is independent of it.
inline TreeComult tree_comult(int n, const StableTree& tree,
                              std::vector<int> edge_order = {}) {
    using comult_detail::Part;
    using comult_detail::Port;

    auto diag = validate_tree(tree);
    if (!diag.valid)
        throw DomainError("tree_comult: invalid tree: " + diag.problems.front());
    std::vector<int> labels;
    for (const auto& [v, label] : tree.tails)
        labels.push_back(label);
    std::sort(labels.begin(), labels.end());
    for (int i = 0; i <= n; ++i)
        if (i >= static_cast<int>(labels.size()) || labels[i] != i)
            throw DomainError("tree_comult: tails must be labelled 0..n");
    if (static_cast<int>(labels.size()) != n + 1)
        throw DomainError("tree_comult: tails must be labelled 0..n");

    if (edge_order.empty()) {
        edge_order.resize(tree.edges.size());
        for (std::size_t e = 0; e < tree.edges.size(); ++e)
            edge_order[e] = static_cast<int>(e);
    }
    {
        std::vector<int> sorted = edge_order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t e = 0; e < tree.edges.size(); ++e)
            if (e >= sorted.size() || sorted[e] != static_cast<int>(e))
                throw DomainError("tree_comult: edge_order must permute the edges");
    }

    int root_vertex = 0; // vertex carrying tail 0
    for (const auto& [v, label] : tree.tails)
        if (label == 0)
            root_vertex = v;

    // Which side of each edge contains the root tail.
    std::vector<std::vector<int>> root_side(tree.edges.size());
    for (std::size_t e = 0; e < tree.edges.size(); ++e)
        root_side[e] = split_by_edge(tree, static_cast<int>(e), root_vertex).first;

    // Initial part: the whole tree; ports are the tails in label order, so
    // part positions coincide with the source model's marks.
    Part whole;
    whole.vertices.resize(tree.n_vertices);
    for (int v = 0; v < tree.n_vertices; ++v)
        whole.vertices[v] = v;
    {
        std::vector<std::pair<int, int>> tails = tree.tails; // (vertex, label)
        std::sort(tails.begin(), tails.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
        for (const auto& [v, label] : tails)
            whole.ports.push_back(Port{true, label, v});
    }
    std::vector<Part> parts = {whole};

    const KeelPresentation& source_pres = keel_presentation_cached(n + 1);
    LinMap acc = LinMap::identity(source_pres.model->h2_dim());

    auto part_dim = [](const Part& p) {
        return keel_model(static_cast<int>(p.ports.size())).h2_dim();
    };

    for (int e : edge_order) {
        const auto [u, v] = tree.edges[e];
        std::size_t pi = parts.size();
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const auto& verts = parts[i].vertices;
            if (std::find(verts.begin(), verts.end(), u) != verts.end()) {
                pi = i;
                break;
            }
        }
        Part part = parts[pi];
        auto [compu, compv] = split_by_edge(tree, e, u);

        auto in_comp = [](const std::vector<int>& comp, int w) {
            return std::find(comp.begin(), comp.end(), w) != comp.end();
        };
        Mask s0 = 0;
        for (std::size_t i = 0; i < part.ports.size(); ++i)
            if (in_comp(compu, part.ports[i].vertex))
                s0 |= Mask(1) << i;

        const KeelModel& part_model = keel_model(static_cast<int>(part.ports.size()));
        EdgePullback pb = one_edge_pullback(part_model, s0);

        Part part1, part2;
        for (int w : part.vertices)
            (in_comp(compu, w) ? part1 : part2).vertices.push_back(w);
        for (int pos : pb.side1_marks)
            part1.ports.push_back(part.ports[pos]);
        part1.ports.push_back(Port{false, e, u});
        for (int pos : pb.side2_marks)
            part2.ports.push_back(part.ports[pos]);
        part2.ports.push_back(Port{false, e, v});

        // Block update: identity away from the split part.
        std::vector<Part> new_parts;
        std::vector<std::int64_t> old_offsets(parts.size() + 1, 0);
        for (std::size_t i = 0; i < parts.size(); ++i)
            old_offsets[i + 1] = old_offsets[i] + part_dim(parts[i]);
        std::int64_t new_total = 0;
        std::vector<std::int64_t> new_offset_of_old(parts.size(), -1);
        std::int64_t split_offset1 = -1, split_offset2 = -1;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i == pi) {
                split_offset1 = new_total;
                new_parts.push_back(part1);
                new_total += part_dim(part1);
                split_offset2 = new_total;
                new_parts.push_back(part2);
                new_total += part_dim(part2);
            } else {
                new_offset_of_old[i] = new_total;
                new_parts.push_back(parts[i]);
                new_total += part_dim(parts[i]);
            }
        }
        LinMap update(old_offsets.back(), new_total);
        LinMap d1 = pb.degree1_side1();
        LinMap d2 = pb.degree1_side2();
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const std::int64_t dim = part_dim(parts[i]);
            for (std::int64_t r = 0; r < dim; ++r) {
                Vec row(new_total);
                if (i == pi) {
                    for (const auto& [j, c] : d1.row(r).terms())
                        row.set(split_offset1 + j, c);
                    for (const auto& [j, c] : d2.row(r).terms())
                        row.set(split_offset2 + j, c);
                } else {
                    row.set(new_offset_of_old[i] + r, Scalar(1));
                }
                update.set_row(old_offsets[i] + r, std::move(row));
            }
        }
        acc = acc.then(update);
        parts = std::move(new_parts);
    }

    // Canonicalize every single-vertex part: output flag to mark 0, inputs
    // ordered by the least tail label reachable through the flag.
    struct FinalFactor {
        int vertex;
        int arity;
        LinMap relabel;       // part coordinates -> canonical coordinates
        std::int64_t offset;  // into the pre-permutation target
    };
    std::vector<FinalFactor> factors;
    std::int64_t offset = 0;
    // Minimum tail label on the non-root side of each edge.
    auto min_label_through = [&](int edge, int from_vertex) {
        auto comps = split_by_edge(tree, edge, from_vertex);
        int best = n + 1;
        for (const auto& [tv, tl] : tree.tails)
            if (std::find(comps.second.begin(), comps.second.end(), tv) != comps.second.end())
                best = std::min(best, tl);
        return best;
    };
    for (const Part& part : parts) {
        const int mprt = static_cast<int>(part.ports.size());
        const KeelModel& model = keel_model(mprt);
        // Output port: tail 0 itself or the edge port leading toward it.
        std::vector<std::pair<int, int>> keyed; // (key, position)
        int out_pos = -1;
        for (int i = 0; i < mprt; ++i) {
            const Port& p = part.ports[i];
            if (p.is_tail) {
                if (p.id == 0)
                    out_pos = i;
                else
                    keyed.emplace_back(p.id, i);
            } else {
                const bool toward_root =
                    std::find(root_side[p.id].begin(), root_side[p.id].end(), p.vertex) ==
                    root_side[p.id].end();
                if (toward_root)
                    out_pos = i;
                else
                    keyed.emplace_back(min_label_through(p.id, p.vertex), i);
            }
        }
        if (out_pos < 0)
            throw DomainError("tree_comult: no route to the output leg");
        std::sort(keyed.begin(), keyed.end());
        std::vector<int> perm(mprt, -1);
        perm[out_pos] = 0;
        for (std::size_t i = 0; i < keyed.size(); ++i)
            perm[keyed[i].second] = static_cast<int>(i) + 1;
        factors.push_back(FinalFactor{part.vertices.front(), mprt - 1,
                                      keel_relabel(model, perm, 1), offset});
        offset += model.h2_dim();
    }

    // Reorder factors by vertex id and assemble the final coordinate change.
    std::vector<std::size_t> order(factors.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return factors[a].vertex < factors[b].vertex; });
    std::int64_t total = offset;
    std::vector<std::int64_t> final_offset(factors.size(), 0);
    {
        std::int64_t at = 0;
        for (std::size_t k = 0; k < order.size(); ++k) {
            final_offset[order[k]] = at;
            at += factors[order[k]].relabel.dst_dim();
        }
    }
    LinMap finalize(total, total);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const FinalFactor& fac = factors[i];
        for (std::int64_t r = 0; r < fac.relabel.src_dim(); ++r) {
            Vec row(total);
            for (const auto& [j, c] : fac.relabel.row(r).terms())
                row.set(final_offset[i] + j, c);
            finalize.set_row(fac.offset + r, std::move(row));
        }
    }
    acc = acc.then(finalize);

    TreeComult out;
    out.source = source_pres.algebra;
    QuadraticAlgebra target = initial_algebra();
    std::vector<int> arity;
    for (std::size_t k = 0; k < order.size(); ++k)
        arity.push_back(factors[order[k]].arity);
    for (int a : arity)
        target = tensor_commuting(target, component_algebra(a));
    out.target = std::move(target);
    out.vertex_arity = std::move(arity);
    out.generator_map = acc;
    out.morphism.emplace(out.source, out.target, std::move(acc));
    return out;
}

} // namespace quadrop
