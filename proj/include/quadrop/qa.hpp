#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "quadrop/subspace.hpp"

namespace quadrop {

/// Quadratic algebra, presented by its degree-1 part and the relation
/// subspace R ⊂ A1 ⊗ A1.  Generator names are reporting sugar; all
/// semantics are index-based.
class QuadraticAlgebra {
public:
    QuadraticAlgebra() : relations_(Subspace::zero(0)) {}

    QuadraticAlgebra(std::int64_t dim1, Subspace relations, std::vector<std::string> names = {})
        : dim1_(dim1), relations_(std::move(relations)), names_(std::move(names)) {
        if (relations_.ambient_dim() != dim1_ * dim1_)
            throw DimensionError("QuadraticAlgebra: relations must live in dim1^2");
        if (names_.empty()) {
            names_.reserve(dim1_);
            for (std::int64_t i = 0; i < dim1_; ++i)
                names_.push_back("x" + std::to_string(i));
        }
        if (static_cast<std::int64_t>(names_.size()) != dim1_)
            throw DimensionError("QuadraticAlgebra: need one name per generator");
    }

    std::int64_t dim1() const { return dim1_; }
    const Subspace& relations() const { return relations_; }
    const std::vector<std::string>& names() const { return names_; }

    TensorIndex square_index() const { return TensorIndex({dim1_, dim1_}); }

    /// Equality of presentations: same generator count and the same
    /// canonical relation subspace.  Names are ignored.
    friend bool operator==(const QuadraticAlgebra& a, const QuadraticAlgebra& b) {
        return a.dim1_ == b.dim1_ && a.relations_ == b.relations_;
    }

private:
    std::int64_t dim1_ = 0;
    Subspace relations_;
    std::vector<std::string> names_;
};

// ---------------------------------------------------------------------------
// Distinguished objects
// ---------------------------------------------------------------------------

/// K[t]/(t^2): one generator, relation t⊗t.  Unit of the black product.
inline QuadraticAlgebra unit_black() {
    return QuadraticAlgebra(1, Subspace::full(1), {"t"});
}

/// Free algebra on one generator.  Unit of the white product.
inline QuadraticAlgebra unit_white() {
    return QuadraticAlgebra(1, Subspace::zero(1), {"x"});
}

/// The ground field itself (no generators); initial object.
inline QuadraticAlgebra initial_algebra() {
    return QuadraticAlgebra(0, Subspace::zero(0), {});
}

/// Free (tensor) algebra on n generators: no relations.
inline QuadraticAlgebra free_algebra(std::int64_t n) {
    return QuadraticAlgebra(n, Subspace::zero(n * n));
}

/// Commutative polynomial algebra on n generators: relations x_i⊗x_j - x_j⊗x_i.
inline QuadraticAlgebra polynomial_algebra(std::int64_t n) {
    std::vector<Vec> rels;
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j) {
            Vec v(n * n);
            v.set(i * n + j, Scalar(1));
            v.set(j * n + i, Scalar(-1));
            rels.push_back(std::move(v));
        }
    return QuadraticAlgebra(n, Subspace::span(rels, n * n));
}

// ---------------------------------------------------------------------------
// Duality and products
// ---------------------------------------------------------------------------

/// Koszul duality: (A1, R)! = (A1*, R^⊥), the dual space identified with the
/// ambient space via dual bases.
inline QuadraticAlgebra dual(const QuadraticAlgebra& a) {
    std::vector<std::string> names;
    names.reserve(a.dim1());
    for (const auto& n : a.names())
        names.push_back(n + "'");
    return QuadraticAlgebra(a.dim1(), annihilator(a.relations()), std::move(names));
}

namespace detail {

inline std::vector<std::string> pair_names(const QuadraticAlgebra& a, const QuadraticAlgebra& b,
                                           const char* sep) {
    std::vector<std::string> names;
    names.reserve(a.dim1() * b.dim1());
    for (const auto& x : a.names())
        for (const auto& y : b.names())
            names.push_back(x + sep + y);
    return names;
}

inline std::vector<std::string> concat_names(const QuadraticAlgebra& a,
                                             const QuadraticAlgebra& b) {
    std::vector<std::string> names = a.names();
    names.insert(names.end(), b.names().begin(), b.names().end());
    return names;
}

} // namespace detail

/// Black product: generators A1⊗B1, relations S23(R(A) ⊗ R(B)).
inline QuadraticAlgebra black(const QuadraticAlgebra& a, const QuadraticAlgebra& b) {
    const std::int64_t da = a.dim1();
    const std::int64_t db = b.dim1();
    TensorIndex idx({da, da, db, db});
    Subspace rel = shuffle_s23(tensor_of_subspaces(a.relations(), b.relations()), idx);
    return QuadraticAlgebra(da * db, std::move(rel), detail::pair_names(a, b, "*"));
}

/// White product: generators A1⊗B1, relations
/// S23(R(A) ⊗ B1^{⊗2} + A1^{⊗2} ⊗ R(B)).
inline QuadraticAlgebra white(const QuadraticAlgebra& a, const QuadraticAlgebra& b) {
    const std::int64_t da = a.dim1();
    const std::int64_t db = b.dim1();
    TensorIndex idx({da, da, db, db});
    Subspace left = tensor_of_subspaces(a.relations(), Subspace::full(db * db));
    Subspace right = tensor_of_subspaces(Subspace::full(da * da), b.relations());
    Subspace rel = shuffle_s23(sum(left, right), idx);
    return QuadraticAlgebra(da * db, std::move(rel), detail::pair_names(a, b, "o"));
}

/// Commuting tensor product (sign = +1) and its skew variant (sign = -1):
/// generators A1 ⊕ B1, relations R(A) ⊕ {a⊗b - sign·b⊗a} ⊕ R(B).
/// The sign convention for the skew variant is this artifact's choice.
inline QuadraticAlgebra tensor_commuting(const QuadraticAlgebra& a, const QuadraticAlgebra& b,
                                         int sign = +1) {
    if (sign != 1 && sign != -1)
        throw DomainError("tensor_commuting: sign must be +-1");
    const std::int64_t da = a.dim1();
    const std::int64_t db = b.dim1();
    const std::int64_t d = da + db;
    std::vector<Vec> rels;
    auto emb_a = [&](std::int64_t i) {
        return (i / da) * d + (i % da);
    };
    auto emb_b = [&](std::int64_t i) {
        return (i / db + da) * d + (i % db + da);
    };
    for (const Vec& r : a.relations().basis())
        rels.push_back(r.mapped_indices(d * d, emb_a));
    for (const Vec& r : b.relations().basis())
        rels.push_back(r.mapped_indices(d * d, emb_b));
    for (std::int64_t i = 0; i < da; ++i)
        for (std::int64_t j = 0; j < db; ++j) {
            Vec v(d * d);
            v.set(i * d + (da + j), Scalar(1));
            v.set((da + j) * d + i, Scalar(-sign));
            rels.push_back(std::move(v));
        }
    return QuadraticAlgebra(d, Subspace::span(rels, d * d), detail::concat_names(a, b));
}

/// Coproduct (free product): generators A1 ⊕ B1, relations R(A) ⊕ R(B).
inline QuadraticAlgebra free_product(const QuadraticAlgebra& a, const QuadraticAlgebra& b) {
    const std::int64_t da = a.dim1();
    const std::int64_t db = b.dim1();
    const std::int64_t d = da + db;
    std::vector<Vec> rels;
    for (const Vec& r : a.relations().basis())
        rels.push_back(r.mapped_indices(d * d, [&](std::int64_t i) {
            return (i / da) * d + (i % da);
        }));
    for (const Vec& r : b.relations().basis())
        rels.push_back(r.mapped_indices(d * d, [&](std::int64_t i) {
            return (i / db + da) * d + (i % db + da);
        }));
    return QuadraticAlgebra(d, Subspace::span(rels, d * d), detail::concat_names(a, b));
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

/// Checks (f ⊗ f)(R(A)) ⊆ R(B) without constructing a morphism object.
inline bool is_morphism(const LinMap& f, const QuadraticAlgebra& a, const QuadraticAlgebra& b) {
    if (f.src_dim() != a.dim1() || f.dst_dim() != b.dim1())
        throw DimensionError("is_morphism: map dimensions do not match algebras");
    LinMap ff = kron(f, f);
    for (const Vec& r : a.relations().basis())
        if (!b.relations().contains(ff.apply(r)))
            return false;
    return true;
}

/// Morphism of quadratic algebras: a degree-1 linear map preserving
/// relations, checked at construction.
class QAMorphism {
public:
    QAMorphism(QuadraticAlgebra src, QuadraticAlgebra dst, LinMap map)
        : src_(std::move(src)), dst_(std::move(dst)), map_(std::move(map)) {
        if (!is_morphism(map_, src_, dst_))
            throw DomainError("QAMorphism: (f⊗f)(R(src)) not contained in R(dst)");
    }

    const QuadraticAlgebra& src() const { return src_; }
    const QuadraticAlgebra& dst() const { return dst_; }
    const LinMap& map() const { return map_; }

    QAMorphism then(const QAMorphism& g) const {
        return QAMorphism(src_, g.dst_, map_.then(g.map_));
    }

    static QAMorphism identity(const QuadraticAlgebra& a) {
        return QAMorphism(a, a, LinMap::identity(a.dim1()));
    }

private:
    QuadraticAlgebra src_;
    QuadraticAlgebra dst_;
    LinMap map_;
};

/// Relabels generators along a permutation: an isomorphism from A onto the
/// algebra with transported relations.  perm[i] is the new index of
/// generator i.
inline QAMorphism permute_generators(const QuadraticAlgebra& a,
                                     const std::vector<std::int64_t>& perm) {
    const std::int64_t n = a.dim1();
    if (static_cast<std::int64_t>(perm.size()) != n)
        throw DomainError("permute_generators: wrong permutation size");
    std::vector<bool> seen(n, false);
    for (std::int64_t p : perm) {
        if (p < 0 || p >= n || seen[p])
            throw DomainError("permute_generators: not a permutation");
        seen[p] = true;
    }
    Subspace moved = a.relations().mapped(n * n, [&](std::int64_t i) {
        return perm[i / n] * n + perm[i % n];
    });
    std::vector<std::string> names(n);
    for (std::int64_t i = 0; i < n; ++i)
        names[perm[i]] = a.names()[i];
    QuadraticAlgebra target(n, std::move(moved), std::move(names));
    LinMap f(n, n);
    for (std::int64_t i = 0; i < n; ++i)
        f.set_row(i, Vec::unit(n, perm[i]));
    return QAMorphism(a, std::move(target), std::move(f));
}

} // namespace quadrop
