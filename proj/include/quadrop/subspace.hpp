#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "quadrop/linmap.hpp"
#include "quadrop/rational.hpp"
#include "quadrop/tensor_index.hpp"
#include "quadrop/vec.hpp"

namespace quadrop {

class Subspace;

/// Incremental reduced-row-echelon elimination.  Rows are reduced against
/// existing pivots on insertion; back-substitution happens once in
/// finalize(), which keeps intermediate fill low.
class RrefBuilder {
public:
    explicit RrefBuilder(std::int64_t ambient, CancelToken cancel = {})
        : ambient_(ambient), cancel_(cancel) {}

    /// Returns true if the row contributed a new pivot.
    bool insert(Vec v) {
        if (v.dim() != ambient_)
            throw DimensionError("RrefBuilder::insert: ambient mismatch");
        cancel_.check();
        while (!v.is_zero()) {
            const std::int64_t lead = v.lead();
            auto it = rows_.find(lead);
            if (it == rows_.end()) {
                Scalar inv = 1 / v.lead_coeff();
                v *= inv;
                rows_.emplace(lead, std::move(v));
                return true;
            }
            Scalar c = -v.lead_coeff();
            v.axpy(c, it->second);
        }
        return false;
    }

    std::int64_t rank() const { return static_cast<std::int64_t>(rows_.size()); }
    std::int64_t ambient() const { return ambient_; }

    /// Reduce v modulo the current row space (no back-substitution needed:
    /// the normal form only depends on the row space).  The minimum index
    /// of the unprocessed part strictly increases, so this terminates.
    Vec reduce(Vec v) const {
        Vec out(ambient_);
        while (!v.is_zero()) {
            const std::int64_t lead = v.lead();
            auto it = rows_.find(lead);
            if (it == rows_.end()) {
                out.set(lead, v.lead_coeff());
                v.set(lead, Scalar(0));
            } else {
                Scalar c = -v.lead_coeff();
                v.axpy(c, it->second);
            }
        }
        return out;
    }

    bool contains(Vec v) const { return reduce(std::move(v)).is_zero(); }

    Subspace finalize() &&;

private:
    std::int64_t ambient_;
    std::map<std::int64_t, Vec> rows_; // pivot -> row, pivot coefficient 1
    CancelToken cancel_;
};

/// Subspace of K^n in canonical reduced row-echelon form: pivot entries are
/// 1 with zeros above and below, pivots strictly increase.  Two equal
/// subspaces have identical representations.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::int64_t ambient) : ambient_(ambient) {}

    static Subspace zero(std::int64_t ambient) { return Subspace(ambient); }

    static Subspace full(std::int64_t ambient) {
        Subspace s(ambient);
        s.rows_.reserve(ambient);
        for (std::int64_t i = 0; i < ambient; ++i) {
            s.rows_.push_back(Vec::unit(ambient, i));
            s.pivots_.push_back(i);
        }
        return s;
    }

    static Subspace span(const std::vector<Vec>& vectors, std::int64_t ambient,
                         CancelToken cancel = {}) {
        RrefBuilder b(ambient, cancel);
        for (const Vec& v : vectors)
            b.insert(v);
        return std::move(b).finalize();
    }

    /// Adopt rows already known to satisfy the RREF invariants (pivot 1,
    /// pivots increasing, pivot columns clean).  Verified in debug builds.
    static Subspace from_rref_rows(std::vector<Vec> rows, std::vector<std::int64_t> pivots,
                                   std::int64_t ambient) {
        Subspace s(ambient);
        s.rows_ = std::move(rows);
        s.pivots_ = std::move(pivots);
#ifndef NDEBUG
        s.check_invariants();
#endif
        return s;
    }

    std::int64_t ambient_dim() const { return ambient_; }
    std::int64_t rank() const { return static_cast<std::int64_t>(rows_.size()); }
    const std::vector<Vec>& basis() const { return rows_; }
    const std::vector<std::int64_t>& pivots() const { return pivots_; }
    bool is_zero() const { return rows_.empty(); }
    bool is_full() const { return rank() == ambient_; }

    /// Sorted list of non-pivot coordinates (a canonical complement).
    std::vector<std::int64_t> non_pivots() const {
        std::vector<std::int64_t> out;
        out.reserve(ambient_ - rank());
        std::size_t k = 0;
        for (std::int64_t i = 0; i < ambient_; ++i) {
            if (k < pivots_.size() && pivots_[k] == i)
                ++k;
            else
                out.push_back(i);
        }
        return out;
    }

    /// Normal form of v modulo this subspace: pivot coordinates eliminated.
    /// RREF rows only touch their own pivot among pivot columns, so one
    /// sweep over the pivot-indexed terms of v suffices.
    Vec reduce(Vec v) const {
        if (v.dim() != ambient_)
            throw DimensionError("Subspace::reduce: ambient mismatch");
        std::vector<std::pair<std::size_t, Scalar>> hits;
        for (const auto& [i, c] : v.terms()) {
            auto it = std::lower_bound(pivots_.begin(), pivots_.end(), i);
            if (it != pivots_.end() && *it == i)
                hits.emplace_back(static_cast<std::size_t>(it - pivots_.begin()), c);
        }
        for (const auto& [k, c] : hits)
            v.axpy(-c, rows_[k]);
        return v;
    }

    bool contains(const Vec& v) const { return reduce(v).is_zero(); }

    bool contains(const Subspace& other) const {
        if (other.ambient_ != ambient_)
            throw DimensionError("Subspace::contains: ambient mismatch");
        for (const Vec& r : other.rows_)
            if (!contains(r))
                return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
    }

    /// Image under a coordinate remapping (injective on indices).
    template <typename F>
    Subspace mapped(std::int64_t new_ambient, F&& f) const {
        std::vector<Vec> vs;
        vs.reserve(rows_.size());
        for (const Vec& r : rows_)
            vs.push_back(r.mapped_indices(new_ambient, f));
        return span(vs, new_ambient);
    }

    void check_invariants() const {
        if (rows_.size() != pivots_.size())
            throw DimensionError("Subspace: rows/pivots size mismatch");
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            if (rows_[k].is_zero() || rows_[k].lead() != pivots_[k])
                throw DimensionError("Subspace: bad pivot");
            if (rows_[k].lead_coeff() != 1)
                throw DimensionError("Subspace: pivot not normalized");
            if (k > 0 && pivots_[k - 1] >= pivots_[k])
                throw DimensionError("Subspace: pivots not increasing");
            for (std::size_t l = 0; l < rows_.size(); ++l)
                if (l != k && !quadrop::is_zero(rows_[l].get(pivots_[k])))
                    throw DimensionError("Subspace: pivot column not clean");
        }
    }

private:
    friend class RrefBuilder;
    std::int64_t ambient_ = 0;
    std::vector<Vec> rows_;
    std::vector<std::int64_t> pivots_;
};

inline Subspace RrefBuilder::finalize() && {
    Subspace s(ambient_);
    // Back-substitute from the largest pivot down, so every referenced row
    // is already clean when used.
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
        cancel_.check();
        Vec& row = it->second;
        for (;;) {
            const Vec::Term* hit = nullptr;
            for (const auto& t : row.terms()) {
                if (t.first == it->first)
                    continue;
                auto jt = rows_.find(t.first);
                if (jt != rows_.end()) {
                    hit = &t;
                    break;
                }
            }
            if (hit == nullptr)
                break;
            Scalar c = -hit->second;
            row.axpy(c, rows_.at(hit->first));
        }
    }
    s.rows_.reserve(rows_.size());
    s.pivots_.reserve(rows_.size());
    for (auto& [piv, row] : rows_) {
        s.pivots_.push_back(piv);
        s.rows_.push_back(std::move(row));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Subspace operations
// ---------------------------------------------------------------------------

inline Subspace canonicalize(const std::vector<Vec>& vectors, std::int64_t ambient,
                             CancelToken cancel = {}) {
    for (const Vec& v : vectors)
        if (v.dim() != ambient)
            throw DimensionError("canonicalize: ambient mismatch");
    return Subspace::span(vectors, ambient, cancel);
}

inline Subspace sum(const Subspace& s, const Subspace& t, CancelToken cancel = {}) {
    if (s.ambient_dim() != t.ambient_dim())
        throw DimensionError("sum: ambient mismatch");
    RrefBuilder b(s.ambient_dim(), cancel);
    for (const Vec& r : s.basis())
        b.insert(r);
    for (const Vec& r : t.basis())
        b.insert(r);
    return std::move(b).finalize();
}

/// Kernel of f as a subspace of the source.
inline Subspace kernel(const LinMap& f, CancelToken cancel = {}) {
    const std::int64_t n = f.src_dim();
    const std::int64_t m = f.dst_dim();
    // Eliminate rows (f(e_i) | e_i); rows whose image part dies leave their
    // combination recorded in the shadow block.
    RrefBuilder b(m + n, cancel);
    std::vector<Vec> shadows;
    for (std::int64_t i = 0; i < n; ++i) {
        Vec aug(m + n);
        for (const auto& [j, c] : f.row(i).terms())
            aug.set(j, c);
        aug.set(m + i, Scalar(1));
        b.insert(std::move(aug));
    }
    Subspace ref = std::move(b).finalize();
    std::vector<Vec> ker_rows;
    for (const Vec& r : ref.basis()) {
        if (r.lead() >= m) {
            Vec v(n);
            for (const auto& [j, c] : r.terms())
                v.set(j - m, c);
            ker_rows.push_back(std::move(v));
        }
    }
    return Subspace::span(ker_rows, n, cancel);
}

inline Subspace image(const LinMap& f, CancelToken cancel = {}) {
    return Subspace::span(f.rows(), f.dst_dim(), cancel);
}

/// Annihilator S^⊥ in the dual space, identified with the ambient space via
/// the dual basis (coordinatewise pairing).
inline Subspace annihilator(const Subspace& s) {
    const std::int64_t n = s.ambient_dim();
    const auto& pivots = s.pivots();
    std::vector<Vec> rows;
    rows.reserve(n - s.rank());
    for (std::int64_t j : s.non_pivots()) {
        // e_j minus the j-th column of the basis matrix placed at pivots.
        Vec v(n);
        v.set(j, Scalar(1));
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            Scalar c = s.basis()[k].get(j);
            if (!is_zero(c))
                v.set(pivots[k], -c);
        }
        rows.push_back(std::move(v));
    }
    return Subspace::span(rows, n);
}

inline Subspace intersect(const Subspace& s, const Subspace& t) {
    if (s.ambient_dim() != t.ambient_dim())
        throw DimensionError("intersect: ambient mismatch");
    return annihilator(sum(annihilator(s), annihilator(t)));
}

inline bool member(const Vec& v, const Subspace& s) { return s.contains(v); }

/// Split v = s + t with s in S and t in T; empty when v is not in S + T.
inline std::optional<std::pair<Vec, Vec>> decompose(const Vec& v, const Subspace& s,
                                                    const Subspace& t) {
    const std::int64_t n = s.ambient_dim();
    if (t.ambient_dim() != n || v.dim() != n)
        throw DimensionError("decompose: ambient mismatch");
    const std::int64_t rs = s.rank();
    const std::int64_t rt = t.rank();
    RrefBuilder b(n + rs + rt);
    for (std::int64_t k = 0; k < rs; ++k) {
        Vec aug(n + rs + rt);
        for (const auto& [j, c] : s.basis()[k].terms())
            aug.set(j, c);
        aug.set(n + k, Scalar(1));
        b.insert(std::move(aug));
    }
    for (std::int64_t k = 0; k < rt; ++k) {
        Vec aug(n + rs + rt);
        for (const auto& [j, c] : t.basis()[k].terms())
            aug.set(j, c);
        aug.set(n + rs + k, Scalar(1));
        b.insert(std::move(aug));
    }
    Vec aug(n + rs + rt);
    for (const auto& [j, c] : v.terms())
        aug.set(j, c);
    Vec residue = b.reduce(std::move(aug));
    // v - Σ c_k (row_k | shadow_k) = (0 | -coeffs) iff v is in S + T.
    for (const auto& [j, c] : residue.terms())
        if (j < n)
            return std::nullopt;
    Vec sv(n), tv(n);
    for (const auto& [j, c] : residue.terms()) {
        if (j < n + rs)
            sv.axpy(-c, s.basis()[j - n]);
        else
            tv.axpy(-c, t.basis()[j - n - rs]);
    }
    return std::make_pair(std::move(sv), std::move(tv));
}

/// Quotient of K^n by S: a deterministic complement (the non-pivot
/// coordinates of S), the projection onto it, and the section back.
struct Quotient {
    std::vector<std::int64_t> complement; // ambient indices of the section basis
    LinMap projection;                    // K^n -> K^q, kernel exactly S
    LinMap section;                       // K^q -> K^n, projection ∘ section = id
};

inline Quotient quotient_section(std::int64_t ambient, const Subspace& s) {
    if (s.ambient_dim() != ambient)
        throw DimensionError("quotient_section: ambient mismatch");
    Quotient q;
    q.complement = s.non_pivots();
    const std::int64_t qd = static_cast<std::int64_t>(q.complement.size());
    std::vector<std::int64_t> position(ambient, -1);
    for (std::int64_t k = 0; k < qd; ++k)
        position[q.complement[k]] = k;
    LinMap proj(ambient, qd);
    for (std::int64_t i = 0; i < ambient; ++i) {
        Vec nf = s.reduce(Vec::unit(ambient, i));
        Vec row(qd);
        for (const auto& [j, c] : nf.terms())
            row.set(position[j], c);
        proj.set_row(i, std::move(row));
    }
    LinMap sec(qd, ambient);
    for (std::int64_t k = 0; k < qd; ++k)
        sec.set_row(k, Vec::unit(ambient, q.complement[k]));
    q.projection = std::move(proj);
    q.section = std::move(sec);
    return q;
}

/// Tensor product of subspaces: S ⊂ K^a, T ⊂ K^b give S⊗T ⊂ K^{ab},
/// spanned by Kronecker products of basis rows.  The Kronecker product of
/// RREF bases is again RREF when rows are ordered by (pivot_S, pivot_T).
inline Subspace tensor_of_subspaces(const Subspace& s, const Subspace& t) {
    const std::int64_t a = s.ambient_dim();
    const std::int64_t b = t.ambient_dim();
    std::vector<Vec> rows;
    std::vector<std::int64_t> pivots;
    rows.reserve(s.rank() * t.rank());
    for (std::int64_t i = 0; i < s.rank(); ++i) {
        for (std::int64_t j = 0; j < t.rank(); ++j) {
            Vec row(a * b);
            for (const auto& [p, cp] : s.basis()[i].terms())
                for (const auto& [q, cq] : t.basis()[j].terms())
                    row.set(p * b + q, cp * cq);
            rows.push_back(std::move(row));
            pivots.push_back(s.pivots()[i] * b + t.pivots()[j]);
        }
    }
    return Subspace::from_rref_rows(std::move(rows), std::move(pivots), a * b);
}

/// The shuffle swapping the middle two factors of a 4-fold tensor product:
/// e_{i,j,k,l} over (d0,d1,d2,d3) maps to e_{i,k,j,l} over (d0,d2,d1,d3).
inline Vec shuffle_s23(const Vec& v, const TensorIndex& idx) {
    if (idx.factors() != 4)
        throw DimensionError("shuffle_s23: need exactly 4 factors");
    if (v.dim() != idx.total())
        throw DimensionError("shuffle_s23: vector/index mismatch");
    TensorIndex out_idx({idx.dim(0), idx.dim(2), idx.dim(1), idx.dim(3)});
    return v.mapped_indices(idx.total(), [&](std::int64_t i) {
        auto m = idx.unflat(i);
        return out_idx.flat({m[0], m[2], m[1], m[3]});
    });
}

inline Subspace shuffle_s23(const Subspace& s, const TensorIndex& idx) {
    if (idx.factors() != 4)
        throw DimensionError("shuffle_s23: need exactly 4 factors");
    if (s.ambient_dim() != idx.total())
        throw DimensionError("shuffle_s23: subspace/index mismatch");
    TensorIndex out_idx({idx.dim(0), idx.dim(2), idx.dim(1), idx.dim(3)});
    return s.mapped(idx.total(), [&](std::int64_t i) {
        auto m = idx.unflat(i);
        return out_idx.flat({m[0], m[2], m[1], m[3]});
    });
}

} // namespace quadrop
