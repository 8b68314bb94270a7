#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quadrop/tensor_index.hpp"
#include "quadrop/vec.hpp"

namespace quadrop {

/// Linear map between coordinate spaces, stored row-per-source-basis-element:
/// rows[i] is the image of the i-th source basis vector.
class LinMap {
public:
    LinMap() = default;

    LinMap(std::int64_t src_dim, std::int64_t dst_dim)
        : src_dim_(src_dim), dst_dim_(dst_dim), rows_(src_dim, Vec(dst_dim)) {}

    LinMap(std::int64_t src_dim, std::int64_t dst_dim, std::vector<Vec> rows)
        : src_dim_(src_dim), dst_dim_(dst_dim), rows_(std::move(rows)) {
        if (static_cast<std::int64_t>(rows_.size()) != src_dim_)
            throw DimensionError("LinMap: row count != src_dim");
        for (const Vec& r : rows_)
            if (r.dim() != dst_dim_)
                throw DimensionError("LinMap: row dimension != dst_dim");
    }

    static LinMap identity(std::int64_t n) {
        LinMap f(n, n);
        for (std::int64_t i = 0; i < n; ++i)
            f.rows_[i] = Vec::unit(n, i);
        return f;
    }

    static LinMap zero(std::int64_t src, std::int64_t dst) { return LinMap(src, dst); }

    std::int64_t src_dim() const { return src_dim_; }
    std::int64_t dst_dim() const { return dst_dim_; }
    const std::vector<Vec>& rows() const { return rows_; }
    const Vec& row(std::int64_t i) const { return rows_[i]; }
    void set_row(std::int64_t i, Vec v) {
        if (v.dim() != dst_dim_)
            throw DimensionError("LinMap::set_row: wrong dimension");
        rows_[i] = std::move(v);
    }

    Vec apply(const Vec& v) const {
        if (v.dim() != src_dim_)
            throw DimensionError("LinMap::apply: dimension mismatch");
        Vec out(dst_dim_);
        for (const auto& [i, c] : v.terms())
            out.axpy(c, rows_[i]);
        return out;
    }

    /// this then g.
    LinMap then(const LinMap& g) const {
        if (dst_dim_ != g.src_dim_)
            throw DimensionError("LinMap::then: dimension mismatch");
        LinMap out(src_dim_, g.dst_dim_);
        for (std::int64_t i = 0; i < src_dim_; ++i)
            out.rows_[i] = g.apply(rows_[i]);
        return out;
    }

    LinMap transpose() const {
        LinMap out(dst_dim_, src_dim_);
        for (std::int64_t i = 0; i < src_dim_; ++i)
            for (const auto& [j, c] : rows_[i].terms())
                out.rows_[j].set(i, c);
        return out;
    }

    /// Kronecker product: (f ⊗ g)(e_i ⊗ e_j) = f(e_i) ⊗ g(e_j),
    /// row-major index conventions on both sides.
    friend LinMap kron(const LinMap& f, const LinMap& g) {
        LinMap out(f.src_dim_ * g.src_dim_, f.dst_dim_ * g.dst_dim_);
        for (std::int64_t i = 0; i < f.src_dim_; ++i)
            for (std::int64_t j = 0; j < g.src_dim_; ++j) {
                Vec row(out.dst_dim_);
                for (const auto& [a, ca] : f.rows_[i].terms())
                    for (const auto& [b, cb] : g.rows_[j].terms())
                        row.set(a * g.dst_dim_ + b, ca * cb);
                out.rows_[i * g.src_dim_ + j] = std::move(row);
            }
        return out;
    }

    friend bool operator==(const LinMap& a, const LinMap& b) {
        return a.src_dim_ == b.src_dim_ && a.dst_dim_ == b.dst_dim_ && a.rows_ == b.rows_;
    }

private:
    std::int64_t src_dim_ = 0;
    std::int64_t dst_dim_ = 0;
    std::vector<Vec> rows_;
};

} // namespace quadrop
