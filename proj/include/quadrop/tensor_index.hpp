#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "quadrop/errors.hpp"

namespace quadrop {

/// Mixed-radix bijection between multi-indices and flat indices for a tensor
/// product of factors.  Row-major: the leftmost factor is most significant.
class TensorIndex {
public:
    TensorIndex() = default;

    explicit TensorIndex(std::vector<std::int64_t> dims) : dims_(std::move(dims)) {
        strides_.assign(dims_.size(), 1);
        total_ = 1;
        for (std::size_t k = dims_.size(); k-- > 0;) {
            if (dims_[k] < 0)
                throw DimensionError("TensorIndex: negative factor dimension");
            strides_[k] = total_;
            total_ *= dims_[k];
        }
    }

    TensorIndex(std::initializer_list<std::int64_t> dims)
        : TensorIndex(std::vector<std::int64_t>(dims)) {}

    std::size_t factors() const { return dims_.size(); }
    std::int64_t dim(std::size_t k) const { return dims_[k]; }
    const std::vector<std::int64_t>& dims() const { return dims_; }
    std::int64_t total() const { return total_; }
    std::int64_t stride(std::size_t k) const { return strides_[k]; }

    std::int64_t flat(const std::vector<std::int64_t>& multi) const {
        if (multi.size() != dims_.size())
            throw DimensionError("TensorIndex::flat: wrong arity");
        std::int64_t out = 0;
        for (std::size_t k = 0; k < dims_.size(); ++k)
            out += multi[k] * strides_[k];
        return out;
    }

    std::vector<std::int64_t> unflat(std::int64_t i) const {
        std::vector<std::int64_t> multi(dims_.size());
        for (std::size_t k = 0; k < dims_.size(); ++k) {
            multi[k] = (strides_[k] == 0) ? 0 : (i / strides_[k]);
            i -= multi[k] * strides_[k];
        }
        return multi;
    }

    friend bool operator==(const TensorIndex& a, const TensorIndex& b) {
        return a.dims_ == b.dims_;
    }

private:
    std::vector<std::int64_t> dims_;
    std::vector<std::int64_t> strides_;
    std::int64_t total_ = 1;
};

} // namespace quadrop
