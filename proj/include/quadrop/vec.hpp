#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "quadrop/errors.hpp"
#include "quadrop/rational.hpp"

namespace quadrop {

/// Sparse vector over the rationals.  Terms are kept sorted by index and
/// never store zero coefficients, so equal vectors have equal
/// representations.
class Vec {
public:
    using Term = std::pair<std::int64_t, Scalar>;

    Vec() = default;
    explicit Vec(std::int64_t dim) : dim_(dim) {}

    static Vec zero(std::int64_t dim) { return Vec(dim); }

    static Vec unit(std::int64_t dim, std::int64_t i) {
        Vec v(dim);
        v.set(i, Scalar(1));
        return v;
    }

    std::int64_t dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t nnz() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    /// Index of the first nonzero entry; undefined on the zero vector.
    std::int64_t lead() const { return terms_.front().first; }
    const Scalar& lead_coeff() const { return terms_.front().second; }

    Scalar get(std::int64_t i) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                                   [](const Term& t, std::int64_t j) { return t.first < j; });
        if (it != terms_.end() && it->first == i)
            return it->second;
        return Scalar(0);
    }

    void set(std::int64_t i, Scalar c) {
        if (i < 0 || i >= dim_)
            throw DimensionError("Vec::set: index out of range");
        auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                                   [](const Term& t, std::int64_t j) { return t.first < j; });
        if (it != terms_.end() && it->first == i) {
            if (quadrop::is_zero(c))
                terms_.erase(it);
            else
                it->second = std::move(c);
        } else if (!quadrop::is_zero(c)) {
            terms_.insert(it, {i, std::move(c)});
        }
    }

    void add_to(std::int64_t i, const Scalar& c) {
        if (quadrop::is_zero(c))
            return;
        auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                                   [](const Term& t, std::int64_t j) { return t.first < j; });
        if (it != terms_.end() && it->first == i) {
            it->second += c;
            if (quadrop::is_zero(it->second))
                terms_.erase(it);
        } else {
            terms_.insert(it, {i, c});
        }
    }

    /// this += c * other, sparse merge.
    void axpy(const Scalar& c, const Vec& other) {
        if (other.dim_ != dim_)
            throw DimensionError("Vec::axpy: dimension mismatch");
        if (quadrop::is_zero(c) || other.terms_.empty())
            return;
        std::vector<Term> merged;
        merged.reserve(terms_.size() + other.terms_.size());
        auto a = terms_.begin();
        auto b = other.terms_.begin();
        while (a != terms_.end() && b != other.terms_.end()) {
            if (a->first < b->first) {
                merged.push_back(std::move(*a));
                ++a;
            } else if (b->first < a->first) {
                merged.emplace_back(b->first, c * b->second);
                ++b;
            } else {
                Scalar s = a->second + c * b->second;
                if (!quadrop::is_zero(s))
                    merged.emplace_back(a->first, std::move(s));
                ++a;
                ++b;
            }
        }
        for (; a != terms_.end(); ++a)
            merged.push_back(std::move(*a));
        for (; b != other.terms_.end(); ++b)
            merged.emplace_back(b->first, c * b->second);
        terms_ = std::move(merged);
    }

    Vec& operator*=(const Scalar& c) {
        if (quadrop::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& [i, v] : terms_)
            v *= c;
        return *this;
    }

    Vec& operator+=(const Vec& other) {
        axpy(Scalar(1), other);
        return *this;
    }

    Vec& operator-=(const Vec& other) {
        axpy(Scalar(-1), other);
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(const Scalar& c, Vec v) { return v *= c; }

    Scalar dot(const Vec& other) const {
        if (other.dim_ != dim_)
            throw DimensionError("Vec::dot: dimension mismatch");
        Scalar acc(0);
        auto a = terms_.begin();
        auto b = other.terms_.begin();
        while (a != terms_.end() && b != other.terms_.end()) {
            if (a->first < b->first)
                ++a;
            else if (b->first < a->first)
                ++b;
            else {
                acc += a->second * b->second;
                ++a;
                ++b;
            }
        }
        return acc;
    }

    /// Rebuild on a new ambient dimension with each index remapped.
    /// `f` must be injective on the support.
    template <typename F>
    Vec mapped_indices(std::int64_t new_dim, F&& f) const {
        Vec out(new_dim);
        out.terms_.reserve(terms_.size());
        for (const auto& [i, c] : terms_)
            out.terms_.emplace_back(f(i), c);
        std::sort(out.terms_.begin(), out.terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return out;
    }

    friend bool operator==(const Vec& a, const Vec& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

private:
    std::int64_t dim_ = 0;
    std::vector<Term> terms_;
};

} // namespace quadrop
