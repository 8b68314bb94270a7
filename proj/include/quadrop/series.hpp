#pragma once

#include <cstdint>
#include <vector>

#include "quadrop/config.hpp"
#include "quadrop/qa.hpp"

namespace quadrop {

/// Graded dimensions dim A_d of a quadratic algebra for d = 0..D.
struct DegreeDims {
    std::vector<std::int64_t> dims; // dims[d] = dim A_d
};

namespace detail {

inline void check_series_bounds(std::int64_t dim1, std::int64_t max_degree) {
    std::int64_t ambient = 1;
    for (std::int64_t d = 0; d < max_degree; ++d) {
        ambient *= dim1;
        if (ambient > max_ambient())
            throw BoundExceeded("degree_dims: dim1^D exceeds the ambient bound");
    }
}

} // namespace detail

/// dim A_d = dim1^d − rank(Σ_{i+k=d−2} A1^{⊗i} ⊗ R ⊗ A1^{⊗k}), computed by
/// staged exact quotients: A_d = (A1 ⊗ A_{d−1}) / image(R ⊗ A1^{⊗(d−2)}).
/// The staged form gives the same dimensions with far smaller eliminations.
inline DegreeDims degree_dims(const QuadraticAlgebra& a, std::int64_t max_degree,
                              CancelToken cancel = {}) {
    if (max_degree < 0)
        throw DomainError("degree_dims: negative degree");
    const std::int64_t n = a.dim1();
    detail::check_series_bounds(n, max_degree);

    DegreeDims out;
    out.dims.assign(max_degree + 1, 0);
    out.dims[0] = 1;
    if (max_degree == 0)
        return out;
    out.dims[1] = n;
    if (max_degree == 1 || n == 0)
        return out;

    // red[u] = coordinates of the basis monomial u of A1^{⊗(d−1)} inside
    // A_{d−1}; rebuilt one degree at a time.
    std::vector<Vec> red(n);
    for (std::int64_t i = 0; i < n; ++i)
        red[i] = Vec::unit(n, i);
    std::int64_t prev_dim = n;      // dim A_{d−1}
    std::int64_t prev_count = n;    // n^{d−1}

    const Subspace& r = a.relations();
    for (std::int64_t d = 2; d <= max_degree; ++d) {
        cancel.check();
        const std::int64_t span_dim = n * prev_dim; // A1 ⊗ A_{d−1}
        RrefBuilder builder(span_dim, cancel);
        const std::int64_t tail_count = prev_count / n; // n^{d−2}
        for (std::int64_t w = 0; w < tail_count; ++w) {
            for (const Vec& rel : r.basis()) {
                Vec v(span_dim);
                for (const auto& [jk, c] : rel.terms()) {
                    const std::int64_t j = jk / n;
                    const std::int64_t k = jk % n;
                    const Vec& tail = red[k * tail_count + w];
                    for (const auto& [q, cq] : tail.terms())
                        v.add_to(j * prev_dim + q, c * cq);
                }
                builder.insert(std::move(v));
            }
        }
        Subspace u = std::move(builder).finalize();
        out.dims[d] = span_dim - u.rank();

        if (d == max_degree)
            break;

        // Rebuild the reduction table for degree d.
        auto quotient = quotient_section(span_dim, u);
        std::vector<std::int64_t> position(span_dim, -1);
        for (std::size_t k = 0; k < quotient.complement.size(); ++k)
            position[quotient.complement[k]] = static_cast<std::int64_t>(k);
        std::vector<Vec> next(n * prev_count);
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t t = 0; t < prev_count; ++t) {
                cancel.check();
                Vec lifted(span_dim);
                for (const auto& [q, cq] : red[t].terms())
                    lifted.set(i * prev_dim + q, cq);
                Vec nf = u.reduce(std::move(lifted));
                Vec coords(out.dims[d]);
                for (const auto& [q, cq] : nf.terms())
                    coords.set(position[q], cq);
                next[i * prev_count + t] = std::move(coords);
            }
        red = std::move(next);
        prev_dim = out.dims[d];
        prev_count *= n;
    }
    return out;
}

/// Rank of Σ_{i+k=d−2} A1^{⊗i} ⊗ R ⊗ A1^{⊗k} by direct elimination in
/// A1^{⊗d}.  Exponential-size route kept as an independent cross-check of
/// degree_dims at small scale.
inline std::int64_t relation_span_rank_direct(const QuadraticAlgebra& a, std::int64_t d,
                                              CancelToken cancel = {}) {
    if (d < 2)
        return 0;
    const std::int64_t n = a.dim1();
    detail::check_series_bounds(n, d);
    std::int64_t ambient = 1;
    for (std::int64_t k = 0; k < d; ++k)
        ambient *= n;
    RrefBuilder builder(ambient, cancel);
    std::int64_t left_count = 1; // n^i
    for (std::int64_t i = 0; i + 2 <= d; ++i) {
        const std::int64_t right_count = ambient / (left_count * n * n); // n^{d-2-i}
        for (std::int64_t l = 0; l < left_count; ++l)
            for (std::int64_t rr = 0; rr < right_count; ++rr)
                for (const Vec& rel : a.relations().basis()) {
                    Vec v(ambient);
                    for (const auto& [jk, c] : rel.terms())
                        v.set((l * n * n + jk) * right_count + rr, c);
                    builder.insert(std::move(v));
                }
        left_count *= n;
    }
    return builder.rank();
}

/// First D+1 coefficients of h_A(t) · h_{A!}(−t).  All-zero beyond the
/// constant term is the numerical consequence of Koszulity; any nonzero
/// coefficient certifies non-Koszulity.
struct KoszulReport {
    std::vector<std::int64_t> dims;      // of A
    std::vector<std::int64_t> dual_dims; // of A!
    std::vector<std::int64_t> residual;  // product coefficients, residual[0] = 1
    bool consistent = false;             // residual[1..D] all zero
};

inline KoszulReport koszul_numeric_check(const QuadraticAlgebra& a, std::int64_t max_degree,
                                         CancelToken cancel = {}) {
    KoszulReport rep;
    rep.dims = degree_dims(a, max_degree, cancel).dims;
    rep.dual_dims = degree_dims(dual(a), max_degree, cancel).dims;
    rep.residual.assign(max_degree + 1, 0);
    for (std::int64_t d = 0; d <= max_degree; ++d) {
        std::int64_t c = 0;
        for (std::int64_t i = 0; i <= d; ++i) {
            const std::int64_t sign = ((d - i) % 2 == 0) ? 1 : -1;
            c += sign * rep.dims[i] * rep.dual_dims[d - i];
        }
        rep.residual[d] = c;
    }
    rep.consistent = true;
    for (std::int64_t d = 1; d <= max_degree; ++d)
        if (rep.residual[d] != 0)
            rep.consistent = false;
    return rep;
}

} // namespace quadrop
