#pragma once

#include <gmpxx.h>

#include <atomic>
#include <string>

#include "quadrop/errors.hpp"

namespace quadrop {

/// Ground field element: an exact rational, always in lowest terms with
/// positive denominator (mpq_class maintains this after canonicalize()).
using Scalar = mpq_class;

inline Scalar scalar_from_string(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw ParseError("bad rational literal: '" + s + "'");
    if (q.get_den() == 0)
        throw ParseError("zero denominator in rational literal: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string scalar_to_string(const Scalar& q) { return q.get_str(); }

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }

/// Cooperative cancellation flag for long eliminations.  A null token never
/// cancels.
class CancelToken {
public:
    CancelToken() = default;
    explicit CancelToken(const std::atomic<bool>* flag) : flag_(flag) {}

    void check() const {
        if (flag_ != nullptr && flag_->load(std::memory_order_relaxed))
            throw Cancelled();
    }

private:
    const std::atomic<bool>* flag_ = nullptr;
};

} // namespace quadrop
