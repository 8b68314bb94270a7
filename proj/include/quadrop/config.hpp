#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace quadrop {

/// Largest ambient dimension any single construction may allocate.
/// Overridable through the QUADROP_MAX_AMBIENT environment variable.
inline std::int64_t max_ambient() {
    static const std::int64_t value = [] {
        if (const char* env = std::getenv("QUADROP_MAX_AMBIENT")) {
            char* end = nullptr;
            long long v = std::strtoll(env, &end, 10);
            if (end != env && v > 0)
                return static_cast<std::int64_t>(v);
        }
        return static_cast<std::int64_t>(2'000'000);
    }();
    return value;
}

} // namespace quadrop
