#include "rittlab/budget.hpp"

#include <cstdlib>

namespace rittlab {

long degree_budget_default() {
    static const long value = [] {
        if (const char* env = std::getenv("RITTLAB_DEGREE_BUDGET")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v > 0) return v;
        }
        return 4096L;
    }();
    return value;
}

} // namespace rittlab
