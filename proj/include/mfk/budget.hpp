#pragma once

#include <cstdint>

#include "mfk/errors.hpp"

namespace mfk {

// Cooperative step budget for long-running solves (Groebner reductions,
// elimination sweeps). A scope installs a counter; charged work beyond the
// limit raises BudgetExhaustedError. No installed scope means unlimited.
class BudgetScope {
public:
    explicit BudgetScope(std::uint64_t limit);
    ~BudgetScope();

    BudgetScope(const BudgetScope&) = delete;
    BudgetScope& operator=(const BudgetScope&) = delete;

    static void charge(std::uint64_t n = 1);
    static bool active();

private:
    BudgetScope* previous_;
    std::uint64_t remaining_;
};

}  // namespace mfk
