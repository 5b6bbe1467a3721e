#include "mfk/budget.hpp"

namespace mfk {

namespace {
thread_local BudgetScope* g_current = nullptr;
thread_local std::uint64_t* g_remaining = nullptr;
}  // namespace

BudgetScope::BudgetScope(std::uint64_t limit) : previous_(g_current), remaining_(limit) {
    g_current = this;
    g_remaining = &remaining_;
}

BudgetScope::~BudgetScope() {
    g_current = previous_;
    g_remaining = previous_ ? &previous_->remaining_ : nullptr;
}

void BudgetScope::charge(std::uint64_t n) {
    if (!g_remaining) return;
    if (*g_remaining < n) {
        *g_remaining = 0;
        throw BudgetExhaustedError("step budget exhausted");
    }
    *g_remaining -= n;
}

bool BudgetScope::active() { return g_remaining != nullptr; }

}  // namespace mfk
