#include "solq/kernels/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace solq::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(SOLQ_HAVE_AVX2_TU) && defined(__x86_64__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* best_table() {
#if defined(SOLQ_HAVE_AVX2_TU)
    if (cpu_has_avx2()) return &avx2_kernels();
#endif
    return &scalar_kernels();
}

const KernelTable* table_by_name(const std::string& name) {
    if (name == "scalar") return &scalar_kernels();
#if defined(SOLQ_HAVE_AVX2_TU)
    if (name == "avx2" && cpu_has_avx2()) return &avx2_kernels();
#endif
    if (name == "auto" || name.empty()) return best_table();
    return nullptr;
}

std::atomic<const KernelTable*>& slot() {
    static std::atomic<const KernelTable*> current{nullptr};
    return current;
}

} // namespace

const KernelTable& active() {
    const KernelTable* t = slot().load(std::memory_order_acquire);
    if (!t) {
        const char* env = std::getenv("SOLQ_KERNELS");
        t = table_by_name(env ? env : "auto");
        if (!t) t = best_table();
        slot().store(t, std::memory_order_release);
    }
    return *t;
}

bool select(const std::string& name) {
    const KernelTable* t = table_by_name(name);
    if (!t) return false;
    slot().store(t, std::memory_order_release);
    return true;
}

std::vector<std::string> available() {
    std::vector<std::string> names{"scalar"};
    if (cpu_has_avx2()) names.emplace_back("avx2");
    return names;
}

} // namespace solq::kernels
