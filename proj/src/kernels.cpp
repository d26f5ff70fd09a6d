#include <cstdlib>
#include <string_view>

#include "epidiff/kernels.hpp"

namespace epidiff::kernels {

#if defined(EPIDIFF_HAVE_AVX2)
const KernelTable* avx2_table();
#endif

const KernelTable* avx2()
{
#if defined(EPIDIFF_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active()
{
    static const KernelTable& chosen = [] () -> const KernelTable& {
        const char* env = std::getenv("EPIDIFF_KERNELS");
        if (env != nullptr && std::string_view(env) == "scalar") {
            return scalar();
        }
        const KernelTable* simd = avx2();
        return simd != nullptr ? *simd : scalar();
    }();
    return chosen;
}

}  // namespace epidiff::kernels
