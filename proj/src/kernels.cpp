#include "kvqe/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace kvqe::kernels {

bool avx2_available() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {

const Table* pick_auto() {
    return avx2_available() ? &avx2_table() : &scalar_table();
}

std::atomic<const Table*> g_active{nullptr};

const Table* initial() {
    if (const char* env = std::getenv("KVQE_KERNELS")) {
        const std::string s(env);
        if (s == "scalar") return &scalar_table();
        if (s == "avx2" && avx2_available()) return &avx2_table();
    }
    return pick_auto();
}

}  // namespace

const Table& active() {
    const Table* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = initial();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void select(const std::string& name) {
    if (name == "auto") {
        g_active.store(pick_auto(), std::memory_order_release);
    } else if (name == "scalar") {
        g_active.store(&scalar_table(), std::memory_order_release);
    } else if (name == "avx2") {
        if (!avx2_available()) throw std::runtime_error("AVX2 not supported on this CPU");
        g_active.store(&avx2_table(), std::memory_order_release);
    } else {
        throw std::invalid_argument("unknown kernel set: " + name);
    }
}

}  // namespace kvqe::kernels
