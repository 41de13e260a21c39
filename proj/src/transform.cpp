#include "fsilab/transform.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace fsilab {
namespace {

std::mutex fft_mutex;

struct PlanEntry {
    fftw_plan plan = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t size = 0;

    PlanEntry() = default;
    PlanEntry(const PlanEntry&) = delete;
    PlanEntry& operator=(const PlanEntry&) = delete;
    PlanEntry(PlanEntry&& o) noexcept : plan(o.plan), buf(o.buf), size(o.size) {
        o.plan = nullptr;
        o.buf = nullptr;
    }
    ~PlanEntry() {
        if (plan) fftw_destroy_plan(plan);
        if (buf) fftw_free(buf);
    }
};

using PlanKey = std::tuple<int, int, int, int>; // dims (unused = 1), sign

std::map<PlanKey, PlanEntry>& plan_cache() {
    static std::map<PlanKey, PlanEntry> cache;
    return cache;
}

// Executes a cached in-place transform through the aligned plan buffer.
void run(std::vector<cplx>& a, int n1, int n2, int n3, bool forward) {
    std::lock_guard<std::mutex> lock(fft_mutex);
    const int sign = forward ? FFTW_FORWARD : FFTW_BACKWARD;
    PlanKey key{n1, n2, n3, sign};
    auto it = plan_cache().find(key);
    if (it == plan_cache().end()) {
        PlanEntry entry;
        entry.size = static_cast<std::size_t>(n1) * n2 * n3;
        entry.buf = fftw_alloc_complex(entry.size);
        // strip leading unit dimensions (callers pad with 1s)
        int packed[3];
        int r = 0;
        if (n1 > 1) packed[r++] = n1;
        if (n2 > 1 || r > 0) packed[r++] = n2;
        packed[r++] = n3;
        entry.plan = fftw_plan_dft(r, packed, entry.buf, entry.buf, sign, FFTW_ESTIMATE);
        it = plan_cache().emplace(key, std::move(entry)).first;
    }
    PlanEntry& e = it->second;
    std::memcpy(static_cast<void*>(e.buf), static_cast<const void*>(a.data()),
                e.size * sizeof(fftw_complex));
    fftw_execute(e.plan);
    std::memcpy(static_cast<void*>(a.data()), static_cast<const void*>(e.buf),
                e.size * sizeof(fftw_complex));
}

} // namespace

void dft_1d(std::vector<cplx>& a, bool forward) {
    run(a, 1, 1, static_cast<int>(a.size()), forward);
}

void dft_2d(std::vector<cplx>& a, int n1, int n2, bool forward) {
    run(a, 1, n1, n2, forward);
}

void dft_3d(std::vector<cplx>& a, int n1, int n2, int n3, bool forward) {
    run(a, n1, n2, n3, forward);
}

} // namespace fsilab
