#include "volkov/fft.hpp"

#include <cstring>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include <fftw3.h>

namespace volkov::fft {

namespace {

using PlanKey = std::tuple<std::vector<int>, int, int>;

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Plans are created on fftw_malloc'd scratch so every later execution sees
// the same alignment, which keeps the chosen codelets (and the bits) fixed.
fftw_plan plan_for(const std::vector<int>& shape, int components, Direction dir) {
    static std::map<PlanKey, fftw_plan> cache;
    const PlanKey key{shape, components, dir == Direction::forward ? -1 : 1};
    std::lock_guard lock(planner_mutex());
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const int nodes = std::accumulate(shape.begin(), shape.end(), 1, std::multiplies<>());
    const std::size_t count = static_cast<std::size_t>(nodes) * components;
    auto* scratch = fftw_alloc_complex(count);
    fftw_plan plan = fftw_plan_many_dft(static_cast<int>(shape.size()), shape.data(), components, scratch,
                                        nullptr, components, 1, scratch, nullptr, components, 1,
                                        dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                        FFTW_ESTIMATE);
    fftw_free(scratch);
    if (!plan) throw std::runtime_error("FFTW failed to create a plan");
    cache.emplace(key, plan);
    return plan;
}

}  // namespace

void transform(std::vector<std::complex<double>>& data, const std::vector<int>& shape, int components,
               Direction dir) {
    const int nodes = std::accumulate(shape.begin(), shape.end(), 1, std::multiplies<>());
    const std::size_t count = static_cast<std::size_t>(nodes) * components;
    if (data.size() != count) throw std::invalid_argument("fft::transform: buffer size mismatch");

    fftw_plan plan = plan_for(shape, components, dir);
    auto* buffer = fftw_alloc_complex(count);
    std::memcpy(buffer, data.data(), count * sizeof(fftw_complex));
    fftw_execute_dft(plan, buffer, buffer);
    std::memcpy(static_cast<void*>(data.data()), buffer, count * sizeof(fftw_complex));
    fftw_free(buffer);
}

}  // namespace volkov::fft
