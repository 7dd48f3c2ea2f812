#include "raw_fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace fnls::detail {

namespace {

struct PlanKey {
    std::vector<int> dims;
    int sign;
    bool operator<(const PlanKey& o) const {
        if (sign != o.sign) return sign < o.sign;
        return dims < o.dims;
    }
};

// Plans are created once per shape with FFTW_ESTIMATE (deterministic) and
// FFTW_UNALIGNED so they can execute on any caller buffer.
class PlanCache {
public:
    fftw_plan get(const std::vector<int>& dims, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        PlanKey key{dims, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        size_t total = 1;
        for (int d : dims) total *= static_cast<size_t>(d);
        std::vector<fftw_complex> in(total), out(total);
        fftw_plan p = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), in.data(),
                                    out.data(), sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }

private:
    std::mutex mutex_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

} // namespace

void raw_dft(const std::vector<int>& dims, const std::complex<double>* in,
             std::complex<double>* out, int sign) {
    fftw_plan p = cache().get(dims, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    // fftw_execute_dft is safe to call concurrently on distinct buffers.
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace fnls::detail
