#include "tomo/dft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

#include "fft.hpp"
#include "tomo/parallel.hpp"

namespace tomo {
namespace detail {

namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void prepare_planner() {
    static std::once_flag once;
    std::call_once(once, [] { fftw_init_threads(); });
    fftw_plan_with_nthreads(thread_count());
}

struct Plan {
    fftw_plan p = nullptr;
    explicit Plan(fftw_plan plan) : p(plan) {
        if (!p) throw std::runtime_error("fftw: plan creation failed");
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(p);
    }
    void run() const { fftw_execute(p); }
};

template <typename Make>
Plan make_plan(Make&& make) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    prepare_planner();
    return Plan(make());
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void FftwFree::operator()(void* p) const { fftw_free(p); }

fftw_buffer<double> alloc_real(std::size_t n) {
    auto* p = fftw_alloc_real(n);
    if (!p) throw std::bad_alloc();
    return fftw_buffer<double>(p);
}

fftw_buffer<cplx> alloc_complex(std::size_t n) {
    auto* p = fftw_alloc_complex(n);
    if (!p) throw std::bad_alloc();
    return fftw_buffer<cplx>(reinterpret_cast<cplx*>(p));
}

void fft_lines(cplx* data, int n, int howmany, int sign) {
    if (n <= 0 || howmany <= 0) return;
    Plan plan = make_plan([&] {
        return fftw_plan_many_dft(1, &n, howmany, as_fftw(data), nullptr, 1, n, as_fftw(data),
                                  nullptr, 1, n, sign, FFTW_ESTIMATE);
    });
    plan.run();
}

void fft_2d(cplx* data, int n0, int n1, int sign) {
    Plan plan = make_plan([&] {
        return fftw_plan_dft_2d(n0, n1, as_fftw(data), as_fftw(data), sign, FFTW_ESTIMATE);
    });
    plan.run();
}

void r2c_2d(double* buf, int n0, int n1) {
    Plan plan = make_plan([&] {
        return fftw_plan_dft_r2c_2d(n0, n1, buf, reinterpret_cast<fftw_complex*>(buf),
                                    FFTW_ESTIMATE);
    });
    plan.run();
}

void c2r_2d(double* buf, int n0, int n1) {
    Plan plan = make_plan([&] {
        return fftw_plan_dft_c2r_2d(n0, n1, reinterpret_cast<fftw_complex*>(buf), buf,
                                    FFTW_ESTIMATE);
    });
    plan.run();
}

}  // namespace detail

std::vector<cplx> dft_1d(const std::vector<cplx>& signal, Direction dir) {
    const int n = static_cast<int>(signal.size());
    if (n < 1) throw std::invalid_argument("dft_1d: length must be >= 1");
    auto buf = detail::alloc_complex(n);
    std::copy(signal.begin(), signal.end(), buf.get());
    detail::fft_lines(buf.get(), n, 1, dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD);
    std::vector<cplx> out(buf.get(), buf.get() + n);
    if (dir == Direction::inverse)
        for (auto& v : out) v /= static_cast<double>(n);
    return out;
}

std::vector<cplx> dft_2d(const std::vector<cplx>& data, int nx, int ny, Direction dir) {
    if (nx < 1 || ny < 1 || data.size() != static_cast<std::size_t>(nx) * ny)
        throw std::invalid_argument("dft_2d: data size does not match nx*ny");
    auto buf = detail::alloc_complex(data.size());
    std::copy(data.begin(), data.end(), buf.get());
    detail::fft_2d(buf.get(), ny, nx, dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD);
    std::vector<cplx> out(buf.get(), buf.get() + data.size());
    if (dir == Direction::inverse) {
        const double scale = 1.0 / (static_cast<double>(nx) * ny);
        for (auto& v : out) v *= scale;
    }
    return out;
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

int next_fast_size(int n) {
    for (int m = std::max(n, 1);; ++m) {
        int r = m;
        for (int f : {2, 3, 5, 7})
            while (r % f == 0) r /= f;
        if (r == 1) return m;
    }
}

}  // namespace tomo
