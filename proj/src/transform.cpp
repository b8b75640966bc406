#include "sqg/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace sqg {

namespace {
// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kSqrt2 = std::sqrt(2.0);
} // namespace

SpectralTransform::SpectralTransform(int grid_side) : grid_(grid_side) {
    if (grid_side < 3) throw std::invalid_argument("grid side must be >= 3");
    const std::size_t n = static_cast<std::size_t>(grid_) * grid_;
    in_ = fftw_malloc(sizeof(fftw_complex) * n);
    out_ = fftw_malloc(sizeof(fftw_complex) * n);
    if (!in_ || !out_) throw std::bad_alloc();
    std::lock_guard<std::mutex> lock(plan_mutex());
    // FFTW_ESTIMATE keeps plan selection deterministic across runs.
    fwd_ = fftw_plan_dft_2d(grid_, grid_, static_cast<fftw_complex*>(in_),
                            static_cast<fftw_complex*>(out_), FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_2d(grid_, grid_, static_cast<fftw_complex*>(in_),
                            static_cast<fftw_complex*>(out_), FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
}

SpectralTransform::~SpectralTransform() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
    fftw_free(in_);
    fftw_free(out_);
}

void SpectralTransform::to_grid(const SpectralScalarField& f, std::span<double> out_values) {
    const int n = f.truncation();
    if (2 * n + 1 > grid_)
        throw std::invalid_argument("grid too small to represent the field exactly");
    const std::size_t total = static_cast<std::size_t>(grid_) * grid_;
    if (out_values.size() != total) throw std::invalid_argument("bad grid buffer size");

    auto* in = static_cast<fftw_complex*>(in_);
    auto* out = static_cast<fftw_complex*>(out_);
    for (std::size_t i = 0; i < total; ++i) in[i][0] = in[i][1] = 0.0;

    const auto wrap = [this](int v) { return ((v % grid_) + grid_) % grid_; };
    for (int k1 = -n; k1 <= n; ++k1) {
        for (int k2 = -n; k2 <= n; ++k2) {
            const Wavevector k{k1, k2};
            if (!f.in_ball(k) || !in_positive_half(k)) continue;
            const double a = f.coeff(k);
            const double b = f.coeff(-k);
            if (a == 0.0 && b == 0.0) continue;
            // c_k = (a + i b) / sqrt(2), c_{-k} = conj(c_k).
            const double re = a * kInvSqrt2;
            const double im = b * kInvSqrt2;
            const std::size_t ip = static_cast<std::size_t>(wrap(k1)) * grid_ + wrap(k2);
            const std::size_t im_ = static_cast<std::size_t>(wrap(-k1)) * grid_ + wrap(-k2);
            in[ip][0] = re;
            in[ip][1] = im;
            in[im_][0] = re;
            in[im_][1] = -im;
        }
    }
    fftw_execute(static_cast<fftw_plan>(bwd_));
    for (std::size_t i = 0; i < total; ++i) out_values[i] = out[i][0];
}

std::vector<double> SpectralTransform::to_grid(const SpectralScalarField& f) {
    std::vector<double> values(static_cast<std::size_t>(grid_) * grid_);
    to_grid(f, values);
    return values;
}

SpectralScalarField SpectralTransform::from_grid(std::span<const double> values, int truncation) {
    if (2 * truncation + 1 > grid_)
        throw std::invalid_argument("grid too small for the requested truncation");
    const std::size_t total = static_cast<std::size_t>(grid_) * grid_;
    if (values.size() != total) throw std::invalid_argument("bad grid buffer size");

    auto* in = static_cast<fftw_complex*>(in_);
    auto* out = static_cast<fftw_complex*>(out_);
    for (std::size_t i = 0; i < total; ++i) {
        in[i][0] = values[i];
        in[i][1] = 0.0;
    }
    fftw_execute(static_cast<fftw_plan>(fwd_));

    const double scale = 1.0 / static_cast<double>(total);
    const auto wrap = [this](int v) { return ((v % grid_) + grid_) % grid_; };
    SpectralScalarField f(truncation);
    for (int k1 = -truncation; k1 <= truncation; ++k1) {
        for (int k2 = -truncation; k2 <= truncation; ++k2) {
            const Wavevector k{k1, k2};
            if (!f.in_ball(k) || !in_positive_half(k)) continue;
            const std::size_t ip = static_cast<std::size_t>(wrap(k1)) * grid_ + wrap(k2);
            const double re = out[ip][0] * scale;
            const double im = out[ip][1] * scale;
            const double a = kSqrt2 * re;
            const double b = kSqrt2 * im;
            if (a != 0.0) f.set_coeff(k, a);
            if (b != 0.0) f.set_coeff(-k, b);
        }
    }
    return f;
}

SpectralTransform& transform_for(int grid_side) {
    thread_local std::map<int, std::unique_ptr<SpectralTransform>> cache;
    auto& slot = cache[grid_side];
    if (!slot) slot = std::make_unique<SpectralTransform>(grid_side);
    return *slot;
}

int product_grid_side(int min_side) {
    int g = std::max(min_side, 4);
    for (;; ++g) {
        int v = g;
        for (int p : {2, 3, 5})
            while (v % p == 0) v /= p;
        if (v == 1) return g;
    }
}

int alias_free_side(int bw_a, int bw_b, int bw_out) {
    // Aliased images of product frequencies (<= bw_a + bw_b) must land outside
    // the retained band: G >= bw_a + bw_b + bw_out + 1.
    return product_grid_side(bw_a + bw_b + bw_out + 1);
}

} // namespace sqg
