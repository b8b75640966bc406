#pragma once

#include <span>
#include <vector>

#include "sqg/field.hpp"

namespace sqg {

// Transform between the real trigonometric coefficients and samples on the
// uniform G x G torus grid x_j = (j1/G, j2/G), row-major (j1 * G + j2).
// Backed by a fast transform; round-trip error is at rounding level for any
// field with 2 * truncation + 1 <= G. One instance is not thread-safe; use
// transform_for() which hands out thread-local instances.
class SpectralTransform {
  public:
    explicit SpectralTransform(int grid_side);
    ~SpectralTransform();

    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    int grid_side() const { return grid_; }

    void to_grid(const SpectralScalarField& f, std::span<double> out);
    std::vector<double> to_grid(const SpectralScalarField& f);
    SpectralScalarField from_grid(std::span<const double> values, int truncation);

  private:
    int grid_;
    void* in_ = nullptr;   // fftw_complex[G*G]
    void* out_ = nullptr;  // fftw_complex[G*G]
    void* fwd_ = nullptr;  // fftw_plan
    void* bwd_ = nullptr;  // fftw_plan
};

SpectralTransform& transform_for(int grid_side);

// Smallest 5-smooth integer >= min_side; keeps transform sizes fast.
int product_grid_side(int min_side);

// Grid side making the quadratic product of fields with per-component
// bandwidths bw_a, bw_b exact on all retained modes |m| <= bw_out.
int alias_free_side(int bw_a, int bw_b, int bw_out);

} // namespace sqg
