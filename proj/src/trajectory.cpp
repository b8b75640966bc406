#include "sqg/trajectory.hpp"

namespace sqg {

std::vector<Observable> default_observables(int truncation) {
    std::vector<Observable> obs;
    auto single = [&](const char* id, Wavevector k) {
        SpectralScalarField f(truncation);
        f.set_coeff(k, 1.0);
        obs.push_back({id, std::move(f)});
    };
    single("e(1,0)", {1, 0});
    single("e(0,1)", {0, 1});
    if (truncation >= 2) single("e(1,1)", {1, 1});
    const double radius = std::min(4, truncation);
    obs.push_back({"rand4", random_field(truncation, radius, 777, 1.0)});
    return obs;
}

void CorrectedIntegral::push(double value) {
    if (count_ < 3) head_.push_back(value);
    tail_[0] = tail_[1];
    tail_[1] = tail_[2];
    tail_[2] = value;
    if (count_ > 0) trapezoid_ += 0.5 * dt_ * (last_ + value);
    last_ = value;
    ++count_;
}

double CorrectedIntegral::value() const {
    if (count_ < 3) return trapezoid_;
    // int = T - dt^2/12 (f'(b) - f'(a)), derivatives by one-sided 2nd order.
    const double fp_a = (-3.0 * head_[0] + 4.0 * head_[1] - head_[2]) / (2.0 * dt_);
    const double fp_b = (3.0 * tail_[2] - 4.0 * tail_[1] + tail_[0]) / (2.0 * dt_);
    return trapezoid_ - dt_ * dt_ / 12.0 * (fp_b - fp_a);
}

} // namespace sqg
