#pragma once

#include <string>
#include <vector>

#include "sqg/sde.hpp"

namespace sqg {

struct CheckResult {
    std::string name;
    bool pass = false;
    double observed = 0.0;  // worst quantity seen
    double threshold = 0.0; // bound it must respect
    double seconds = 0.0;
    std::string detail;
};

// Max over an nx x nx grid of x of the operator-norm deviation of
// sum theta_k^2 sigma_k (x) sigma_k from (1/2)||theta||^2 I_2.
CheckResult check_tensor_identity(double radius, int grid, double tol);

// |<b_N(w), w>| and |<G_N^k(w), w>| against tol * ||w|| * ||w||_{H^1} over
// random fields and noise modes.
CheckResult check_energy_neutrality(int truncation, int field_count, int mode_count, double tol,
                                    std::uint64_t seed);

// Fast-transform advect against the brute-force convolution oracle.
CheckResult check_oracle_equivalence(int max_truncation, int field_count, double tol,
                                     std::uint64_t seed);

// The two routes of the weak nonlinear pairing.
CheckResult check_commutator_pairing(int truncation, int pair_count, double tol,
                                     std::uint64_t seed);

// Paired-path gap between corrected Ito-EM and Stratonovich-Heun in the
// linear-advection mode; requires the observed order across the dt ladder to
// be at least min_order.
CheckResult check_ito_stratonovich(int truncation, const std::vector<double>& dts,
                                   double min_order, double nu, double theta_radius,
                                   double t_final, std::uint64_t seed);

// The suites behind the `verify` command.
std::vector<CheckResult> verify_suites(int threads);

std::string format_check_table(const std::vector<CheckResult>& results);

} // namespace sqg
