#pragma once

#include <map>
#include <vector>

#include "qheat/core.hpp"
#include "qheat/kernels.hpp"

namespace qheat {

struct LaurentData {
    cplx location{};
    int order = 0;  // 0 = regular point
    cplx residue{};
    cplx finite_part{};
};

struct PoleInfo {
    cplx s;
    cplx residue;
};

// Z(s) = sum over mu in L \ {0} of mu^e |mu|^{-s}, L = product of Z and N_0 axes, 0^0 = 1.
//
// Mellin split at t0:
//   Gamma(s/2) pi^{-s/2} Z(s) = sum_mu mu^e (pi n)^{-s/2} Gamma(s/2, pi t0 n)
//                             + integral_0^t0 t^{s/2-1} Theta(t) dt,
// with Theta(t) = prod_i phi_i(t) - [origin], phi_i(t) = sum_k k^{e_i} exp(-pi t k^2).
// The second integral uses the small-t expansion of Theta term by term. Z and even
// exponents on Z axes give expansions that are exact up to exp(-pi/t0); odd exponents on
// N_0 axes give asymptotic series, truncated where the neglected terms fall below tolerance.
class LatticeZeta {
public:
    LatticeZeta(std::vector<Axis> axes, std::vector<int> e, double t0 = 1.0 / 16.0);

    BoundedValue eval(cplx s, const PrecisionConfig& pc = {}) const;
    // Poles with Re s > re_min, ordered by decreasing Re s.
    std::vector<PoleInfo> poles(double re_min) const;
    bool identically_zero() const { return zero_; }
    int dimension() const { return static_cast<int>(axes_.size()); }
    int weight() const;

private:
    std::vector<Axis> axes_;
    std::vector<int> e_;
    double t0_;
    bool zero_ = false;
    bool exact_series_ = true;
    std::vector<double> shells_;     // W(n), n = 0..nmax
    std::map<int, double> series_;   // key 2p -> coefficient of t^p
    double neglected_ = 0.0;         // size of the first dropped series coefficient
    int neglected_power2_ = 0;
};

BoundedValue epstein_zeta(int d, cplx s, const PrecisionConfig& pc = {});
LaurentData epstein_laurent_at_pole(int d);
BoundedValue weighted_epstein_zeta(int d, const std::vector<int>& a, cplx s, const PrecisionConfig& pc = {});
BoundedValue quadrant_zeta(cplx s, const PrecisionConfig& pc = {});

// Tapered lattice sum plus continuum tail at two cutoffs; the error is their difference.
// Independent check for the continuations above when Re s > dim + |e|.
// X = 0 picks a cutoff by dimension.
BoundedValue direct_lattice_sum(const std::vector<Axis>& axes, const std::vector<int>& e, cplx s, double X = 0.0);

// r_d(n) for n = 0..nmax (r_d(0) = 1).
std::vector<double> shell_counts(int d, int nmax);

}  // namespace qheat
