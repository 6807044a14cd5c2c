#pragma once

#include <memory>
#include <vector>

#include "qheat/lattice_zeta.hpp"
#include "qheat/models.hpp"

namespace qheat {

struct CriticalityReport {
    bool critical = false;
    std::vector<cplx> offending;
};

struct CriticalityError : std::runtime_error {
    std::vector<cplx> degrees;
    CriticalityError(const std::string& w, std::vector<cplx> d) : std::runtime_error(w), degrees(std::move(d)) {}
};

// Diagnostic for laurent_at when the order cannot be decided; carries the raw samples.
struct LaurentError : std::runtime_error {
    std::vector<cplx> z, values;
    LaurentError(const std::string& w, std::vector<cplx> zs, std::vector<cplx> vs)
        : std::runtime_error(w), z(std::move(zs)), values(std::move(vs)) {}
};

class ZetaFunction {
public:
    ZetaFunction(SpectralModel model, PolyhomOperator op, GaugeSpec gauge);

    const SpectralModel& model() const { return model_; }
    const PolyhomOperator& op() const { return op_; }
    const GaugeSpec& gauge() const { return gauge_; }

    // z has one entry (radial, or separable restricted to the diagonal) or one per coordinate.
    BoundedValue eval(const std::vector<cplx>& z, const PrecisionConfig& pc = {}) const;
    BoundedValue eval(cplx z, const PrecisionConfig& pc = {}) const { return eval(std::vector<cplx>{z}, pc); }
    // Same as eval without the pole-proximity refusal.
    BoundedValue eval_unchecked(cplx z, const PrecisionConfig& pc = {}) const;

    // Poles with real part in [za, zb] from the exact small-t expansions; residue in z.
    std::vector<PoleInfo> analytic_poles(double za, double zb) const;

private:
    SpectralModel model_;
    PolyhomOperator op_;
    GaugeSpec gauge_;
    std::vector<std::shared_ptr<LatticeZeta>> engines_;  // radial: one per term

    BoundedValue radial_term(size_t i, cplx z, const PrecisionConfig& pc) const;
    BoundedValue separable_term(size_t i, const std::vector<cplx>& z, const PrecisionConfig& pc) const;
};

BoundedValue zeta_eval(const ZetaFunction& zf, const std::vector<cplx>& z, const PrecisionConfig& pc = {});
LaurentData laurent_at(const ZetaFunction& zf, cplx z0);
CriticalityReport criticality(const PolyhomOperator& op, const SpectralModel& model);
BoundedValue zeta_reg_trace_bounded(const PolyhomOperator& op, const SpectralModel& model, const GaugeSpec& gauge);
cplx zeta_reg_trace(const PolyhomOperator& op, const SpectralModel& model, const GaugeSpec& gauge);
bool traciality_check(const PolyhomOperator& A, const PolyhomOperator& B, const SpectralModel& model, const GaugeSpec& gauge);

struct DetectedPole {
    double location;
    LaurentData laurent;
    bool predicted;
};

// Real-axis scan on [a, b]: sign changes are bisected, separated into poles and zeros by
// the growth of |zeta|, and each pole is confirmed with laurent_at. Analytic poles in range
// that give no sign change are checked with laurent_at directly.
std::vector<DetectedPole> scan_real_poles(const ZetaFunction& zf, double a, double b, double step = 0.05);

}  // namespace qheat
