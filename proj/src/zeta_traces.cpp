#include "qheat/zeta_traces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qheat/special_functions.hpp"

namespace qheat {

namespace {

constexpr double kProximity = 1e-3;

std::vector<int> padded_exponent(const SymbolTerm& t, int D) {
    std::vector<int> e = t.exponent;
    e.resize(D, 0);
    return e;
}

// Neville extrapolation of samples (x_i, y_i) to x = 0; err is the last correction.
cplx extrapolate_to_zero(const std::vector<double>& x, std::vector<cplx> y, double& err) {
    const size_t n = x.size();
    cplx prev = y[0];
    err = 0.0;
    for (size_t m = 1; m < n; ++m) {
        for (size_t i = 0; i + m < n; ++i) y[i] = (x[i + m] * y[i] - x[i] * y[i + 1]) / (x[i + m] - x[i]);
        if (m == n - 1) err = std::abs(y[0] - prev);
        prev = y[0];
    }
    return y[0];
}

std::vector<cplx> expand_z(const std::vector<cplx>& z, int D) {
    if (z.size() == 1) return std::vector<cplx>(D, z[0]);
    if (static_cast<int>(z.size()) != D) throw DomainError("zeta_eval: z must have one entry or one per coordinate");
    return z;
}

}  // namespace

ZetaFunction::ZetaFunction(SpectralModel model, PolyhomOperator op, GaugeSpec gauge)
    : model_(std::move(model)), op_(std::move(op)), gauge_(std::move(gauge)) {
    gauge_.validate();
    const int D = model_.dimension();
    for (const auto& t : op_.terms)
        if (static_cast<int>(t.exponent.size()) > D) throw DomainError("ZetaFunction: exponent vector longer than the lattice dimension");
    if (gauge_.kind == GaugeSpec::Kind::Separable) {
        if (gauge_.delta.size() != 1 && static_cast<int>(gauge_.delta.size()) != D)
            throw DomainError("ZetaFunction: separable gauge needs one delta per coordinate");
        for (const auto& t : op_.terms)
            if (t.degree != cplx(t.weight(), 0.0))
                throw UnsupportedError("ZetaFunction: separable gauge requires monomial shapes");
        return;
    }
    auto axes = model_.family.axes();
    for (const auto& t : op_.terms) engines_.push_back(std::make_shared<LatticeZeta>(axes, padded_exponent(t, D)));
}

BoundedValue ZetaFunction::radial_term(size_t i, cplx z, const PrecisionConfig& pc) const {
    const auto& t = op_.terms[i];
    cplx a = t.alpha(z);
    if (a == 0.0) return {};
    const cplx s = -(t.degree - double(t.weight()) + gauge_.delta[0] * z);
    BoundedValue v;
    if (t.weight() == 0) {
        using K = LatticeFamily::Kind;
        const auto& f = model_.family;
        switch (f.kind) {
            case K::QuadrantN2: v = quadrant_zeta(s, pc); break;
            case K::FullLattice:
            case K::TwistedTorus: v = epstein_zeta(f.dimension(), s, pc); break;
            case K::MixedSU:
                // Z x N_0^2 \ 0 = (Z^3 \ 0)/4 + (Z^2 \ 0)/2 + (Z \ 0)/4, and Z_1 = 2 zeta
                v = 0.25 * epstein_zeta(3, s, pc) + 0.5 * epstein_zeta(2, s, pc) + 0.5 * riemann_zeta(s, pc);
                break;
        }
    } else {
        v = engines_[i]->eval(s, pc);
    }
    return a * v;
}

BoundedValue ZetaFunction::separable_term(size_t i, const std::vector<cplx>& z, const PrecisionConfig& pc) const {
    const auto& t = op_.terms[i];
    cplx a = t.alpha(z[0]);
    if (a == 0.0) return {};
    const int D = model_.dimension();
    auto axes = model_.family.axes();
    auto e = padded_exponent(t, D);
    BoundedValue acc{a, 0.0, 0};
    for (int c = 0; c < D; ++c) {
        double delta = gauge_.delta.size() == 1 ? gauge_.delta[0] : gauge_.delta[c];
        // 0^{delta z} := 0, so each coordinate runs over k >= 1 (and its mirror on Z axes)
        if (axes[c] == Axis::Full && e[c] % 2 == 1) return {};
        BoundedValue f = riemann_zeta(-double(e[c]) - delta * z[c], pc);
        if (axes[c] == Axis::Full) f = 2.0 * f;
        acc = acc * f;
    }
    return acc;
}

BoundedValue ZetaFunction::eval(const std::vector<cplx>& zin, const PrecisionConfig& pc) const {
    const int D = model_.dimension();
    if (gauge_.kind == GaugeSpec::Kind::Radial) {
        if (zin.size() != 1) throw DomainError("zeta_eval: radial gauge takes a scalar z");
        const cplx z = zin[0];
        for (cplx p : predicted_pole_set(op_, model_, gauge_))
            if (std::abs(z - p) < kProximity) throw PoleError("zeta_eval: too close to a predicted pole; use laurent_at", p, std::nan(""));
        for (const auto& p : analytic_poles(z.real() - 1.0, z.real() + 1.0))
            if (std::abs(z - p.s) < kProximity) throw PoleError("zeta_eval: too close to a pole; use laurent_at", p.s, p.residue);
        BoundedValue acc;
        for (size_t i = 0; i < op_.terms.size(); ++i) acc = acc + radial_term(i, z, pc);
        return acc;
    }
    auto z = expand_z(zin, D);
    auto axes = model_.family.axes();
    for (const auto& t : op_.terms) {
        if (t.alpha.is_zero()) continue;
        auto e = padded_exponent(t, D);
        for (int c = 0; c < D; ++c) {
            double delta = gauge_.delta.size() == 1 ? gauge_.delta[0] : gauge_.delta[c];
            cplx p = -(1.0 + e[c]) / delta;
            if (std::abs(z[c] - p) < kProximity && !(axes[c] == Axis::Full && e[c] % 2 == 1))
                throw PoleError("zeta_eval: too close to a coordinate pole; use laurent_at", p, std::nan(""));
        }
    }
    BoundedValue acc;
    for (size_t i = 0; i < op_.terms.size(); ++i) acc = acc + separable_term(i, z, pc);
    return acc;
}

BoundedValue ZetaFunction::eval_unchecked(cplx z, const PrecisionConfig& pc) const {
    BoundedValue acc;
    if (gauge_.kind == GaugeSpec::Kind::Separable) {
        std::vector<cplx> zz(model_.dimension(), z);
        for (size_t i = 0; i < op_.terms.size(); ++i) acc = acc + separable_term(i, zz, pc);
        return acc;
    }
    for (size_t i = 0; i < op_.terms.size(); ++i) {
        const auto& t = op_.terms[i];
        cplx a = t.alpha(z);
        if (a == 0.0) continue;
        const cplx s = -(t.degree - double(t.weight()) + gauge_.delta[0] * z);
        acc = acc + a * engines_[i]->eval(s, pc);
    }
    return acc;
}

std::vector<PoleInfo> ZetaFunction::analytic_poles(double za, double zb) const {
    std::vector<PoleInfo> out;
    if (gauge_.kind != GaugeSpec::Kind::Radial) return out;
    const double delta = gauge_.delta[0];
    for (size_t i = 0; i < op_.terms.size(); ++i) {
        const auto& t = op_.terms[i];
        if (t.alpha.is_zero()) continue;
        for (const auto& p : engines_[i]->poles(-1e300)) {
            // s = -(d - |e|) - delta z
            cplx zp = (-p.s - (t.degree - double(t.weight()))) / delta;
            if (zp.real() < za || zp.real() > zb) continue;
            cplx res = -t.alpha(zp) * p.residue / delta;
            auto it = std::find_if(out.begin(), out.end(), [&](const PoleInfo& q) { return std::abs(q.s - zp) < 1e-9; });
            if (it == out.end()) out.push_back({zp, res});
            else it->residue += res;
        }
    }
    std::erase_if(out, [](const PoleInfo& p) { return std::abs(p.residue) < 1e-13; });
    std::sort(out.begin(), out.end(), [](const PoleInfo& a, const PoleInfo& b) { return a.s.real() > b.s.real(); });
    return out;
}

BoundedValue zeta_eval(const ZetaFunction& zf, const std::vector<cplx>& z, const PrecisionConfig& pc) {
    return zf.eval(z, pc);
}

LaurentData laurent_at(const ZetaFunction& zf, cplx z0) {
    constexpr int n = 7;
    std::vector<double> h(n);
    std::vector<cplx> f(n), zs(n), g(n), q(n);
    for (int j = 0; j < n; ++j) {
        h[j] = 0.1 * std::ldexp(1.0, -j);
        zs[j] = z0 + h[j];
        f[j] = zf.eval_unchecked(zs[j]).value;
        g[j] = h[j] * f[j];
        q[j] = h[j] * g[j];
    }
    double err_r = 0, err_q = 0;
    cplx r = extrapolate_to_zero(h, g, err_r);
    cplx c2 = extrapolate_to_zero(h, q, err_q);
    const double fmax = std::max(1.0, std::abs(f[n - 1]));
    const double tol = 1e-9 * fmax;

    LaurentData out;
    out.location = z0;
    if (std::abs(c2) > 1e-9 * std::max(1.0, std::abs(g[n - 1]))) {
        // second-order pole; residue is the 1/(z-z0) coefficient
        std::vector<cplx> y(n);
        for (int j = 0; j < n; ++j) y[j] = (q[j] - c2) / (h[j] * h[j]) * h[j];
        double e1;
        out.order = 2;
        out.residue = extrapolate_to_zero(h, y, e1);
        out.finite_part = std::nan("");
        return out;
    }
    if (std::abs(r) > tol) {
        if (err_r > 1e-3 * std::abs(r)) throw LaurentError("laurent_at: residue extrapolation unstable", zs, f);
        std::vector<cplx> y(n);
        for (int j = 0; j < n; ++j) y[j] = f[j] - r / h[j];
        double e1;
        out.order = 1;
        out.residue = r;
        out.finite_part = extrapolate_to_zero(h, y, e1);
        return out;
    }
    out.order = 0;
    out.residue = 0.0;
    try {
        out.finite_part = zf.eval_unchecked(z0).value;
    } catch (const PoleError&) {
        double e1;
        out.finite_part = extrapolate_to_zero(h, f, e1);
    }
    return out;
}

CriticalityReport criticality(const PolyhomOperator& op, const SpectralModel& model) {
    CriticalityReport rep;
    const double D = model.dimension();
    for (const auto& t : op.terms) {
        if (t.alpha.is_zero()) continue;
        if (std::abs(t.degree + D) < 1e-12) rep.offending.push_back(t.degree);
    }
    rep.critical = !rep.offending.empty();
    return rep;
}

BoundedValue zeta_reg_trace_bounded(const PolyhomOperator& op, const SpectralModel& model, const GaugeSpec& gauge) {
    auto rep = criticality(op, model);
    if (rep.critical) throw CriticalityError("zeta_reg_trace: operator is critical at 0", rep.offending);
    ZetaFunction zf(model, op, gauge);
    BoundedValue v;
    try {
        v = zf.eval(std::vector<cplx>{0.0});
    } catch (const PoleError&) {
        LaurentData L = laurent_at(zf, 0.0);
        v = {L.finite_part, 1e-9 * std::max(1.0, std::abs(L.finite_part)), 0};
    }
    if (gauge.kind == GaugeSpec::Kind::Radial) {
        // regularized sums skip the origin; add the operator's value there when defined
        try {
            v.value += op.value(Point(model.dimension(), 0));
        } catch (const DomainError&) {
        }
    }
    return v;
}

cplx zeta_reg_trace(const PolyhomOperator& op, const SpectralModel& model, const GaugeSpec& gauge) {
    return zeta_reg_trace_bounded(op, model, gauge).value;
}

bool traciality_check(const PolyhomOperator& A, const PolyhomOperator& B, const SpectralModel& model, const GaugeSpec& gauge) {
    BoundedValue ab = zeta_reg_trace_bounded(A * B, model, gauge);
    BoundedValue ba = zeta_reg_trace_bounded(B * A, model, gauge);
    return std::abs(ab.value - ba.value) <= ab.error_bound + ba.error_bound + 1e-12 * std::max(1.0, std::abs(ab.value));
}

std::vector<DetectedPole> scan_real_poles(const ZetaFunction& zf, double a, double b, double step) {
    auto f = [&](double z) { return zf.eval_unchecked(z).value.real(); };
    std::vector<double> zs;
    for (double z = a + 0.0123; z < b; z += step) zs.push_back(z);
    std::vector<double> fs(zs.size());
    for (size_t i = 0; i < zs.size(); ++i) fs[i] = f(zs[i]);

    std::vector<PoleInfo> known = zf.analytic_poles(a - 1.0, b + 1.0);
    std::vector<cplx> predicted;
    if (zf.gauge().kind == GaugeSpec::Kind::Radial) predicted = predicted_pole_set(zf.op(), zf.model(), zf.gauge());

    std::vector<DetectedPole> out;
    for (size_t i = 0; i + 1 < zs.size(); ++i) {
        if (!(fs[i] * fs[i + 1] < 0)) continue;
        double lo = zs[i], hi = zs[i + 1], flo = fs[i];
        for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
            double mid = 0.5 * (lo + hi);
            double fm;
            try {
                fm = f(mid);
            } catch (const PoleError&) {
                lo = hi = mid;
                break;
            }
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        double loc = 0.5 * (lo + hi);
        double edge = std::max(std::abs(fs[i]), std::abs(fs[i + 1]));
        double inner = 0.0;
        try {
            inner = std::min(std::abs(f(loc - 1e-7)), std::abs(f(loc + 1e-7)));
        } catch (const PoleError&) {
            inner = std::numeric_limits<double>::infinity();
        }
        if (!(inner > 1e3 * edge)) continue;  // a zero, not a pole
        for (const auto& p : known)
            if (std::abs(p.s - loc) < 1e-6) loc = p.s.real();
        DetectedPole d;
        d.location = loc;
        d.laurent = laurent_at(zf, loc);
        d.predicted = std::any_of(predicted.begin(), predicted.end(), [&](cplx p) { return std::abs(p - loc) < 1e-6; });
        out.push_back(d);
    }
    // poles whose finite part hides the sign change on the grid
    for (const auto& p : known) {
        const double loc = p.s.real();
        if (loc < a || loc > b) continue;
        if (std::any_of(out.begin(), out.end(), [&](const DetectedPole& q) { return std::abs(q.location - loc) < 1e-6; })) continue;
        LaurentData L;
        try {
            L = laurent_at(zf, loc);
        } catch (const LaurentError&) {
            continue;
        }
        if (L.order == 0) continue;
        DetectedPole d{loc, L, std::any_of(predicted.begin(), predicted.end(), [&](cplx q) { return std::abs(q - loc) < 1e-6; })};
        out.push_back(d);
    }
    std::sort(out.begin(), out.end(), [](const DetectedPole& x, const DetectedPole& y) { return x.location > y.location; });
    return out;
}

}  // namespace qheat
