#include "qheat/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "qheat/asymptotics.hpp"
#include "qheat/heat_traces.hpp"
#include "qheat/lattice_zeta.hpp"
#include "qheat/oracle.hpp"
#include "qheat/report.hpp"
#include "qheat/special_functions.hpp"
#include "qheat/zeta_traces.hpp"

namespace qheat {

namespace {

// Tolerances, pinned.
constexpr double kTolToeplitzOracle = 1e-10;
constexpr double kToeplitzTraceAt1 = 0.4814372;
constexpr double kTolToeplitzTrace = 1e-6;
constexpr double kTolToeplitzLimit = 1e-4;
constexpr double kTolSUOracle = 1e-8;
constexpr double kTolReduction = 1e-10;
constexpr double kTolSULimit = 1e-3;
constexpr double kTolPoleOrder = 0.01;
constexpr double kTolTheta = 1e-10;
constexpr double kTolResidue = 1e-6;
constexpr double kTolDiffOp = 1e-8;
constexpr double kTolSeparable = 1e-12;
constexpr double kTolZetaValue = 1e-12;
constexpr double kTolFactorization = 1e-9;
constexpr double kTolA0Relative = 1e-3;
constexpr double kTolHigherCoefficients = 1e-3;

struct Ctx {
    CriterionResult& r;
    void check(bool ok, const std::string& line) {
        r.details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
        if (!ok) r.pass = false;
    }
    void note(const std::string& line) { r.details.push_back("note " + line); }
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// plain sum for theta, independent of the Poisson branch in theta_full
double theta_direct(double t) {
    Accumulator acc;
    acc += 1.0;
    for (int k = 1; k < 200; ++k) {
        double g = std::exp(-t * double(k) * k);
        acc += 2.0 * g;
        if (g < 1e-20) break;
    }
    return acc.result();
}

void c1_toeplitz_oracle(Ctx& c) {
    for (double z2 : {-1.5, -2.0, -3.0})
        for (double t : {0.5, 1.0, 2.0}) {
            auto F = toeplitz_gauged_sum(0.0, z2, t);
            auto G = toeplitz_continued_form(z2, t);
            auto cmp = compare("toeplitz", {0.0, z2}, t, F, G, kTolToeplitzOracle);
            c.check(cmp.agree, fmt("z2=%g t=%g  direct=%.15g  continued=%.15g  |diff|=%.2e  bounds=%.2e", z2, t, F.real(),
                                   G.real(), std::abs(F.value - G.value), F.error_bound + G.error_bound));
        }
}

void c2_toeplitz_value(Ctx& c) {
    auto v = toeplitz_heat_trace(1.0);
    c.check(std::abs(v.value - kToeplitzTraceAt1) <= kTolToeplitzTrace,
            fmt("closed form at t=1: %.10f (expected %.7f)", v.value, kToeplitzTraceAt1));
    // continued double sum at z=0 plus the rows m=0 and n=0 put back
    auto G = toeplitz_continued_form(0.0, 1.0);
    const double boundary = theta_direct(1.0);
    const double rebuilt = G.real() + boundary;
    c.check(std::abs(rebuilt - kToeplitzTraceAt1) <= kTolToeplitzTrace,
            fmt("continued sum %.10f + boundary %.10f = %.10f", G.real(), boundary, rebuilt));
    Accumulator acc;
    acc += 0.5;
    for (int k = 2; k < 20; ++k) acc += -(k - 1.0) * std::exp(-double(k) * k);
    c.check(std::abs(acc.result() - v.value) <= 1e-13, fmt("plain sum 1/2 - sum (k-1) e^{-k^2} = %.15f", acc.result()));
}

void c3_toeplitz_limit(Ctx& c) {
    auto grid = default_grid();
    double err = 0.0;
    double a0 = leading_coefficient(trace_of(SpectralModel::toeplitz()), 1.0, grid, &err);
    c.check(std::abs(a0 + 2.0 * pi) <= kTolToeplitzLimit,
            fmt("lim 4 pi t trace = %.10f (target -2 pi = %.10f), extrapolation error %.1e, smallest t %.3g", a0, -2.0 * pi,
                err, grid.back()));
}

void c4_suq2_oracle(Ctx& c) {
    // z1 = z3 = -1 keeps the triple series absolutely convergent (needs Re(z1+z3) < -1)
    for (double z2 : {-1.5, -2.0, -3.0})
        for (double t : {0.5, 1.0, 2.0}) {
            std::array<cplx, 3> z{-1.0, z2, -1.0};
            auto D = suq2_gauged_sum(z, 1.0, t);
            auto C = suq2_continued_expression(z, 1.0, t);
            auto cmp = compare("suq2", {z[0], z[1], z[2]}, t, D, C, kTolSUOracle);
            c.check(cmp.agree, fmt("z=(-1,%g,-1) t=%g  direct=%.14g  continued=%.14g  |diff|=%.2e", z2, t, D.real(), C.real(),
                                   std::abs(D.value - C.value)));
        }
    for (double t : {0.5, 1.0, 2.0}) {
        auto R = suq2_reduction(t, 1.0);
        c.check(std::abs(R.pair_sum.value - R.pair_sum_rhs.value) <= kTolReduction,
                fmt("t=%g  sum e^{-u(k+l)^2} = %.12f, S1-S0 = %.12f", t, R.pair_sum.real(), R.pair_sum_rhs.real()));
        c.check(std::abs(R.weighted_sum.value - R.weighted_rhs.value) <= kTolReduction,
                fmt("t=%g  sum l e^{-u(k+l)^2} = %.12f, (S2-S1)/2 = %.12f", t, R.weighted_sum.real(), R.weighted_rhs.real()));
        auto tr = suq2_gauss_trace(1.0, t);
        c.check(std::abs(R.closed_form.value - tr.value) <= kTolReduction,
                fmt("t=%g  assembled %.12f vs closed form %.12f", t, R.closed_form.real(), tr.value));
    }
}

void c5_suq2_limit(Ctx& c) {
    for (double r : {0.5, 1.0, 2.0}) {
        auto tr = trace_of(SpectralModel::suq2(r));
        double res = 0.0;
        double p = detect_pole_order(tr, default_grid(), 1e-4, &res);
        c.check(std::abs(p - 1.5) <= kTolPoleOrder, fmt("r=%g  pole order %.5f (fit residual %.1e)", r, p, res));
        double a0 = leading_coefficient(tr, 1.5);
        double target = -2.0 * pi * pi * std::pow(r, -1.5);
        c.check(std::abs(a0 - target) <= kTolSULimit, fmt("r=%g  A0 = %.8f, -2 pi^2 r^{-3/2} = %.8f", r, a0, target));
    }
}

void c6_theta_identities(Ctx& c) {
    for (double t : {0.5, 1.0, 2.0}) {
        const double th = theta_direct(t);
        for (int N : {1, 2}) {
            for (bool reduced : {false, true}) {
                auto v = heisenberg_heat_trace(N, t, reduced);
                double want = (reduced ? 1.0 : -1.0) * std::pow(th, 2 * N);
                c.check(std::abs(v.value - want) <= kTolTheta + v.error_bound,
                        fmt("H_%d%s t=%g  %.14f vs %+.14f", N, reduced ? " reduced" : "", t, v.value, want));
                if (reduced) {
                    auto e = enumerated_heat_trace(SpectralModel::heisenberg(N, true), t, 9);
                    c.check(std::abs(e.real() - v.value) <= kTolTheta + v.error_bound + e.error_bound,
                            fmt("H_%d reduced t=%g  enumeration %.14f", N, t, e.real()));
                }
            }
            for (int Tf = 0; Tf <= 3; ++Tf) {
                auto a = nc_torus_heat_trace(N, Tf, t, false);
                double want = (Tf % 2 ? -1.0 : 1.0) * std::pow(th, N);
                c.check(std::abs(a.value - want) <= kTolTheta + a.error_bound,
                        fmt("A^%d Tf=%d t=%g abstract  %.14f vs %+.14f", N, Tf, t, a.value, want));
                auto m = SpectralModel::nc_torus(N, Tf, true);
                auto b = heat_trace(m, t);
                auto e = enumerated_heat_trace(m, t, 12);
                c.check(std::abs(b.value - std::pow(th, N)) <= kTolTheta + b.error_bound &&
                            std::abs(e.real() - b.value) <= kTolTheta + b.error_bound + e.error_bound,
                        fmt("A^%d Tf=%d t=%g complex  %.14f, enumeration %.14f", N, Tf, t, b.value, e.real()));
            }
        }
    }
}

void c7_pole_structure(Ctx& c) {
    struct Case {
        const char* name;
        SpectralModel model;
        int D;
    };
    std::vector<Case> cases = {{"H_1", SpectralModel::heisenberg(1, false), 3},
                               {"H_1 reduced", SpectralModel::heisenberg(1, true), 2},
                               {"A^1 Tf=1", SpectralModel::nc_torus(1, 1, false), 2},
                               {"A^2 Tf=1", SpectralModel::nc_torus(2, 1, false), 3},
                               {"A^2 Tf=2", SpectralModel::nc_torus(2, 2, false), 4},
                               {"SU_q(2)", SpectralModel::suq2(1.0), 3}};
    for (double delta : {1.0, 2.0}) {
        for (const auto& k : cases) {
            const double predicted = (-double(k.D) - 2.0) / delta;
            ZetaFunction zf(k.model, laplacian_operator(k.model), GaugeSpec::radial(delta));
            auto poles = scan_real_poles(zf, -8.0 / delta, 1.5 / delta);
            std::string found;
            bool all_simple = true, hit = false, extra = false;
            for (const auto& p : poles) {
                found += fmt(" %.6g(order %d, res %.6g)", p.location, p.laurent.order, p.laurent.residue.real());
                all_simple = all_simple && p.laurent.order == 1;
                if (std::abs(p.location - predicted) < 1e-9) hit = true;
                else extra = true;
            }
            c.check(hit && all_simple && !extra,
                    fmt("%s delta=%g  predicted %g; detected:%s", k.name, delta, predicted, found.c_str()));
        }
        // residue of the radial symbol |x|^2 on Z^3 at (-3-2)/delta
        ZetaFunction zf(SpectralModel::heisenberg(1, false), radial_operator(3, 1.0, 2.0), GaugeSpec::radial(delta));
        auto L = laurent_at(zf, -5.0 / delta);
        const double want = -(1.0 / delta) * 2.0 * std::pow(pi, 1.5) / std::tgamma(1.5);
        c.check(L.order == 1 && std::abs(L.residue.real() - want) <= kTolResidue,
                fmt("H_1 delta=%g  residue of |x|^2 at %g: %.12f (want %.12f)", delta, -5.0 / delta, L.residue.real(), want));
        ZetaFunction zl(SpectralModel::heisenberg(1, false), laplacian_operator(SpectralModel::heisenberg(1, false)),
                        GaugeSpec::radial(delta));
        auto Ll = laurent_at(zl, -5.0 / delta);
        c.note(fmt("H_1 delta=%g  Laplacian -(x1^2+x2^2) residue %.12f = (2/3) 4 pi / delta", delta, Ll.residue.real()));
    }
}

void c8_differential_vanishing(Ctx& c) {
    double worst = 0.0;
    int count = 0;
    for (int d = 1; d <= 3; ++d) {
        int total = 1;
        for (int i = 0; i < d; ++i) total *= 3;
        for (int code = 0; code < total; ++code) {
            std::vector<int> e;
            int x = code, w = 0;
            for (int i = 0; i < d; ++i) {
                e.push_back(2 * (x % 3));
                w += e.back();
                x /= 3;
            }
            PolyhomOperator op;
            op.terms.push_back(SymbolTerm{Polynomial(1.0), double(w), e});
            auto model = SpectralModel::from_operator(LatticeFamily::full(d), op);
            cplx v = zeta_reg_trace(op, model, GaugeSpec::radial());
            worst = std::max(worst, std::abs(v));
            ++count;
            if (std::abs(v) > kTolDiffOp) c.check(false, fmt("d=%d monomial weight %d gives %.3e", d, w, std::abs(v)));
        }
    }
    c.check(worst <= kTolDiffOp, fmt("%d monomials x^e on Z^d, d in 1..3, e_i in {0,2,4}: max |tr| = %.2e", count, worst));
    auto T = SpectralModel::toeplitz();
    auto L = laplacian_operator(T);
    cplx sep = zeta_reg_trace(L, T, GaugeSpec::separable({1.0, 1.0}));
    c.check(std::abs(sep - 1.0 / 72.0) <= kTolSeparable,
            fmt("Toeplitz Laplacian, separable gauge: %.15f = 1/72", sep.real()));
    cplx rad = zeta_reg_trace(L, T, GaugeSpec::radial());
    c.note(fmt("Toeplitz Laplacian, radial gauge: %.15f (= -1/360)", rad.real()));
}

void c9_special_functions(Ctx& c) {
    cplx z0 = riemann_zeta(0.0).value, zm1 = riemann_zeta(-1.0).value;
    c.check(z0 == cplx(-0.5), fmt("zeta(0) = %.17g", z0.real()));
    c.check(zm1 == cplx(-1.0 / 12.0), fmt("zeta(-1) = %.17g", zm1.real()));
    cplx z2 = riemann_zeta(2.0).value;
    c.check(std::abs(z2 - pi * pi / 6.0) <= kTolZetaValue, fmt("zeta(2) - pi^2/6 = %.2e", std::abs(z2 - pi * pi / 6.0)));
    for (cplx s : {cplx(-1.0), cplx(-0.5), cplx(0.5, 1.0), cplx(3.0)}) {
        cplx lhs = epstein_zeta(2, 2.0 * s).value;
        cplx rhs = 4.0 * riemann_zeta(s).value * dirichlet_beta(s).value;
        c.check(std::abs(lhs - rhs) <= kTolFactorization,
                fmt("s=%g%+gi  Z_2(2s)=%.12g%+.12gi  4 zeta beta=%.12g%+.12gi", s.real(), s.imag(), lhs.real(), lhs.imag(),
                    rhs.real(), rhs.imag()));
    }
    for (double t : {0.3, 0.7, 1.0, 2.0, 5.0}) {
        auto a = theta_full(t), b = theta_full(pi * pi / t);
        double lhs = a.real(), rhs = std::sqrt(pi / t) * b.real();
        double bound = a.error_bound + std::sqrt(pi / t) * b.error_bound + rounding_slack(std::abs(lhs), 8);
        c.check(std::abs(lhs - rhs) <= bound && std::abs(theta_direct(t) - lhs) <= bound + rounding_slack(lhs, 64),
                fmt("t=%g  theta=%.16f  sqrt(pi/t) theta(pi^2/t)=%.16f", t, lhs, rhs));
    }
}

void c10_heat_coefficients(Ctx& c) {
    struct Case {
        std::string name;
        SpectralModel model;
        double p;
        double A0;
    };
    std::vector<Case> cases = {{"Toeplitz", SpectralModel::toeplitz(), 1.0, -2.0 * pi}};
    for (int N : {1, 2}) {
        cases.push_back({fmt("H_%d", N), SpectralModel::heisenberg(N, false), double(N), -std::pow(2.0 * pi, 2 * N)});
        cases.push_back({fmt("H_%d reduced", N), SpectralModel::heisenberg(N, true), double(N), std::pow(2.0 * pi, 2 * N)});
        for (int Tf : {0, 1})
            cases.push_back({fmt("A^%d Tf=%d", N, Tf), SpectralModel::nc_torus(N, Tf, false), 0.5 * N,
                             (Tf ? -1.0 : 1.0) * std::pow(2.0 * pi, N)});
    }
    for (const auto& k : cases) {
        auto res = heat_coefficients(trace_of(k.model), k.p, 2, default_grid(), is_pure_theta(k.model));
        const auto& A = res.coefficients;
        c.check(std::abs(A[0] - k.A0) <= kTolA0Relative * std::abs(k.A0),
                fmt("%s  A0 = %.10f (want %.10f)", k.name.c_str(), A[0], k.A0));
        for (int j = 1; j <= 2; ++j) {
            // for pure theta powers A_j is reported as 0 and errors[j] bounds what is left
            double mag = std::abs(A[j]) + (is_pure_theta(k.model) ? res.errors[j] : 0.0);
            c.check(mag < kTolHigherCoefficients, fmt("%s  |A%d| = %.3e", k.name.c_str(), j, mag));
        }
    }
}

const std::vector<std::function<void(Ctx&)>>& bodies() {
    static const std::vector<std::function<void(Ctx&)>> b = {c1_toeplitz_oracle, c2_toeplitz_value,  c3_toeplitz_limit,
                                                             c4_suq2_oracle,     c5_suq2_limit,      c6_theta_identities,
                                                             c7_pole_structure,  c8_differential_vanishing,
                                                             c9_special_functions, c10_heat_coefficients};
    return b;
}

}  // namespace

const std::vector<CriterionInfo>& acceptance_criteria() {
    static const std::vector<CriterionInfo> info = {
        {1, "toeplitz-oracle", "gauged Toeplitz double sum equals its continued form", 5},
        {2, "toeplitz-heat", "Toeplitz heat trace at t=1", 1},
        {3, "toeplitz-limit", "lim 4 pi t trace = -2 pi", 10},
        {4, "suq2-oracle", "SU_q(2) triple sum equals its continued form; reduction identities", 10},
        {5, "suq2-limit", "SU_q(2) pole order 3/2 and A0 = -2 pi^2 r^{-3/2}", 20},
        {6, "theta-identities", "Heisenberg and NC torus heat traces as theta powers", 5},
        {7, "pole-structure", "radial-gauge poles at (-D-2)/delta and the residue scaling", 30},
        {8, "differential-vanishing", "radial traces of differential monomials vanish; separable Toeplitz value", 10},
        {9, "special-functions", "zeta values, Z_2 factorization, theta modularity", 2},
        {10, "heat-coefficients", "A0 values and vanishing A1, A2", 30},
    };
    return info;
}

int criterion_id(const std::string& key) {
    for (const auto& c : acceptance_criteria())
        if (key == c.tag || key == std::to_string(c.id)) return c.id;
    throw std::invalid_argument("unknown criterion: " + key);
}

CriterionResult run_criterion(int id) {
    const auto& info = acceptance_criteria();
    if (id < 1 || id > int(info.size())) throw std::invalid_argument("criterion id out of range");
    CriterionResult r;
    r.id = id;
    r.tag = info[id - 1].tag;
    r.pass = true;
    Ctx c{r};
    auto t0 = std::chrono::steady_clock::now();
    try {
        bodies()[id - 1](c);
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.check(r.seconds < info[id - 1].budget_seconds, fmt("runtime %.2f s (budget %.0f s)", r.seconds, info[id - 1].budget_seconds));
    return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids) {
    std::vector<CriterionResult> out;
    if (ids.empty())
        for (const auto& c : acceptance_criteria()) out.push_back(run_criterion(c.id));
    else
        for (int id : ids) out.push_back(run_criterion(id));
    return out;
}

void print_result(const CriterionResult& r, std::ostream& os, bool verbose) {
    os << (r.pass ? "PASS " : "FAIL ") << (r.id < 10 ? " " : "") << r.id << " " << r.tag << " ("
       << fmt("%.2f", r.seconds) << " s)\n";
    if (verbose)
        for (const auto& d : r.details) os << "    " << d << "\n";
}

}  // namespace qheat
