#include "qheat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "qheat/acceptance.hpp"
#include "qheat/asymptotics.hpp"
#include "qheat/heat_traces.hpp"
#include "qheat/oracle.hpp"
#include "qheat/zeta_traces.hpp"

namespace qheat {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("cannot parse ") + what + ": '" + s + "'");
    }
}

std::string pretty(cplx z) {
    if (z.imag() == 0.0) return format_double(z.real());
    return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i";
}

}  // namespace

cplx parse_complex(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) throw UsageError("empty complex number");
    if (s.back() != 'i') return {to_double(s, "z"), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    auto unit = [&](const std::string& x) { return x.empty() || x == "+" ? 1.0 : x == "-" ? -1.0 : to_double(x, "z"); };
    // split at the last sign that is not leading and not an exponent sign
    for (size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E')
            return {to_double(body.substr(0, k), "z"), unit(body.substr(k))};
    }
    return {0.0, unit(body)};
}

std::vector<double> parse_t_grid(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(trim(p));
    if (parts.size() != 3 && parts.size() != 4) throw UsageError("t-grid must be start:stop:count[:lin|log]");
    const double a = to_double(parts[0], "t-grid start"), b = to_double(parts[1], "t-grid stop");
    const double cnt = to_double(parts[2], "t-grid count");
    if (cnt < 1 || cnt != std::floor(cnt)) throw UsageError("t-grid count must be a positive integer");
    const bool lin = parts.size() == 4 && parts[3] == "lin";
    if (parts.size() == 4 && parts[3] != "lin" && parts[3] != "log") throw UsageError("t-grid spacing must be lin or log");
    if (!(a > 0) || !(b > 0)) throw UsageError("t must be positive");
    const int n = int(cnt);
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        double f = n == 1 ? 0.0 : double(i) / (n - 1);
        out.push_back(lin ? a + f * (b - a) : a * std::pow(b / a, f));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::vector<std::pair<std::string, std::string>> out;
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (k.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
        out.emplace_back(k, v);
    }
    return out;
}

int precision_bits_from_env(std::string* warning) {
    const char* env = std::getenv("QHEAT_PRECISION_BITS");
    if (!env || !*env) return 53;
    char* end = nullptr;
    long bits = std::strtol(env, &end, 10);
    if (*end != '\0' || bits < 1) throw UsageError(std::string("QHEAT_PRECISION_BITS must be a positive integer, got '") + env + "'");
    if (bits != 53 && warning)
        *warning = "QHEAT_PRECISION_BITS=" + std::to_string(bits) + ": only the 53-bit double backend is built; using 53";
    return 53;
}

SpectralModel model_from_config(const RunConfig& c) {
    try {
        if (c.model == "toeplitz") return SpectralModel::toeplitz();
        if (c.model == "heisenberg") return SpectralModel::heisenberg(c.N, false);
        if (c.model == "heisenberg-r") return SpectralModel::heisenberg(c.N, true);
        if (c.model == "nctorus") return SpectralModel::nc_torus(c.N, c.Tf, false);
        if (c.model == "nctorus-c") return SpectralModel::nc_torus(c.N, c.Tf, true);
        if (c.model == "suq2") return SpectralModel::suq2(c.r);
        if (c.model == "torus") return SpectralModel::torus(c.N);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown model: " + c.model);
}

GaugeSpec gauge_from_config(const RunConfig& c, int dim) {
    GaugeSpec g;
    if (c.gauge == "radial") {
        if (c.delta.size() != 1) throw UsageError("radial gauge takes one delta");
        g = GaugeSpec::radial(c.delta[0]);
    } else if (c.gauge == "separable") {
        std::vector<double> d = c.delta;
        if (d.size() == 1) d.assign(dim, d[0]);
        if (int(d.size()) != dim) throw UsageError("separable gauge needs one delta or one per coordinate");
        g = GaugeSpec::separable(d);
    } else {
        throw UsageError("unknown gauge: " + c.gauge);
    }
    try {
        g.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return g;
}

void validate(const RunConfig& c) {
    for (double t : c.t)
        if (!(t > 0)) throw UsageError("t must be positive");
    if (c.format != "csv" && c.format != "json") throw UsageError("format must be csv or json");
    if (c.op != "laplacian") throw UsageError("unknown operator: " + c.op);
    if (!(c.precision.tolerance > 0)) throw UsageError("tol must be positive");
    if (c.K < 0) throw UsageError("K must be nonnegative");
}

namespace {

Report base_report(const RunConfig& c, const std::string& cmd) {
    Report r;
    r.command = cmd;
    r.meta["model"] = c.model;
    r.meta["precision_bits"] = std::to_string(c.precision.bits);
    return r;
}

std::string model_label(const SpectralModel& m) { return m.tag(); }

}  // namespace

Report cmd_zeta(const RunConfig& c) {
    validate(c);
    SpectralModel m = model_from_config(c);
    GaugeSpec g = gauge_from_config(c, m.dimension());
    Report r = base_report(c, "zeta");
    r.meta["model"] = model_label(m);
    r.meta["gauge"] = c.gauge;
    r.meta["op"] = c.op;
    r.columns = {"z_re", "z_im", "status", "value_re", "value_im", "error_bound", "pole_order", "residue_re", "residue_im"};
    ZetaFunction zf(m, laplacian_operator(m), g);
    for (cplx z : c.z) {
        try {
            BoundedValue v = zf.eval(z, c.precision);
            r.add_row({z.real(), z.imag(), std::string("value"), v.value.real(), v.value.imag(), v.error_bound, 0L, 0.0, 0.0});
        } catch (const PoleError&) {
            LaurentData L = laurent_at(zf, z);
            // finite part sits in the value columns; its bound is not known
            r.add_row({z.real(), z.imag(), std::string(L.order ? "pole" : "regular"), L.finite_part.real(), L.finite_part.imag(),
                       std::nan(""), long(L.order), L.residue.real(), L.residue.imag()});
        }
    }
    return r;
}

Report cmd_heat(const RunConfig& c) {
    validate(c);
    SpectralModel m = model_from_config(c);
    Report r = base_report(c, "heat");
    r.meta["model"] = model_label(m);
    r.columns = {"t", "value", "error_bound"};
    for (double t : c.t) {
        HeatTraceValue v = heat_trace(m, t, c.precision);
        r.add_row({t, v.value, v.error_bound});
    }
    return r;
}

Report cmd_asymptotics(const RunConfig& c) {
    validate(c);
    SpectralModel m = model_from_config(c);
    std::vector<double> grid = c.t.empty() ? default_grid() : c.t;
    std::sort(grid.begin(), grid.end(), std::greater<>());
    auto tr = trace_of(m, c.precision);
    double residual = 0.0;
    const double p_raw = detect_pole_order(tr, grid, 1e-4, &residual);
    // heat-trace pole orders are half-integers; extrapolate with the rounded order
    const double p = std::round(2.0 * p_raw) / 2.0;
    AsymptoticsResult a = heat_coefficients(tr, p, c.K, grid, is_pure_theta(m));
    Report r = base_report(c, "asym");
    r.meta["model"] = model_label(m);
    r.columns = {"quantity", "value", "error_bound"};
    r.add_row({std::string("pole_order_fit"), p_raw, residual});
    r.add_row({std::string("pole_order"), p, 0.0});
    for (size_t k = 0; k < a.coefficients.size(); ++k) r.add_row({"A" + std::to_string(k), a.coefficients[k], a.errors[k]});
    r.add_row({std::string("fit_residual"), a.fit_residual, 0.0});
    return r;
}

Report cmd_oracle(const RunConfig& c, bool& all_agree) {
    validate(c);
    std::vector<double> ts = c.t.empty() ? std::vector<double>{0.5, 1.0, 2.0} : c.t;
    std::vector<cplx> zs = c.z.empty() ? std::vector<cplx>{-1.5, -2.0, -3.0} : c.z;
    Report r = base_report(c, "oracle");
    r.columns = {"model", "z1", "z2", "z3", "t", "direct", "direct_bound", "continued", "continued_bound", "agree"};
    all_agree = true;
    for (cplx z2 : zs)
        for (double t : ts) {
            OracleComparison cmp;
            try {
                if (c.model == "toeplitz") {
                    cmp = compare("toeplitz", {0.0, z2}, t, toeplitz_gauged_sum(0.0, z2, t), toeplitz_continued_form(z2, t), 1e-10);
                } else if (c.model == "suq2") {
                    std::array<cplx, 3> z{c.z1, z2, c.z3};
                    cmp = compare("suq2", {z[0], z[1], z[2]}, t, suq2_gauged_sum(z, c.r, t), suq2_continued_expression(z, c.r, t), 1e-8);
                } else {
                    throw UsageError("oracle supports toeplitz and suq2");
                }
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
            all_agree = all_agree && cmp.agree;
            std::string z1s = c.model == "suq2" ? pretty(c.z1) : "0", z3s = c.model == "suq2" ? pretty(c.z3) : "";
            r.add_row({c.model, z1s, pretty(z2), z3s, t, cmp.direct_value.value.real(), cmp.direct_value.error_bound,
                       cmp.closedform_value.value.real(), cmp.closedform_value.error_bound, cmp.agree});
        }
    return r;
}

Report cmd_reproduce(const RunConfig& c, std::ostream& table, bool& all_pass) {
    std::vector<int> ids;
    try {
        for (const auto& k : c.only) ids.push_back(criterion_id(k));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Report r;
    r.command = "reproduce";
    r.columns = {"id", "tag", "pass", "checks_failed"};
    all_pass = true;
    for (const auto& res : run_acceptance(ids)) {
        print_result(res, table, true);
        long failed = 0;
        for (const auto& d : res.details) failed += d.rfind("FAIL", 0) == 0;
        r.add_row({long(res.id), res.tag, res.pass, failed});
        all_pass = all_pass && res.pass;
    }
    return r;
}

}  // namespace qheat
