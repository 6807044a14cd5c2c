// qheat command-line front end. Exit codes: 0 ok, 1 a check failed, 2 usage error.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qheat/cli.hpp"

using namespace qheat;

namespace {

// Config values go in front of the user's flags, and only for keys the user did not pass.
std::vector<std::string> merge_config(int argc, char** argv) {
    std::vector<std::string> user(argv + 1, argv + argc);
    std::string path;
    for (size_t i = 0; i < user.size(); ++i) {
        if (user[i] == "--config" && i + 1 < user.size()) path = user[i + 1];
        else if (user[i].rfind("--config=", 0) == 0) path = user[i].substr(9);
    }
    if (path.empty()) return user;
    auto given = [&](const std::string& key) {
        for (const auto& a : user)
            if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
        return false;
    };
    static const std::vector<std::string> commands = {"zeta", "heat", "asym", "oracle", "reproduce"};
    bool has_command = false;
    for (const auto& a : user)
        for (const auto& c : commands) has_command = has_command || a == c;

    std::vector<std::string> front;
    std::string command;
    for (const auto& [k, v] : read_config_file(path)) {
        if (k == "command") {
            command = v;
            continue;
        }
        if (k == "config") throw UsageError("config files cannot include other config files");
        if (given(k)) continue;
        front.push_back("--" + k);
        front.push_back(v);
    }
    std::vector<std::string> out;
    if (!has_command && !command.empty()) out.push_back(command);
    out.insert(out.end(), front.begin(), front.end());
    out.insert(out.end(), user.begin(), user.end());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::vector<std::string> z_text, t_text;
    std::string t_grid, config_path;
    double tol = cfg.precision.tolerance;

    CLI::App app{"qheat: zeta-regularized traces and heat traces of quantum semigroup models"};
    app.require_subcommand(1);
    app.add_option("--config", config_path, "flat key = value file; flags override it");
    app.add_option("--model", cfg.model, "toeplitz|heisenberg|heisenberg-r|nctorus|nctorus-c|suq2|torus");
    app.add_option("--N", cfg.N, "rank N");
    app.add_option("--Tf", cfg.Tf, "number of twist coordinates");
    app.add_option("--r", cfg.r, "SU_q(2) Gaussian parameter r > 0");
    app.add_option("--gauge", cfg.gauge, "radial|separable");
    app.add_option("--delta", cfg.delta, "gauge exponent(s)")->delimiter(',');
    app.add_option("--op", cfg.op, "operator (laplacian)");
    app.add_option("--z", z_text, "z value, repeatable; complex as 0.5+1i")->allow_extra_args(false);
    app.add_option("--t", t_text, "t value, repeatable")->allow_extra_args(false);
    app.add_option("--t-grid", t_grid, "start:stop:count, log spaced (append :lin for linear)");
    app.add_option("--K", cfg.K, "asym: coefficients past A0");
    app.add_option("--z1", cfg.z1, "oracle suq2: z1");
    app.add_option("--z3", cfg.z3, "oracle suq2: z3");
    app.add_option("--only", cfg.only, "reproduce: criterion number or tag, repeatable")->allow_extra_args(false);
    app.add_option("--tol", tol, "truncation tolerance");
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.add_option("--format", cfg.format, "csv|json");
    const std::pair<const char*, const char*> subs[] = {
        {"zeta", "zeta function of the model's Laplacian at --z (finite part and residue at poles)"},
        {"heat", "heat trace at --t or --t-grid"},
        {"asym", "small-t pole order and coefficients A_0..A_K"},
        {"oracle", "direct gauged sums against the continued forms"},
        {"reproduce", "acceptance checks, PASS/FAIL per line"}};
    for (auto [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

    try {
        auto args = merge_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
        app.parse(args);
        cfg.command = app.get_subcommands().front()->get_name();
        for (const auto& s : z_text) cfg.z.push_back(parse_complex(s));
        for (const auto& s : t_text) {
            double t = 0;
            try {
                t = std::stod(s);
            } catch (const std::exception&) {
                throw UsageError("cannot parse t: '" + s + "'");
            }
            cfg.t.push_back(t);
        }
        if (!t_grid.empty()) {
            auto g = parse_t_grid(t_grid);
            cfg.t.insert(cfg.t.end(), g.begin(), g.end());
        }
        cfg.precision.tolerance = tol;
        std::string warning;
        cfg.precision.bits = precision_bits_from_env(&warning);
        if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
        validate(cfg);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    int code = 0;
    Report report;
    try {
        if (cfg.command == "zeta") report = cmd_zeta(cfg);
        else if (cfg.command == "heat") report = cmd_heat(cfg);
        else if (cfg.command == "asym") report = cmd_asymptotics(cfg);
        else if (cfg.command == "oracle") {
            bool agree = true;
            report = cmd_oracle(cfg, agree);
            code = agree ? 0 : 1;
        } else {
            bool pass = true;
            report = cmd_reproduce(cfg, std::cout, pass);
            code = pass ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    // reproduce prints its table; the report goes to --out only
    if (cfg.command == "reproduce" && cfg.out.empty()) return code;
    std::ofstream file;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) {
            std::cerr << "error: cannot write " << cfg.out << "\n";
            return 2;
        }
    }
    std::ostream& os = cfg.out.empty() ? std::cout : file;
    if (cfg.format == "json") write_json(report, os);
    else write_csv(report, os);
    return code;
}
