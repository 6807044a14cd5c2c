#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qheat/core.hpp"
#include "qheat/models.hpp"
#include "qheat/report.hpp"

namespace qheat {

// Bad configuration; the CLI exits with code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string model = "toeplitz";
    int N = 1;
    int Tf = 0;
    double r = 1.0;
    std::string gauge = "radial";
    std::vector<double> delta{1.0};
    std::string op = "laplacian";
    std::vector<cplx> z;
    std::vector<double> t;
    int K = 2;             // asym: number of coefficients past A_0
    double z1 = -1.0;      // oracle, suq2 only
    double z3 = -1.0;
    std::vector<std::string> only;
    PrecisionConfig precision;
    std::string out;
    std::string format = "csv";
};

// "2", "-0.5", "0.5+1i", "3-2i", "1i"
cplx parse_complex(const std::string& s);
// start:stop:count, log spaced; an optional fourth field "lin" switches to linear spacing
std::vector<double> parse_t_grid(const std::string& s);
// Flat "key = value" lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);
// QHEAT_PRECISION_BITS; returns the bits actually used and a warning when it had to fall back.
int precision_bits_from_env(std::string* warning);

SpectralModel model_from_config(const RunConfig& cfg);
GaugeSpec gauge_from_config(const RunConfig& cfg, int dim);
void validate(const RunConfig& cfg);

Report cmd_zeta(const RunConfig& cfg);
Report cmd_heat(const RunConfig& cfg);
Report cmd_asymptotics(const RunConfig& cfg);
// all_agree is false when any sample disagrees
Report cmd_oracle(const RunConfig& cfg, bool& all_agree);
// Writes the PASS/FAIL table to `table`; all_pass is false when any criterion fails.
Report cmd_reproduce(const RunConfig& cfg, std::ostream& table, bool& all_pass);

}  // namespace qheat
