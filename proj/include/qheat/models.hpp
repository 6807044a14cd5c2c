#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qheat/core.hpp"
#include "qheat/kernels.hpp"

namespace qheat {

using Point = std::vector<long>;

struct LatticeFamily {
    enum class Kind { QuadrantN2, FullLattice, MixedSU, TwistedTorus };
    Kind kind = Kind::FullLattice;
    int d = 1;   // FullLattice
    int N = 0;   // TwistedTorus
    int Tf = 0;  // TwistedTorus

    static LatticeFamily quadrant() { return {Kind::QuadrantN2, 2, 0, 0}; }
    static LatticeFamily full(int d) { return {Kind::FullLattice, d, 0, 0}; }
    static LatticeFamily mixed_su() { return {Kind::MixedSU, 3, 0, 0}; }
    static LatticeFamily twisted_torus(int N, int Tf) { return {Kind::TwistedTorus, N + Tf, N, Tf}; }

    int dimension() const;
    std::vector<Axis> axes() const;
    bool contains(const Point& mu) const;
};

// Points with sup norm <= radius, lexicographic order.
std::vector<Point> enumerate(const LatticeFamily& family, int radius);

struct Polynomial {
    std::vector<cplx> c;  // c[0] + c[1] z + ...

    Polynomial() = default;
    Polynomial(cplx constant) : c{constant} {}
    explicit Polynomial(std::vector<cplx> coeffs) : c(std::move(coeffs)) {}

    cplx operator()(cplx z) const;
    bool is_zero() const;
    Polynomial operator*(const Polynomial& o) const;
};

// alpha(z) * mu^e * |mu|^{degree - |e|}; empty or zero exponent is the radial shape |mu|^degree.
struct SymbolTerm {
    Polynomial alpha;
    cplx degree;
    std::vector<int> exponent;

    bool radial() const;
    int weight() const;
};

struct PolyhomOperator {
    std::vector<SymbolTerm> terms;

    PolyhomOperator operator*(const PolyhomOperator& o) const;
    // Ungauged value at mu (z = 0). Throws DomainError at the origin when undefined there.
    cplx value(const Point& mu) const;
};

// alpha * (x_i - x_j)^2 on a lattice of dimension `dim`, as three monomial terms.
PolyhomOperator signed_quadratic(int dim, int i, int j, cplx alpha = 1.0);
// sum_{i in coords} alpha * x_i^2
PolyhomOperator coordinate_squares(int dim, const std::vector<int>& coords, cplx alpha);
PolyhomOperator radial_operator(int dim, cplx alpha, cplx degree);

struct GaugeSpec {
    enum class Kind { Radial, Separable };
    Kind kind = Kind::Radial;
    std::vector<double> delta{1.0};  // one entry for Radial, one per coordinate for Separable

    static GaugeSpec radial(double d = 1.0) { return {Kind::Radial, {d}}; }
    static GaugeSpec separable(std::vector<double> d) { return {Kind::Separable, std::move(d)}; }
    void validate() const;
};

struct GaussianFunctional {
    Eigen::VectorXd driftP, driftQ;
    double driftZ = 0.0;
    Eigen::MatrixXd cov;  // 2N x 2N

    int N() const { return static_cast<int>(cov.rows()) / 2; }
    void validate() const;
    bool driftless() const;
};

struct SUq2Functional {
    double r_D = 0.0;
    double r = 1.0;
};

cplx gaussian_eigenvalue(const GaussianFunctional& g, const Point& mu, long p);

struct SpectralModel {
    enum class Rule {
        ToeplitzBM,
        ToeplitzLaplacian,
        HeisenbergLaplacian,
        ReducedHeisenbergLaplacian,
        NCTorusLaplacian,
        SUq2Gauss,
        TorusLaplacian,
        GeneralGaussian,
        Custom
    };
    LatticeFamily family;
    Rule rule = Rule::TorusLaplacian;
    int N = 1;
    int Tf = 0;
    bool complex_twists = false;
    double r = 1.0;
    GaussianFunctional gaussian;
    PolyhomOperator custom;

    static SpectralModel toeplitz(bool brownian = false);
    static SpectralModel heisenberg(int N, bool reduced);
    static SpectralModel nc_torus(int N, int Tf, bool complex_twists);
    static SpectralModel suq2(double r);
    static SpectralModel suq2(const SUq2Functional& f);
    static SpectralModel torus(int N);
    static SpectralModel general_gaussian(const GaussianFunctional& g);
    static SpectralModel from_operator(const LatticeFamily& f, const PolyhomOperator& op);

    int dimension() const { return family.dimension(); }
    std::string tag() const;
};

cplx eigenvalue(const SpectralModel& model, const Point& mu);

// The generator's eigenvalue rule written as a polyhomogeneous operator (degree 2).
PolyhomOperator laplacian_operator(const SpectralModel& model);

std::vector<cplx> predicted_pole_set(const PolyhomOperator& op, const SpectralModel& model, const GaugeSpec& gauge);

}  // namespace qheat
