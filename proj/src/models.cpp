#include "qheat/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qheat {

int LatticeFamily::dimension() const {
    switch (kind) {
        case Kind::QuadrantN2: return 2;
        case Kind::FullLattice: return d;
        case Kind::MixedSU: return 3;
        case Kind::TwistedTorus: return N + Tf;
    }
    return 0;
}

std::vector<Axis> LatticeFamily::axes() const {
    switch (kind) {
        case Kind::QuadrantN2: return {Axis::Half, Axis::Half};
        case Kind::MixedSU: return {Axis::Full, Axis::Half, Axis::Half};
        default: return std::vector<Axis>(dimension(), Axis::Full);
    }
}

bool LatticeFamily::contains(const Point& mu) const {
    if (static_cast<int>(mu.size()) != dimension()) return false;
    auto ax = axes();
    for (size_t i = 0; i < mu.size(); ++i)
        if (ax[i] == Axis::Half && mu[i] < 0) return false;
    return true;
}

std::vector<Point> enumerate(const LatticeFamily& family, int radius) {
    if (radius < 0) return {};
    auto ax = family.axes();
    const size_t d = ax.size();
    std::vector<Point> out;
    if (d == 0) return {Point{}};
    Point mu(d);
    for (size_t i = 0; i < d; ++i) mu[i] = ax[i] == Axis::Full ? -radius : 0;
    while (true) {
        out.push_back(mu);
        int k = static_cast<int>(d) - 1;
        for (; k >= 0; --k) {
            if (++mu[k] <= radius) break;
            mu[k] = ax[k] == Axis::Full ? -radius : 0;
        }
        if (k < 0) break;
    }
    return out;
}

cplx Polynomial::operator()(cplx z) const {
    cplx v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
    return v;
}

bool Polynomial::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](cplx v) { return v == 0.0; });
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (c.empty() || o.c.empty()) return Polynomial(std::vector<cplx>{});
    std::vector<cplx> r(c.size() + o.c.size() - 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return Polynomial(std::move(r));
}

bool SymbolTerm::radial() const { return weight() == 0; }

int SymbolTerm::weight() const { return std::accumulate(exponent.begin(), exponent.end(), 0); }

PolyhomOperator PolyhomOperator::operator*(const PolyhomOperator& o) const {
    PolyhomOperator out;
    for (const auto& a : terms) {
        for (const auto& b : o.terms) {
            SymbolTerm t;
            t.alpha = a.alpha * b.alpha;
            t.degree = a.degree + b.degree;
            size_t n = std::max(a.exponent.size(), b.exponent.size());
            t.exponent.assign(n, 0);
            for (size_t i = 0; i < a.exponent.size(); ++i) t.exponent[i] += a.exponent[i];
            for (size_t i = 0; i < b.exponent.size(); ++i) t.exponent[i] += b.exponent[i];
            out.terms.push_back(std::move(t));
        }
    }
    return out;
}

cplx PolyhomOperator::value(const Point& mu) const {
    double n2 = 0;
    for (long v : mu) n2 += double(v) * double(v);
    cplx acc = 0.0;
    for (const auto& t : terms) {
        cplx a = t.alpha(0.0);
        if (a == 0.0) continue;
        double mono = 1.0;
        for (size_t i = 0; i < t.exponent.size(); ++i)
            if (t.exponent[i]) mono *= std::pow(double(mu.at(i)), t.exponent[i]);
        cplx rest = t.degree - double(t.weight());
        if (n2 == 0.0) {
            if (t.weight() > 0 && rest.real() >= 0) continue;
            if (rest == 0.0) {
                acc += a;
                continue;
            }
            if (rest.real() > 0) continue;
            throw DomainError("PolyhomOperator: symbol undefined at the origin");
        }
        acc += a * mono * std::exp(0.5 * rest * std::log(n2));
    }
    return acc;
}

PolyhomOperator signed_quadratic(int dim, int i, int j, cplx alpha) {
    auto mono = [&](int a, int b) {
        std::vector<int> e(dim, 0);
        e[a] += 1;
        e[b] += 1;
        return e;
    };
    PolyhomOperator op;
    op.terms.push_back({Polynomial(alpha), 2.0, mono(i, i)});
    op.terms.push_back({Polynomial(-2.0 * alpha), 2.0, mono(i, j)});
    op.terms.push_back({Polynomial(alpha), 2.0, mono(j, j)});
    return op;
}

PolyhomOperator coordinate_squares(int dim, const std::vector<int>& coords, cplx alpha) {
    PolyhomOperator op;
    for (int c : coords) {
        std::vector<int> e(dim, 0);
        e[c] = 2;
        op.terms.push_back({Polynomial(alpha), 2.0, e});
    }
    return op;
}

PolyhomOperator radial_operator(int dim, cplx alpha, cplx degree) {
    PolyhomOperator op;
    op.terms.push_back({Polynomial(alpha), degree, std::vector<int>(dim, 0)});
    return op;
}

void GaugeSpec::validate() const {
    if (delta.empty()) throw DomainError("GaugeSpec: empty delta");
    if (kind == Kind::Radial && delta.size() != 1) throw DomainError("GaugeSpec: radial gauge takes one delta");
    for (double d : delta)
        if (!(d > 0)) throw DomainError("GaugeSpec: delta must be positive");
}

void GaussianFunctional::validate() const {
    const int n = static_cast<int>(cov.rows());
    if (cov.cols() != n || n % 2 != 0) throw DomainError("GaussianFunctional: covariance must be 2N x 2N");
    if (driftP.size() != n / 2 || driftQ.size() != n / 2) throw DomainError("GaussianFunctional: drift length must be N");
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + cov.cwiseAbs().maxCoeff()))
        throw DomainError("GaussianFunctional: covariance not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.eigenvalues().minCoeff() < -1e-12 * (1.0 + cov.cwiseAbs().maxCoeff()))
        throw DomainError("GaussianFunctional: covariance not positive semidefinite");
}

bool GaussianFunctional::driftless() const {
    return driftZ == 0.0 && driftP.isZero(0.0) && driftQ.isZero(0.0);
}

cplx gaussian_eigenvalue(const GaussianFunctional& g, const Point& mu, long p) {
    g.validate();
    const int n = static_cast<int>(g.cov.rows());
    if (static_cast<int>(mu.size()) != n) throw DomainError("gaussian_eigenvalue: mu must have length 2N");
    Eigen::VectorXd m(n);
    for (int i = 0; i < n; ++i) m[i] = double(mu[i]);
    double drift = g.driftP.dot(m.head(n / 2)) + g.driftQ.dot(m.tail(n / 2)) + g.driftZ * double(p);
    return cplx(-0.5 * m.dot(g.cov * m), drift);
}

SpectralModel SpectralModel::toeplitz(bool brownian) {
    SpectralModel m;
    m.family = LatticeFamily::quadrant();
    m.rule = brownian ? Rule::ToeplitzBM : Rule::ToeplitzLaplacian;
    return m;
}

SpectralModel SpectralModel::heisenberg(int N, bool reduced) {
    if (N < 1) throw DomainError("heisenberg: N must be positive");
    SpectralModel m;
    m.N = N;
    m.family = LatticeFamily::full(reduced ? 2 * N : 2 * N + 1);
    m.rule = reduced ? Rule::ReducedHeisenbergLaplacian : Rule::HeisenbergLaplacian;
    return m;
}

SpectralModel SpectralModel::nc_torus(int N, int Tf, bool complex_twists) {
    if (N < 1 || Tf < 0) throw DomainError("nc_torus: need N >= 1, Tf >= 0");
    SpectralModel m;
    m.N = N;
    m.Tf = Tf;
    m.complex_twists = complex_twists;
    m.family = LatticeFamily::twisted_torus(N, complex_twists ? 0 : Tf);
    m.rule = Rule::NCTorusLaplacian;
    return m;
}

SpectralModel SpectralModel::suq2(double r) { return suq2(SUq2Functional{0.0, r}); }

SpectralModel SpectralModel::suq2(const SUq2Functional& f) {
    if (!(f.r > 0)) throw DomainError("suq2: r must be positive");
    if (f.r_D != 0.0) throw UnsupportedError("suq2: only the driftless functional is supported");
    SpectralModel m;
    m.family = LatticeFamily::mixed_su();
    m.rule = Rule::SUq2Gauss;
    m.r = f.r;
    return m;
}

SpectralModel SpectralModel::torus(int N) {
    if (N < 0) throw DomainError("torus: N must be nonnegative");
    SpectralModel m;
    m.N = N;
    m.family = LatticeFamily::full(N);
    m.rule = Rule::TorusLaplacian;
    return m;
}

SpectralModel SpectralModel::general_gaussian(const GaussianFunctional& g) {
    g.validate();
    SpectralModel m;
    m.N = g.N();
    m.family = LatticeFamily::full(2 * g.N() + 1);
    m.rule = Rule::GeneralGaussian;
    m.gaussian = g;
    return m;
}

SpectralModel SpectralModel::from_operator(const LatticeFamily& f, const PolyhomOperator& op) {
    SpectralModel m;
    m.family = f;
    m.rule = Rule::Custom;
    m.custom = op;
    return m;
}

std::string SpectralModel::tag() const {
    switch (rule) {
        case Rule::ToeplitzBM: return "toeplitz-bm";
        case Rule::ToeplitzLaplacian: return "toeplitz";
        case Rule::HeisenbergLaplacian: return "heisenberg";
        case Rule::ReducedHeisenbergLaplacian: return "heisenberg-r";
        case Rule::NCTorusLaplacian: return complex_twists ? "nctorus-c" : "nctorus";
        case Rule::SUq2Gauss: return "suq2";
        case Rule::TorusLaplacian: return "torus";
        case Rule::GeneralGaussian: return "gaussian";
        case Rule::Custom: return "custom";
    }
    return "unknown";
}

namespace {

double sq_sum(const Point& mu, size_t from, size_t to) {
    double s = 0;
    for (size_t i = from; i < to; ++i) s += double(mu[i]) * double(mu[i]);
    return s;
}

}  // namespace

cplx eigenvalue(const SpectralModel& model, const Point& mu) {
    if (!model.family.contains(mu)) throw DomainError("eigenvalue: point outside the lattice family");
    using R = SpectralModel::Rule;
    switch (model.rule) {
        case R::ToeplitzBM: {
            double k = double(mu[0] - mu[1]);
            return -0.5 * k * k;
        }
        case R::ToeplitzLaplacian: {
            double k = double(mu[0] - mu[1]);
            return -k * k;
        }
        case R::HeisenbergLaplacian: return -sq_sum(mu, 0, 2 * model.N);  // last coordinate is p
        case R::ReducedHeisenbergLaplacian: return -sq_sum(mu, 0, mu.size());
        case R::NCTorusLaplacian: return -sq_sum(mu, model.family.Tf, mu.size());  // twists come first
        case R::SUq2Gauss: {
            double k = double(mu[0] - mu[1] + mu[2]);
            return -model.r * k * k;
        }
        case R::TorusLaplacian: return -sq_sum(mu, 0, mu.size());
        case R::GeneralGaussian: {
            Point m(mu.begin(), mu.end() - 1);
            return gaussian_eigenvalue(model.gaussian, m, mu.back());
        }
        case R::Custom: return model.custom.value(mu);
    }
    return 0.0;
}

PolyhomOperator laplacian_operator(const SpectralModel& model) {
    using R = SpectralModel::Rule;
    const int D = model.dimension();
    std::vector<int> coords;
    switch (model.rule) {
        case R::ToeplitzBM: return signed_quadratic(2, 0, 1, -0.5);
        case R::ToeplitzLaplacian: return signed_quadratic(2, 0, 1, -1.0);
        case R::SUq2Gauss: {
            // -r (k - m + n)^2
            PolyhomOperator op;
            const double r = model.r;
            auto e = [](int a, int b, int c) { return std::vector<int>{a, b, c}; };
            op.terms = {{Polynomial(-r), 2.0, e(2, 0, 0)},     {Polynomial(-r), 2.0, e(0, 2, 0)},
                        {Polynomial(-r), 2.0, e(0, 0, 2)},     {Polynomial(2.0 * r), 2.0, e(1, 1, 0)},
                        {Polynomial(-2.0 * r), 2.0, e(1, 0, 1)}, {Polynomial(2.0 * r), 2.0, e(0, 1, 1)}};
            return op;
        }
        case R::HeisenbergLaplacian:
            for (int i = 0; i < 2 * model.N; ++i) coords.push_back(i);
            return coordinate_squares(D, coords, -1.0);
        case R::NCTorusLaplacian:
            for (int i = model.family.Tf; i < D; ++i) coords.push_back(i);
            return coordinate_squares(D, coords, -1.0);
        case R::ReducedHeisenbergLaplacian:
        case R::TorusLaplacian:
            for (int i = 0; i < D; ++i) coords.push_back(i);
            return coordinate_squares(D, coords, -1.0);
        case R::GeneralGaussian: {
            const auto& g = model.gaussian;
            if (!g.driftless()) throw UnsupportedError("laplacian_operator: drifted Gaussian");
            PolyhomOperator op;
            const int n = static_cast<int>(g.cov.rows());
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    double c = (i == j ? -0.5 : -1.0) * g.cov(i, j);
                    if (c == 0.0) continue;
                    std::vector<int> e(D, 0);
                    e[i] += 1;
                    e[j] += 1;
                    op.terms.push_back({Polynomial(c), 2.0, e});
                }
            return op;
        }
        case R::Custom: return model.custom;
    }
    return {};
}

std::vector<cplx> predicted_pole_set(const PolyhomOperator& op, const SpectralModel& model, const GaugeSpec& gauge) {
    gauge.validate();
    if (gauge.kind != GaugeSpec::Kind::Radial)
        throw UnsupportedError("predicted_pole_set: separable gauges have per-coordinate pole sets");
    const double D = model.dimension();
    const double delta = gauge.delta[0];
    std::vector<cplx> out;
    for (const auto& t : op.terms) {
        if (t.alpha.is_zero()) continue;
        cplx p = (-D - t.degree) / delta;
        bool seen = std::any_of(out.begin(), out.end(), [&](cplx q) { return std::abs(q - p) < 1e-12; });
        if (!seen) out.push_back(p);
    }
    return out;
}

}  // namespace qheat
