#include "tcts/fock_oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include <Eigen/Dense>

#include "tcts/special_functions.hpp"

namespace tcts {
namespace fock_oracle {

namespace {

double vec_norm_sq(const std::vector<complex>& v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return s;
}

// Generator of a single pipeline stage, applied to the amplitude tensor.
class Generator {
public:
    virtual ~Generator() = default;
    virtual void apply(const std::vector<complex>& in, std::vector<complex>& out,
                       unsigned N) const = 0;
    virtual double magnitude(unsigned N) const = 0;
};

class DisplacementGenerator : public Generator {
public:
    DisplacementGenerator(complex beta, Mode mode) : beta_(beta), mode_(mode) {}

    void apply(const std::vector<complex>& in, std::vector<complex>& out,
               unsigned N) const override {
        const complex b = beta_, bc = std::conj(beta_);
        if (mode_ == Mode::physical) {
            // (G v)[n,nt] = beta sqrt(n) v[n-1,nt] - conj(beta) sqrt(n+1) v[n+1,nt]
            for (unsigned n = 0; n < N; ++n)
                for (unsigned nt = 0; nt < N; ++nt) {
                    complex acc = 0.0;
                    if (n > 0) acc += b * std::sqrt(double(n)) * in[(n - 1) * N + nt];
                    if (n + 1 < N) acc -= bc * std::sqrt(n + 1.0) * in[(n + 1) * N + nt];
                    out[n * N + nt] = acc;
                }
        } else {
            for (unsigned n = 0; n < N; ++n)
                for (unsigned nt = 0; nt < N; ++nt) {
                    complex acc = 0.0;
                    if (nt > 0) acc += b * std::sqrt(double(nt)) * in[n * N + nt - 1];
                    if (nt + 1 < N) acc -= bc * std::sqrt(nt + 1.0) * in[n * N + nt + 1];
                    out[n * N + nt] = acc;
                }
        }
    }

    double magnitude(unsigned N) const override {
        return 2.0 * std::abs(beta_) * std::sqrt(double(N));
    }

private:
    complex beta_;
    Mode mode_;
};

class ThermalGenerator : public Generator {
public:
    explicit ThermalGenerator(double theta) : theta_(theta) {}

    void apply(const std::vector<complex>& in, std::vector<complex>& out,
               unsigned N) const override {
        // G = -theta (a at - a^dag at^dag), diagonal-stripe coupling in (n, nt)
        for (unsigned n = 0; n < N; ++n)
            for (unsigned nt = 0; nt < N; ++nt) {
                complex acc = 0.0;
                if (n + 1 < N && nt + 1 < N)
                    acc -= theta_ * std::sqrt((n + 1.0) * (nt + 1.0)) * in[(n + 1) * N + nt + 1];
                if (n > 0 && nt > 0)
                    acc += theta_ * std::sqrt(double(n) * double(nt)) * in[(n - 1) * N + nt - 1];
                out[n * N + nt] = acc;
            }
    }

    double magnitude(unsigned N) const override { return 2.0 * theta_ * N; }

private:
    double theta_;
};

// exp(G) acting on v by scaling-and-squaring of the truncated series: split
// into s substeps with ||G/s|| ~ 1, each substep summed until the term norm
// drops below 1e-16 of the accumulated norm.
void expm_action(const Generator& gen, std::vector<complex>& v, unsigned N) {
    const double mag = gen.magnitude(N);
    const unsigned substeps = std::max(1u, unsigned(std::ceil(mag)));
    std::vector<complex> term = v, next(v.size());
    for (unsigned s = 0; s < substeps; ++s) {
        term = v;
        const double ref = std::sqrt(vec_norm_sq(v));
        for (unsigned k = 1; k < 400; ++k) {
            gen.apply(term, next, N);
            const double inv = 1.0 / (double(k) * substeps);
            double term_norm_sq = 0.0;
            for (size_t i = 0; i < v.size(); ++i) {
                next[i] *= inv;
                v[i] += next[i];
                term_norm_sq += std::norm(next[i]);
            }
            term.swap(next);
            if (std::sqrt(term_norm_sq) < 1e-16 * ref) break;
        }
    }
}

TwoModeState apply_stage(const Generator& gen, const TwoModeState& state,
                         double tail_tolerance) {
    TwoModeState out = state;
    expm_action(gen, out.amplitudes, out.cutoff);
    out.tail_mass = out.shell_mass();
    if (out.tail_mass > tail_tolerance)
        throw CutoffError(state.cutoff * 2,
                          "cutoff too small: tail mass " + std::to_string(out.tail_mass) +
                              " exceeds tolerance; suggest cutoff " +
                              std::to_string(state.cutoff * 2));
    return out;
}

}  // namespace

TwoModeState TwoModeState::vacuum(unsigned cutoff) {
    if (cutoff < 2)
        throw ValidationError("cutoff", "must be >= 2");
    TwoModeState s;
    s.cutoff = cutoff;
    s.amplitudes.assign(size_t(cutoff) * cutoff, complex{0.0, 0.0});
    s.amplitudes[0] = 1.0;
    return s;
}

double TwoModeState::norm_squared() const { return vec_norm_sq(amplitudes); }

double TwoModeState::shell_mass() const {
    double s = 0.0;
    for (unsigned n = 0; n < cutoff; ++n)
        for (unsigned nt = 0; nt < cutoff; ++nt)
            if (n >= cutoff - 2 || nt >= cutoff - 2) s += std::norm(at(n, nt));
    return s;
}

std::pair<std::vector<complex>, std::vector<complex>> ladder_matrices(unsigned n) {
    if (n < 2)
        throw ValidationError("N", "ladder_matrices requires N >= 2");
    std::vector<complex> a(size_t(n) * n, complex{0.0, 0.0}), ad(size_t(n) * n, complex{0.0, 0.0});
    for (unsigned k = 1; k < n; ++k) {
        a[(k - 1) * n + k] = std::sqrt(double(k));   // a|k> = sqrt(k)|k-1>
        ad[k * n + k - 1] = std::sqrt(double(k));
    }
    return {a, ad};
}

TwoModeState apply_displacement(complex beta, const TwoModeState& state, Mode mode,
                                double tail_tolerance) {
    if (beta == complex{0.0, 0.0}) return state;
    return apply_stage(DisplacementGenerator(beta, mode), state, tail_tolerance);
}

TwoModeState apply_thermal(double theta, const TwoModeState& state, double tail_tolerance) {
    if (theta < 0.0 || !std::isfinite(theta))
        throw ValidationError("theta", "must be >= 0 and finite");
    if (theta == 0.0) return state;
    return apply_stage(ThermalGenerator(theta), state, tail_tolerance);
}

TwoModeState build_state(const StateSpec& spec, unsigned cutoff, double tail_tolerance) {
    spec.validate();
    if (cutoff < 8)
        throw ValidationError("cutoff", "must be >= 8");
    TwoModeState s = TwoModeState::vacuum(cutoff);
    s = apply_thermal(spec.theta1(), s, tail_tolerance);
    s = apply_displacement(spec.alpha, s, Mode::physical, tail_tolerance);
    s = apply_displacement(std::conj(spec.alpha), s, Mode::tilde, tail_tolerance);
    s = apply_thermal(spec.theta2(), s, tail_tolerance);
    return s;
}

TwoModeState evolve(const TwoModeState& state, double t, const OscillatorConfig& osc) {
    TwoModeState out = state;
    const unsigned N = state.cutoff;
    for (unsigned n = 0; n < N; ++n)
        for (unsigned nt = 0; nt < N; ++nt)
            out.at(n, nt) *= std::polar(1.0, -osc.omega * t * (double(n) - double(nt)));
    return out;
}

ReducedDensity reduced_density(const TwoModeState& state) {
    const unsigned N = state.cutoff;
    ReducedDensity rho;
    rho.cutoff = N;
    rho.matrix.assign(size_t(N) * N, complex{0.0, 0.0});
    for (unsigned m = 0; m < N; ++m)
        for (unsigned n = 0; n <= m; ++n) {
            complex acc = 0.0;
            for (unsigned nt = 0; nt < N; ++nt)
                acc += state.at(m, nt) * std::conj(state.at(n, nt));
            rho.at(m, n) = acc;
            rho.at(n, m) = std::conj(acc);
        }
    return rho;
}

double ReducedDensity::trace() const {
    double s = 0.0;
    for (unsigned m = 0; m < cutoff; ++m) s += at(m, m).real();
    return s;
}

double ReducedDensity::purity() const {
    double s = 0.0;
    for (const auto& c : matrix) s += std::norm(c);
    return s;
}

double ReducedDensity::hermiticity_defect() const {
    double d = 0.0;
    for (unsigned m = 0; m < cutoff; ++m)
        for (unsigned n = 0; n < cutoff; ++n)
            d = std::max(d, std::abs(at(m, n) - std::conj(at(n, m))));
    return d;
}

double ReducedDensity::min_eigenvalue() const {
    Eigen::MatrixXcd h(cutoff, cutoff);
    for (unsigned m = 0; m < cutoff; ++m)
        for (unsigned n = 0; n < cutoff; ++n) h(m, n) = at(m, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

closed_form::MomentsReport oracle_observables(const ReducedDensity& rho,
                                              const OscillatorConfig& osc) {
    const unsigned N = rho.cutoff;
    complex tr_a = 0.0, tr_a2 = 0.0;
    double n_mean = 0.0, n2_mean = 0.0;
    for (unsigned m = 0; m < N; ++m) {
        const double pm = rho.at(m, m).real();
        n_mean += m * pm;
        n2_mean += double(m) * m * pm;
        if (m >= 1) tr_a += rho.at(m, m - 1) * std::sqrt(double(m));
        if (m >= 2) tr_a2 += rho.at(m, m - 2) * std::sqrt(double(m) * (m - 1.0));
    }
    const double xs = osc.x_scale(), ps = osc.p_scale();
    closed_form::MomentsReport r;
    r.x_mean = xs * 2.0 * tr_a.real();
    r.p_mean = ps * 2.0 * tr_a.imag();
    r.x_var = xs * xs * (2.0 * tr_a2.real() + 2.0 * n_mean + 1.0) - r.x_mean * r.x_mean;
    r.p_var = ps * ps * (2.0 * n_mean + 1.0 - 2.0 * tr_a2.real()) - r.p_mean * r.p_mean;
    r.n_mean = n_mean;
    r.n_var = n2_mean - n_mean * n_mean;
    r.uncertainty_product = std::sqrt(r.x_var * r.p_var);
    r.purity = rho.purity();
    return r;
}

double oracle_position_density(const ReducedDensity& rho, double x,
                               const OscillatorConfig& osc) {
    return oracle_density_element(rho, x, x, osc).real();
}

complex oracle_density_element(const ReducedDensity& rho, double x_prime, double x,
                               const OscillatorConfig& osc) {
    const unsigned N = rho.cutoff;
    const std::vector<double> psi_x = number_state_wavefunctions(N - 1, x, osc);
    const std::vector<double> psi_xp = number_state_wavefunctions(N - 1, x_prime, osc);
    complex acc = 0.0;
    for (unsigned m = 0; m < N; ++m)
        for (unsigned n = 0; n < N; ++n) acc += rho.at(m, n) * psi_x[m] * psi_xp[n];
    return acc;
}

double oracle_momentum_density(const ReducedDensity& rho, double p,
                               const OscillatorConfig& osc) {
    // phi_n(p) = (-i)^n g_n(p) with g_n real, same recurrence as <x|n> at
    // momentum scale sqrt(m hbar omega).
    const unsigned N = rho.cutoff;
    const double scale = std::sqrt(osc.mass * osc.hbar * osc.omega);
    const double eta = p / scale;
    std::vector<double> g(N);
    g[0] = std::pow(std::numbers::pi * osc.mass * osc.hbar * osc.omega, -0.25) *
           std::exp(-eta * eta / 2.0);
    if (N > 1) g[1] = std::sqrt(2.0) * eta * g[0];
    for (unsigned k = 1; k + 1 < N; ++k)
        g[k + 1] = std::sqrt(2.0 / (k + 1.0)) * eta * g[k] -
                   std::sqrt(double(k) / (k + 1.0)) * g[k - 1];
    complex acc = 0.0;
    static const complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (unsigned m = 0; m < N; ++m)
        for (unsigned n = 0; n < N; ++n)
            acc += rho.at(m, n) * i_pow[(4 + n % 4 - m % 4) % 4] * g[m] * g[n];
    return acc.real();
}

std::vector<double> oracle_number_distribution(const ReducedDensity& rho, unsigned n_max) {
    std::vector<double> p(std::min(n_max + 1, rho.cutoff));
    for (unsigned n = 0; n < p.size(); ++n) p[n] = rho.at(n, n).real();
    return p;
}

unsigned choose_cutoff(const StateSpec& spec, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ValidationError("epsilon", "must be in (0, 1)");
    const auto [mu, var] = closed_form::number_moments(spec);
    unsigned n = std::max(16u, unsigned(std::ceil(mu + 10.0 * std::sqrt(var) + 10.0)));
    // The moment heuristic undershoots for slowly decaying number tails, so
    // grow N until the predicted mass in the top-2 shells of both modes
    // (twice the physical tail beyond N-2) clears the budget.
    double cum = 0.0;
    unsigned k = 0;
    for (; k + 3 <= 2048; ++k) {
        cum += closed_form::number_distribution(k, spec);
        if (1.0 - cum < epsilon / 4.0) break;
    }
    n = std::max(n, k + 3);
    if (n > 256)
        throw CutoffError(n, "parameters require cutoff " + std::to_string(n) +
                                 " > 256, unsupported");
    return n;
}

unsigned default_cutoff() {
    if (const char* env = std::getenv("TCTS_DEFAULT_CUTOFF")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 8 && v <= 1024) return unsigned(v);
    }
    return 64;
}

}  // namespace fock_oracle
}  // namespace tcts
