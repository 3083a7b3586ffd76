// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles/oracles.hpp"
#include "ptthermo/ergotropy.hpp"
#include "ptthermo/experiments.hpp"
#include "ptthermo/thermo.hpp"
#include "test_support.hpp"

using namespace ptthermo;
using testing_support::params;
using testing_support::r_grid;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string num(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

// default bath (omega_c = 2, d_B = 15) and coupling unless stated otherwise
struct Setup {
    PTHamiltonian h;
    EnergyEigensystem e;
    BathSpec bath;
    CompositeSystem c;
    GeneralizedDensityMatrix rho0;
};

Setup setup(double r, InitialState init, double g = 0.5, double temperature = 10.0)
{
    PTHamiltonian h = build_pt_hamiltonian(params(r));
    EnergyEigensystem e = energy_eigensystem(h);
    BathSpec bath(2.0, 15, temperature);
    CompositeSystem c = build_composite(h, e, bath, g);
    GeneralizedDensityMatrix rho0 = initial_state(init, e);
    return {h, e, bath, c, rho0};
}

const std::vector<double>& default_grid()
{
    static const std::vector<double> t = uniform_grid(20.0, 400);
    return t;
}

Verdict basis_suite()
{
    double bio = 0, anti = 0, pseudo = 0, ladder = 0, energy = 0, eigen = 0;
    for (double r : r_grid()) {
        const PTHamiltonian h = build_pt_hamiltonian(params(r));
        const EnergyEigensystem e = energy_eigensystem(h);
        const FBasis b = f_basis(h);
        bio = std::max(bio, e.biorthonormality_residual());
        anti = std::max(anti, anticommutator_residual(h));
        pseudo = std::max(pseudo, e.pseudo_hermiticity_residual(h));
        for (double x : verify_ladder(h, b))
            ladder = std::max(ladder, x);
        const double expected = std::sqrt(h.kappa * (1.0 - r * r));
        energy = std::max(energy, std::abs(std::pow(b.f * b.f_prime, 0.25) - expected));
        eigen = std::max({eigen, (h.matrix * e.ket_Eplus - expected * e.ket_Eplus).norm(),
                          (h.matrix * e.ket_Eminus + expected * e.ket_Eminus).norm()});
    }
    const bool ok = bio < 1e-10 && anti < 1e-12 && pseudo < 1e-10 && ladder < 1e-12 &&
                    energy < 1e-12 && eigen < 1e-12;
    return {ok, "biorth " + num(bio) + ", {H,H+}-I " + num(anti) + ", pseudo " + num(pseudo) +
                    ", ladder " + num(ladder) + ", energy " + num(energy) + ", H|E>-E|E> " +
                    num(eigen)};
}

Verdict state_suite()
{
    std::mt19937_64 rng(20240601);
    double two_path = 0, lambda = 0, trace = 0;
    int count = 0;
    for (double r : r_grid()) {
        const EnergyEigensystem e = energy_eigensystem(build_pt_hamiltonian(params(r)));
        for (int trial = 0; trial < 1000; ++trial, ++count) {
            const CoefficientMatrix c = testing_support::random_coefficients(rng);
            const CMatrix projector = rho_g_projector_sum(c, e);
            two_path = std::max(two_path, max_abs(rho_g_closed_form(c, e.params) - projector));
            const LambdaPair closed = lambda_closed_form(c, e.params);
            const LambdaPair numeric = lambda_numeric(projector);
            lambda = std::max({lambda, std::abs(closed.plus - numeric.plus),
                               std::abs(closed.minus - numeric.minus)});
            trace = std::max(trace, std::abs(projector.trace() - 1.0));
        }
    }
    return {two_path < 1e-12 && lambda < 1e-10 && trace < 1e-10,
            std::to_string(count) + " states: closed-vs-projector " + num(two_path) +
                ", lambda " + num(lambda) + ", trace " + num(trace)};
}

Verdict ergotropy_anchors()
{
    double excited = 0, ground = 0, oracle_gap = 0;
    for (double r : r_grid()) {
        const PTHamiltonian h = build_pt_hamiltonian(params(r));
        const EnergyEigensystem e = energy_eigensystem(h);
        const double expected = 2.0 * std::sqrt(h.kappa * (1.0 - r * r));
        const auto ce = initial_coefficients(InitialState::Excited);
        const double w = ergotropy_closed_form(ce, params(r));
        excited = std::max(excited, std::abs(w - expected));
        oracle_gap = std::max(oracle_gap, std::abs(w - ergotropy_numeric(build_rho_g(ce, e), h).work));
        const auto cg = initial_coefficients(InitialState::Ground);
        ground = std::max(ground, std::abs(ergotropy_closed_form(cg, params(r))));
        oracle_gap =
            std::max(oracle_gap, std::abs(ergotropy_numeric(build_rho_g(cg, e), h).work));
    }
    const PTHamiltonian h0 = build_pt_hamiltonian(params(0.0));
    const auto cm = initial_coefficients(InitialState::Intermediate);
    const double w_mid = ergotropy_closed_form(cm, params(0.0));
    const double mid = std::abs(w_mid - std::sqrt(0.5) / 2);
    const double w_sqrt2 = ergotropy_closed_form(initial_coefficients(InitialState::Excited), params(0.0));
    const double sqrt2 = std::abs(w_sqrt2 - std::sqrt(2.0));
    const double herm = std::abs(w_mid - oracle::hermitian_ergotropy(
                                             h0.matrix, build_rho_g(cm, energy_eigensystem(h0)).matrix));
    return {excited < 1e-10 && sqrt2 < 1e-10 && ground < 1e-12 && mid < 1e-10 &&
                oracle_gap < 1e-10 && herm < 1e-10,
            "excited " + num(excited) + " (r=0: " + num(w_sqrt2) + "), ground " + num(ground) +
                ", intermediate " + num(mid) + ", vs passive-state oracle " +
                num(std::max(oracle_gap, herm))};
}

Verdict ordering()
{
    std::vector<double> w0;
    for (double r : {0.0, 0.5, 0.95}) {
        const Setup s = setup(r, InitialState::Excited);
        const std::vector<double> t0{0.0};
        const Trajectory traj = evolve(s.c, s.rho0, s.bath, t0);
        w0.push_back(ergotropy_evolved(traj.rho_g[0], s.e, s.h).numeric.work);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "W(0) = %.5f, %.5f, %.5f for r = 0, 0.5, 0.95", w0[0], w0[1],
                  w0[2]);
    return {w0[0] > w0[1] && w0[1] > w0[2], buf};
}

Verdict hermitian_oracle()
{
    const oracle::JaynesCummings jc(0.5, 2.0, 15, 10.0);
    double worst = 0;
    for (auto init : {InitialState::Excited, InitialState::Intermediate, InitialState::Ground}) {
        const Setup s = setup(0.0, init);
        const Trajectory traj = evolve(s.c, s.rho0, s.bath, default_grid());
        const oracle::Mat start = jc.initial(s.rho0.matrix);
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const oracle::Mat ref = oracle::trace_out_right(jc.propagate(start, traj.times[k]), 2, 15);
            worst = std::max(worst, max_abs(traj.rho_g[k] - ref));
        }
    }
    return {worst < 1e-9, "max |rho_G - rho_JC| over 3 states x 400 points " + num(worst)};
}

Verdict first_law()
{
    double worst = 0;
    for (double r : {0.0, 0.5, 0.95}) {
        const Setup s = setup(r, InitialState::Excited);
        const Trajectory traj = evolve(s.c, s.rho0, s.bath, default_grid());
        for (const auto& rec : thermo_series(s.c, s.h, s.bath, traj))
            worst = std::max(worst, std::abs(rec.first_law_residual));
    }
    return {worst < 1e-8, "max |dU - dW + dQ_B| " + num(worst)};
}

Verdict second_law()
{
    double min_sigma = 1e300, worst_ratio = 1e300;
    for (double r : {0.0, 0.5, 0.95}) {
        for (auto init : {InitialState::Excited, InitialState::Intermediate, InitialState::Ground}) {
            const Setup s = setup(r, init);
            const Trajectory traj = evolve(s.c, s.rho0, s.bath, default_grid());
            for (const auto& rec : thermo_series(s.c, s.h, s.bath, traj))
                min_sigma = std::min(min_sigma, rec.sigma);
            const std::vector<double> probe{0.05, 1.0};
            const Trajectory early = evolve(s.c, s.rho0, s.bath, probe);
            const double a = entropy_production(s.c, early, 0);
            const double b = entropy_production(s.c, early, 1);
            worst_ratio = std::min(worst_ratio, b / a);
        }
    }
    return {min_sigma >= -1e-10 && worst_ratio > 10.0,
            "min Sigma " + num(min_sigma) + ", min Sigma(1)/Sigma(0.05) " + num(worst_ratio)};
}

Verdict third_law()
{
    ScanSetup scan;
    scan.params = params(0.5);
    scan.g = 0.05;
    scan.initial = InitialState::Excited;
    scan.times = default_grid();
    const std::vector<double> temps{10.0, 1.0, 0.1, 1e-3};
    const auto table = third_law_scan(scan, temps);
    bool decreasing = true;
    std::string detail = "max S:";
    for (std::size_t i = 0; i < table.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " T=%g:%.6f", table[i].temperature, table[i].max_entropy);
        detail += buf;
        if (i > 0 && table[i].max_entropy > table[i - 1].max_entropy)
            decreasing = false;
    }
    const bool bound = table.back().max_entropy < tol::kThirdLawBound;
    detail += decreasing ? "; monotone" : "; NOT monotone";
    detail += bound ? "; below 0.05" : "; final value exceeds 0.05";
    return {decreasing && bound, detail};
}

Verdict revival()
{
    const Setup s = setup(0.0, InitialState::Excited);
    const Trajectory traj = evolve(s.c, s.rho0, s.bath, default_grid());
    const auto recs = thermo_series(s.c, s.h, s.bath, traj);
    const double w0 = recs.front().ergotropy;
    bool fallen = false;
    double low = 1e300, t_low = 0, best = 0, t1 = 0, t2 = 0;
    for (const auto& rec : recs) {
        if (!fallen && rec.ergotropy < 0.8 * w0)
            fallen = true;
        if (!fallen)
            continue;
        if (rec.ergotropy < low) {
            low = rec.ergotropy;
            t_low = rec.t;
        }
        if (rec.ergotropy - low > best) {
            best = rec.ergotropy - low;
            t1 = t_low;
            t2 = rec.t;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "largest rise %.4f between t1=%.3f and t2=%.3f", best, t1, t2);
    return {fallen && best > 0.05, buf};
}

Verdict eta_unitarity()
{
    double worst = 0;
    for (double r : {0.0, 0.5, 0.95}) {
        const Setup s = setup(r, InitialState::Excited);
        for (double t : {1.0, 5.0, 20.0})
            worst = std::max(worst, check_eta_unitarity(s.c, t));
    }
    return {worst < 1e-8, "max ||U'U - I||_F " + num(worst)};
}

Verdict determinism()
{
    const auto dir = testing_support::scratch_dir("acceptance_determinism");
    RunConfig a;
    a.r = 0.5;
    a.output_dir = (dir / "a").string();
    RunConfig b = a;
    b.output_dir = (dir / "b").string();
    cmd_open_ergotropy(a);
    cmd_open_ergotropy(b);
    const std::string x = testing_support::slurp(dir / "a" / "run.csv");
    const std::string y = testing_support::slurp(dir / "b" / "run.csv");
    std::filesystem::remove_all(dir);
    return {!x.empty() && x == y, std::to_string(x.size()) + " bytes, identical: " +
                                      (x == y ? "yes" : "no")};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"basis suite", basis_suite},
        {"state suite", state_suite},
        {"ergotropy anchors", ergotropy_anchors},
        {"initial ergotropy ordering", ordering},
        {"hermitian-limit oracle", hermitian_oracle},
        {"first law", first_law},
        {"second law", second_law},
        {"third law", third_law},
        {"non-markovian revival", revival},
        {"eta-unitarity", eta_unitarity},
        {"determinism", determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass)
            ++failures;
        std::printf("%s  %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
