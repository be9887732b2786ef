// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "oracle/theta_oracle.hpp"
#include "thetacover/cli/commands.hpp"
#include "thetacover/covering.hpp"
#include "thetacover/verify.hpp"

using namespace thetacover;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string summary;
};

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;  // 0: no runtime bound
    std::function<Outcome()> run;
};

double rel(Complex a, Complex b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

double uniform(std::mt19937_64& rng, double a, double b)
{
    return std::uniform_real_distribution<double>(a, b)(rng);
}

// Random T in [0.5, 3] drawn from the seed so every divisor is reproducible.
SurfaceSpec surface_for(std::uint64_t seed)
{
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    return SurfaceSpec::annulus(uniform(rng, 0.5, 3.0));
}

Outcome theta_identities()
{
    std::mt19937_64 rng(1);
    double worst = 0.0;
    for (const double T : {0.5, 1.0, 3.0}) {
        const ThetaParams p(T);
        for (int k = 0; k < 1000; ++k) {
            const Complex x(uniform(rng, 0.0, 1.0), uniform(rng, 0.0, T));
            const Complex t = theta1(x, p);
            worst = std::max(worst, rel(theta1(-x, p), -t));
            worst = std::max(worst, rel(theta1(x + 1.0, p), -t));
            const Complex factor = -std::exp(kPi * T - Complex(0.0, 2.0 * kPi) * x);
            worst = std::max(worst, rel(theta1(x + Complex(0.0, T), p), factor * t));
        }
    }
    double oracle_err = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double T = uniform(rng, 0.5, 3.0);
        const Complex x(uniform(rng, 0.0, 1.0), uniform(rng, 0.0, T));
        oracle_err = std::max(oracle_err, rel(theta1(x, ThetaParams(T)), oracle::theta1(x, T, 1000, true)));
    }
    return {worst <= 1e-10 && oracle_err <= 1e-12,
            "identities " + sci(worst) + " (tol 1e-10), oracle " + sci(oracle_err) + " (tol 1e-12)"};
}

Outcome lattice_single_valued()
{
    double worst_valid = 0.0;
    double weakest_broken = INFINITY;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SurfaceSpec s = surface_for(seed);
        const double T = s.T();
        const std::size_t n = 2 + seed % 5;

        HalfPlaneDivisor hd = random_halfplane_divisor(seed, n, s);
        const CoveringMap h = HalfPlaneCover::create(hd, s);
        worst_valid = std::max({worst_valid, periodicity_defect(h, Complex(0.0, T)), periodicity_defect(h, 1.0)});
        hd.poles.back() += Complex(0.0, 0.1 * T);  // condition value moves by -0.1
        const CoveringMap hb = HalfPlaneCover::create_unchecked(hd, s);
        weakest_broken = std::min(weakest_broken, periodicity_defect(hb, Complex(0.0, T)));

        DiscDivisor dd = random_disc_divisor(seed, n, s);
        const CoveringMap d = DiscCover::create(dd, s);
        worst_valid = std::max({worst_valid, periodicity_defect(d, Complex(0.0, T)), periodicity_defect(d, 1.0)});
        Complex& z = dd.zeros.front();
        z += z.real() < 0.25 ? 0.05 : -0.05;  // condition value moves by 0.1
        const CoveringMap db = DiscCover::create_unchecked(dd, s);
        weakest_broken = std::min(weakest_broken, periodicity_defect(db, Complex(0.0, T)));
    }
    return {worst_valid <= 1e-9 && weakest_broken > 1e-3,
            "valid " + sci(worst_valid) + " (tol 1e-9), deviated min " + sci(weakest_broken) + " (need > 1e-3)"};
}

Outcome disc_covering()
{
    double boundary = 0.0;
    double interior = 0.0;
    int degree_failures = 0;
    int other_failures = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SurfaceSpec s = surface_for(seed);
        const std::size_t n = 2 + seed % 5;
        const DiscCover h = DiscCover::create(random_disc_divisor(seed, n, s), s);
        const VerificationReport r = boundary_check(h, 512, 1e-9);
        boundary = std::max({boundary, r.find("oval0.unimodular")->measured, r.find("oval1.unimodular")->measured});
        interior = std::max(interior, r.find("interior")->measured);
        if (!r.overall()) ++other_failures;
        if (boundary_winding(h) != static_cast<long>(n)) ++degree_failures;
    }
    return {boundary <= 1e-9 && interior < 1.0 && degree_failures == 0 && other_failures == 0,
            "max ||h|-1| " + sci(boundary) + " (tol 1e-9), min interior 1-|h| " + sci(1.0 - interior) +
                ", winding mismatches " + std::to_string(degree_failures)};
}

Outcome halfplane_covering()
{
    double boundary = 0.0;
    double interior = INFINITY;
    int degree_failures = 0;
    int other_failures = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SurfaceSpec s = surface_for(seed);
        const std::size_t n = 2 + seed % 5;
        const HalfPlaneCover h = HalfPlaneCover::create(random_halfplane_divisor(seed, n, s), s);
        const VerificationReport r = boundary_check(h, 512, 1e-9);
        boundary = std::max({boundary, r.find("oval0.real")->measured, r.find("oval1.real")->measured});
        interior = std::min(interior, r.find("interior")->measured);
        if (!r.overall()) ++other_failures;
        if (preimage_count(h) != static_cast<long>(n)) ++degree_failures;
    }
    return {boundary <= 1e-9 && interior > 0.0 && degree_failures == 0 && other_failures == 0,
            "max |Im h|/(1+|h|) " + sci(boundary) + " (tol 1e-9), min interior Im h " + sci(interior) +
                ", preimage mismatches " + std::to_string(degree_failures)};
}

Outcome reciprocity()
{
    std::mt19937_64 rng(5);
    double worst_i = 0.0;
    double worst_ii = 0.0;
    int failures = 0;
    for (int k = 0; k < 20; ++k) {
        const double T = uniform(rng, 0.5, 3.0);
        const SurfaceSpec s = SurfaceSpec::annulus(T);
        const Complex z(0.5 * (k % 2), uniform(rng, 0.0, T));
        const Complex p(0.5 * ((k / 2) % 2), uniform(rng, 0.0, T));
        const VerificationReport r = check_reciprocity_case_i(z, p, s);
        for (const Check& c : r.checks()) worst_i = std::max(worst_i, c.measured);
        if (!r.overall()) ++failures;
    }
    for (int k = 0; k < 20; ++k) {
        const double T = uniform(rng, 0.5, 3.0);
        const Complex z(uniform(rng, 0.02, 0.48), uniform(rng, 0.0, T));
        const VerificationReport r = check_reciprocity_case_ii(z, SurfaceSpec::annulus(T));
        for (const Check& c : r.checks()) worst_ii = std::max(worst_ii, c.measured);
        if (!r.overall()) ++failures;
    }
    return {failures == 0, "case (i) " + sci(worst_i) + ", case (ii) " + sci(worst_ii) + " (tol 1e-7)"};
}

Outcome classical_conversion()
{
    double composition = 0.0;
    double radius = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const RationalCover r = RationalCover::create(random_classical_divisor(seed, 1 + seed % 8));
        const VerificationReport rep = check_composition(r);
        composition = std::max(composition, rep.find("composition")->measured);
        radius = std::max(radius, rep.find("blaschke-zeros")->measured);
    }
    const BlaschkeCover worked = rational_to_blaschke(RationalCover::create(ClassicalDivisor::make({0.0}, {1.0}), -1.0));
    const double worked_err = std::abs(worked.zeros().at(0) - Complex(-0.2, -0.4));
    return {composition <= 1e-8 && radius < 1.0 && worked_err <= 1e-10,
            "composition " + sci(composition) + " (tol 1e-8), max |a| " + sci(radius) + ", worked zero " +
                sci(worked_err) + " (tol 1e-10)"};
}

Outcome eta_consistency()
{
    double worst = 0.0;
    int failures = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const SurfaceSpec s = surface_for(seed);
        const std::size_t n = 2 + seed % 5;
        for (const CoveringMap& map : {CoveringMap(HalfPlaneCover::create(random_halfplane_divisor(seed, n, s), s)),
                                       CoveringMap(DiscCover::create(random_disc_divisor(seed, n, s), s))}) {
            const VerificationReport r = check_eta(map, 1e-8);
            for (const Check& c : r.checks()) worst = std::max(worst, c.measured);
            if (!r.overall()) ++failures;
            if (kind(map) == MapKind::annulus_halfplane && r.find("period.B'=2pi i m") == nullptr) ++failures;
        }
    }
    return {failures == 0, "worst residue/period defect " + sci(worst) + " (tol 1e-8) over 100 maps"};
}

// ---------------------------------------------------------------------------
// Command-line contracts, exercised through the built executable.

int run(const std::string& args, const std::filesystem::path& out)
{
    const std::string cmd = std::string("\"") + CLI_BINARY + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Outcome cli_contracts()
{
    const auto dir = std::filesystem::temp_directory_path() / "thetacover_acceptance";
    std::filesystem::create_directories(dir);
    const auto sink = dir / "stdout.txt";
    const std::string fix = std::string(FIXTURE_DIR) + "/";

    int roundtrip_failures = 0;
    const char* targets[] = {"halfplane", "disc", "classical-rational", "classical-blaschke"};
    for (int seed = 0; seed < 100; ++seed) {
        const std::string target = targets[seed % 4];
        const auto file = dir / ("gen" + std::to_string(seed) + ".json");
        const int n = 2 + seed % 5;
        if (run("gen --seed " + std::to_string(seed) + " --n " + std::to_string(n) + " --target " + target, file) != 0 ||
            run("check \"" + file.string() + "\"", sink) != 0) {
            ++roundtrip_failures;
        }
    }

    bool identical = true;
    for (const char* name : {"valid_halfplane.json", "valid_disc.json", "classical_rational.json"}) {
        const auto a = dir / "a.ppm";
        const auto b = dir / "b.ppm";
        const std::string args = "portrait \"" + fix + name + "\" --width 96 --height 80 --out ";
        const bool ok = run(args + "\"" + a.string() + "\"", sink) == 0 && run(args + "\"" + b.string() + "\"", sink) == 0;
        identical = identical && ok && slurp(a) == slurp(b) && !slurp(a).empty();
    }

    struct Expect {
        std::string args;
        int code;
    };
    const Expect expectations[] = {
        {"check \"" + fix + "valid_halfplane.json\"", 0},
        {"check \"" + fix + "valid_disc.json\"", 0},
        {"check \"" + fix + "classical_rational.json\"", 0},
        {"check \"" + fix + "classical_blaschke.json\"", 0},
        {"check \"" + fix + "invalid_condd.json\"", 1},
        {"check \"" + fix + "perturbed_halfplane.json\"", 1},
        {"check \"" + fix + "oval_empty_halfplane.json\"", 1},
        {"check \"" + fix + "truncated.json\"", 2},
        {"check \"" + fix + "wrong_schema.json\"", 2},
        {"check \"" + fix + "missing.json\"", 2},
        {"verify \"" + fix + "valid_halfplane.json\"", 0},
        {"verify \"" + fix + "perturbed_halfplane.json\"", 1},
        {"eval \"" + fix + "valid_disc.json\" --point 0.25,0.5", 0},
        {"eval \"" + fix + "truncated.json\" --point 0.25,0.5", 2},
        {"gen --seed 3 --n 1 --target disc", 1},
        {"frobnicate", 2},
    };
    int code_failures = 0;
    std::string first_mismatch;
    for (const Expect& e : expectations) {
        const int got = run(e.args, sink);
        if (got != e.code) {
            if (first_mismatch.empty()) first_mismatch = " [" + e.args + " -> " + std::to_string(got) + "]";
            ++code_failures;
        }
    }
    std::filesystem::remove_all(dir);
    return {roundtrip_failures == 0 && identical && code_failures == 0,
            "gen->check failures " + std::to_string(roundtrip_failures) + "/100, portraits " +
                (identical ? "identical" : "differ") + ", exit-code mismatches " + std::to_string(code_failures) +
                first_mismatch};
}

} // namespace

int main()
{
    const Criterion criteria[] = {
        {1, "theta identities and series oracle", 2.0, theta_identities},
        {2, "lattice condition <=> single-valuedness", 30.0, lattice_single_valued},
        {3, "disc cover: boundary, interior, degree", 0.0, disc_covering},
        {4, "half-plane cover: boundary, interior, preimages", 0.0, halfplane_covering},
        {5, "reciprocity on the torus", 60.0, reciprocity},
        {6, "real-rational to Blaschke conversion", 0.0, classical_conversion},
        {7, "eta_h residues and periods", 0.0, eta_consistency},
        {8, "command-line determinism and exit codes", 0.0, cli_contracts},
    };
    bool all = true;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0 && seconds >= c.budget_seconds) {
            o.pass = false;
            o.summary += ", over the " + sci(c.budget_seconds) + " s budget";
        }
        all = all && o.pass;
        char time[32];
        std::snprintf(time, sizeof time, "%.2fs", seconds);
        std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  ["
                  << o.summary << "; " << time << "]\n";
    }
    std::cout << (all ? "all criteria pass" : "some criteria FAIL") << "\n";
    return all ? 0 : 1;
}
