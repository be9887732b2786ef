#include "thetacover/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "thetacover/error.hpp"

namespace thetacover {

namespace {

constexpr int kMaxGenerationAttempts = 10000;

double uniform01(std::mt19937_64& rng)
{
    // Fixed bit recipe so generated divisors do not depend on the standard
    // library's distribution implementation.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string describe(Complex x)
{
    std::ostringstream os;
    os.precision(17);
    os << x.real() << (x.imag() < 0 ? "-" : "+") << std::abs(x.imag()) << "i";
    return os.str();
}

void require_annulus(const SurfaceSpec& s, const char* what)
{
    if (!s.is_annulus()) {
        throw InvalidArgument(std::string(what) + " requires an annulus surface");
    }
}

struct OvalEntry {
    double height;
    bool zero;
};

// Appends violations for one oval's cyclically ordered entries.
void check_oval(std::vector<OvalEntry> entries, int oval, double T, std::vector<Violation>& out)
{
    const std::string name = "oval " + std::to_string(oval);
    const auto zeros = std::count_if(entries.begin(), entries.end(),
                                     [](const OvalEntry& e) { return e.zero; });
    const auto poles = static_cast<std::ptrdiff_t>(entries.size()) - zeros;
    if (zeros == 0 || poles == 0) {
        out.push_back({clause::oval_occupancy,
                       name + " must carry at least one zero and one pole (has " +
                           std::to_string(zeros) + " zeros, " + std::to_string(poles) + " poles)"});
        return;
    }
    std::sort(entries.begin(), entries.end(),
              [](const OvalEntry& a, const OvalEntry& b) { return a.height < b.height; });
    const std::size_t n = entries.size();
    for (std::size_t i = 0; i < n; ++i) {
        const OvalEntry& a = entries[i];
        const OvalEntry& b = entries[(i + 1) % n];
        const double gap = (i + 1 == n) ? b.height + T - a.height : b.height - a.height;
        if (gap < kOvalTolerance) {
            out.push_back({clause::coincident,
                           name + ": two points coincide at height " + std::to_string(a.height)});
            return;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (entries[i].zero == entries[(i + 1) % n].zero) {
            out.push_back({clause::alternation,
                           name + ": zeros and poles do not alternate near height " +
                               std::to_string(entries[i].height)});
            return;
        }
    }
}

void finish_lattice(LatticeReport& report, double tolerance, const char* lattice_clause,
                    const std::string& description)
{
    report.m = std::lround(report.condition_value);
    report.deviation = std::abs(report.condition_value - static_cast<double>(report.m));
    if (!(report.deviation <= tolerance)) {
        std::ostringstream os;
        os.precision(17);
        os << description << " = " << report.condition_value << " is not an integer (deviation "
           << report.deviation << ")";
        report.violations.push_back({lattice_clause, os.str()});
    }
    report.valid = report.violations.empty();
}

double min_cyclic_gap(std::vector<double> heights, double T)
{
    if (heights.size() < 2) {
        return T;
    }
    std::sort(heights.begin(), heights.end());
    double gap = heights.front() + T - heights.back();
    for (std::size_t i = 1; i < heights.size(); ++i) {
        gap = std::min(gap, heights[i] - heights[i - 1]);
    }
    return gap;
}

} // namespace

SurfaceSpec SurfaceSpec::disc()
{
    return SurfaceSpec(SurfaceKind::disc, 0.0);
}

SurfaceSpec SurfaceSpec::annulus(double T)
{
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw InvalidArgument("annulus modulus T must be positive and finite");
    }
    return SurfaceSpec(SurfaceKind::annulus, T);
}

SurfaceSpec SurfaceSpec::annulus_from_radius(double r)
{
    if (!(r > 1.0) || !std::isfinite(r)) {
        throw InvalidArgument("annulus radius r must exceed 1");
    }
    return annulus(std::numbers::pi / std::log(r));
}

double SurfaceSpec::T() const
{
    if (!is_annulus()) {
        throw InvalidArgument("the disc has no modulus T");
    }
    return T_;
}

double SurfaceSpec::radius() const
{
    return std::exp(std::numbers::pi / T());
}

std::vector<Complex> DiscDivisor::poles() const
{
    std::vector<Complex> out;
    out.reserve(zeros.size());
    for (const Complex& z : zeros) {
        out.push_back(-std::conj(z));
    }
    return out;
}

ClassicalDivisor ClassicalDivisor::make(std::vector<double> zeros, std::vector<double> poles)
{
    std::sort(zeros.begin(), zeros.end());
    std::sort(poles.begin(), poles.end());
    ClassicalDivisor d{std::move(zeros), std::move(poles), 1};
    d.scale_sign = orientation_sign(d.zeros, d.poles);
    return d;
}

bool LatticeReport::structurally_valid() const
{
    return std::all_of(violations.begin(), violations.end(), [](const Violation& v) {
        return v.clause == std::string(clause::lattice_halfplane) ||
               v.clause == std::string(clause::lattice_disc);
    });
}

bool LatticeReport::has_violation(const std::string& name) const
{
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.clause == name; });
}

std::optional<int> oval_index(Complex x, double tolerance)
{
    if (std::abs(x.real()) <= tolerance) {
        return 0;
    }
    if (std::abs(x.real() - 0.5) <= tolerance) {
        return 1;
    }
    return std::nullopt;
}

int orientation_sign(const std::vector<double>& zeros, const std::vector<double>& poles)
{
    if (zeros.empty() && poles.empty()) {
        return 1;
    }
    double top = -std::numeric_limits<double>::infinity();
    for (double v : zeros) top = std::max(top, v);
    for (double v : poles) top = std::max(top, v);
    // R is monotone on the real line; the sign of (log R)' right of every
    // point decides whether H is mapped to H or to -H.
    const double x = top + 1.0;
    double slope = 0.0;
    for (double z : zeros) slope += 1.0 / (x - z);
    for (double p : poles) slope -= 1.0 / (x - p);
    return slope >= 0.0 ? 1 : -1;
}

LatticeReport validate_halfplane(const HalfPlaneDivisor& d, const SurfaceSpec& s, double tolerance)
{
    require_annulus(s, "validate_halfplane");
    const double T = s.T();
    LatticeReport report;
    if (d.zeros.size() != d.poles.size() || d.zeros.size() < 2 || d.zeros.size() > kMaxDegree) {
        report.violations.push_back(
            {clause::count, "need equal numbers of zeros and poles, between 2 and 64 (got " +
                                std::to_string(d.zeros.size()) + " zeros, " +
                                std::to_string(d.poles.size()) + " poles)"});
    }

    std::vector<OvalEntry> ovals[2];
    auto collect = [&](const std::vector<Complex>& points, bool zero) {
        const char* kind = zero ? "zero" : "pole";
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Complex x = points[i];
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
                report.violations.push_back(
                    {clause::on_oval, std::string(kind) + " #" + std::to_string(i) + " is not finite"});
                continue;
            }
            const auto oval = oval_index(x);
            if (!oval) {
                report.violations.push_back({clause::on_oval, std::string(kind) + " #" +
                                                                  std::to_string(i) + " at " +
                                                                  describe(x) + " is off both ovals"});
                continue;
            }
            ovals[*oval].push_back({canonical_height(x, T).imag(), zero});
        }
    };
    collect(d.zeros, true);
    collect(d.poles, false);
    check_oval(ovals[0], 0, T, report.violations);
    check_oval(ovals[1], 1, T, report.violations);

    double sum = 0.0;
    for (const Complex& z : d.zeros) sum += z.imag();
    for (const Complex& p : d.poles) sum -= p.imag();
    report.condition_value = sum / T;
    finish_lattice(report, tolerance, clause::lattice_halfplane, "(1/iT) sum(z - p)");
    return report;
}

LatticeReport validate_disc(const DiscDivisor& d, const SurfaceSpec& s, double tolerance)
{
    require_annulus(s, "validate_disc");
    LatticeReport report;
    if (d.zeros.empty() || d.zeros.size() > kMaxDegree) {
        report.violations.push_back({clause::count, "need between 1 and 64 zeros (got " +
                                                        std::to_string(d.zeros.size()) + ")"});
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < d.zeros.size(); ++i) {
        const Complex z = d.zeros[i];
        const bool finite = std::isfinite(z.real()) && std::isfinite(z.imag());
        if (!finite || !(z.real() > kOvalTolerance && z.real() < 0.5 - kOvalTolerance)) {
            report.violations.push_back({clause::interior, "zero #" + std::to_string(i) + " at " +
                                                               describe(z) +
                                                               " is not strictly inside the strip"});
        }
        sum += z.real();
    }
    report.condition_value = 2.0 * sum;
    finish_lattice(report, tolerance, clause::lattice_disc, "2 Re sum(z)");
    return report;
}

LatticeReport validate_classical(const ClassicalDivisor& d)
{
    LatticeReport report;
    if (d.zeros.size() != d.poles.size() || d.zeros.empty() || d.zeros.size() > kMaxDegree) {
        report.violations.push_back(
            {clause::count, "need equal numbers of zeros and poles, between 1 and 64"});
    }
    std::vector<std::pair<double, bool>> merged;
    for (double z : d.zeros) merged.emplace_back(z, true);
    for (double p : d.poles) merged.emplace_back(p, false);
    for (const auto& [x, zero] : merged) {
        if (!std::isfinite(x)) {
            report.violations.push_back({clause::real_support, "non-finite point"});
            report.valid = false;
            return report;
        }
    }
    std::sort(merged.begin(), merged.end());
    for (std::size_t i = 1; i < merged.size(); ++i) {
        if (merged[i].first - merged[i - 1].first < kOvalTolerance) {
            report.violations.push_back({clause::coincident, "two points coincide at " +
                                                                 std::to_string(merged[i].first)});
            break;
        }
        if (merged[i].second == merged[i - 1].second) {
            report.violations.push_back({clause::alternation,
                                         "zeros and poles do not alternate near " +
                                             std::to_string(merged[i].first)});
            break;
        }
    }
    if (d.scale_sign != orientation_sign(d.zeros, d.poles)) {
        report.violations.push_back(
            {clause::orientation, "scale sign maps the upper half-plane to the lower one"});
    }
    report.valid = report.violations.empty();
    return report;
}

HalfPlaneDivisor canonicalize(const HalfPlaneDivisor& d, const SurfaceSpec& s)
{
    const double T = s.T();
    HalfPlaneDivisor out = d;
    for (Complex& z : out.zeros) z = canonical_height(z, T);
    for (Complex& p : out.poles) p = canonical_height(p, T);
    return out;
}

DiscDivisor canonicalize(const DiscDivisor& d, const SurfaceSpec& s)
{
    const double T = s.T();
    DiscDivisor out = d;
    for (Complex& z : out.zeros) z = canonical_height(z, T);
    return out;
}

HalfPlaneDivisor complete_divisor(HalfPlaneDivisor partial, std::size_t free_pole,
                                  const SurfaceSpec& s)
{
    require_annulus(s, "complete_divisor");
    if (free_pole >= partial.poles.size()) {
        throw InvalidArgument("complete_divisor: free pole index out of range");
    }
    const double T = s.T();
    double fixed = 0.0;
    for (const Complex& z : partial.zeros) fixed += z.imag();
    for (std::size_t j = 0; j < partial.poles.size(); ++j) {
        if (j != free_pole) fixed -= partial.poles[j].imag();
    }
    // (fixed - y) / T = m  =>  y = fixed - m T, m chosen nearest the guess.
    const double guess = partial.poles[free_pole].imag();
    const double m = std::nearbyint((fixed - guess) / T);
    partial.poles[free_pole].imag(fixed - m * T);

    const LatticeReport report = validate_halfplane(partial, s, 1e-12);
    if (!report.valid) {
        std::string why;
        for (const Violation& v : report.violations) why += " [" + v.clause + "] " + v.message;
        throw CompletionFailure("forced pole position breaks the divisor:" + why);
    }
    return partial;
}

DiscDivisor complete_divisor(DiscDivisor partial, std::size_t free_zero, const SurfaceSpec& s)
{
    require_annulus(s, "complete_divisor");
    if (free_zero >= partial.zeros.size()) {
        throw InvalidArgument("complete_divisor: free zero index out of range");
    }
    double fixed = 0.0;
    for (std::size_t j = 0; j < partial.zeros.size(); ++j) {
        if (j != free_zero) fixed += partial.zeros[j].real();
    }
    // 2 (fixed + x) = n  =>  x = n/2 - fixed.
    const double guess = partial.zeros[free_zero].real();
    const double centre = std::nearbyint(2.0 * (fixed + guess));
    std::optional<double> best;
    for (double n = centre - 2.0; n <= centre + 2.0; n += 1.0) {
        const double x = 0.5 * n - fixed;
        if (x < kOvalTolerance || x > 0.5 - kOvalTolerance) {
            continue;
        }
        if (!best || std::abs(x - guess) < std::abs(*best - guess)) {
            best = x;
        }
    }
    if (!best) {
        throw CompletionFailure("no admissible real part in (0, 1/2) satisfies 2 Re sum(z) in Z");
    }
    partial.zeros[free_zero].real(*best);
    const LatticeReport report = validate_disc(partial, s, 1e-12);
    if (!report.valid) {
        throw CompletionFailure("completed disc divisor fails validation");
    }
    return partial;
}

HalfPlaneDivisor random_halfplane_divisor(std::uint64_t seed, std::size_t n, const SurfaceSpec& s)
{
    require_annulus(s, "random_halfplane_divisor");
    if (n < 2 || n > kMaxDegree) {
        throw InvalidArgument("half-plane covers of the annulus need 2 <= N <= 64 (each oval "
                              "carries at least one zero and one pole)");
    }
    const double T = s.T();
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
        const std::size_t on_first = 1 + static_cast<std::size_t>(uniform01(rng) * double(n - 1));
        const std::size_t counts[2] = {on_first, n - on_first};
        const double slot = T / (2.0 * static_cast<double>(std::max(counts[0], counts[1])));

        HalfPlaneDivisor d;
        for (int oval = 0; oval < 2; ++oval) {
            const double re = oval == 0 ? 0.0 : 0.5;
            const std::size_t slots = 2 * counts[oval];
            const double width = T / static_cast<double>(slots);
            const double offset = uniform01(rng) * T;
            const bool zero_first = uniform01(rng) < 0.5;
            for (std::size_t j = 0; j < slots; ++j) {
                double y = offset + (static_cast<double>(j) + 0.25 + 0.5 * uniform01(rng)) * width;
                y -= T * std::floor(y / T);
                const bool zero = (j % 2 == 0) == zero_first;
                (zero ? d.zeros : d.poles).emplace_back(re, y);
            }
        }
        const std::size_t free_pole =
            static_cast<std::size_t>(uniform01(rng) * static_cast<double>(d.poles.size()));
        try {
            d = canonicalize(complete_divisor(d, free_pole, s), s);
        } catch (const CompletionFailure&) {
            continue;
        }
        bool separated = true;
        for (int oval = 0; oval < 2; ++oval) {
            std::vector<double> heights;
            for (const Complex& z : d.zeros)
                if (oval_index(z) == oval) heights.push_back(z.imag());
            for (const Complex& p : d.poles)
                if (oval_index(p) == oval) heights.push_back(p.imag());
            separated = separated && min_cyclic_gap(heights, T) >= 0.1 * slot;
        }
        if (separated) {
            return d;
        }
    }
    throw GenerationExhausted("random_halfplane_divisor: no admissible divisor found");
}

DiscDivisor random_disc_divisor(std::uint64_t seed, std::size_t n, const SurfaceSpec& s)
{
    require_annulus(s, "random_disc_divisor");
    if (n < 2 || n > kMaxDegree) {
        throw InvalidArgument("disc covers of the annulus need 2 <= N <= 64: for N = 1 the "
                              "lattice condition 2 Re z in Z has no solution with 0 < Re z < 1/2");
    }
    const double T = s.T();
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
        DiscDivisor d;
        for (std::size_t j = 0; j < n; ++j) {
            d.zeros.emplace_back(0.05 + 0.4 * uniform01(rng), T * uniform01(rng));
        }
        try {
            d = complete_divisor(d, n - 1, s);
        } catch (const CompletionFailure&) {
            continue;
        }
        const double re = d.zeros.back().real();
        if (re < 0.02 || re > 0.48) {
            continue;
        }
        bool separated = true;
        for (std::size_t i = 0; i < n && separated; ++i) {
            for (std::size_t j = i + 1; j < n && separated; ++j) {
                Complex delta = d.zeros[i] - d.zeros[j];
                delta = canonical_height(delta, T);
                const double dy = std::min(delta.imag(), T - delta.imag());
                separated = std::hypot(delta.real(), dy) >= 0.01;
            }
        }
        if (separated) {
            return canonicalize(d, s);
        }
    }
    throw GenerationExhausted("random_disc_divisor: no admissible divisor found");
}

ClassicalDivisor random_classical_divisor(std::uint64_t seed, std::size_t n)
{
    if (n < 1 || n > kMaxDegree) {
        throw InvalidArgument("classical covers need 1 <= N <= 64");
    }
    constexpr double kSpan = 8.0;
    std::mt19937_64 rng(seed);
    const std::size_t slots = 2 * n;
    const double width = kSpan / static_cast<double>(slots);
    const bool zero_first = uniform01(rng) < 0.5;
    std::vector<double> zeros, poles;
    for (std::size_t j = 0; j < slots; ++j) {
        const double x = -0.5 * kSpan + (static_cast<double>(j) + 0.2 + 0.6 * uniform01(rng)) * width;
        ((j % 2 == 0) == zero_first ? zeros : poles).push_back(x);
    }
    return ClassicalDivisor::make(std::move(zeros), std::move(poles));
}

AnyDivisor random_divisor(std::uint64_t seed, std::size_t n, DivisorTarget target,
                          const SurfaceSpec& s)
{
    switch (target) {
    case DivisorTarget::halfplane:
        return random_halfplane_divisor(seed, n, s);
    case DivisorTarget::disc:
        return random_disc_divisor(seed, n, s);
    case DivisorTarget::classical:
        return random_classical_divisor(seed, n);
    }
    throw InvalidArgument("random_divisor: unknown target");
}

} // namespace thetacover
