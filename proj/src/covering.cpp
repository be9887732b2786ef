#include "thetacover/covering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "thetacover/error.hpp"
#include "thetacover/polynomial.hpp"
#include "thetacover/quadrature.hpp"

namespace thetacover {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Keeps a homogeneous pair away from overflow/underflow during long products.
void rescale(Projective& p)
{
    const double s = std::max(std::abs(p.num), std::abs(p.den));
    if (s > 1e100 || (s > 0.0 && s < 1e-100)) {
        p.num /= s;
        p.den /= s;
    }
}

std::string violations_text(const LatticeReport& report)
{
    std::string out;
    for (const Violation& v : report.violations) {
        out += " [" + v.clause + "] " + v.message;
    }
    return out;
}

} // namespace

Extended Projective::value() const
{
    if (den == Complex(0.0)) {
        return Extended::infinity();
    }
    return num / den;
}

// ---------------------------------------------------------------------------
// Half-plane cover

HalfPlaneCover::HalfPlaneCover(HalfPlaneDivisor divisor, const SurfaceSpec& surface, long m)
    : divisor_(std::move(divisor)), surface_(surface), theta_(surface.T()), m_(m)
{
    choose_reference_point();
}

HalfPlaneCover HalfPlaneCover::create(const HalfPlaneDivisor& divisor, const SurfaceSpec& surface)
{
    const HalfPlaneDivisor canonical = canonicalize(divisor, surface);
    const LatticeReport report = validate_halfplane(canonical, surface);
    if (!report.valid) {
        throw ConstructionError("half-plane divisor is invalid:" + violations_text(report));
    }
    return HalfPlaneCover(canonical, surface, report.m);
}

HalfPlaneCover HalfPlaneCover::create_unchecked(const HalfPlaneDivisor& divisor, const SurfaceSpec& surface)
{
    if (divisor.zeros.size() != divisor.poles.size()) {
        throw ConstructionError("half-plane divisor needs as many poles as zeros");
    }
    const HalfPlaneDivisor canonical = canonicalize(divisor, surface);
    const LatticeReport report = validate_halfplane(canonical, surface);
    return HalfPlaneCover(canonical, surface, report.m);
}

Projective HalfPlaneCover::raw(Complex x) const
{
    Projective p{std::exp(Complex(0.0, -2.0 * kPi * static_cast<double>(m_)) * x), 1.0};
    for (std::size_t j = 0; j < divisor_.zeros.size(); ++j) {
        p.num *= theta1(x - divisor_.zeros[j], theta_);
        p.den *= theta1(x - divisor_.poles[j], theta_);
        rescale(p);
    }
    return p;
}

Projective HalfPlaneCover::evaluate_projective(Complex x) const
{
    Projective p = raw(x);
    p.num *= scale_;
    return p;
}

void HalfPlaneCover::choose_reference_point()
{
    const double T = surface_.T();
    struct Entry {
        double y;
        bool zero;
    };
    std::vector<Entry> oval;
    for (const Complex& z : divisor_.zeros)
        if (oval_index(z) == 0) oval.push_back({z.imag(), true});
    for (const Complex& p : divisor_.poles)
        if (oval_index(p) == 0) oval.push_back({p.imag(), false});
    std::sort(oval.begin(), oval.end(), [](const Entry& a, const Entry& b) { return a.y < b.y; });

    // Derivative of log h along the oval; Im > 0 means the interior is
    // mapped to the upper half-plane once h(v) is normalized to 1.
    auto log_slope = [&](Complex v) {
        Complex eta(0.0, -2.0 * kPi * static_cast<double>(m_));
        for (std::size_t j = 0; j < divisor_.zeros.size(); ++j) {
            eta += theta1_logderiv(v - divisor_.zeros[j], theta_);
            eta -= theta1_logderiv(v - divisor_.poles[j], theta_);
        }
        return eta;
    };

    std::vector<Complex> candidates;
    const std::size_t n = oval.size();
    // Arcs running upward from a pole to a zero first, then the others.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < n; ++i) {
            const Entry& a = oval[i];
            const Entry& b = oval[(i + 1) % n];
            const bool pole_to_zero = !a.zero && b.zero;
            if (pole_to_zero != (pass == 0)) continue;
            const double top = (i + 1 == n) ? b.y + T : b.y;
            candidates.push_back(canonical_height(Complex(0.0, 0.5 * (a.y + top)), T));
        }
    }
    if (candidates.empty()) {
        candidates.push_back(Complex(0.0, 0.5 * T));
    }
    v_ = candidates.front();
    for (const Complex& v : candidates) {
        try {
            if (log_slope(v).imag() > 0.0) {
                v_ = v;
                break;
            }
        } catch (const PoleProximity&) {
        }
    }
    const Extended hv = raw(v_).value();
    if (!hv.is_infinite() && hv.value().real() != 0.0 && std::isfinite(hv.value().real())) {
        scale_ = 1.0 / hv.value().real();
    }
}

// ---------------------------------------------------------------------------
// Disc cover

DiscCover::DiscCover(DiscDivisor divisor, const SurfaceSpec& surface, Complex phase)
    : divisor_(std::move(divisor)), surface_(surface), theta_(surface.T()), phase_(phase)
{
    if (std::abs(std::abs(phase_) - 1.0) > 1e-12) {
        throw InvalidArgument("disc cover phase must be unimodular");
    }
}

DiscCover DiscCover::create(const DiscDivisor& divisor, const SurfaceSpec& surface, Complex phase)
{
    const DiscDivisor canonical = canonicalize(divisor, surface);
    const LatticeReport report = validate_disc(canonical, surface);
    if (!report.valid) {
        throw ConstructionError("disc divisor is invalid:" + violations_text(report));
    }
    return DiscCover(canonical, surface, phase);
}

DiscCover DiscCover::create_unchecked(const DiscDivisor& divisor, const SurfaceSpec& surface,
                                      Complex phase)
{
    return DiscCover(canonicalize(divisor, surface), surface, phase);
}

Projective DiscCover::evaluate_projective(Complex x) const
{
    Projective p{phase_, 1.0};
    for (const Complex& z : divisor_.zeros) {
        p.num *= theta1(x - z, theta_);
        p.den *= theta1(x + std::conj(z), theta_);
        rescale(p);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Classical covers

RationalCover RationalCover::create(const ClassicalDivisor& divisor, double scale)
{
    ClassicalDivisor d = ClassicalDivisor::make(divisor.zeros, divisor.poles);
    const LatticeReport report = validate_classical(d);
    if (!report.valid) {
        throw ConstructionError("classical divisor is invalid:" + violations_text(report));
    }
    if (!(scale != 0.0) || !std::isfinite(scale)) {
        throw InvalidArgument("rational cover scale must be finite and nonzero");
    }
    const double fixed = std::abs(scale) * static_cast<double>(d.scale_sign);
    return RationalCover(std::move(d), fixed);
}

Projective RationalCover::evaluate_projective(Complex u) const
{
    Projective p{scale_, 1.0};
    for (std::size_t j = 0; j < divisor_.zeros.size(); ++j) {
        p.num *= u - divisor_.zeros[j];
        p.den *= u - divisor_.poles[j];
        rescale(p);
    }
    return p;
}

Extended RationalCover::evaluate(Extended u) const
{
    if (u.is_infinite()) {
        return Complex(scale_, 0.0);
    }
    return evaluate(u.value());
}

BlaschkeCover BlaschkeCover::create(std::vector<Complex> zeros, Complex phase)
{
    for (const Complex& a : zeros) {
        if (!(std::abs(a) < 1.0)) {
            std::ostringstream os;
            os << "Blaschke zero " << a << " is not strictly inside the unit disc";
            throw ConstructionError(os.str());
        }
    }
    if (std::abs(std::abs(phase) - 1.0) > 1e-12) {
        throw InvalidArgument("Blaschke phase must be unimodular");
    }
    return BlaschkeCover(std::move(zeros), phase);
}

Projective BlaschkeCover::evaluate_projective(Complex w) const
{
    Projective p{phase_, 1.0};
    for (const Complex& a : zeros_) {
        p.num *= w - a;
        p.den *= 1.0 - std::conj(a) * w;
        rescale(p);
    }
    return p;
}

Extended BlaschkeCover::evaluate(Extended w) const
{
    if (!w.is_infinite()) {
        return evaluate(w.value());
    }
    Complex value = phase_;
    for (const Complex& a : zeros_) {
        if (a == Complex(0.0)) {
            return Extended::infinity();
        }
        value *= -1.0 / std::conj(a);
    }
    return value;
}

MapKind kind(const CoveringMap& map)
{
    return static_cast<MapKind>(map.index());
}

Extended evaluate(const CoveringMap& map, Complex x)
{
    return std::visit([&](const auto& m) { return m.evaluate(x); }, map);
}

Projective evaluate_projective(const CoveringMap& map, Complex x)
{
    return std::visit([&](const auto& m) { return m.evaluate_projective(x); }, map);
}

std::size_t degree(const CoveringMap& map)
{
    return std::visit([](const auto& m) { return m.degree(); }, map);
}

Extended mobius_l(Extended u)
{
    if (u.is_infinite()) {
        return Complex(1.0, 0.0);
    }
    return Projective{u.value() - kI, u.value() + kI}.value();
}

Extended mobius_l_inv(Extended w)
{
    if (w.is_infinite()) {
        return Complex(0.0, -1.0);
    }
    return Projective{kI * (1.0 + w.value()), 1.0 - w.value()}.value();
}

BlaschkeCover rational_to_blaschke(const RationalCover& map)
{
    const ClassicalDivisor& d = map.divisor();
    std::vector<Complex> zeros(d.zeros.begin(), d.zeros.end());
    std::vector<Complex> poles(d.poles.begin(), d.poles.end());
    std::vector<Complex> num = poly_from_roots(zeros);
    const std::vector<Complex> den = poly_from_roots(poles);
    for (std::size_t k = 0; k < num.size(); ++k) {
        num[k] = map.scale() * num[k] - kI * den[k];
    }
    const std::vector<Complex> preimages = polynomial_roots(num);

    std::vector<Complex> blaschke_zeros;
    blaschke_zeros.reserve(preimages.size());
    for (const Complex& u : preimages) {
        const Complex a = mobius_l(u).value();
        if (!(std::abs(a) < 1.0)) {
            std::ostringstream os;
            os.precision(17);
            os << "rational_to_blaschke: preimage of i at " << u
               << " is not in the upper half-plane (root finder residual "
               << std::abs(poly_eval(num, u)) << ")";
            throw NumericalFailure(os.str());
        }
        blaschke_zeros.push_back(a);
    }
    // Fix the rotation at w = 1, the image of u = infinity where R = scale.
    Complex phase = mobius_l(Complex(map.scale(), 0.0)).value();
    for (const Complex& a : blaschke_zeros) {
        phase *= (1.0 - std::conj(a)) / (1.0 - a);
    }
    phase /= std::abs(phase);
    return BlaschkeCover::create(std::move(blaschke_zeros), phase);
}

Complex strip_to_ring(Complex x, const SurfaceSpec& s)
{
    return std::exp(2.0 * kPi * x / s.T());
}

Complex ring_to_strip(Complex u, const SurfaceSpec& s)
{
    if (u == Complex(0.0)) {
        throw InvalidArgument("ring_to_strip: u = 0 has no preimage");
    }
    const double T = s.T();
    double arg = std::arg(u);
    if (arg < 0.0) {
        arg += 2.0 * kPi;
    }
    Complex x(T * std::log(std::abs(u)) / (2.0 * kPi), T * arg / (2.0 * kPi));
    return canonical_height(x, T);
}

Complex rho_coefficient(double T)
{
    return 1.0 / Complex(0.0, T);
}

// ---------------------------------------------------------------------------
// Differentials

EtaDifferential::EtaDifferential(std::vector<std::pair<Complex, Complex>> pairs, Complex kappa,
                                 const SurfaceSpec& surface)
    : pairs_(std::move(pairs)), kappa_(kappa), surface_(surface), theta_(surface.T())
{
}

Complex EtaDifferential::coefficient_unchecked(Complex x) const
{
    Complex f = kappa_;
    for (const auto& [z, p] : pairs_) {
        f += theta1_logderiv(x - z, theta_) - theta1_logderiv(x - p, theta_);
    }
    return f;
}

Complex EtaDifferential::operator()(Complex x) const
{
    if (distance_to_singularities(x) < kEtaPoleProximity) {
        std::ostringstream os;
        os << "eta differential evaluated within " << kEtaPoleProximity << " of a pole at " << x;
        throw PoleProximity(os.str());
    }
    return coefficient_unchecked(x);
}

std::vector<EtaDifferential::Singularity> EtaDifferential::singularities() const
{
    std::vector<Singularity> out;
    for (const auto& [z, p] : pairs_) {
        out.push_back({z, 1.0});
        out.push_back({p, -1.0});
    }
    return out;
}

double EtaDifferential::distance_to_singularities(Complex x) const
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [z, p] : pairs_) {
        best = std::min({best, lattice_distance(x - z, theta_.T()), lattice_distance(x - p, theta_.T())});
    }
    return best;
}

Complex eval_eta(const EtaDifferential& d, Complex x)
{
    return d(x);
}

EtaDifferential eta_h(const HalfPlaneCover& map)
{
    std::vector<std::pair<Complex, Complex>> pairs;
    const HalfPlaneDivisor& d = map.divisor();
    for (std::size_t j = 0; j < d.zeros.size(); ++j) {
        pairs.emplace_back(d.zeros[j], d.poles[j]);
    }
    return EtaDifferential(std::move(pairs), Complex(0.0, -2.0 * kPi * static_cast<double>(map.m())),
                           map.surface());
}

EtaDifferential eta_h(const DiscCover& map)
{
    std::vector<std::pair<Complex, Complex>> pairs;
    for (const Complex& z : map.divisor().zeros) {
        pairs.emplace_back(z, -std::conj(z));
    }
    return EtaDifferential(std::move(pairs), 0.0, map.surface());
}

EtaDifferential eta_h(const CoveringMap& map)
{
    if (const auto* h = std::get_if<HalfPlaneCover>(&map)) {
        return eta_h(*h);
    }
    if (const auto* h = std::get_if<DiscCover>(&map)) {
        return eta_h(*h);
    }
    throw InvalidArgument("eta_h is defined for annulus covers only");
}

EtaDifferential normalize_eta(const std::vector<std::pair<Complex, Complex>>& pairs, const SurfaceSpec& s)
{
    const double T = s.T();
    if (pairs.empty()) {
        return EtaDifferential({}, 0.0, s);
    }
    std::vector<double> heights;
    std::vector<double> abscissae;
    for (const auto& [z, p] : pairs) {
        if (lattice_distance(z - p, T) < kLatticePoleTolerance) {
            throw InvalidArgument("normalize_eta: zero and pole coincide modulo the lattice");
        }
        heights.insert(heights.end(), {z.imag(), p.imag()});
        abscissae.insert(abscissae.end(), {z.real(), p.real()});
    }
    const EtaDifferential base(pairs, 0.0, s);
    const Integrand f = [&base](Complex x) { return base.coefficient_unchecked(x); };

    // Loops through the widest free corridors; shifting a loop across a
    // simple pole changes only the imaginary part of its period.
    const double y = widest_gap_midpoint(heights, T);
    const double c = widest_gap_midpoint(abscissae, 1.0);
    const Complex horizontal = integrate(f, Contour::horizontal_cycle(y, c, true));
    const Complex vertical = integrate(f, Contour::vertical_cycle(c, y, T, true));

    // Re(P + kappa * omega) = 0 for omega = 1 (horizontal) and iT (vertical):
    // a real 2x2 system in (Re kappa, Im kappa).
    const Complex omega_h(1.0, 0.0);
    const Complex omega_v(0.0, T);
    const double a11 = omega_h.real(), a12 = -omega_h.imag();
    const double a21 = omega_v.real(), a22 = -omega_v.imag();
    const double b1 = -horizontal.real(), b2 = -vertical.real();
    const double det = a11 * a22 - a12 * a21;
    const Complex kappa((b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det);
    return EtaDifferential(pairs, kappa, s);
}

} // namespace thetacover
