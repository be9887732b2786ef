#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracle/theta_oracle.hpp"
#include "thetacover/covering.hpp"
#include "thetacover/error.hpp"
#include "thetacover/quadrature.hpp"

using namespace thetacover;

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};
const SurfaceSpec kT1 = SurfaceSpec::annulus(1.0);

HalfPlaneDivisor standard_halfplane()
{
    return {{Complex(0.0, 0.1), Complex(0.5, 0.5)}, {Complex(0.0, 0.4), Complex(0.5, 0.2)}};
}

DiscDivisor standard_disc()
{
    return {{Complex(0.1, 0.2), Complex(0.4, 0.7)}};
}

Complex value(const Extended& e)
{
    EXPECT_FALSE(e.is_infinite());
    return e.value();
}

double rel(Complex a, Complex b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

} // namespace

// ---------------------------------------------------------------------------
// Half-plane cover

TEST(HalfPlaneCover, ZeroPoleAndNormalization)
{
    const HalfPlaneCover h = HalfPlaneCover::create(standard_halfplane(), kT1);
    EXPECT_EQ(value(h.evaluate(Complex(0.0, 0.1))), Complex(0.0));
    EXPECT_TRUE(h.evaluate(Complex(0.0, 0.4)).is_infinite());
    EXPECT_TRUE(h.evaluate(Complex(0.5, 1.2)).is_infinite());
    EXPECT_LE(std::abs(value(h.evaluate(h.reference_point())) - 1.0), 1e-14);
    EXPECT_EQ(h.m(), 0);
    EXPECT_EQ(h.degree(), 2u);
}

TEST(HalfPlaneCover, ReferencePointOnOvalAwayFromDivisor)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const HalfPlaneCover h = HalfPlaneCover::create(random_halfplane_divisor(seed, 2 + seed % 5, kT1), kT1);
        const Complex v = h.reference_point();
        ASSERT_TRUE(oval_index(v).has_value());
        for (const Complex& z : h.divisor().zeros) ASSERT_GT(lattice_distance(v - z, 1.0), 1e-6);
        for (const Complex& p : h.divisor().poles) ASSERT_GT(lattice_distance(v - p, 1.0), 1e-6);
        ASSERT_LE(std::abs(value(h.evaluate(v)) - 1.0), 1e-12);
    }
}

TEST(HalfPlaneCover, MatchesHighPrecisionProduct)
{
    const HalfPlaneDivisor d = standard_halfplane();
    const HalfPlaneCover h = HalfPlaneCover::create(d, kT1);
    auto product = [&](Complex x) {
        oracle::Cplx g(1);
        for (std::size_t j = 0; j < d.zeros.size(); ++j) {
            g *= oracle::theta1_mp(x - d.zeros[j], 1.0) / oracle::theta1_mp(x - d.poles[j], 1.0);
        }
        return g;  // m = 0
    };
    const oracle::Cplx gv = product(h.reference_point());
    const Complex want = oracle::to_double(product(Complex(0.25, 0.25)) / gv.real());
    EXPECT_LE(rel(value(h.evaluate(Complex(0.25, 0.25))), want), 1e-12);
    EXPECT_GT(want.imag(), 0.0);
}

TEST(HalfPlaneCover, ReflectionSymmetry)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const HalfPlaneCover h = HalfPlaneCover::create(random_halfplane_divisor(8, 4, kT1), kT1);
    for (int k = 0; k < 200; ++k) {
        const Complex x(0.5 * u(rng), u(rng));
        const Complex a = value(h.evaluate(-std::conj(x)));
        const Complex b = std::conj(value(h.evaluate(x)));
        ASSERT_LE(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(b)));
    }
}

TEST(HalfPlaneCover, InteriorMapsToUpperHalfPlane)
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SurfaceSpec s = SurfaceSpec::annulus(0.5 + 0.1 * seed);
        const HalfPlaneCover h = HalfPlaneCover::create(random_halfplane_divisor(seed, 2 + seed % 4, s), s);
        for (int k = 0; k < 50; ++k) {
            const Complex x(0.01 + 0.48 * u(rng), s.T() * u(rng));
            ASSERT_GT(value(h.evaluate(x)).imag(), 0.0) << "seed " << seed << " x " << x;
        }
    }
}

TEST(HalfPlaneCover, SingleValuedExactlyWhenConditionHolds)
{
    const HalfPlaneCover h = HalfPlaneCover::create(standard_halfplane(), kT1);
    HalfPlaneDivisor broken = standard_halfplane();
    broken.poles[1] += Complex(0.0, 0.1);  // condition value -0.1
    const HalfPlaneCover b = HalfPlaneCover::create_unchecked(broken, kT1);
    double good = 0.0;
    double bad = 0.0;
    for (int k = 0; k < 64; ++k) {
        const Complex x(0.05 + 0.4 * ((k * 37) % 64) / 64.0, (k + 0.5) / 64.0);
        const Complex hx = value(h.evaluate(x));
        good = std::max(good, std::abs(value(h.evaluate(x + kI)) - hx) / (1.0 + std::abs(hx)));
        good = std::max(good, std::abs(value(h.evaluate(x + 1.0)) - hx) / (1.0 + std::abs(hx)));
        const Complex bx = value(b.evaluate(x));
        bad = std::max(bad, std::abs(value(b.evaluate(x + kI)) - bx) / (1.0 + std::abs(bx)));
    }
    EXPECT_LE(good, 1e-9);
    EXPECT_GE(bad, 1e-3);
}

TEST(HalfPlaneCover, InvalidDivisorRefused)
{
    HalfPlaneDivisor broken = standard_halfplane();
    broken.poles[1] += Complex(0.0, 0.1);
    EXPECT_THROW(HalfPlaneCover::create(broken, kT1), ConstructionError);
    EXPECT_THROW(HalfPlaneCover::create({{Complex(0.0, 0.1)}, {}}, kT1), ConstructionError);
}

// ---------------------------------------------------------------------------
// Disc cover

TEST(DiscCover, ZerosAndBoundary)
{
    const DiscCover h = DiscCover::create(standard_disc(), kT1);
    EXPECT_EQ(value(h.evaluate(Complex(0.1, 0.2))), Complex(0.0));
    EXPECT_TRUE(h.evaluate(Complex(-0.1, 0.2)).is_infinite());
    for (int k = 0; k < 64; ++k) {
        EXPECT_NEAR(std::abs(value(h.evaluate(Complex(0.0, k / 64.0)))), 1.0, 1e-9);
        EXPECT_NEAR(std::abs(value(h.evaluate(Complex(0.5, k / 64.0)))), 1.0, 1e-9);
    }
}

TEST(DiscCover, FrozenValue)
{
    // 30-digit value of the theta product from an independent implementation.
    const DiscCover h = DiscCover::create(standard_disc(), kT1);
    const Complex want(-0.23752574189457303017, -0.54536866380783294515);
    EXPECT_LE(rel(value(h.evaluate(Complex(0.25, 0.5))), want), 1e-12);
}

TEST(DiscCover, MatchesHighPrecisionProduct)
{
    const DiscDivisor d = random_disc_divisor(12, 4, SurfaceSpec::annulus(1.7));
    const DiscCover h = DiscCover::create(d, SurfaceSpec::annulus(1.7));
    const Complex x(0.31, 0.9);
    oracle::Cplx g(1);
    for (const Complex& z : d.zeros) {
        g *= oracle::theta1_mp(x - z, 1.7) / oracle::theta1_mp(x + std::conj(z), 1.7);
    }
    EXPECT_LE(rel(value(h.evaluate(x)), oracle::to_double(g)), 1e-12);
}

TEST(DiscCover, ReflectionAndBound)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const DiscCover h = DiscCover::create(random_disc_divisor(2, 5, kT1), kT1, std::polar(1.0, 0.3));
    for (int k = 0; k < 100; ++k) {
        const Complex x(0.5 * u(rng), u(rng));
        const Complex a = value(h.evaluate(-std::conj(x)));
        const Complex b = value(h.evaluate(x));
        ASSERT_LE(std::abs(a * std::conj(b) - 1.0), 1e-10);
        ASSERT_LT(std::abs(b), 1.0);
    }
}

TEST(DiscCover, PhaseMustBeUnimodular)
{
    EXPECT_THROW(DiscCover::create(standard_disc(), kT1, 2.0), InvalidArgument);
    EXPECT_THROW(DiscCover::create({{Complex(0.2, 0.3)}}, kT1), ConstructionError);
}

// ---------------------------------------------------------------------------
// Classical covers

TEST(Classical, RationalOrientation)
{
    // u/(1 - u): zeros {0}, poles {1}, scale -1.
    const RationalCover r = RationalCover::create(ClassicalDivisor::make({0.0}, {1.0}), -1.0);
    EXPECT_EQ(r.scale(), -1.0);
    const Complex u(0.0, 0.5);
    const Complex got = value(r.evaluate(u));
    EXPECT_LE(std::abs(got - u / (1.0 - u)), 1e-15);
    EXPECT_GT(got.imag(), 0.0);
    // A positive request is flipped to keep H -> H.
    EXPECT_EQ(RationalCover::create(ClassicalDivisor::make({0.0}, {1.0}), 2.0).scale(), -2.0);
    EXPECT_TRUE(r.evaluate(Complex(1.0, 0.0)).is_infinite());
    EXPECT_EQ(value(r.evaluate(Extended::infinity())), Complex(-1.0));
}

TEST(Classical, Blaschke)
{
    const BlaschkeCover b = BlaschkeCover::create({0.0, 0.5});
    EXPECT_NEAR(std::abs(value(b.evaluate(std::polar(1.0, 0.7)))), 1.0, 1e-15);
    const BlaschkeCover one = BlaschkeCover::create({0.0});
    EXPECT_EQ(value(one.evaluate(Complex(0.0))), Complex(0.0));
    EXPECT_LE(std::abs(value(one.evaluate(Complex(1.0))) - 1.0), 1e-15);
    EXPECT_TRUE(one.evaluate(Extended::infinity()).is_infinite());
    EXPECT_THROW(BlaschkeCover::create({1.0}), ConstructionError);
}

TEST(Mobius, Examples)
{
    EXPECT_LE(std::abs(value(mobius_l(kI))), 1e-16);
    EXPECT_LE(std::abs(value(mobius_l(Complex(0.0))) + 1.0), 1e-16);
    EXPECT_EQ(value(mobius_l(Extended::infinity())), Complex(1.0));
    EXPECT_TRUE(mobius_l(-kI).is_infinite());
    EXPECT_TRUE(mobius_l_inv(Complex(1.0)).is_infinite());
    EXPECT_EQ(value(mobius_l_inv(Extended::infinity())), -kI);
}

TEST(Mobius, InverseAndDiscImage)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int k = 0; k < 200; ++k) {
        const Complex z(u(rng), std::abs(u(rng)));
        const Complex w = value(mobius_l(z));
        ASSERT_LE(std::abs(w), 1.0 + 1e-15);
        ASSERT_LE(std::abs(value(mobius_l_inv(w)) - z), 1e-12 * std::max(1.0, std::abs(z) * std::abs(z)));
    }
}

TEST(RationalToBlaschke, WorkedDegreeOne)
{
    const RationalCover r = RationalCover::create(ClassicalDivisor::make({0.0}, {1.0}), -1.0);
    const BlaschkeCover b = rational_to_blaschke(r);
    ASSERT_EQ(b.degree(), 1u);
    EXPECT_LE(std::abs(b.zeros()[0] - Complex(-0.2, -0.4)), 1e-10);
    EXPECT_NEAR(std::abs(b.zeros()[0]), 1.0 / std::sqrt(5.0), 1e-12);
}

TEST(RationalToBlaschke, CompositionAndDegree)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 1 + seed % 8;
        const RationalCover r = RationalCover::create(random_classical_divisor(seed, n));
        const BlaschkeCover b = rational_to_blaschke(r);
        ASSERT_EQ(b.degree(), n);
        for (const Complex& a : b.zeros()) ASSERT_LT(std::abs(a), 1.0);
        for (int k = 0; k < 20; ++k) {
            const Complex u(-4.0 + 0.4 * k, 0.05 * k);
            const Projective p = r.evaluate_projective(u);
            const Complex lhs = (p.num - kI * p.den) / (p.num + kI * p.den);
            ASSERT_LE(std::abs(lhs - value(b.evaluate(mobius_l(u)))), 1e-8) << seed;
        }
    }
}

TEST(RationalToBlaschke, RelabelingInvariant)
{
    const ClassicalDivisor d = random_classical_divisor(21, 5);
    std::vector<double> zeros(d.zeros.rbegin(), d.zeros.rend());
    std::vector<double> poles(d.poles.rbegin(), d.poles.rend());
    const BlaschkeCover a = rational_to_blaschke(RationalCover::create(d));
    const BlaschkeCover b = rational_to_blaschke(RationalCover::create(ClassicalDivisor::make(zeros, poles)));
    for (const Complex& x : a.zeros()) {
        double best = 1.0;
        for (const Complex& y : b.zeros()) best = std::min(best, std::abs(x - y));
        EXPECT_LE(best, 1e-8);
    }
}

// ---------------------------------------------------------------------------
// Strip and ring

TEST(Ring, Examples)
{
    EXPECT_LE(std::abs(strip_to_ring(0.0, kT1) - 1.0), 1e-15);
    const SurfaceSpec r2 = SurfaceSpec::annulus_from_radius(2.0);
    EXPECT_LE(std::abs(strip_to_ring(0.5, r2) - 2.0), 1e-14);
    EXPECT_LE(std::abs(strip_to_ring(Complex(0.0, 0.5), kT1) + 1.0), 1e-15);
    EXPECT_THROW(ring_to_strip(0.0, kT1), InvalidArgument);
}

TEST(Ring, RoundTrip)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const SurfaceSpec s = SurfaceSpec::annulus(1.4);
    for (int k = 0; k < 200; ++k) {
        const Complex x(0.5 * u(rng), 1.4 * u(rng));
        const Complex ring = strip_to_ring(x, s);
        ASSERT_GE(std::abs(ring), 1.0 - 1e-15);
        ASSERT_LE(std::abs(ring), s.radius() * (1.0 + 1e-15));
        const Complex back = ring_to_strip(ring, s);
        ASSERT_LE(std::abs(back - x), 1e-12);
        ASSERT_GE(back.imag(), 0.0);
        ASSERT_LT(back.imag(), 1.4);
    }
}

// ---------------------------------------------------------------------------
// Differentials

TEST(Eta, Residues)
{
    const EtaDifferential d = eta_h(HalfPlaneCover::create(standard_halfplane(), kT1));
    const auto f = [&](Complex x) { return eval_eta(d, x); };
    EXPECT_LE(std::abs(integrate(f, Contour::polygon(Complex(0.0, 0.1), 1e-2, 8)) - kTwoPiI), 1e-8);
    EXPECT_LE(std::abs(integrate(f, Contour::polygon(Complex(0.0, 0.4), 1e-2, 8)) + kTwoPiI), 1e-8);
}

TEST(Eta, DiscFrozenFiniteDifference)
{
    // d/dx log h at 0.25+0.25i from an independent high-precision implementation.
    const EtaDifferential d = eta_h(DiscCover::create(standard_disc(), kT1));
    const Complex want(3.8960321266424892081, -1.3480829819417504128);
    EXPECT_LE(std::abs(eval_eta(d, Complex(0.25, 0.25)) - want), 1e-10);
}

TEST(Eta, MatchesFiniteDifferenceOfMap)
{
    const HalfPlaneCover h = HalfPlaneCover::create(random_halfplane_divisor(5, 4, kT1), kT1);
    const EtaDifferential d = eta_h(h);
    const double step = 1e-5;
    for (const Complex x : {Complex(0.25, 0.25), Complex(0.1, 0.8), Complex(0.45, 0.05)}) {
        const Complex hx = value(h.evaluate(x));
        const Complex fd = (value(h.evaluate(x + step)) - value(h.evaluate(x - step))) / (2.0 * step) / hx;
        EXPECT_LE(std::abs(eval_eta(d, x) - fd), 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST(Eta, PoleProximity)
{
    const EtaDifferential d = eta_h(DiscCover::create(standard_disc(), kT1));
    EXPECT_THROW(eval_eta(d, Complex(0.1, 0.2 + 1e-7)), PoleProximity);
    EXPECT_THROW(eval_eta(d, Complex(-0.1, 1.2)), PoleProximity);
    EXPECT_NO_THROW(eval_eta(d, Complex(0.1, 0.2 + 1e-5)));
}

TEST(NormalizeEta, CaseOneCoefficientAndPeriods)
{
    const EtaDifferential d = normalize_eta({{Complex(0.0, 0.2), Complex(0.0, 0.7)}}, kT1);
    // The normalizing constant is imaginary, which is what makes the periods imaginary.
    EXPECT_LE(std::abs(d.kappa().real()), 1e-9);
    const auto f = [&](Complex x) { return d.coefficient_unchecked(x); };
    EXPECT_LE(std::abs(integrate(f, Contour::horizontal_cycle(0.95, 0.25, true)).real()), 1e-9);
    EXPECT_LE(std::abs(integrate(f, Contour::vertical_cycle(0.25, 0.0, 1.0, true)).real()), 1e-9);
    // Real on the oval away from the poles (the reflection fixes it): -f(-conj x) = conj f(x).
    for (const Complex x : {Complex(0.1, 0.3), Complex(0.37, 0.9)}) {
        EXPECT_LE(std::abs(-eval_eta(d, -std::conj(x)) - std::conj(eval_eta(d, x))), 1e-9);
    }
}

TEST(NormalizeEta, CaseTwoReflection)
{
    const Complex z(0.25, 0.3);
    const EtaDifferential d = normalize_eta({{z, -std::conj(z)}}, kT1);
    for (const Complex x : {Complex(0.1, 0.5), Complex(0.4, 0.05), Complex(0.33, 0.77)}) {
        EXPECT_LE(std::abs(eval_eta(d, -std::conj(x)) - std::conj(eval_eta(d, x))), 1e-9);
    }
    EXPECT_LE(std::abs(d.kappa()), 1e-9);
}

TEST(NormalizeEta, EmptyAndDegenerate)
{
    const EtaDifferential d = normalize_eta({}, kT1);
    EXPECT_EQ(d.kappa(), Complex(0.0));
    EXPECT_EQ(eval_eta(d, Complex(0.2, 0.3)), Complex(0.0));
    EXPECT_THROW(normalize_eta({{Complex(0.0, 0.2), Complex(0.0, 1.2)}}, kT1), InvalidArgument);
}

TEST(CoveringMap, VariantDispatch)
{
    const CoveringMap a = HalfPlaneCover::create(standard_halfplane(), kT1);
    const CoveringMap b = DiscCover::create(standard_disc(), kT1);
    const CoveringMap c = RationalCover::create(ClassicalDivisor::make({0.0}, {1.0}));
    const CoveringMap e = BlaschkeCover::create({0.0, 0.5});
    EXPECT_EQ(kind(a), MapKind::annulus_halfplane);
    EXPECT_EQ(kind(b), MapKind::annulus_disc);
    EXPECT_EQ(kind(c), MapKind::classical_rational);
    EXPECT_EQ(kind(e), MapKind::classical_blaschke);
    EXPECT_EQ(degree(e), 2u);
    EXPECT_EQ(value(evaluate(e, Complex(0.5))), Complex(0.0));
    EXPECT_THROW(eta_h(c), InvalidArgument);
}
