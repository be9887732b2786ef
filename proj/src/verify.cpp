#include "thetacover/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "thetacover/error.hpp"

namespace thetacover {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr Complex kTwoPiI{0.0, 2.0 * std::numbers::pi};

std::string fmt(Complex v)
{
    std::ostringstream os;
    os.precision(12);
    os << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
    return os.str();
}

double point_segment_distance(const Segment& seg, Complex s, double* param = nullptr)
{
    const Complex d = seg.delta();
    const double len2 = std::norm(d);
    double t = 0.0;
    if (len2 > 0.0) {
        t = std::clamp(std::real((s - seg.from) * std::conj(d)) / len2, 0.0, 1.0);
    }
    if (param != nullptr) *param = t;
    return std::abs(seg.at(t) - s);
}

// Images s + n1 + i n2 T that come near the bounding box of the segment.
template <class Visit>
void for_each_image(const Segment& seg, Complex s, double T, Visit&& visit)
{
    const double lo_re = std::min(seg.from.real(), seg.to.real());
    const double hi_re = std::max(seg.from.real(), seg.to.real());
    const double lo_im = std::min(seg.from.imag(), seg.to.imag());
    const double hi_im = std::max(seg.from.imag(), seg.to.imag());
    const long a1 = static_cast<long>(std::floor(lo_re - s.real())) - 1;
    const long b1 = static_cast<long>(std::ceil(hi_re - s.real())) + 1;
    const long a2 = static_cast<long>(std::floor((lo_im - s.imag()) / T)) - 1;
    const long b2 = static_cast<long>(std::ceil((hi_im - s.imag()) / T)) + 1;
    for (long n1 = a1; n1 <= b1; ++n1) {
        for (long n2 = a2; n2 <= b2; ++n2) {
            visit(s + Complex(static_cast<double>(n1), static_cast<double>(n2) * T));
        }
    }
}

double contour_clearance(const EtaDifferential& d, const Contour& c, const Segment** worst = nullptr)
{
    const double T = d.surface().T();
    double best = std::numeric_limits<double>::infinity();
    for (const Segment& seg : c.segments()) {
        for (const auto& sing : d.singularities()) {
            for_each_image(seg, sing.point, T, [&](Complex img) {
                const double dist = point_segment_distance(seg, img);
                if (dist < best) {
                    best = dist;
                    if (worst != nullptr) *worst = &seg;
                }
            });
        }
    }
    return best;
}

double singular_separation(const EtaDifferential& d)
{
    const double T = d.surface().T();
    const auto sing = d.singularities();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sing.size(); ++i) {
        for (std::size_t j = i + 1; j < sing.size(); ++j) {
            const double dist = lattice_distance(sing[i].point - sing[j].point, T);
            if (dist > kLatticePoleTolerance) best = std::min(best, dist);
        }
    }
    return best;
}

// End point differs from the start point by a lattice vector.
bool closed_on_torus(const Contour& c, double T)
{
    if (c.empty()) return false;
    const Complex d = c.end() - c.start();
    const double n1 = std::round(d.real());
    const double n2 = std::round(d.imag() / T);
    return std::abs(d.real() - n1) <= 1e-12 && std::abs(d.imag() - n2 * T) <= 1e-12;
}

// Deterministic low-discrepancy points in the open strip 0 < Re x < 1/2.
std::vector<Complex> strip_samples(int n, double T, double margin)
{
    std::vector<Complex> out;
    const double g1 = 0.7548776662466927;  // plastic-number Kronecker sequence
    const double g2 = 0.5698402909980532;
    for (int k = 0; k < n; ++k) {
        const double a = std::fmod(0.5 + g1 * (k + 1), 1.0);
        const double b = std::fmod(0.5 + g2 * (k + 1), 1.0);
        out.emplace_back(margin + (0.5 - 2.0 * margin) * a, T * b);
    }
    return out;
}

// 10 x 10 interior probe grid of the strip.
std::vector<Complex> interior_probes(double T)
{
    std::vector<Complex> out;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            out.emplace_back(0.025 + 0.05 * i, T * (j + 0.37) / 10.0);
        }
    }
    return out;
}

double relative_gap(const Projective& a, const Projective& b)
{
    const Extended va = a.value();
    const Extended vb = b.value();
    if (va.is_infinite() || vb.is_infinite()) {
        // Compare reciprocals instead.
        const Complex ra = a.num == Complex(0.0) ? Complex(std::numeric_limits<double>::infinity()) : a.den / a.num;
        const Complex rb = b.num == Complex(0.0) ? Complex(std::numeric_limits<double>::infinity()) : b.den / b.num;
        return std::abs(ra - rb);
    }
    return std::abs(vb.value() - va.value()) / (1.0 + std::abs(va.value()));
}

// h(x + iT) against h(x) along an oval.
double closure_defect(const CoveringMap& map, double re, double T, int samples)
{
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const Complex x(re, T * (k + 0.5) / samples);
        worst = std::max(worst, relative_gap(evaluate_projective(map, x),
                                             evaluate_projective(map, x + Complex(0.0, T))));
    }
    return worst;
}

double wrap_gap_floor(const std::vector<double>& heights, double T)
{
    if (heights.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(heights.begin(), heights.end());
    return 0.5 * (*lo + *hi - T);
}

ComplexFunction map_function(const CoveringMap& map)
{
    return [&map](Complex x) {
        const Projective p = evaluate_projective(map, x);
        if (p.den == Complex(0.0)) return Complex(std::numeric_limits<double>::infinity());
        return p.num / p.den;
    };
}

} // namespace

// ---------------------------------------------------------------------------

void VerificationReport::add_bound(std::string name, double measured, double tolerance, std::string details)
{
    add({std::move(name), measured, tolerance, measured <= tolerance, std::move(details)});
}

void VerificationReport::append(const VerificationReport& other)
{
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

const Check* VerificationReport::find(const std::string& name) const
{
    for (const Check& c : checks_) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

bool VerificationReport::overall() const
{
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

// ---------------------------------------------------------------------------

Complex period_integral(const EtaDifferential& d, const Contour& contour, const QuadratureOptions& options)
{
    const Integrand f = [&d](Complex x) { return d.coefficient_unchecked(x); };
    if (d.pairs().empty()) {
        return integrate(f, contour, options);
    }
    const double T = d.surface().T();
    const double delta = std::min(kContourClearance, 0.5 * singular_separation(d));
    const Segment* worst = nullptr;
    if (contour_clearance(d, contour, &worst) >= delta) {
        return integrate(f, contour, options);
    }
    if (!closed_on_torus(contour, T) && !contour.closed()) {
        std::ostringstream os;
        os << "open contour passes within " << delta << " of a pole of the differential";
        throw ContourTooClose(os.str());
    }
    const Complex normal = kI * worst->delta() / worst->length();
    for (int k = 1; k <= 200; ++k) {
        for (const double sign : {1.0, -1.0}) {
            const Contour shifted = contour.translated(sign * k * delta * normal);
            if (contour_clearance(d, shifted) >= delta) {
                return integrate(f, shifted, options);
            }
        }
    }
    throw ContourTooClose("no admissible offset of the contour clears the poles");
}

Complex principal_value_integral(const EtaDifferential& d, const Contour& contour,
                                 const QuadratureOptions& options)
{
    const double T = d.surface().T();
    const Integrand f = [&d](Complex x) { return d.coefficient_unchecked(x); };
    Complex total = 0.0;
    for (const Segment& seg : contour.segments()) {
        const double len = seg.length();
        struct Hit {
            double t;
            Complex point;
            double residue;
        };
        std::vector<Hit> hits;
        for (const auto& sing : d.singularities()) {
            for_each_image(seg, sing.point, T, [&](Complex img) {
                double t = 0.0;
                const double dist = point_segment_distance(seg, img, &t);
                if (dist <= 1e-9) {
                    hits.push_back({t, img, sing.residue});
                } else if (dist < 1e-5) {
                    std::ostringstream os;
                    os << "pole " << img << " lies " << dist << " off the integration line";
                    throw ContourTooClose(os.str());
                }
            });
        }
        std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.t < b.t; });
        const double eps = kExcisionRadius / len;
        double cursor = 0.0;
        for (const Hit& h : hits) {
            const double a = h.t - eps;
            const double b = h.t + eps;
            if (a < cursor + eps || b > 1.0 - eps) {
                throw ContourTooClose("principal value needs poles away from segment ends and from each other");
            }
            total += integrate(f, Segment{seg.at(cursor), seg.at(a)}, options);
            // Across the window, detour on the semicircle x = s + eps u e^{i theta},
            // theta from pi down to 0 (clockwise around s), and add back the half
            // residue i pi r. Evaluating f close to s would amplify the rounding
            // in the pole position.
            const Complex u = seg.delta() / len;
            const Complex s = h.point;
            const Integrand arc = [&](Complex theta) {
                const Complex e = std::exp(kI * theta.real());
                return f(s + kExcisionRadius * u * e) * (kI * kExcisionRadius * u * e);
            };
            total += integrate(arc, Segment{Complex(std::numbers::pi), Complex(0.0)}, options);
            total += kI * std::numbers::pi * h.residue;
            cursor = b;
        }
        total += integrate(f, Segment{seg.at(cursor), seg.to}, options);
    }
    return total;
}

double argument_increment(const ComplexFunction& f, const Contour& contour)
{
    auto value = [&](Complex x) {
        const Complex v = f(x);
        if (!(std::abs(v) > 0.0) || !std::isfinite(std::abs(v))) {
            std::ostringstream os;
            os << "function vanishes or blows up on the contour at " << x;
            throw ContourTooClose(os.str());
        }
        return v;
    };
    double total = 0.0;
    for (const Segment& seg : contour.segments()) {
        struct Piece {
            double t0, t1;
            Complex f0, f1;
        };
        const int kInitial = std::max(64, contour.samples_per_segment());
        std::vector<Piece> stack;
        std::vector<Complex> grid(kInitial + 1);
        for (int k = 0; k <= kInitial; ++k) grid[k] = value(seg.at(static_cast<double>(k) / kInitial));
        for (int k = kInitial; k-- > 0;) {
            stack.push_back({static_cast<double>(k) / kInitial, static_cast<double>(k + 1) / kInitial,
                             grid[k], grid[k + 1]});
        }
        while (!stack.empty()) {
            const Piece p = stack.back();
            stack.pop_back();
            const double tm = 0.5 * (p.t0 + p.t1);
            const Complex fm = value(seg.at(tm));
            const double d1 = std::arg(fm / p.f0);
            const double d2 = std::arg(p.f1 / fm);
            if (std::abs(d1) + std::abs(d2) < 0.5 * kPi) {
                total += d1 + d2;
                continue;
            }
            if ((p.t1 - p.t0) * std::max(1.0, seg.length()) < 1e-13) {
                std::ostringstream os;
                os << "argument tracking step underflow near " << seg.at(tm);
                throw ContourTooClose(os.str());
            }
            stack.push_back({tm, p.t1, fm, p.f1});
            stack.push_back({p.t0, tm, p.f0, fm});
        }
    }
    return total;
}

long winding_number(const ComplexFunction& f, const Contour& contour)
{
    const double turns = argument_increment(f, contour) / (2.0 * kPi);
    const double n = std::round(turns);
    if (std::abs(turns - n) > 1e-3) {
        std::ostringstream os;
        os << "image curve is not closed: " << turns << " turns";
        throw NumericalFailure(os.str());
    }
    return static_cast<long>(n);
}

// ---------------------------------------------------------------------------
// Reciprocity on the torus. Cycles are oriented so that A'.B' = +1: in case
// (i) A' runs up an oval and B' runs x -> x-1, making dx/(iT) dual to A';
// in case (ii) B' runs x -> x+1, dual to 2i dx, and A' runs down an oval.

VerificationReport check_reciprocity_case_i(Complex z, Complex p, const SurfaceSpec& s, double tolerance)
{
    const double T = s.T();
    if (!oval_index(z) || !oval_index(p)) {
        throw InvalidArgument("case (i) reciprocity needs z and p on the ovals Re x = 0 or Re x = 1/2");
    }
    if (lattice_distance(z - p, T) < kLatticePoleTolerance) {
        throw InvalidArgument("case (i) reciprocity needs z != p");
    }
    const EtaDifferential d = normalize_eta({{z, p}}, s);

    VerificationReport report;
    // B' runs through the widest free corridor; the right-hand side uses the
    // representatives lying in the period window just above it.
    const double yb = widest_gap_midpoint({z.imag(), p.imag()}, T);
    const Complex zc = canonical_height(z - Complex(0.0, yb), T) + Complex(0.0, yb);
    const Complex pc = canonical_height(p - Complex(0.0, yb), T) + Complex(0.0, yb);
    const Complex lhs_b = period_integral(d, Contour::horizontal_cycle(yb, 0.25, false));
    const Complex rhs_b = kTwoPiI * std::real(integrate([T](Complex) { return rho_coefficient(T); },
                                                        Segment{pc, zc}));
    report.add_bound("B'", std::abs(lhs_b - rhs_b), tolerance,
                     "lhs " + fmt(lhs_b) + ", rhs " + fmt(rhs_b));

    for (const double re : {0.0, 0.5}) {
        const Contour a = Contour::vertical_cycle(re, yb, T, true);
        const Complex lhs = principal_value_integral(d, a);
        report.add_bound(re == 0.0 ? "A'(Re x = 0)" : "A'(Re x = 1/2)", std::abs(lhs), tolerance,
                         "principal value " + fmt(lhs));
    }
    return report;
}

VerificationReport check_reciprocity_case_ii(Complex z, const SurfaceSpec& s, double tolerance)
{
    const double T = s.T();
    if (!(z.real() > kOvalTolerance && z.real() < 0.5 - kOvalTolerance)) {
        throw InvalidArgument("case (ii) reciprocity needs z strictly inside the strip 0 < Re z < 1/2");
    }
    const Complex zc = canonical_height(z, T);
    const Complex pc = -std::conj(zc);
    const EtaDifferential d = normalize_eta({{zc, pc}}, s);

    VerificationReport report;
    const double y_far = zc.imag() + 0.5 * T;
    const Complex lhs_b = period_integral(d, Contour::horizontal_cycle(y_far, 0.0, true));
    report.add_bound("B'", std::abs(lhs_b), tolerance, "period " + fmt(lhs_b));

    const Integrand zeta = [](Complex) { return kZetaCoefficient; };
    // Oval 1/2: the straight path p -> z crosses only Re x = 0.
    // Oval 0: the path p -> z - 1 is mirror-symmetric about Re x = -1/2.
    const std::pair<double, Complex> targets[] = {{0.5, zc}, {0.0, zc - 1.0}};
    for (const auto& [re, end] : targets) {
        const Complex lhs = period_integral(d, Contour::vertical_cycle(re, y_far, T, false));
        const Complex rhs = -kI * kPi * std::imag(integrate(zeta, Segment{pc, end}));
        report.add_bound(re == 0.0 ? "A'(Re x = 0)" : "A'(Re x = 1/2)", std::abs(lhs - rhs), tolerance,
                         "lhs " + fmt(lhs) + ", rhs " + fmt(rhs));
    }
    return report;
}

// ---------------------------------------------------------------------------

double periodicity_defect(const CoveringMap& map, Complex shift, int samples)
{
    double T = 1.0;
    if (const auto* h = std::get_if<HalfPlaneCover>(&map)) T = h->surface().T();
    else if (const auto* h = std::get_if<DiscCover>(&map)) T = h->surface().T();
    else throw InvalidArgument("periodicity_defect applies to annulus covers");
    double worst = 0.0;
    for (const Complex& x : strip_samples(samples, T, 0.02)) {
        worst = std::max(worst, relative_gap(evaluate_projective(map, x), evaluate_projective(map, x + shift)));
    }
    return worst;
}

VerificationReport boundary_check(const CoveringMap& map, int samples, double tolerance)
{
    VerificationReport report;
    samples = std::max(samples, 1);
    switch (kind(map)) {
    case MapKind::annulus_halfplane:
    case MapKind::annulus_disc: {
        const bool halfplane = kind(map) == MapKind::annulus_halfplane;
        const double T = halfplane ? std::get<HalfPlaneCover>(map).surface().T()
                                   : std::get<DiscCover>(map).surface().T();
        for (int oval = 0; oval < 2; ++oval) {
            const double re = 0.5 * oval;
            double worst = 0.0;
            for (int k = 0; k < samples; ++k) {
                const Extended v = evaluate(map, Complex(re, T * k / samples));
                if (v.is_infinite()) {
                    if (!halfplane) worst = std::numeric_limits<double>::infinity();
                    continue;
                }
                const Complex h = v.value();
                worst = std::max(worst, halfplane ? std::abs(h.imag()) / (1.0 + std::abs(h))
                                                  : std::abs(std::abs(h) - 1.0));
            }
            const std::string prefix = "oval" + std::to_string(oval);
            report.add_bound(prefix + (halfplane ? ".real" : ".unimodular"), worst, tolerance,
                             std::to_string(samples) + " samples");
            report.add_bound(prefix + ".closure", closure_defect(map, re, T, samples), tolerance,
                             "h(x + iT) against h(x) along the oval");
        }
        double extreme = halfplane ? std::numeric_limits<double>::infinity() : 0.0;
        for (const Complex& x : interior_probes(T)) {
            const Extended v = evaluate(map, x);
            const double m = v.is_infinite() ? std::numeric_limits<double>::quiet_NaN()
                                             : (halfplane ? v.value().imag() : std::abs(v.value()));
            extreme = halfplane ? std::min(extreme, m) : std::max(extreme, m);
            if (std::isnan(m)) extreme = std::numeric_limits<double>::quiet_NaN();
        }
        if (halfplane) {
            report.add({"interior", extreme, 0.0, extreme > 0.0, "min Im h over 100 interior probes"});
        } else {
            report.add({"interior", extreme, 1.0, extreme < 1.0, "max |h| over 100 interior probes"});
        }
        break;
    }
    case MapKind::classical_rational: {
        double worst = 0.0;
        for (int k = 0; k < samples; ++k) {
            const double u = std::tan(kPi * ((k + 0.5) / samples - 0.5));
            const Extended v = evaluate(map, Complex(u, 0.0));
            if (!v.is_infinite()) worst = std::max(worst, std::abs(v.value().imag()));
        }
        report.add_bound("real-axis", worst, tolerance, "max |Im R| on the real axis");
        double lowest = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                const Extended v = evaluate(map, Complex(-4.5 + i, 0.05 + 0.5 * j));
                lowest = std::min(lowest, v.is_infinite() ? std::numeric_limits<double>::quiet_NaN()
                                                          : v.value().imag());
            }
        }
        report.add({"interior", lowest, 0.0, lowest > 0.0, "min Im R over 100 probes"});
        break;
    }
    case MapKind::classical_blaschke: {
        double worst = 0.0;
        for (int k = 0; k < samples; ++k) {
            const Extended v = evaluate(map, std::polar(1.0, 2.0 * kPi * k / samples));
            worst = v.is_infinite() ? std::numeric_limits<double>::infinity()
                                    : std::max(worst, std::abs(std::abs(v.value()) - 1.0));
        }
        report.add_bound("unit-circle", worst, tolerance, "max ||B| - 1| on the unit circle");
        double highest = 0.0;
        for (int i = 1; i <= 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                highest = std::max(highest, std::abs(evaluate(map, std::polar(0.095 * i, 0.6 * j + 0.1)).value()));
            }
        }
        report.add({"interior", highest, 1.0, highest < 1.0, "max |B| over 100 probes"});
        break;
    }
    }
    return report;
}

long preimage_count(const HalfPlaneCover& map, Complex target)
{
    if (!(target.imag() > 0.0)) {
        throw InvalidArgument("preimage_count needs a target in the open upper half-plane");
    }
    const double T = map.surface().T();
    std::vector<double> heights;
    for (const Complex& z : map.divisor().zeros) heights.push_back(z.imag());
    for (const Complex& p : map.divisor().poles) heights.push_back(p.imag());
    const double y = widest_gap_midpoint(heights, T);
    // Boundary of the fundamental rectangle, counter-clockwise, with a vertex
    // at every zero and pole on the ovals. Between neighbouring vertices h
    // runs monotonically between 0 and infinity, so no initial tracking step
    // can hide a full turn (for targets not too close to the real axis).
    auto oval_heights = [&](double re) {
        std::vector<double> hs;
        auto add = [&](const std::vector<Complex>& pts) {
            for (const Complex& q : pts) {
                if (std::abs(q.real() - re) > kOvalTolerance) continue;
                double h = q.imag();
                h -= T * std::floor((h - y) / T);
                if (h > y && h < y + T) hs.push_back(h);
            }
        };
        add(map.divisor().zeros);
        add(map.divisor().poles);
        std::sort(hs.begin(), hs.end());
        return hs;
    };
    std::vector<Complex> vertices{Complex(0.0, y), Complex(0.5, y)};
    for (const double h : oval_heights(0.5)) vertices.emplace_back(0.5, h);
    vertices.emplace_back(0.5, y + T);
    vertices.emplace_back(0.0, y + T);
    const std::vector<double> left = oval_heights(0.0);
    for (auto it = left.rbegin(); it != left.rend(); ++it) vertices.emplace_back(0.0, *it);
    const Contour rect = Contour::polyline(vertices, true);
    const ComplexFunction w = [&](Complex x) {
        const Projective p = map.evaluate_projective(x);
        return (p.num - target * p.den) / (p.num - std::conj(target) * p.den);
    };
    return winding_number(w, rect);
}

long boundary_winding(const DiscCover& map)
{
    const double T = map.surface().T();
    const CoveringMap m = map;
    const ComplexFunction h = map_function(m);
    const double y = 0.0;
    const long up = winding_number(h, Contour(std::vector<Segment>{{Complex(0.5, y), Complex(0.5, y + T)}}, 32));
    const long down = winding_number(h, Contour(std::vector<Segment>{{Complex(0.0, y + T), Complex(0.0, y)}}, 32));
    return up + down;
}

VerificationReport check_eta(const CoveringMap& map, double tolerance)
{
    const EtaDifferential d = eta_h(map);
    const double T = d.surface().T();
    VerificationReport report;

    // Group coincident singular points (repeated zeros carry multiplicity).
    struct Point {
        Complex x;
        double residue;
    };
    std::vector<Point> points;
    for (const auto& s : d.singularities()) {
        auto it = std::find_if(points.begin(), points.end(), [&](const Point& q) {
            return lattice_distance(q.x - s.point, T) < kLatticePoleTolerance;
        });
        if (it == points.end()) points.push_back({s.point, s.residue});
        else it->residue += s.residue;
    }
    double worst_residue = 0.0;
    for (const Point& pt : points) {
        double sep = 0.25;
        for (const Point& other : points) {
            if (&other == &pt) continue;
            sep = std::min(sep, lattice_distance(other.x - pt.x, T));
        }
        const double radius = std::min(1e-2, 0.4 * sep);
        const Complex loop = integrate([&d](Complex x) { return d.coefficient_unchecked(x); },
                                       Contour::polygon(pt.x, radius, 8));
        worst_residue = std::max(worst_residue, std::abs(loop - kTwoPiI * pt.residue));
    }
    report.add_bound("residues", worst_residue, tolerance, std::to_string(points.size()) + " singular points");

    std::vector<double> heights;
    std::vector<double> abscissae;
    for (const Point& pt : points) {
        heights.push_back(pt.x.imag());
        abscissae.push_back(pt.x.real());
    }
    const double yb = wrap_gap_floor(heights, T);
    const double c = widest_gap_midpoint(abscissae, 1.0);
    const Complex horizontal = period_integral(d, Contour::horizontal_cycle(yb, c, false));
    const Complex vertical = period_integral(d, Contour::vertical_cycle(c, yb, T, true));
    for (const auto& [name, period] : {std::pair<std::string, Complex>{"period.B'", horizontal},
                                       std::pair<std::string, Complex>{"period.A'", vertical}}) {
        const Complex n = period / kTwoPiI;
        report.add_bound(name, std::abs(n - std::round(n.real())), tolerance, "period/(2 pi i) = " + fmt(n));
    }
    if (const auto* h = std::get_if<HalfPlaneCover>(&map)) {
        const double m = static_cast<double>(h->m());
        report.add_bound("period.B'=2pi i m", std::abs(horizontal / kTwoPiI - m), tolerance,
                         "m = " + std::to_string(h->m()));
    }
    return report;
}

VerificationReport check_composition(const RationalCover& map, double tolerance)
{
    VerificationReport report;
    const BlaschkeCover b = rational_to_blaschke(map);
    double radius = 0.0;
    for (const Complex& a : b.zeros()) radius = std::max(radius, std::abs(a));
    report.add({"blaschke-zeros", radius, 1.0, radius < 1.0, "max |a_j|"});

    double worst = 0.0;
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            const Complex u(-5.0 + 10.0 * i / 15.0, 0.4 * j);
            const Projective r = map.evaluate_projective(u);
            const Complex lhs = (r.num - kI * r.den) / (r.num + kI * r.den);
            const Complex rhs = b.evaluate(mobius_l(u)).value();
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    report.add_bound("composition", worst, tolerance, "max |l(R(u)) - B(l(u))| over 256 points");
    return report;
}

VerificationReport verify_map(const CoveringMap& map, double tolerance)
{
    VerificationReport report;
    switch (kind(map)) {
    case MapKind::annulus_halfplane:
    case MapKind::annulus_disc: {
        const bool halfplane = kind(map) == MapKind::annulus_halfplane;
        const double T = halfplane ? std::get<HalfPlaneCover>(map).surface().T()
                                   : std::get<DiscCover>(map).surface().T();
        const double sv = std::max(periodicity_defect(map, Complex(0.0, T)), periodicity_defect(map, 1.0));
        report.add_bound("single-valuedness", sv, tolerance, "max relative change under x -> x + iT, x + 1");
        report.append(boundary_check(map, 512, tolerance));
        if (sv > tolerance) {
            break;  // periods and degree are meaningless for a multivalued map
        }
        report.append(check_eta(map, tolerance));
        const long n = static_cast<long>(degree(map));
        const long counted = halfplane ? preimage_count(std::get<HalfPlaneCover>(map))
                                       : boundary_winding(std::get<DiscCover>(map));
        report.add({"degree", static_cast<double>(std::labs(counted - n)), 0.0, counted == n,
                    "counted " + std::to_string(counted) + ", expected " + std::to_string(n)});
        break;
    }
    case MapKind::classical_rational:
        report.append(boundary_check(map, 512, tolerance));
        report.append(check_composition(std::get<RationalCover>(map), tolerance));
        break;
    case MapKind::classical_blaschke: {
        report.append(boundary_check(map, 512, tolerance));
        const CoveringMap& m = map;
        const long w = winding_number(map_function(m), Contour::polygon(0.0, 1.0, 256));
        const long n = static_cast<long>(degree(map));
        report.add({"degree", static_cast<double>(std::labs(w - n)), 0.0, w == n,
                    "winding " + std::to_string(w)});
        break;
    }
    }
    return report;
}

} // namespace thetacover
