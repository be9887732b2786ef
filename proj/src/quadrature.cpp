#include "thetacover/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "thetacover/error.hpp"

namespace thetacover {

namespace {

constexpr int kOrder = 16;

struct GaussLegendre {
    std::array<double, kOrder> nodes{};
    std::array<double, kOrder> weights{};

    GaussLegendre()
    {
        // Newton iteration on P_16 from the Chebyshev-like initial guesses.
        for (int i = 0; i < kOrder; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= kOrder; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

const GaussLegendre& rule()
{
    static const GaussLegendre gl;
    return gl;
}

Complex panel(const Integrand& f, const Segment& s, double t0, double t1)
{
    const GaussLegendre& gl = rule();
    const double half = 0.5 * (t1 - t0);
    const double mid = 0.5 * (t1 + t0);
    Complex acc = 0.0;
    for (int i = 0; i < kOrder; ++i) {
        acc += gl.weights[i] * f(s.at(mid + half * gl.nodes[i]));
    }
    return acc * half * s.delta();
}

Complex integrate_adaptive(const Integrand& f, const Segment& s, int initial_panels,
                           const QuadratureOptions& options, std::size_t& panels_used)
{
    struct Pending {
        double t0, t1;
        Complex coarse;
    };
    std::vector<Pending> stack;
    const int n0 = std::max(1, initial_panels);
    for (int k = n0; k-- > 0;) {
        const double t0 = static_cast<double>(k) / n0;
        const double t1 = static_cast<double>(k + 1) / n0;
        stack.push_back({t0, t1, panel(f, s, t0, t1)});
    }
    Complex total = 0.0;
    double worst_error = 0.0;
    Pending worst{0.0, 1.0, 0.0};
    while (!stack.empty()) {
        const Pending p = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (p.t0 + p.t1);
        const Complex left = panel(f, s, p.t0, mid);
        const Complex right = panel(f, s, mid, p.t1);
        const Complex fine = left + right;
        const double error = std::abs(fine - p.coarse);
        const double allowed = options.tolerance * std::max(p.t1 - p.t0, 1e-6);
        panels_used += 2;
        if (error <= allowed || error <= 1e-15 * std::abs(fine)) {
            total += fine;
            continue;
        }
        if (error > worst_error) {
            worst_error = error;
            worst = p;
        }
        if (panels_used >= options.max_panels) {
            std::ostringstream os;
            os.precision(17);
            os << "quadrature panel cap " << options.max_panels << " reached; worst panel "
               << s.at(worst.t0) << " -> " << s.at(worst.t1) << " with refinement change "
               << worst_error;
            throw QuadratureFailure(os.str());
        }
        stack.push_back({mid, p.t1, right});
        stack.push_back({p.t0, mid, left});
    }
    return total;
}

} // namespace

Contour::Contour(std::vector<Segment> segments, int samples_per_segment)
    : segments_(std::move(segments)), samples_per_segment_(std::max(1, samples_per_segment))
{
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        if (std::abs(segments_[i].from - segments_[i - 1].to) > 1e-12) {
            throw InvalidArgument("contour segments must share endpoints");
        }
    }
}

Contour Contour::polyline(const std::vector<Complex>& points, bool close, int samples_per_segment)
{
    std::vector<Segment> segs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        segs.push_back({points[i - 1], points[i]});
    }
    if (close && points.size() > 1) {
        segs.push_back({points.back(), points.front()});
    }
    return Contour(std::move(segs), samples_per_segment);
}

Contour Contour::vertical_cycle(double re, double y0, double T, bool upward)
{
    const Complex a(re, y0);
    const Complex b(re, y0 + T);
    return upward ? Contour({{a, b}}, 8) : Contour({{b, a}}, 8);
}

Contour Contour::horizontal_cycle(double y, double x0, bool rightward)
{
    const Complex a(x0, y);
    const Complex b(x0 + (rightward ? 1.0 : -1.0), y);
    return Contour({{a, b}}, 8);
}

Contour Contour::polygon(Complex centre, double radius, int sides)
{
    std::vector<Complex> pts;
    for (int k = 0; k < sides; ++k) {
        pts.push_back(centre + std::polar(radius, 2.0 * std::numbers::pi * k / sides));
    }
    return polyline(pts, true, 2);
}

Complex Contour::start() const
{
    return segments_.empty() ? Complex{} : segments_.front().from;
}

Complex Contour::end() const
{
    return segments_.empty() ? Complex{} : segments_.back().to;
}

bool Contour::closed() const
{
    return !segments_.empty() && std::abs(end() - start()) <= 1e-12;
}

Contour Contour::reversed() const
{
    std::vector<Segment> segs;
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
        segs.push_back({it->to, it->from});
    }
    return Contour(std::move(segs), samples_per_segment_);
}

Contour Contour::concatenated(const Contour& next) const
{
    std::vector<Segment> segs = segments_;
    segs.insert(segs.end(), next.segments_.begin(), next.segments_.end());
    return Contour(std::move(segs), std::max(samples_per_segment_, next.samples_per_segment_));
}

Contour Contour::translated(Complex shift) const
{
    std::vector<Segment> segs;
    for (const Segment& s : segments_) {
        segs.push_back({s.from + shift, s.to + shift});
    }
    return Contour(std::move(segs), samples_per_segment_);
}

Complex integrate(const Integrand& f, const Contour& contour, const QuadratureOptions& options)
{
    Complex total = 0.0;
    std::size_t used = 0;
    for (const Segment& s : contour.segments()) {
        total += integrate_adaptive(f, s, contour.samples_per_segment(), options, used);
    }
    return total;
}

Complex integrate(const Integrand& f, const Segment& segment, const QuadratureOptions& options)
{
    std::size_t used = 0;
    return integrate_adaptive(f, segment, 4, options, used);
}

double widest_gap_midpoint(std::vector<double> values, double period)
{
    if (values.empty()) {
        return 0.5 * period;
    }
    for (double& v : values) {
        v -= period * std::floor(v / period);
    }
    std::sort(values.begin(), values.end());
    double best_gap = values.front() + period - values.back();
    double best_mid = values.back() + 0.5 * best_gap;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double gap = values[i] - values[i - 1];
        if (gap > best_gap) {
            best_gap = gap;
            best_mid = values[i - 1] + 0.5 * gap;
        }
    }
    return best_mid - period * std::floor(best_mid / period);
}

} // namespace thetacover
