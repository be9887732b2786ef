#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "thetacover/theta.hpp"

namespace thetacover {

/// Directed straight segment in the strip (or plane) coordinate.
struct Segment {
    Complex from;
    Complex to;

    Complex delta() const { return to - from; }
    double length() const { return std::abs(to - from); }
    Complex at(double t) const { return from + t * (to - from); }
};

/// Chain of directed segments. Consecutive segments share endpoints.
class Contour {
public:
    Contour() = default;
    explicit Contour(std::vector<Segment> segments, int samples_per_segment = 4);

    static Contour polyline(const std::vector<Complex>& points, bool close = false,
                            int samples_per_segment = 4);
    // Vertical loop Re x = re from iy0 to i(y0 + T), or the reverse.
    static Contour vertical_cycle(double re, double y0, double T, bool upward);
    // Horizontal loop Im x = y from x0 to x0 + 1, or to x0 - 1.
    static Contour horizontal_cycle(double y, double x0, bool rightward);
    // Regular polygon around a point, counter-clockwise.
    static Contour polygon(Complex centre, double radius, int sides);

    const std::vector<Segment>& segments() const noexcept { return segments_; }
    int samples_per_segment() const noexcept { return samples_per_segment_; }
    bool empty() const noexcept { return segments_.empty(); }
    Complex start() const;
    Complex end() const;
    // True when the end point meets the start point to 1e-12.
    bool closed() const;

    Contour reversed() const;
    Contour concatenated(const Contour& next) const;
    Contour translated(Complex shift) const;

private:
    std::vector<Segment> segments_;
    int samples_per_segment_ = 4;
};

using Integrand = std::function<Complex(Complex)>;

struct QuadratureOptions {
    double tolerance = 1e-10;
    std::size_t max_panels = std::size_t{1} << 14;
};

/// Adaptive 16-point Gauss-Legendre integral of f(x) dx along the contour.
/// Panels are bisected until successive refinements agree; exceeding the
/// panel cap throws QuadratureFailure naming the worst panel.
Complex integrate(const Integrand& f, const Contour& contour, const QuadratureOptions& options = {});

Complex integrate(const Integrand& f, const Segment& segment, const QuadratureOptions& options = {});

/// Midpoint of the widest gap between values taken modulo `period`.
double widest_gap_midpoint(std::vector<double> values, double period);

} // namespace thetacover
