#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "thetacover/cli/commands.hpp"

namespace thetacover::cli {

namespace {

struct Rgb {
    unsigned char r, g, b;
};

constexpr Rgb kPoleColour{255, 255, 255};
constexpr Rgb kZeroColour{0, 0, 0};

unsigned char channel(double v)
{
    return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

Rgb hsv(double h, double s, double v)
{
    h = 6.0 * (h - std::floor(h));
    const int sector = std::min(5, static_cast<int>(h));
    const double f = h - sector;
    const double p = v * (1.0 - s);
    const double q = v * (1.0 - s * f);
    const double t = v * (1.0 - s * (1.0 - f));
    double r = v, g = t, b = p;
    switch (sector) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
    }
    return {channel(r), channel(g), channel(b)};
}

Rgb colour(const Extended& h, Coloring coloring)
{
    if (h.is_infinite() || !std::isfinite(std::abs(h.value()))) return kPoleColour;
    const Complex w = h.value();
    const double modulus = std::abs(w);
    if (modulus == 0.0) return kZeroColour;
    // arg in (-pi, pi] -> hue in (0, 1].
    const double hue = (std::arg(w) + std::numbers::pi) / (2.0 * std::numbers::pi);
    const double band = std::log2(modulus) - std::floor(std::log2(modulus));
    const double shade = 0.55 + 0.45 * band;
    switch (coloring) {
    case Coloring::phase_hue: return hsv(hue, 1.0, 1.0);
    case Coloring::modulus_bands: {
        const unsigned char g = channel(shade);
        return {g, g, g};
    }
    case Coloring::combined: return hsv(hue, 1.0, shade);
    }
    return kPoleColour;
}

} // namespace

std::vector<unsigned char> render_portrait(const CoveringMap& map, const PortraitSpec& spec, unsigned threads)
{
    const int w = spec.width;
    const int h = spec.height;
    const std::array<double, 4> win = *spec.window;
    const std::string header = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    std::vector<unsigned char> bytes(header.begin(), header.end());
    const std::size_t offset = bytes.size();
    bytes.resize(offset + 3 * static_cast<std::size_t>(w) * h);

    auto render_rows = [&](int first, int stride) {
        for (int row = first; row < h; row += stride) {
            const double y = win[3] - (row + 0.5) * (win[3] - win[1]) / h;
            for (int col = 0; col < w; ++col) {
                const double x = win[0] + (col + 0.5) * (win[2] - win[0]) / w;
                const Rgb c = colour(evaluate(map, Complex(x, y)), spec.coloring);
                unsigned char* px = &bytes[offset + 3 * (static_cast<std::size_t>(row) * w + col)];
                px[0] = c.r;
                px[1] = c.g;
                px[2] = c.b;
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(h));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(render_rows, static_cast<int>(t), static_cast<int>(threads));
    }
    render_rows(0, static_cast<int>(threads));
    for (std::thread& t : pool) t.join();
    return bytes;
}

} // namespace thetacover::cli
