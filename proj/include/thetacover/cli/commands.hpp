#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "thetacover/cli/divisor_file.hpp"

namespace thetacover::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitParse = 2;

enum class Coloring { phase_hue, modulus_bands, combined };

struct PortraitSpec {
    int width = 256;
    int height = 256;
    // x0, y0, x1, y1; defaults to the natural domain of the map.
    std::optional<std::array<double, 4>> window;
    Coloring coloring = Coloring::combined;
};

struct EvalRequest {
    std::optional<Complex> point;
    int grid_width = 0;
    int grid_height = 0;
    std::array<double, 4> window{0.0, 0.0, 0.0, 0.0};
};

std::string format_number(double v);
// One CSV data row for the sample x.
std::string csv_row(Complex x, const Extended& h);
inline constexpr const char* kCsvHeader = "re_x,im_x,re_h,im_h,abs_h,arg_h";

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_eval(const std::string& path, const EvalRequest& request, std::ostream& out, std::ostream& err);
int cmd_trace(const std::string& path, int oval, int samples, std::ostream& out, std::ostream& err);
int cmd_portrait(const std::string& path, const PortraitSpec& spec, const std::string& out_path,
                 std::ostream& err);
int cmd_verify(const std::string& path, double tolerance, std::ostream& out, std::ostream& err);
int cmd_gen(std::uint64_t seed, std::size_t n, Target target, double T, std::ostream& out, std::ostream& err);

/// P6 image bytes (header included). Rows are rendered in parallel; the
/// output does not depend on the thread count.
std::vector<unsigned char> render_portrait(const CoveringMap& map, const PortraitSpec& spec,
                                           unsigned threads = 0);

} // namespace thetacover::cli
