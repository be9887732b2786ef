#include "thetacover/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "json.hpp"
#include "thetacover/verify.hpp"

namespace thetacover::cli {

using nlohmann::json;

namespace {

json report_json(const DivisorFile& file, const LatticeReport& r)
{
    json violations = json::array();
    for (const Violation& v : r.violations) {
        violations.push_back({{"clause", v.clause}, {"message", v.message}});
    }
    json out{{"target", target_name(file.target)}, {"valid", r.valid}, {"violations", violations}};
    if (file.surface.is_annulus()) {
        out["condition_value"] = r.condition_value;
        out["m"] = r.m;
        out["deviation"] = r.deviation;
    }
    return out;
}

json checks_json(const VerificationReport& report)
{
    json checks = json::array();
    for (const Check& c : report.checks()) {
        checks.push_back({{"name", c.name},
                          {"measured_error", c.measured},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass},
                          {"details", c.details}});
    }
    return checks;
}

// Parses the file and reports parse errors; nullopt means exit 2.
std::optional<DivisorFile> load(const std::string& path, std::ostream& err)
{
    try {
        return read_divisor_file(path);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return std::nullopt;
    }
}

// Loads, validates and builds; nullopt with `code` set on failure.
std::optional<CoveringMap> load_map(const std::string& path, std::ostream& err, int& code)
{
    const auto file = load(path, err);
    if (!file) {
        code = kExitParse;
        return std::nullopt;
    }
    const LatticeReport r = check_divisor_file(*file);
    if (!r.valid) {
        err << "error: invalid divisor\n" << report_json(*file, r).dump(2) << "\n";
        code = kExitInvalid;
        return std::nullopt;
    }
    try {
        return build_map(*file);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        code = kExitInvalid;
        return std::nullopt;
    }
}

std::array<double, 4> default_window(const CoveringMap& map)
{
    switch (kind(map)) {
    case MapKind::annulus_halfplane: return {0.0, 0.0, 0.5, std::get<HalfPlaneCover>(map).surface().T()};
    case MapKind::annulus_disc: return {0.0, 0.0, 0.5, std::get<DiscCover>(map).surface().T()};
    case MapKind::classical_rational: return {-2.0, 0.0, 2.0, 2.0};
    case MapKind::classical_blaschke: return {-1.0, -1.0, 1.0, 1.0};
    }
    return {0.0, 0.0, 1.0, 1.0};
}

} // namespace

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string csv_row(Complex x, const Extended& h)
{
    std::string row = format_number(x.real()) + "," + format_number(x.imag()) + ",";
    if (h.is_infinite()) {
        return row + "inf,inf,inf,nan";
    }
    const Complex v = h.value();
    return row + format_number(v.real()) + "," + format_number(v.imag()) + "," + format_number(std::abs(v)) + "," +
           format_number(std::arg(v));
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err)
{
    const auto file = load(path, err);
    if (!file) return kExitParse;
    const LatticeReport r = check_divisor_file(*file);
    out << report_json(*file, r).dump(2) << "\n";
    return r.valid ? kExitOk : kExitInvalid;
}

int cmd_eval(const std::string& path, const EvalRequest& request, std::ostream& out, std::ostream& err)
{
    if (!request.point && (request.grid_width < 1 || request.grid_height < 1)) {
        err << "error: eval needs --point or --grid with --window\n";
        return kExitParse;
    }
    int code = kExitOk;
    const auto map = load_map(path, err, code);
    if (!map) return code;

    out << kCsvHeader << "\n";
    if (request.point) {
        out << csv_row(*request.point, evaluate(*map, *request.point)) << "\n";
        return kExitOk;
    }
    const auto [x0, y0, x1, y1] = request.window;
    const int w = request.grid_width;
    const int h = request.grid_height;
    for (int row = 0; row < h; ++row) {
        const double y = h == 1 ? y1 : std::lerp(y1, y0, static_cast<double>(row) / (h - 1));
        for (int col = 0; col < w; ++col) {
            const double x = w == 1 ? x0 : std::lerp(x0, x1, static_cast<double>(col) / (w - 1));
            out << csv_row(Complex(x, y), evaluate(*map, Complex(x, y))) << "\n";
        }
    }
    return kExitOk;
}

int cmd_trace(const std::string& path, int oval, int samples, std::ostream& out, std::ostream& err)
{
    if (samples < 1 || oval < 0 || oval > 1) {
        err << "error: trace needs --oval 0|1 and --samples >= 1\n";
        return kExitParse;
    }
    int code = kExitOk;
    const auto map = load_map(path, err, code);
    if (!map) return code;

    const MapKind k = kind(*map);
    if ((k == MapKind::classical_rational || k == MapKind::classical_blaschke) && oval != 0) {
        err << "error: the disc has a single boundary oval\n";
        return kExitInvalid;
    }
    out << kCsvHeader << "\n";
    for (int i = 0; i < samples; ++i) {
        Complex x;
        switch (k) {
        case MapKind::annulus_halfplane:
        case MapKind::annulus_disc: {
            const double T = k == MapKind::annulus_halfplane ? std::get<HalfPlaneCover>(*map).surface().T()
                                                             : std::get<DiscCover>(*map).surface().T();
            x = Complex(0.5 * oval, T * i / samples);
            break;
        }
        case MapKind::classical_rational:
            x = Complex(std::tan(std::numbers::pi * ((i + 0.5) / samples - 0.5)), 0.0);
            break;
        case MapKind::classical_blaschke:
            x = std::polar(1.0, 2.0 * std::numbers::pi * i / samples);
            break;
        }
        out << csv_row(x, evaluate(*map, x)) << "\n";
    }
    return kExitOk;
}

int cmd_portrait(const std::string& path, const PortraitSpec& spec, const std::string& out_path, std::ostream& err)
{
    if (spec.width < 16 || spec.width > 8192 || spec.height < 16 || spec.height > 8192) {
        err << "error: portrait width and height must lie in [16, 8192]\n";
        return kExitParse;
    }
    int code = kExitOk;
    const auto map = load_map(path, err, code);
    if (!map) return code;

    PortraitSpec resolved = spec;
    if (!resolved.window) resolved.window = default_window(*map);
    const std::vector<unsigned char> bytes = render_portrait(*map, resolved);
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot write " << out_path << "\n";
        return kExitParse;
    }
    file.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    return file ? kExitOk : kExitParse;
}

int cmd_verify(const std::string& path, double tolerance, std::ostream& out, std::ostream& err)
{
    const auto file = load(path, err);
    if (!file) return kExitParse;
    const LatticeReport lattice = check_divisor_file(*file);

    VerificationReport report;
    report.add({"divisor", lattice.deviation, tolerance, lattice.valid,
                lattice.valid ? "divisor validates" : "divisor fails validation"});
    json doc{{"target", target_name(file->target)}, {"validation", report_json(*file, lattice)}};
    // A divisor that fails only its lattice condition still gets a map, so
    // the report shows how single-valuedness breaks.
    if (lattice.structurally_valid() || lattice.valid) {
        try {
            const CoveringMap map = build_map(*file, true);
            report.append(verify_map(map, tolerance));
        } catch (const Error& e) {
            report.add({"verification", 0.0, tolerance, false, e.what()});
        }
    }
    doc["checks"] = checks_json(report);
    doc["overall"] = report.overall();
    out << doc.dump(2) << "\n";
    return report.overall() ? kExitOk : kExitInvalid;
}

int cmd_gen(std::uint64_t seed, std::size_t n, Target target, double T, std::ostream& out, std::ostream& err)
{
    if (!(T > 0.0) || !std::isfinite(T)) {
        err << "error: --T must be positive\n";
        return kExitParse;
    }
    DivisorFile file;
    file.target = target;
    try {
        switch (target) {
        case Target::halfplane: {
            file.surface = SurfaceSpec::annulus(T);
            const HalfPlaneDivisor d = random_halfplane_divisor(seed, n, file.surface);
            file.zeros = d.zeros;
            file.poles = d.poles;
            file.m = validate_halfplane(d, file.surface).m;
            break;
        }
        case Target::disc: {
            file.surface = SurfaceSpec::annulus(T);
            file.zeros = random_disc_divisor(seed, n, file.surface).zeros;
            break;
        }
        case Target::classical_rational: {
            const ClassicalDivisor d = random_classical_divisor(seed, n);
            for (double z : d.zeros) file.zeros.emplace_back(z, 0.0);
            for (double p : d.poles) file.poles.emplace_back(p, 0.0);
            break;
        }
        case Target::classical_blaschke: {
            const BlaschkeCover b = rational_to_blaschke(RationalCover::create(random_classical_divisor(seed, n)));
            file.zeros = b.zeros();
            file.phase = std::arg(b.phase());
            break;
        }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    out << serialize(file);
    return kExitOk;
}

} // namespace thetacover::cli
