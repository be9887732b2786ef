#include "thetacover/cli/divisor_file.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace thetacover::cli {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

double number(const json& j, const std::string& where)
{
    if (!j.is_number()) {
        throw ParseError(where + " must be a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ParseError(where + " must be finite");
    }
    return v;
}

std::vector<Complex> points(const json& j, const std::string& key)
{
    if (!j.is_array()) {
        throw ParseError("\"" + key + "\" must be an array of {re, im} objects");
    }
    std::vector<Complex> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& e = j[i];
        const std::string where = key + "[" + std::to_string(i) + "]";
        if (!e.is_object() || !e.contains("re") || !e.contains("im")) {
            throw ParseError(where + " must be an object with \"re\" and \"im\"");
        }
        out.emplace_back(number(e["re"], where + ".re"), number(e["im"], where + ".im"));
    }
    return out;
}

json point_array(const std::vector<Complex>& pts)
{
    json arr = json::array();
    for (const Complex& p : pts) {
        arr.push_back({{"re", p.real()}, {"im", p.imag()}});
    }
    return arr;
}

bool annulus_target(Target t)
{
    return t == Target::halfplane || t == Target::disc;
}

} // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(line > 0 ? message + " at line " + std::to_string(line) + ", column " + std::to_string(column)
                     : message),
      line_(line), column_(column)
{
}

const char* target_name(Target t)
{
    switch (t) {
    case Target::halfplane: return "halfplane";
    case Target::disc: return "disc";
    case Target::classical_rational: return "classical-rational";
    case Target::classical_blaschke: return "classical-blaschke";
    }
    return "";
}

std::optional<Target> parse_target(const std::string& name)
{
    for (Target t : {Target::halfplane, Target::disc, Target::classical_rational, Target::classical_blaschke}) {
        if (name == target_name(t)) return t;
    }
    return std::nullopt;
}

DivisorFile parse_divisor_file(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        throw ParseError("malformed JSON: " + std::string(e.what()), line, column);
    }
    if (!doc.is_object()) {
        throw ParseError("divisor file must be a JSON object");
    }

    DivisorFile file;
    if (!doc.contains("target") || !doc["target"].is_string()) {
        throw ParseError("missing string field \"target\"");
    }
    const auto target = parse_target(doc["target"].get<std::string>());
    if (!target) {
        throw ParseError("unknown target \"" + doc["target"].get<std::string>() + "\"");
    }
    file.target = *target;

    if (!doc.contains("surface") || !doc["surface"].is_object()) {
        throw ParseError("missing object field \"surface\"");
    }
    const json& surface = doc["surface"];
    const std::string kind = surface.value("kind", std::string());
    if (kind == "annulus") {
        const bool has_T = surface.contains("T");
        const bool has_r = surface.contains("r");
        if (has_T == has_r) {
            throw ParseError("annulus surface needs exactly one of \"T\" and \"r\"");
        }
        std::optional<double> T;
        if (has_T) {
            T = number(surface["T"], "surface.T");
            if (!(*T > 0.0)) throw ParseError("surface.T must be positive");
        } else {
            const double r = number(surface["r"], "surface.r");
            if (!(r > 1.0)) throw ParseError("surface.r must exceed 1");
            T = std::numbers::pi / std::log(r);
        }
        file.surface = SurfaceSpec::annulus(*T);
    } else if (kind == "disc") {
        file.surface = SurfaceSpec::disc();
    } else {
        throw ParseError("surface.kind must be \"annulus\" or \"disc\"");
    }
    if (annulus_target(file.target) != file.surface.is_annulus()) {
        throw ParseError(std::string("target \"") + target_name(file.target) + "\" needs a " +
                         (annulus_target(file.target) ? "annulus" : "disc") + " surface");
    }

    if (!doc.contains("zeros")) {
        throw ParseError("missing field \"zeros\"");
    }
    file.zeros = points(doc["zeros"], "zeros");
    const bool wants_poles = file.target == Target::halfplane || file.target == Target::classical_rational;
    if (doc.contains("poles")) {
        if (!wants_poles) {
            throw ParseError(std::string("target \"") + target_name(file.target) + "\" takes no \"poles\"");
        }
        file.poles = points(doc["poles"], "poles");
    } else if (wants_poles) {
        throw ParseError("missing field \"poles\"");
    }
    if (doc.contains("phase")) file.phase = number(doc["phase"], "phase");
    if (doc.contains("scale")) file.scale = number(doc["scale"], "scale");
    if (doc.contains("m")) {
        if (!doc["m"].is_number_integer()) throw ParseError("m must be an integer");
        file.m = doc["m"].get<long>();
    }
    return file;
}

DivisorFile read_divisor_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_divisor_file(buffer.str());
}

std::string serialize(const DivisorFile& file)
{
    json doc;
    doc["target"] = target_name(file.target);
    if (file.surface.is_annulus()) {
        doc["surface"] = {{"kind", "annulus"}, {"T", file.surface.T()}};
    } else {
        doc["surface"] = {{"kind", "disc"}};
    }
    doc["zeros"] = point_array(file.zeros);
    if (file.target == Target::halfplane || file.target == Target::classical_rational) {
        doc["poles"] = point_array(file.poles);
    }
    if (file.phase) doc["phase"] = *file.phase;
    if (file.scale) doc["scale"] = *file.scale;
    if (file.m) doc["m"] = *file.m;
    return doc.dump(2) + "\n";
}

LatticeReport check_divisor_file(const DivisorFile& file)
{
    switch (file.target) {
    case Target::halfplane: {
        LatticeReport r = validate_halfplane({file.zeros, file.poles}, file.surface);
        if (file.m && r.structurally_valid() && *file.m != r.m) {
            r.valid = false;
            r.violations.push_back({clause::lattice_halfplane,
                                    "declared m = " + std::to_string(*file.m) + " but the divisor gives m = " +
                                        std::to_string(r.m)});
        }
        return r;
    }
    case Target::disc:
        return validate_disc({file.zeros}, file.surface);
    case Target::classical_rational: {
        LatticeReport r;
        std::vector<double> zeros;
        std::vector<double> poles;
        bool real = true;
        for (const Complex& z : file.zeros) {
            real = real && std::abs(z.imag()) <= kOvalTolerance;
            zeros.push_back(z.real());
        }
        for (const Complex& p : file.poles) {
            real = real && std::abs(p.imag()) <= kOvalTolerance;
            poles.push_back(p.real());
        }
        r = validate_classical(ClassicalDivisor::make(zeros, poles));
        if (!real) {
            r.valid = false;
            r.violations.push_back({clause::real_support, "zeros and poles must be real"});
        }
        return r;
    }
    case Target::classical_blaschke: {
        LatticeReport r;
        r.valid = true;
        for (const Complex& a : file.zeros) {
            if (!(std::abs(a) < 1.0)) {
                std::ostringstream os;
                os << "zero " << a << " is not strictly inside the unit disc";
                r.violations.push_back({clause::interior, os.str()});
            }
        }
        if (file.zeros.empty() || file.zeros.size() > kMaxDegree) {
            r.violations.push_back({clause::count, "need between 1 and " + std::to_string(kMaxDegree) + " zeros"});
        }
        r.valid = r.violations.empty();
        return r;
    }
    }
    return {};
}

CoveringMap build_map(const DivisorFile& file, bool unchecked)
{
    const Complex phase = std::polar(1.0, file.phase.value_or(0.0));
    switch (file.target) {
    case Target::halfplane: {
        const HalfPlaneDivisor d{file.zeros, file.poles};
        return unchecked ? HalfPlaneCover::create_unchecked(d, file.surface) : HalfPlaneCover::create(d, file.surface);
    }
    case Target::disc: {
        const DiscDivisor d{file.zeros};
        return unchecked ? DiscCover::create_unchecked(d, file.surface, phase)
                         : DiscCover::create(d, file.surface, phase);
    }
    case Target::classical_rational: {
        std::vector<double> zeros;
        std::vector<double> poles;
        for (const Complex& z : file.zeros) zeros.push_back(z.real());
        for (const Complex& p : file.poles) poles.push_back(p.real());
        return RationalCover::create(ClassicalDivisor::make(zeros, poles), file.scale.value_or(1.0));
    }
    case Target::classical_blaschke:
        return BlaschkeCover::create(file.zeros, phase);
    }
    throw InvalidArgument("unknown target");
}

} // namespace thetacover::cli
