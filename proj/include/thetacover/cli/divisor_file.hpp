#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thetacover/covering.hpp"
#include "thetacover/divisor.hpp"
#include "thetacover/error.hpp"

namespace thetacover::cli {

enum class Target { halfplane, disc, classical_rational, classical_blaschke };

const char* target_name(Target t);
std::optional<Target> parse_target(const std::string& name);

/// In-memory form of the JSON divisor file:
///
///   {"target": "halfplane", "surface": {"kind": "annulus", "T": 1.0},
///    "zeros": [{"re": 0, "im": 0.2}], "poles": [{"re": 0, "im": 0.7}], "m": 0}
///
/// phase is an angle in radians; scale applies to classical-rational only.
struct DivisorFile {
    Target target = Target::halfplane;
    SurfaceSpec surface = SurfaceSpec::disc();
    std::vector<Complex> zeros;
    std::vector<Complex> poles;
    std::optional<double> phase;
    std::optional<double> scale;
    std::optional<long> m;
};

/// Malformed or schema-violating input. line/column are 1-based, 0 if unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

DivisorFile parse_divisor_file(const std::string& text);
DivisorFile read_divisor_file(const std::string& path);
std::string serialize(const DivisorFile& file);

/// Validation through the divisor module, plus the file-only clauses
/// (declared m, real support of classical divisors, Blaschke zeros inside).
LatticeReport check_divisor_file(const DivisorFile& file);

/// Builds the map. With `unchecked`, an annulus divisor that fails only its
/// lattice condition is still constructed.
CoveringMap build_map(const DivisorFile& file, bool unchecked = false);

} // namespace thetacover::cli
