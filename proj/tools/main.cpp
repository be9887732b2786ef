#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "thetacover/cli/commands.hpp"

using namespace thetacover;
using namespace thetacover::cli;

namespace {

std::vector<double> split_numbers(const std::string& text, char sep)
{
    std::vector<double> out;
    std::stringstream ss(text);
    ss.imbue(std::locale::classic());
    std::string item;
    while (std::getline(ss, item, sep)) {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Theta-function coverings of the disc and the annulus"};
    app.require_subcommand(1);
    int code = kExitOk;

    std::string path;
    auto* check = app.add_subcommand("check", "Validate a divisor file");
    check->add_option("file", path, "divisor JSON")->required();
    check->callback([&] { code = cmd_check(path, std::cout, std::cerr); });

    std::string point;
    std::string grid;
    std::string window;
    auto* eval = app.add_subcommand("eval", "Evaluate the map at a point or on a grid (CSV)");
    eval->add_option("file", path, "divisor JSON")->required();
    auto* point_opt = eval->add_option("--point", point, "re,im");
    auto* grid_opt = eval->add_option("--grid", grid, "WxH");
    eval->add_option("--window", window, "x0,y0,x1,y1")->needs(grid_opt);
    point_opt->excludes(grid_opt);
    eval->callback([&] {
        EvalRequest req;
        try {
            if (!point.empty()) {
                const auto v = split_numbers(point, ',');
                if (v.size() != 2) throw std::invalid_argument(point);
                req.point = Complex(v[0], v[1]);
            } else if (!grid.empty()) {
                const auto wh = split_numbers(grid, 'x');
                const auto win = split_numbers(window, ',');
                if (wh.size() != 2 || win.size() != 4) throw std::invalid_argument(grid);
                req.grid_width = static_cast<int>(wh[0]);
                req.grid_height = static_cast<int>(wh[1]);
                req.window = {win[0], win[1], win[2], win[3]};
            }
        } catch (const std::exception&) {
            std::cerr << "error: malformed --point, --grid or --window\n";
            code = kExitParse;
            return;
        }
        code = cmd_eval(path, req, std::cout, std::cerr);
    });

    int oval = 0;
    int samples = 256;
    auto* trace = app.add_subcommand("trace", "Image of a boundary oval (CSV)");
    trace->add_option("file", path, "divisor JSON")->required();
    trace->add_option("--oval", oval, "0 or 1")->check(CLI::Range(0, 1));
    trace->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber);
    trace->callback([&] { code = cmd_trace(path, oval, samples, std::cout, std::cerr); });

    PortraitSpec spec;
    std::string out_path;
    std::string coloring = "combined";
    auto* portrait = app.add_subcommand("portrait", "Phase portrait as binary PPM");
    portrait->add_option("file", path, "divisor JSON")->required();
    portrait->add_option("--width", spec.width)->check(CLI::Range(16, 8192));
    portrait->add_option("--height", spec.height)->check(CLI::Range(16, 8192));
    portrait->add_option("--window", window, "x0,y0,x1,y1");
    portrait->add_option("--coloring", coloring)->check(CLI::IsMember({"phase-hue", "modulus-bands", "combined"}));
    portrait->add_option("--out", out_path)->required();
    portrait->callback([&] {
        const std::map<std::string, Coloring> names{
            {"phase-hue", Coloring::phase_hue}, {"modulus-bands", Coloring::modulus_bands}, {"combined", Coloring::combined}};
        spec.coloring = names.at(coloring);
        if (!window.empty()) {
            try {
                const auto win = split_numbers(window, ',');
                if (win.size() != 4) throw std::invalid_argument(window);
                spec.window = std::array<double, 4>{win[0], win[1], win[2], win[3]};
            } catch (const std::exception&) {
                std::cerr << "error: malformed --window\n";
                code = kExitParse;
                return;
            }
        }
        code = cmd_portrait(path, spec, out_path, std::cerr);
    });

    double tol = 1e-8;
    auto* verify = app.add_subcommand("verify", "Numerical verification report (JSON)");
    verify->add_option("file", path, "divisor JSON")->required();
    verify->add_option("--tol", tol, "tolerance forwarded to every check");
    verify->callback([&] { code = cmd_verify(path, tol, std::cout, std::cerr); });

    std::uint64_t seed = 0;
    std::size_t n = 2;
    std::string target = "halfplane";
    double T = 1.0;
    auto* gen = app.add_subcommand("gen", "Seeded random valid divisor file");
    gen->add_option("--seed", seed);
    gen->add_option("--n", n);
    gen->add_option("--target", target)
        ->check(CLI::IsMember({"halfplane", "disc", "classical-rational", "classical-blaschke"}));
    gen->add_option("--T", T);
    gen->callback([&] { code = cmd_gen(seed, n, *parse_target(target), T, std::cout, std::cerr); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParse;
    }
    return code;
}
