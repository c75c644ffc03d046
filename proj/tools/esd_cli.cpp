// esd_cli.cpp
// Command-line front end: negativity/purity surfaces, boundary reports,
// p_end curves, the validation suite and the interferometer cross-check.
//
// Exit codes: 0 ok, 1 bad parameters, 2 I/O failure, 3 validation failure.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "esd/analysis.hpp"
#include "esd/dilation.hpp"
#include "esd/io.hpp"
#include "esd/validation.hpp"

namespace {

enum ExitCode { kOk = 0, kBadParameters = 1, kIoFailure = 2, kValidationFailure = 3 };

class BadParameters : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StateOptions {
    std::string family = "pure";
    double alpha2 = 0.2;
    double delta = 0.0;
    std::optional<double> u, x, b, c, v, a, d, z;
};

struct ScenarioOptions {
    std::string scenario = "none";
    std::string target = "one";
    double pn = 0.0;
};

struct OutputOptions {
    std::string out;
    std::string format = "csv";
};

double require(const std::optional<double>& value, const char* flag) {
    if (!value) throw BadParameters(std::string("missing ") + flag);
    return *value;
}

void add_state_flags(CLI::App* cmd, StateOptions& s) {
    cmd->add_option("--family", s.family, "pure | outer-x | appendix-b | appendix-c")
        ->check(CLI::IsMember({"pure", "outer-x", "appendix-b", "appendix-c"}));
    cmd->add_option("--alpha2", s.alpha2, "pure family: |alpha|^2 = P(gg)");
    cmd->add_option("--delta", s.delta, "pure family: relative phase");
    cmd->add_option("--u", s.u, "outer-x: P(gg)");
    cmd->add_option("--x", s.x, "outer-x: P(ee) (default 1 - u - b - c)");
    cmd->add_option("--v", s.v, "outer-x: corner coherence (real)");
    cmd->add_option("--a", s.a, "appendix-b/c: P(ee)");
    cmd->add_option("--b", s.b, "middle population");
    cmd->add_option("--c", s.c, "middle population");
    cmd->add_option("--d", s.d, "appendix-b/c: P(gg)");
    cmd->add_option("--z", s.z, "appendix-b/c: coherence (real)");
}

void add_scenario_flags(CLI::App* cmd, ScenarioOptions& s) {
    cmd->add_option("--scenario", s.scenario, "none | single | double")
        ->check(CLI::IsMember({"none", "single", "double"}));
    cmd->add_option("--target", s.target, "single NOT target: one | two")->check(CLI::IsMember({"one", "two"}));
    cmd->add_option("--pn", s.pn, "NOT point p_n");
}

void add_output_flags(CLI::App* cmd, OutputOptions& o, bool with_format) {
    cmd->add_option("--out", o.out, "output path (stdout when omitted)");
    if (with_format) cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

esd::OuterXParams outer_params(const StateOptions& s) {
    const double u = require(s.u, "--u");
    const double b = s.b.value_or(0.0);
    const double c = s.c.value_or(0.0);
    const double x = s.x.value_or(1.0 - u - b - c);
    return {u, x, b, c, esd::Complex{require(s.v, "--v")}};
}

esd::ExcitedFirstOuterParams excited_first_outer_params(const StateOptions& s) {
    return {require(s.a, "--a"), require(s.b, "--b"), require(s.c, "--c"), require(s.d, "--d"),
            esd::Complex{require(s.z, "--z")}};
}

esd::InnerXParams inner_x_params(const StateOptions& s) {
    const double a = require(s.a, "--a");
    const double b = require(s.b, "--b");
    const double c = require(s.c, "--c");
    // d defaults to the remaining population.
    const double d = s.d.value_or(1.0 - a - b - c);
    return {a, b, c, d, esd::Complex{require(s.z, "--z")}};
}

void check_pure(const StateOptions& s) {
    if (!(s.alpha2 >= 0.0 && s.alpha2 <= 1.0)) throw BadParameters("--alpha2 must lie in [0, 1]");
    if (!std::isfinite(s.delta)) throw BadParameters("--delta must be finite");
}

esd::DensityMatrix4 build_state(const StateOptions& s) {
    if (s.family == "pure") {
        check_pure(s);
        return esd::from_pure(std::sqrt(s.alpha2), std::sqrt(1.0 - s.alpha2), s.delta);
    }
    if (s.family == "outer-x") return esd::from_outer_x(outer_params(s));
    if (s.family == "appendix-b") return esd::from_outer_x(excited_first_outer_params(s));
    return esd::from_inner_x(inner_x_params(s));
}

// Pure states and outer X-states with empty middle populations.
esd::MainFamily main_family(const StateOptions& s) {
    if (s.family == "pure") {
        check_pure(s);
        return esd::MainFamily::pure(s.alpha2);
    }
    if (s.family == "outer-x") {
        const auto p = outer_params(s);
        if (p.b_pop != 0.0 || p.c_pop != 0.0) throw BadParameters("this command needs --b 0 --c 0");
        esd::from_outer_x(p);  // validates
        return {p.u, p.x, std::abs(p.v)};
    }
    throw BadParameters("this command supports --family pure or outer-x only");
}

esd::Scenario build_scenario(const ScenarioOptions& s) {
    const esd::DecayProbability pn(s.pn);
    if (s.scenario == "none") return esd::Scenario::none();
    if (s.scenario == "double") return esd::Scenario::both(pn);
    return esd::Scenario::single(pn, s.target == "two" ? esd::NotTarget::QubitTwo : esd::NotTarget::QubitOne);
}

void emit(const OutputOptions& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw esd::io::IoError("failed writing to stdout");
        return;
    }
    esd::io::write_atomically(o.out, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement sudden death under amplitude damping with NOT operations"};
    app.require_subcommand(1);

    StateOptions state;
    ScenarioOptions scen;
    OutputOptions out;
    std::size_t resolution = 101;
    std::size_t points = 101;
    std::string variant = "double";

    auto* surface = app.add_subcommand("surface", "negativity and purity over the (p, p') square");
    add_state_flags(surface, state);
    add_scenario_flags(surface, scen);
    surface->add_option("--res", resolution, "grid points per axis")->check(CLI::Range(2, 100000));
    add_output_flags(surface, out, true);

    auto* boundaries = app.add_subcommand("boundaries", "ESD and NOT boundary values as JSON");
    add_state_flags(boundaries, state);
    add_output_flags(boundaries, out, false);

    auto* curve = app.add_subcommand("pend-curve", "p_end against p_n, closed form and numerical");
    add_state_flags(curve, state);
    curve->add_option("--variant", variant, "single | double")->check(CLI::IsMember({"single", "double"}));
    curve->add_option("--points", points, "grid points on [0, p0]")->check(CLI::Range(2, 1000000));
    add_output_flags(curve, out, true);

    auto* validate = app.add_subcommand("validate", "run the invariant suite, JSON summary");
    add_output_flags(validate, out, false);

    auto* dcheck = app.add_subcommand("dilation-check", "interferometer model against the Kraus pipeline");
    add_state_flags(dcheck, state);
    add_scenario_flags(dcheck, scen);
    dcheck->add_option("--res", resolution, "grid points per axis")->check(CLI::Range(2, 1000));
    add_output_flags(dcheck, out, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadParameters;
    }

    try {
        if (surface->parsed()) {
            const auto grid = esd::sweep_surface(build_state(state), build_scenario(scen), resolution);
            emit(out, out.format == "json" ? esd::io::dump(esd::io::surface_json(grid)) : esd::io::surface_csv(grid));
        } else if (boundaries->parsed()) {
            nlohmann::ordered_json j;
            if (state.family == "appendix-c") {
                j = esd::io::inner_report_json(esd::boundaries_inner_x(inner_x_params(state)));
            } else if (state.family == "appendix-b") {
                const auto p = excited_first_outer_params(state);
                esd::from_outer_x(p);
                j = esd::io::boundaries_json(esd::boundaries_outer_x(p));
            } else if (state.family == "outer-x") {
                const auto p = outer_params(state);
                esd::from_outer_x(p);
                j = esd::io::boundaries_json(esd::boundaries_outer_x(p));
            } else {
                j = esd::io::boundaries_json(esd::not_boundaries_main(main_family(state)));
            }
            emit(out, esd::io::dump(j));
        } else if (curve->parsed()) {
            const auto c = esd::pend_curve(main_family(state),
                                           variant == "single" ? esd::NotVariant::Single : esd::NotVariant::Double,
                                           points);
            emit(out, out.format == "json" ? esd::io::dump(esd::io::pend_curve_json(c)) : esd::io::pend_curve_csv(c));
        } else if (validate->parsed()) {
            const auto report = esd::validation::run_all();
            emit(out, esd::io::dump(esd::validation::to_json(report)));
            return report.all_passed() ? kOk : kValidationFailure;
        } else if (dcheck->parsed()) {
            if (state.family != "pure") throw BadParameters("dilation-check needs --family pure");
            check_pure(state);
            const double alpha = std::sqrt(state.alpha2);
            const double beta = std::sqrt(1.0 - state.alpha2);
            const auto rho0 = esd::from_pure(alpha, beta, state.delta);
            const auto base = build_scenario(scen);
            double worst = 0.0;
            for (std::size_t i = 0; i < resolution; ++i)
                for (std::size_t k = 0; k < resolution; ++k) {
                    const esd::DecayProbability p(esd::grid_point(i, resolution));
                    const esd::DecayProbability pp(esd::grid_point(k, resolution));
                    const auto s = base.with_pn(p);
                    const auto kraus = esd::evolve_scenario(rho0, s, p, pp);
                    const auto reduced = esd::dilation::trace_out_reservoir(
                        esd::dilation::evolve_dilated(alpha, beta, state.delta, s, p, pp));
                    worst = std::max(worst, esd::max_abs_diff(kraus.matrix(), reduced.matrix()));
                }
            const bool passed = worst <= 1e-12;
            nlohmann::ordered_json j;
            j["scenario"] = scen.scenario;
            j["resolution"] = resolution;
            j["max_abs_diff"] = worst;
            j["tolerance"] = 1e-12;
            j["passed"] = passed;
            emit(out, esd::io::dump(j));
            return passed ? kOk : kValidationFailure;
        }
    } catch (const esd::io::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const BadParameters& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadParameters;
    } catch (const esd::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadParameters;
    }
    return kOk;
}
