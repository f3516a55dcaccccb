// Copyright 2026 The passage-lab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "passage/cli.hpp"

#include "passage/error.hpp"
#include "passage/io.hpp"
#include "passage/law.hpp"
#include "passage/mhs.hpp"
#include "passage/qubit.hpp"
#include "passage/selection.hpp"
#include "passage/sphere.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace passage::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char *kSeedEnv = "PASSAGE_LAB_SEED";

/// Raised for I/O failures so they map to exit code 3.
struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised for flag values that parse but make no sense.
struct UsageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(const std::string &text, const char *source) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw UsageFailure(std::string(source) + ": not an unsigned integer seed: '" + text + "'");
    }
    return v;
}

SpherePoint parse_axis(const std::string &text) {
    static const std::map<std::string, std::pair<double, double>> named = {
        {"north", {0.0, 0.0}}, {"south", {180.0, 0.0}}, {"east", {90.0, 90.0}}, {"west", {90.0, -90.0}}};
    if (auto it = named.find(text); it != named.end()) {
        return SpherePoint::from_degrees(it->second.first, it->second.second);
    }
    const auto comma = text.find(',');
    if (comma != std::string::npos) {
        double theta = 0.0;
        double phi = 0.0;
        const char *b = text.data();
        const char *m = b + comma;
        const char *e = b + text.size();
        const auto r1 = std::from_chars(b, m, theta);
        const auto r2 = std::from_chars(m + 1, e, phi);
        if (r1.ec == std::errc() && r1.ptr == m && r2.ec == std::errc() && r2.ptr == e) {
            return SpherePoint::from_degrees(theta, phi);
        }
    }
    throw UsageFailure("--axis must be north, south, east, west or THETA_DEG,PHI_DEG; got '" + text + "'");
}

ProbabilityLaw parse_law(const std::string &text) {
    if (text == "qm") {
        return ProbabilityLaw::qm();
    }
    if (text == "cos4") {
        return ProbabilityLaw::cos4();
    }
    const std::string prefix = "custom:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string path = text.substr(prefix.size());
        std::ifstream in(path);
        if (!in) {
            throw IoFailure("cannot read law file '" + path + "'");
        }
        return ProbabilityLaw::from_table(io::read_law_table(in), "custom:" + path);
    }
    throw UsageFailure("unknown law '" + text + "' (expected qm, cos4 or custom:<file>)");
}

Format resolve_format(const RunConfig &cfg, Format fallback, std::initializer_list<Format> allowed) {
    const Format f = cfg.format.value_or(fallback);
    for (Format a : allowed) {
        if (a == f) {
            return f;
        }
    }
    throw UsageFailure("subcommand " + cfg.subcommand + " does not support the requested --format");
}

std::string dump(const ordered_json &j) { return j.dump(2) + "\n"; }

void emit(const RunConfig &cfg, const std::string &payload, std::ostream &out) {
    if (cfg.output.empty()) {
        out << payload;
        out.flush();
        if (!out) {
            throw IoFailure("failed writing to standard output");
        }
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoFailure("cannot open '" + cfg.output + "' for writing");
    }
    file << payload;
    file.close();
    if (!file) {
        throw IoFailure("failed writing '" + cfg.output + "'");
    }
}

void append(ordered_json &j, const ordered_json &fields) {
    for (const auto &[k, v] : fields.items()) {
        j[k] = v;
    }
}

std::string contour_payload(const RunConfig &cfg) {
    const Format f = resolve_format(cfg, Format::Csv, {Format::Csv, Format::Json});
    const ContourGrid grid = cs_contour_grid(cfg.resolution);
    if (f == Format::Json) {
        return dump(io::to_json(grid));
    }
    std::ostringstream os;
    io::write_contour_csv(os, grid);
    return os.str();
}

std::string sphere_map_payload(const RunConfig &cfg) {
    const Format f = resolve_format(cfg, Format::Csv, {Format::Csv, Format::Json});
    const auto rows = sphere_map(cfg.resolution);
    if (f == Format::Json) {
        return dump(io::to_json(rows));
    }
    std::ostringstream os;
    io::write_sphere_map_csv(os, rows);
    return os.str();
}

std::string cs_sim_payload(const RunConfig &cfg, double ps, double po, std::size_t shards) {
    const Format f = resolve_format(cfg, Format::Json, {Format::Json, Format::Csv});
    const UnitSquarePoint point(ps, po);
    const double cs = cs_probability(point);
    const CSEstimate est = simulate_correlated_selection(point, cfg.trials, cfg.seed, shards);
    const double diff = est.frequency_heads - cs;
    std::optional<double> z;
    if (est.standard_error > 0.0) {
        z = diff / est.standard_error;
    } else if (diff == 0.0) {
        z = 0.0;
    }
    const double retained = static_cast<double>(est.trials_retained) / static_cast<double>(est.trials_total);
    const double retained_expected = ps * po + (1.0 - ps) * (1.0 - po);

    if (f == Format::Csv) {
        std::ostringstream os;
        os << "p_s,p_o,trials_total,trials_retained,count_00,count_11,frequency_heads,standard_error,cs_analytic,"
              "z_score,seed\n";
        os << io::format_number(ps) << ',' << io::format_number(po) << ',' << est.trials_total << ','
           << est.trials_retained << ',' << est.count_00 << ',' << est.count_11 << ','
           << io::format_number(est.frequency_heads) << ',' << io::format_number(est.standard_error) << ','
           << io::format_number(cs) << ',' << io::format_number(z) << ',' << est.seed << '\n';
        return os.str();
    }
    ordered_json j{{"command", "cs-sim"}, {"p_s", ps}, {"p_o", po}};
    append(j, io::to_json(est));
    j["cs_analytic"] = cs;
    j["z_score"] = z ? ordered_json(*z) : ordered_json(nullptr);
    j["retained_fraction"] = retained;
    j["retained_fraction_expected"] = retained_expected;
    return dump(j);
}

std::string cdp_payload(const RunConfig &cfg, double theta_deg, double phi_deg, const std::string &axis_text) {
    resolve_format(cfg, Format::Json, {Format::Json});
    if (!std::isfinite(theta_deg) || theta_deg < 0.0 || theta_deg > 180.0) {
        throw UsageFailure("--theta must be in [0, 180] degrees");
    }
    if (!std::isfinite(phi_deg)) {
        throw UsageFailure("--phi must be finite");
    }
    const SpherePoint system = SpherePoint::from_degrees(theta_deg, phi_deg);
    const SpherePoint axis = parse_axis(axis_text);
    const CDPReport report = cdp_report(system, axis);
    ordered_json j{{"command", "cdp"}, {"system", io::sphere_point_json(system)}, {"axis", io::sphere_point_json(axis)}};
    append(j, io::to_json(report));
    return dump(j);
}

std::string mhs_payload(const RunConfig &cfg, int ensembles, int directions, double tolerance) {
    const Format f = resolve_format(cfg, Format::Json, {Format::Json, Format::Csv});
    const ProbabilityLaw law = parse_law(cfg.law);
    if (f == Format::Csv) {
        const AffineSpan span = affine_span(law, ensembles, directions, cfg.seed, tolerance);
        std::ostringstream os;
        io::write_response_matrix_csv(os, span.responses);
        return os.str();
    }
    MHSVerdict verdict;
    if (ensembles == kDefaultEnsembles && directions == kDefaultDirections && tolerance == kDefaultRankTolerance) {
        verdict = mhs_check(law, cfg.seed);
    } else {
        verdict.law = law.tag();
        verdict.law_name = law.name();
        verdict.affine_dimension = affine_span_dimension(law, ensembles, directions, cfg.seed, tolerance);
        verdict.witness = equal_mean_witness(law);
        verdict.holds_at_quantum_dimension = verdict.affine_dimension <= 3 && !verdict.witness;
    }
    ordered_json j{{"command", "mhs"}, {"seed", cfg.seed}};
    append(j, io::to_json(verdict));
    j["pure_manifold_dimension"] = pure_manifold_dimension(law, cfg.seed);
    return dump(j);
}

} // namespace

Environment Environment::from_process() {
    Environment env;
    if (const char *s = std::getenv(kSeedEnv)) {
        env.seed = std::string(s);
    }
    return env;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const Environment &env) {
    CLI::App app{"Correlated-selection and qubit measurement laboratory", "passage_lab"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format_text;
    std::string seed_text;

    const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};
    auto add_common = [&](CLI::App *sub, bool seeded) {
        sub->add_option("--output,-o", cfg.output, "Output file (default: standard output)");
        sub->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"csv", "json"}));
        if (seeded) {
            sub->add_option("--seed", seed_text, "RNG seed (default: $PASSAGE_LAB_SEED or 0)");
        }
    };

    auto *contour = app.add_subcommand("contour", "CS values on a uniform grid of the unit square");
    contour->add_option("--resolution", cfg.resolution, "Grid points per axis")->capture_default_str();
    add_common(contour, false);

    auto *sphere = app.add_subcommand("sphere-map", "Square-to-sphere coordinates on a uniform grid");
    sphere->add_option("--resolution", cfg.resolution, "Grid points per axis")->capture_default_str();
    add_common(sphere, false);

    double ps = 0.0;
    double po = 0.0;
    std::size_t shards = kDefaultShards;
    auto *cs_sim = app.add_subcommand("cs-sim", "Monte Carlo correlated selection");
    cs_sim->add_option("--ps", ps, "System heads probability")->required();
    cs_sim->add_option("--po", po, "Observer heads probability")->required();
    cs_sim->add_option("--trials", cfg.trials, "Number of paired flips")->capture_default_str();
    cs_sim->add_option("--shards", shards, "Independent RNG streams")->capture_default_str();
    add_common(cs_sim, true);

    double theta = 0.0;
    double phi = 0.0;
    std::string axis = "north";
    auto *cdp = app.add_subcommand("cdp", "Measure a qubit into a memory qubit, then reverse the measurement");
    cdp->add_option("--theta", theta, "System colatitude in degrees")->capture_default_str();
    cdp->add_option("--phi", phi, "System longitude in degrees")->capture_default_str();
    cdp->add_option("--axis", axis, "north|south|east|west or THETA_DEG,PHI_DEG")->capture_default_str();
    add_common(cdp, false);

    int ensembles = kDefaultEnsembles;
    int directions = kDefaultDirections;
    double tolerance = kDefaultRankTolerance;
    auto *mhs = app.add_subcommand("mhs", "Mixtures-have-state check of a probability law");
    mhs->add_option("--law", cfg.law, "qm | cos4 | custom:<file>")->capture_default_str();
    mhs->add_option("--ensembles", ensembles, "Random ensembles")->capture_default_str();
    mhs->add_option("--directions", directions, "Random measurement directions")->capture_default_str();
    mhs->add_option("--tolerance", tolerance, "Relative singular-value threshold")->capture_default_str();
    add_common(mhs, true);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, err, err);
        return kExitUsage;
    }

    try {
        if (!format_text.empty()) {
            cfg.format = formats.at(format_text);
        }
        if (!seed_text.empty()) {
            cfg.seed = parse_seed(seed_text, "--seed");
        } else if (env.seed) {
            cfg.seed = parse_seed(*env.seed, kSeedEnv);
        }

        std::string payload;
        if (contour->parsed()) {
            cfg.subcommand = "contour";
            payload = contour_payload(cfg);
        } else if (sphere->parsed()) {
            cfg.subcommand = "sphere-map";
            payload = sphere_map_payload(cfg);
        } else if (cs_sim->parsed()) {
            cfg.subcommand = "cs-sim";
            payload = cs_sim_payload(cfg, ps, po, shards);
        } else if (cdp->parsed()) {
            cfg.subcommand = "cdp";
            payload = cdp_payload(cfg, theta, phi, axis);
        } else {
            cfg.subcommand = "mhs";
            payload = mhs_payload(cfg, ensembles, directions, tolerance);
        }
        emit(cfg, payload, out);
    } catch (const IoFailure &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const UsageFailure &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const LabError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}

} // namespace passage::cli
