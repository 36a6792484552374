// leaderscope — command-line front end for the multiscale regularity library.
//
// Subcommands: boyd, synth, decompose, leaders, analyze, spectrum.
// Exit codes: 0 success, 2 invalid configuration, 3 invalid input,
// 4 precondition violation (index/compatibility/resolution failures).
//
// All output is deterministic: identical configuration, input, and seed
// produce byte-identical JSON. The provenance block echoes the effective
// configuration, filter, guard, and scale ranges of every regression.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "leaderscope/admissible.hpp"
#include "leaderscope/dyadic.hpp"
#include "leaderscope/io.hpp"
#include "leaderscope/leaders.hpp"
#include "leaderscope/spaces.hpp"
#include "leaderscope/spectrum.hpp"
#include "leaderscope/synth.hpp"
#include "leaderscope/version.hpp"
#include "leaderscope/wavelet.hpp"

namespace ls = leaderscope;
using nlohmann::json;

namespace {

// ── option plumbing ─────────────────────────────────────────────────────────

/// A flag that may also come from the config file; the flag wins.
struct ConfigValue {
    std::string value;
    bool from_flag = false;
};

/// Nested JSON config file; keys are looked up with dotted paths.
class ConfigFile {
public:
    void load(const std::string& path) {
        std::ifstream in(path);
        if (!in) ls::fail(ls::ErrorKind::config, "IoError", "cannot open config file '" + path + "'");
        data_ = json::parse(in, nullptr, false);
        if (data_.is_discarded() || !data_.is_object())
            ls::fail(ls::ErrorKind::config, "ParseError",
                     "config file '" + path + "' is not a JSON object");
    }

    std::optional<std::string> lookup(const std::string& dotted) const {
        if (!data_.is_object()) return std::nullopt;
        const json* node = &data_;
        std::size_t pos = 0;
        while (true) {
            const std::size_t dot = dotted.find('.', pos);
            const std::string key = dotted.substr(pos, dot == std::string::npos ? std::string::npos
                                                                                : dot - pos);
            if (!node->is_object() || !node->contains(key)) return std::nullopt;
            node = &node->at(key);
            if (dot == std::string::npos) break;
            pos = dot + 1;
        }
        if (node->is_string()) return node->get<std::string>();
        return node->dump();
    }

    const json& raw() const { return data_; }

private:
    json data_;
};

/// Effective value of an option: flag if given, else config entry, else default.
std::string effective(const ConfigFile& config, const std::string& key, const ConfigValue& flag,
                      const std::string& fallback) {
    if (flag.from_flag) return flag.value;
    if (auto v = config.lookup(key)) return *v;
    return fallback;
}

void add_config_option(CLI::App* cmd, const std::string& name, ConfigValue& slot,
                       const std::string& help) {
    cmd->add_option_function<std::string>(
           name,
           [&slot](const std::string& v) {
               slot.value = v;
               slot.from_flag = true;
           },
           help)
        ->expected(1);
}

int parse_int(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        ls::fail(ls::ErrorKind::config, "ParseError",
                 std::string(what) + ": expected an integer, got '" + text + "'");
    }
}

double parse_real(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        ls::fail(ls::ErrorKind::config, "ParseError",
                 std::string(what) + ": expected a number, got '" + text + "'");
    }
}

std::uint64_t parse_seed(const std::string& text) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        ls::fail(ls::ErrorKind::config, "ParseError", "seed: expected an unsigned integer");
    }
}

/// "0.3" (d=1) or "0.3,0.7" (d=2) → point.
ls::Point parse_point(const std::string& text, int d) {
    const auto comma = text.find(',');
    ls::Point x0{0.0, 0.0};
    if (comma == std::string::npos) {
        if (d != 1)
            ls::fail(ls::ErrorKind::config, "ParseError", "x0 needs two coordinates when d = 2");
        x0[0] = parse_real(text, "x0");
    } else {
        if (d != 2)
            ls::fail(ls::ErrorKind::config, "ParseError", "x0 has two coordinates but d = 1");
        x0[0] = parse_real(text.substr(0, comma), "x0");
        x0[1] = parse_real(text.substr(comma + 1), "x0");
    }
    return x0;
}

/// "lo:hi" → contiguous scale list.
std::vector<int> parse_scale_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        ls::fail(ls::ErrorKind::config, "ParseError", "scale range must look like lo:hi");
    const int lo = parse_int(text.substr(0, colon), "scale range");
    const int hi = parse_int(text.substr(colon + 1), "scale range");
    if (lo > hi) ls::fail(ls::ErrorKind::config, "ParseError", "scale range is empty");
    std::vector<int> scales;
    for (int j = lo; j <= hi; ++j) scales.push_back(j);
    return scales;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) ls::fail(ls::ErrorKind::input, "IoError", "cannot open '" + path + "' for writing");
    out << text;
    if (!out) ls::fail(ls::ErrorKind::input, "IoError", "write failed for '" + path + "'");
}

/// Reads either a signal file or a pyramid file, keyed by the NDJSON header.
struct AnalysisInput {
    std::optional<ls::Signal> signal;
    std::optional<ls::CoefficientPyramid> pyramid;
};

AnalysisInput read_input(const std::string& path) {
    AnalysisInput input;
    {
        std::ifstream probe(path);
        if (!probe) ls::fail(ls::ErrorKind::input, "IoError", "cannot open '" + path + "'");
        char first = 0;
        probe.get(first);
        if (first == '{') {
            input.pyramid = ls::read_pyramid(path);
            return input;
        }
    }
    input.signal = ls::read_signal(path);
    return input;
}

json fit_json(const ls::LineFit& fit) {
    return json{{"slope", fit.slope}, {"intercept", fit.intercept},
                {"stderr_slope", fit.stderr_slope}, {"points", fit.n}};
}

json membership_json(const ls::MembershipResult& res) {
    json per_scale = json::array();
    for (std::size_t t = 0; t < res.scales.size(); ++t)
        per_scale.push_back(json{{"j", res.scales[t]}, {"value", res.values[t]}});
    json out{{"verdict", ls::to_string(res.verdict)},
             {"score", res.score},
             {"threshold", res.threshold},
             {"fit", fit_json(res.fit)},
             {"scale_range", json::array({res.scales.front(), res.scales.back()})},
             {"per_scale", per_scale}};
    if (!res.note.empty()) out["note"] = res.note;
    return out;
}

/// Membership run that records a precondition failure instead of aborting the
/// whole document (analyze reports every requested criterion side by side).
template <typename F>
json guarded(F&& run) {
    try {
        return membership_json(run());
    } catch (const ls::Error& e) {
        if (e.kind() == ls::ErrorKind::precondition)
            return json{{"verdict", "unavailable"}, {"reason", e.what()}};
        throw;
    }
}

// ── provenance ──────────────────────────────────────────────────────────────

json provenance(const json& effective_config) {
    return json{{"tool", std::string("leaderscope ") + ls::kVersion},
                {"config", effective_config}};
}

// ── subcommand: boyd ────────────────────────────────────────────────────────

int run_boyd(const ConfigFile& config, ConfigValue& sigma_opt, ConfigValue& depth_opt,
             ConfigValue& out_opt) {
    const std::string sigma_desc = effective(config, "sigma", sigma_opt, "");
    if (sigma_desc.empty())
        ls::fail(ls::ErrorKind::config, "ParseError", "boyd: --sigma is required");
    const int depth = parse_int(effective(config, "depth", depth_opt, "64"), "depth");
    if (depth < 1) ls::fail(ls::ErrorKind::config, "OutOfDomain", "boyd: depth must be >= 1");

    const ls::AdmissibleSequence sigma = ls::parse_sequence(sigma_desc);
    const ls::BoydIndices est = ls::boyd_indices(sigma, std::size_t(depth));
    const double envelope = ls::boyd_envelope(sigma, std::size_t(depth));

    json doc{{"lower", est.lower},
             {"upper", est.upper},
             {"envelope", envelope},
             {"depth", depth},
             {"sigma", ls::sequence_json(sigma)},
             {"provenance", provenance(json{{"sigma", sigma_desc}, {"depth", depth}})}};
    write_text(effective(config, "out", out_opt, "-"), doc.dump(2) + "\n");
    return 0;
}

}  // namespace

// ── subcommand: synth ───────────────────────────────────────────────────────

namespace {

int run_synth(const ConfigFile& config, std::map<std::string, ConfigValue>& opts) {
    const std::string kind = effective(config, "kind", opts["kind"], "");
    const std::string out_path = effective(config, "out", opts["out"], "");
    if (kind.empty()) ls::fail(ls::ErrorKind::config, "ParseError", "synth: --kind is required");
    if (out_path.empty()) ls::fail(ls::ErrorKind::config, "ParseError", "synth: --out is required");

    const auto opt = [&](const std::string& key, const std::string& fallback) {
        return effective(config, key, opts[key], fallback);
    };

    if (kind == "saturating") {
        ls::SaturatingSpec spec;
        spec.sigma = ls::parse_sequence(opt("sigma", "powerlog:0.8"));
        spec.r = ls::parse_index(opt("r", "2"), "r");
        spec.s = ls::parse_index(opt("s", "2"), "s");
        spec.m0 = parse_int(opt("m0", "1"), "m0");
        spec.n = parse_int(opt("n", "1"), "n");
        spec.J = parse_int(opt("J", "12"), "J");
        spec.d = parse_int(opt("d", "1"), "d");
        ls::write_pyramid(ls::gen_saturating(spec), out_path);
        return 0;
    }
    if (kind == "cone") {
        const int d = parse_int(opt("d", "1"), "d");
        const double r = ls::parse_index(opt("r", "2"), "r");
        const double s = ls::parse_index(opt("s", "2"), "s");
        const int n = parse_int(opt("n", "1"), "n");
        const int J = parse_int(opt("J", "12"), "J");
        const ls::AdmissibleSequence sigma = ls::parse_sequence(opt("sigma", "powerlog:1"));
        const ls::AdmissibleSequence modulation = ls::parse_sequence(opt("family", "powerlog:0"));
        const double p = ls::parse_index(opt("p", "inf"), "p");
        const double q = ls::parse_index(opt("q", "inf"), "q");
        const ls::RatioFunction rf(sigma, ls::AdmissibleFamily(modulation, p, q), d, r);
        const ls::Point x0 = parse_point(opt("x0", "0.5"), d);
        ls::write_pyramid(ls::gen_cone(x0, n, rf, s, J).pyramid, out_path);
        return 0;
    }
    if (kind == "cusp") {
        const double u = parse_real(opt("u", "0.5"), "u");
        const std::int64_t N = parse_int(opt("N", "32768"), "N");
        const double x0 = parse_real(opt("x0", "0.5"), "x0");
        ls::write_signal_binary(ls::gen_cusp(x0, u, N), out_path);
        return 0;
    }
    if (kind == "random") {
        const ls::AdmissibleSequence sigma = ls::parse_sequence(opt("sigma", "powerlog:0.8"));
        const double r = ls::parse_index(opt("r", "2"), "r");
        const double s = ls::parse_index(opt("s", "2"), "s");
        const int J = parse_int(opt("J", "12"), "J");
        const int d = parse_int(opt("d", "1"), "d");
        const std::uint64_t seed = parse_seed(opt("seed", "1"));
        ls::write_pyramid(ls::gen_random_besov(sigma, r, s, J, seed, d), out_path);
        return 0;
    }
    ls::fail(ls::ErrorKind::config, "ParseError",
             "synth: unknown kind '" + kind + "' (saturating|cone|cusp|random)");
}

// ── subcommand: decompose / leaders ─────────────────────────────────────────

int run_decompose(const ConfigFile& config, ConfigValue& filter_opt, ConfigValue& out_opt,
                  const std::string& input_path) {
    const ls::WaveletFilter filter = ls::make_filter(effective(config, "filter", filter_opt, "db4"));
    const ls::Signal signal = ls::read_signal(input_path);
    ls::write_pyramid(ls::decompose(signal, filter), effective(config, "out", out_opt, ""));
    return 0;
}

int run_leaders(const ConfigFile& config, ConfigValue& p_opt, ConfigValue& guard_opt,
                ConfigValue& out_opt, const std::string& input_path) {
    const double p = ls::parse_index(effective(config, "p", p_opt, "inf"), "p");
    const int guard = parse_int(effective(config, "guard", guard_opt, "2"), "guard");
    const ls::CoefficientPyramid pyramid = ls::read_pyramid(input_path);
    ls::write_leaders(ls::leader_pyramid(pyramid, p, guard),
                      effective(config, "out", out_opt, ""));
    return 0;
}

// ── subcommand: analyze ─────────────────────────────────────────────────────

int run_analyze(const ConfigFile& config, std::map<std::string, ConfigValue>& opts,
                const std::string& input_path) {
    const auto opt = [&](const std::string& key, const std::string& fallback) {
        return effective(config, key, opts.at(key), fallback);
    };

    const std::string sigma_desc = opt("sigma", "");
    if (sigma_desc.empty())
        ls::fail(ls::ErrorKind::config, "ParseError", "analyze: --sigma is required");
    const ls::AdmissibleSequence sigma = ls::parse_sequence(sigma_desc);
    const double p = ls::parse_index(opt("p", "inf"), "p");
    const double q = ls::parse_index(opt("q", "inf"), "q");
    const int guard = parse_int(opt("guard", "2"), "guard");
    if (guard < 0) ls::fail(ls::ErrorKind::config, "OutOfDomain", "analyze: guard must be >= 0");
    const std::string criterion = opt("criterion", "all");
    const std::string filter_name = opt("filter", "db4");
    const std::string x0_text = opt("x0", "");
    if (x0_text.empty())
        ls::fail(ls::ErrorKind::config, "ParseError", "analyze: --x0 is required");

    // The wavelet must out-regularize the target space: vanishing moments
    // strictly above ceil(s̄(σ)), otherwise the decomposition cannot decide it.
    const ls::WaveletFilter filter = ls::make_filter(filter_name);
    const ls::BoydIndices sigma_est = ls::boyd_indices(sigma, 64);
    if (double(filter.vanishing_moments) <= std::ceil(sigma_est.upper))
        ls::fail(ls::ErrorKind::config, "FilterMismatch",
                 "filter " + filter.name + " has " + std::to_string(filter.vanishing_moments) +
                     " vanishing moments but ceil(upper index of sigma) = " +
                     std::to_string(int(std::ceil(sigma_est.upper))) + "; choose a longer filter");

    AnalysisInput input = read_input(input_path);
    ls::CoefficientPyramid pyramid =
        input.pyramid ? std::move(*input.pyramid) : ls::decompose(*input.signal, filter);
    // Pyramid inputs skip the decomposition; the signal-side criteria then run
    // on the reconstruction, which reproduces a matching signal analysis.
    ls::Signal signal = input.signal ? std::move(*input.signal) : ls::reconstruct(pyramid, filter);

    const ls::Point x0 = parse_point(x0_text, pyramid.d);
    const ls::LeaderPyramid lp = ls::leader_pyramid(pyramid, p, guard);

    ls::DirectOptions direct_options;
    const std::string scales_text = opt("scales", "");
    if (!scales_text.empty()) direct_options.scales = parse_scale_range(scales_text);
    direct_options.surrogate.tol_slope = parse_real(opt("tol-slope", "0.05"), "tol-slope");
    ls::SurrogateOptions surrogate = direct_options.surrogate;

    const bool all = criterion == "all";
    json criteria;
    if (all || criterion == "direct")
        criteria["direct"] = guarded([&] {
            return ls::direct_membership(signal, x0, sigma, p, q, direct_options);
        });
    if (all || criterion == "leader")
        criteria["leader"] = guarded([&] { return ls::leader_criterion(lp, x0, sigma, q, surrogate); });
    if (all || criterion == "log")
        criteria["log"] = guarded([&] {
            return ls::log_corrected_criterion(lp, x0, sigma, q, surrogate);
        });
    if (all || criterion == "xu") {
        const double eta = parse_real(opt("eta", "0.5"), "eta");
        criteria["xu"] = guarded([&] { return ls::xu_check(pyramid, x0, eta, p, q, 1.0, surrogate); });
    }
    if (criteria.empty())
        ls::fail(ls::ErrorKind::config, "ParseError",
                 "analyze: unknown criterion '" + criterion + "' (direct|leader|log|xu|all)");

    json doc;
    doc["criteria"] = criteria;
    doc["exponent"] = json();
    try {
        const ls::AdmissibleFamily family(ls::parse_sequence(opt("family", "powerlog:0")), p, q);
        doc["exponent"] = ls::pointwise_exponent(lp, x0, family);
    } catch (const ls::Error& e) {
        if (e.kind() != ls::ErrorKind::precondition) throw;
        doc["exponent"] = json{{"unavailable", e.what()}};
    }

    const double r_norm = ls::parse_index(opt("r", "2"), "r");
    json norms;
    try {
        norms["besov"] = ls::besov_norm(pyramid, sigma, r_norm, q, guard);
        norms["oscillation"] = ls::oscillation_norm(pyramid, sigma, p, r_norm, q, guard);
    } catch (const ls::Error& e) {
        if (e.kind() != ls::ErrorKind::precondition) throw;
        norms = json{{"unavailable", e.what()}};
    }
    doc["norms"] = norms;

    doc["x0"] = (pyramid.d == 1) ? json::array({x0[0]}) : json::array({x0[0], x0[1]});
    doc["provenance"] =
        provenance(json{{"sigma", ls::sequence_json(sigma)},
                        {"p", ls::index_json(p)},
                        {"q", ls::index_json(q)},
                        {"r", ls::index_json(r_norm)},
                        {"filter", filter.name},
                        {"vanishing_moments", filter.vanishing_moments},
                        {"guard", guard},
                        {"criterion", criterion},
                        {"input", input.pyramid ? "pyramid" : "signal"},
                        {"leader_scale_range", json::array({0, lp.max_scale()})}});
    write_text(opt("out", "-"), doc.dump(2) + "\n");
    return 0;
}

// ── subcommand: spectrum ────────────────────────────────────────────────────

int run_spectrum(const ConfigFile& config, std::map<std::string, ConfigValue>& opts,
                 const std::string& input_path) {
    const auto opt = [&](const std::string& key, const std::string& fallback) {
        return effective(config, key, opts.at(key), fallback);
    };

    const std::string sigma_desc = opt("sigma", "");
    if (sigma_desc.empty())
        ls::fail(ls::ErrorKind::config, "ParseError", "spectrum: --sigma is required");
    const ls::AdmissibleSequence sigma = ls::parse_sequence(sigma_desc);
    const ls::AdmissibleSequence modulation = ls::parse_sequence(opt("family", "powerlog:0"));
    const double p = ls::parse_index(opt("p", "inf"), "p");
    const double q = ls::parse_index(opt("q", "inf"), "q");
    const double r = ls::parse_index(opt("r", "2"), "r");
    const int guard = parse_int(opt("guard", "2"), "guard");
    const bool empirical = opt("empirical", "false") == "true";

    const ls::CoefficientPyramid pyramid = ls::read_pyramid(input_path);
    const ls::AdmissibleFamily family(modulation, p, q);
    const ls::RatioFunction rf(sigma, family, pyramid.d, r);
    const ls::PredictedSpectrum predicted = ls::predicted_spectrum(rf);

    json doc;
    doc["kind"] = empirical ? "predicted+empirical" : "predicted";
    doc["interval"] = json::array({predicted.h_lo, predicted.h_hi});
    json h_grid = json::array();
    json dims = json::array();
    for (const ls::SpectrumPoint& pt : predicted.points) {
        h_grid.push_back(pt.h);
        dims.push_back(pt.dim);
    }
    doc["h_grid"] = h_grid;
    doc["D"] = dims;

    std::string csv = "h,D,kind\n";
    for (const ls::SpectrumPoint& pt : predicted.points)
        csv += json(pt.h).dump() + "," + json(pt.dim).dump() + ",predicted\n";

    int leader_range_hi = 0;
    if (empirical) {
        const ls::LeaderPyramid lp = ls::leader_pyramid(pyramid, p, guard);
        leader_range_hi = lp.max_scale();
        ls::EmpiricalOptions eopts;
        eopts.delta = parse_real(opt("delta", "0.05"), "delta");
        const std::string scales_text = opt("scales", "");
        if (!scales_text.empty()) eopts.scales = parse_scale_range(scales_text);
        const int grid_n = parse_int(opt("grid", "33"), "grid");
        if (grid_n < 2) ls::fail(ls::ErrorKind::config, "OutOfDomain", "spectrum: grid must be >= 2");
        std::vector<double> grid(static_cast<std::size_t>(grid_n), 0.0);
        for (int t = 0; t < grid_n; ++t)
            grid[std::size_t(t)] =
                predicted.h_lo + (predicted.h_hi - predicted.h_lo) * double(t) / double(grid_n - 1);
        const ls::AdmissibleFamily binning(ls::parse_sequence(opt("binning", opt("family", "powerlog:0"))),
                                           p, q);
        const ls::EmpiricalSpectrum emp = ls::empirical_spectrum(lp, grid, binning, eopts);
        json eh = json::array(), ed = json::array();
        for (std::size_t t = 0; t < emp.h.size(); ++t) {
            eh.push_back(emp.h[t]);
            ed.push_back(emp.dimension[t] ? json(*emp.dimension[t]) : json());
            csv += json(emp.h[t]).dump() + "," +
                   (emp.dimension[t] ? json(*emp.dimension[t]).dump() : "") + ",empirical\n";
        }
        doc["empirical"] = json{{"h_grid", eh},
                                {"D", ed},
                                {"delta", eopts.delta},
                                {"scale_range", json::array({emp.scales.front(), emp.scales.back()})}};
    }

    doc["provenance"] = provenance(json{{"sigma", ls::sequence_json(sigma)},
                                        {"family", ls::sequence_json(modulation)},
                                        {"p", ls::index_json(p)},
                                        {"q", ls::index_json(q)},
                                        {"r", ls::index_json(r)},
                                        {"guard", guard},
                                        {"empirical", empirical},
                                        {"leader_scale_range", json::array({0, leader_range_hi})}});

    write_text(opt("out", "-"), doc.dump(2) + "\n");
    const std::string csv_path = opt("csv", "");
    if (!csv_path.empty()) write_text(csv_path, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiscale regularity analysis: wavelet leaders, membership criteria, spectra"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("leaderscope ") + ls::kVersion);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override its entries");

    // boyd
    auto* boyd = app.add_subcommand("boyd", "estimate lower/upper scaling indices of a sequence");
    ConfigValue boyd_sigma, boyd_depth, boyd_out;
    add_config_option(boyd, "--sigma", boyd_sigma, "sequence descriptor");
    add_config_option(boyd, "--depth", boyd_depth, "estimation depth J (default 64)");
    add_config_option(boyd, "--out", boyd_out, "output path (default stdout)");

    // synth
    auto* synth = app.add_subcommand("synth", "generate synthetic test functions");
    std::map<std::string, ConfigValue> synth_opts;
    for (const char* name : {"kind", "out", "sigma", "family", "r", "s", "m0", "n", "J", "d", "u",
                             "N", "x0", "seed", "p", "q"})
        add_config_option(synth, std::string("--") + name, synth_opts[name], name);

    // decompose
    auto* decompose = app.add_subcommand("decompose", "wavelet-transform a signal into a pyramid");
    ConfigValue dec_filter, dec_out;
    std::string dec_input;
    add_config_option(decompose, "--filter", dec_filter, "wavelet filter name (default db4)");
    add_config_option(decompose, "--out", dec_out, "output pyramid path");
    decompose->add_option("input", dec_input, "signal file (CSV or binary)")->required();

    // leaders
    auto* leaders = app.add_subcommand("leaders", "compute p-leaders of a coefficient pyramid");
    ConfigValue lead_p, lead_guard, lead_out;
    std::string lead_input;
    add_config_option(leaders, "--p", lead_p, "leader exponent p in [1, inf] (default inf)");
    add_config_option(leaders, "--guard", lead_guard, "guard band width (default 2)");
    add_config_option(leaders, "--out", lead_out, "output leader file");
    leaders->add_option("input", lead_input, "pyramid file")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "pointwise membership verdicts and exponent");
    std::map<std::string, ConfigValue> analyze_opts;
    std::string analyze_input;
    for (const char* name : {"x0", "sigma", "family", "p", "q", "r", "criterion", "filter",
                             "guard", "scales", "tol-slope", "eta", "out"})
        add_config_option(analyze, std::string("--") + name, analyze_opts[name], name);
    analyze->add_option("input", analyze_input, "signal or pyramid file")->required();

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "predicted and empirical spectra");
    std::map<std::string, ConfigValue> spectrum_opts;
    std::string spectrum_input;
    for (const char* name : {"sigma", "family", "binning", "p", "q", "r", "guard", "delta",
                             "grid", "scales", "out", "csv"})
        add_config_option(spectrum, std::string("--") + name, spectrum_opts[name], name);
    spectrum->add_flag_callback(
        "--empirical",
        [&spectrum_opts] {
            spectrum_opts["empirical"].value = "true";
            spectrum_opts["empirical"].from_flag = true;
        },
        "also run the histogram estimator");
    spectrum->add_option("input", spectrum_input, "pyramid file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;  // malformed invocation is a config error
    }

    try {
        ConfigFile config;
        if (!config_path.empty()) config.load(config_path);
        if (boyd->parsed()) return run_boyd(config, boyd_sigma, boyd_depth, boyd_out);
        if (synth->parsed()) return run_synth(config, synth_opts);
        if (decompose->parsed()) return run_decompose(config, dec_filter, dec_out, dec_input);
        if (leaders->parsed()) return run_leaders(config, lead_p, lead_guard, lead_out, lead_input);
        if (analyze->parsed()) return run_analyze(config, analyze_opts, analyze_input);
        if (spectrum->parsed()) return run_spectrum(config, spectrum_opts, spectrum_input);
    } catch (const ls::Error& e) {
        std::cerr << "leaderscope: " << e.what() << "\n";
        return int(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "leaderscope: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
