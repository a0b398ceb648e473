// dgg-cli: channel definition from a flat key=value config, parameter
// derivation, single-point evaluations, SNR sweeps with optional Monte
// Carlo overlay, and empirical-curve fitting. CSV or JSON out.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dgg/atmos.hpp"
#include "dgg/dist.hpp"
#include "dgg/fit.hpp"
#include "dgg/mc.hpp"
#include "dgg/perf.hpp"

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// ---- config ---------------------------------------------------------

using KeyMap = std::map<std::string, std::string>;

KeyMap load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config: " + path);
    KeyMap kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string()
                                          : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": empty key or value");
        if (!kv.emplace(key, val).second)
            throw std::runtime_error(path + ": duplicate key '" + key + "'");
    }
    return kv;
}

double num(const KeyMap& kv, const std::string& key) {
    std::size_t pos = 0;
    const std::string& s = kv.at(key);
    const double v = std::stod(s, &pos);
    if (pos != s.size())
        throw std::runtime_error("config key '" + key + "': bad number '" + s +
                                 "'");
    return v;
}

double num_or(const KeyMap& kv, const std::string& key, double fallback) {
    return kv.count(key) ? num(kv, key) : fallback;
}

struct Channel {
    dgg::dist::DoubleGGParams params;
    int apertures = 1;
    // present only when the channel came through the atmospheric pipeline
    std::optional<dgg::atmos::ScaleVariances> variances;
};

Channel resolve_channel(const KeyMap& kv, bool snap_flag) {
    static const std::vector<std::string> explicit_keys = {
        "gamma1", "omega1", "gamma2", "omega2", "p", "q"};
    static const std::vector<std::string> derived_keys = {
        "wave", "rytov_var", "inner_scale_ratio"};
    auto any = [&](const std::vector<std::string>& keys) {
        for (const auto& k : keys)
            if (kv.count(k))
                return true;
        return false;
    };
    const bool has_explicit = any(explicit_keys);
    const bool has_derived = any(derived_keys);
    if (has_explicit && has_derived)
        throw std::runtime_error(
            "config mixes explicit channel keys (gamma1/omega1/...) with "
            "derived keys (wave/rytov_var/...); use exactly one style");
    if (!has_explicit && !has_derived)
        throw std::runtime_error(
            "config defines no channel: give either explicit params "
            "(gamma1, m1, omega1, gamma2, m2, omega2, p, q) or conditions "
            "(wave, rytov_var, inner_scale_ratio, m1, m2)");
    const bool snap =
        snap_flag || (kv.count("snap") && kv.at("snap") == "true");
    const int apertures = static_cast<int>(num_or(kv, "apertures", 1));
    if (has_explicit) {
        dgg::dist::GGParams large{num(kv, "gamma1"), num(kv, "m1"),
                                  num(kv, "omega1")};
        dgg::dist::GGParams small{num(kv, "gamma2"), num(kv, "m2"),
                                  num(kv, "omega2")};
        const auto p = static_cast<long long>(num(kv, "p"));
        const auto q = static_cast<long long>(num(kv, "q"));
        return {dgg::dist::DoubleGGParams(large, small, p, q, 5e-3, snap),
                apertures, std::nullopt};
    }
    const std::string wave = kv.at("wave");
    if (wave != "plane" && wave != "spherical")
        throw std::runtime_error("config key 'wave': expected plane|spherical");
    dgg::atmos::AtmosphericConditions cond{
        wave == "plane" ? dgg::atmos::WaveType::Plane
                        : dgg::atmos::WaveType::Spherical,
        num(kv, "rytov_var"), num_or(kv, "inner_scale_ratio", 0.0)};
    dgg::atmos::ShapeSeed seed{num(kv, "m1"), num(kv, "m2")};
    const auto max_den = static_cast<long long>(num_or(kv, "max_den", 16));
    return {dgg::atmos::derive_params(cond, seed, max_den, snap), apertures,
            dgg::atmos::variances(cond)};
}

dgg::atmos::AtmosphericConditions conditions_of(const KeyMap& kv) {
    if (!kv.count("wave"))
        throw std::runtime_error(
            "fit needs a derived-style config (wave, rytov_var, ...)");
    const std::string wave = kv.at("wave");
    if (wave != "plane" && wave != "spherical")
        throw std::runtime_error("config key 'wave': expected plane|spherical");
    return {wave == "plane" ? dgg::atmos::WaveType::Plane
                            : dgg::atmos::WaveType::Spherical,
            num(kv, "rytov_var"), num_or(kv, "inner_scale_ratio", 0.0)};
}

// ---- output ---------------------------------------------------------

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < header.size(); ++i)
            os << (i ? "," : "") << header[i];
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << fmt(row[i]);
            os << '\n';
        }
        return os.str();
    }

    std::string to_json() const {
        json arr = json::array();
        for (const auto& row : rows) {
            json o = json::object();
            for (std::size_t i = 0; i < row.size(); ++i)
                o[header[i]] = row[i];
            arr.push_back(o);
        }
        return arr.dump(2) + "\n";
    }

    std::string render(const std::string& format) const {
        return format == "json" ? to_json() : csv();
    }
};

json params_json(const Channel& ch) {
    const auto& p = ch.params;
    json o;
    o["gamma1"] = p.large.gamma;
    o["m1"] = p.large.m;
    o["omega1"] = p.large.omega;
    o["gamma2"] = p.small.gamma;
    o["m2"] = p.small.m;
    o["omega2"] = p.small.omega;
    o["p"] = p.p;
    o["q"] = p.q;
    o["ratio_error"] = p.ratio_error;
    if (ch.variances) {
        o["sigma_x_sq"] = ch.variances->sigma_x_sq;
        o["sigma_y_sq"] = ch.variances->sigma_y_sq;
    }
    o["scintillation_index"] = dgg::dist::scintillation_index(p);
    return o;
}

// ---- verbs ----------------------------------------------------------

struct Common {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000000;
    bool snap = false;
    std::string convention = "mean";
};

void add_common(CLI::App* cmd, Common& c, bool needs_config = true) {
    auto* opt = cmd->add_option("--config", c.config_path, "channel config file");
    if (needs_config)
        opt->required();
    cmd->add_option("--out", c.out_path, "write output here instead of stdout");
    cmd->add_option("--seed", c.seed, "Monte Carlo seed");
    cmd->add_option("--samples", c.samples, "Monte Carlo sample count");
    cmd->add_flag("--snap", c.snap, "rescale gamma1 so gamma1/gamma2 = p/q");
    cmd->add_option("--convention", c.convention,
                    "log-irradiance axis convention")
        ->check(CLI::IsMember({"mean", "halfvar"}));
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

Channel channel_of(const Common& c) {
    return resolve_channel(load_config(c.config_path), c.snap);
}

dgg::perf::BerPath path_of(const std::string& s) {
    if (s == "quad")
        return dgg::perf::BerPath::Quadrature;
    if (s == "closed")
        return dgg::perf::BerPath::ClosedForm;
    return dgg::perf::BerPath::Auto;
}

dgg::fit::Convention convention_of(const std::string& s) {
    return s == "halfvar" ? dgg::fit::Convention::ShiftedByHalfVariance
                          : dgg::fit::Convention::CenteredByMean;
}

struct Grid {
    double start, stop, step;

    std::vector<double> points() const {
        if (!(start < stop) || !(step > 0))
            throw std::runtime_error("empty range: need start < stop, step > 0");
        std::vector<double> xs;
        for (int i = 0;; ++i) {
            const double x = start + i * step;
            if (x > stop + 0.5 * step)
                break;
            xs.push_back(x);
        }
        return xs;
    }
};

int run_density(const Common& c, const Grid& g, bool cdf,
                const std::string& method) {
    const Channel ch = channel_of(c);
    const auto path = method == "meijer" ? dgg::dist::EvalPath::MeijerG
                                         : dgg::dist::EvalPath::Quadrature;
    Table t{{"i", "value"}, {}};
    for (double i : g.points())
        t.rows.push_back({i, cdf ? dgg::dist::dgg_cdf(i, ch.params, path)
                                 : dgg::dist::dgg_pdf(i, ch.params, path)});
    emit(t.render(c.format), c.out_path);
    return 0;
}

int run_outage(const Common& c, double snr_db) {
    const Channel ch = channel_of(c);
    const double v = dgg::perf::outage_probability(
        ch.params, {db_to_linear(snr_db), 1.0});
    Table t{{"snr_db", "value"}, {{snr_db, v}}};
    emit(t.render(c.format), c.out_path);
    return 0;
}

int run_ber(const Common& c, double snr_db, const std::string& path_name) {
    const Channel ch = channel_of(c);
    const auto path = path_of(path_name);
    const dgg::perf::LinkQuery q{db_to_linear(snr_db), 1.0, ch.apertures};
    const double v =
        ch.apertures > 1
            ? dgg::perf::ber_simo_oc(
                  std::vector(ch.apertures, ch.params), q, path)
            : dgg::perf::ber_siso(ch.params, q, path);
    Table t{{"snr_db", "value"}, {{snr_db, v}}};
    emit(t.render(c.format), c.out_path);
    return 0;
}

int run_simulate(const Common& c, double snr_db, const std::string& metric,
                 double threshold_db) {
    const Channel ch = channel_of(c);
    const dgg::mc::McConfig cfg{c.samples, c.seed, 65536};
    dgg::mc::McEstimate e{};
    if (metric == "outage") {
        e = dgg::mc::estimate_outage(ch.params, db_to_linear(snr_db),
                                     db_to_linear(threshold_db), cfg);
    } else if (ch.apertures > 1) {
        e = dgg::mc::estimate_ber_simo(std::vector(ch.apertures, ch.params),
                                       db_to_linear(snr_db), cfg);
    } else {
        e = dgg::mc::estimate_ber_siso(ch.params, db_to_linear(snr_db), cfg);
    }
    Table t{{"snr_db", "mc_mean", "mc_stderr", "n"},
            {{snr_db, e.mean, e.std_error, static_cast<double>(e.n)}}};
    emit(t.render(c.format), c.out_path);
    return 0;
}

int run_sweep(const Common& c, const Grid& g, const std::string& metric,
              bool mc_overlay) {
    const Channel ch = channel_of(c);
    const std::vector branches(ch.apertures, ch.params);
    auto value_at = [&](double lin) {
        if (metric == "outage")
            return dgg::perf::outage_probability(ch.params, {lin, 1.0});
        if (metric == "ber-siso")
            return dgg::perf::ber_siso(ch.params, {lin, 1.0});
        if (metric == "ber-simo")
            return dgg::perf::ber_simo_oc(branches,
                                          {lin, 1.0, ch.apertures});
        // ber-asymptotic
        return ch.apertures > 1
                   ? dgg::perf::ber_simo_asymptotic(branches,
                                                    {lin, 1.0, ch.apertures})
                   : dgg::perf::ber_siso_asymptotic(ch.params, {lin, 1.0});
    };
    Table t{{"snr_db", "value"}, {}};
    if (mc_overlay) {
        t.header.push_back("mc_mean");
        t.header.push_back("mc_stderr");
    }
    const dgg::mc::McConfig cfg{c.samples, c.seed, 65536};
    for (double db : g.points()) {
        const double lin = db_to_linear(db);
        std::vector<double> row{db, value_at(lin)};
        if (mc_overlay) {
            const auto e =
                metric == "outage"
                    ? dgg::mc::estimate_outage(ch.params, lin, 1.0, cfg)
                : metric == "ber-simo"
                    ? dgg::mc::estimate_ber_simo(branches, lin, cfg)
                    : dgg::mc::estimate_ber_siso(ch.params, lin, cfg);
            row.push_back(e.mean);
            row.push_back(e.std_error);
        }
        t.rows.push_back(row);
    }
    emit(t.render(c.format), c.out_path);
    return 0;
}

json fit_json(const dgg::fit::FitResult& r, const char* p1, const char* p2) {
    json o;
    o[p1] = r.m1;
    if (p2)
        o[p2] = r.m2;
    o["nrmse"] = r.nrmse;
    o["skipped"] = r.skipped;
    o["params"] = params_json({r.params, 1, std::nullopt});
    return o;
}

int run_fit(const Common& c, const std::string& data_path,
            const dgg::fit::Bounds& m1b, const dgg::fit::Bounds& m2b) {
    const KeyMap kv = load_config(c.config_path);
    const auto cond = conditions_of(kv);
    const auto data =
        dgg::fit::load_empirical_pdf(data_path, convention_of(c.convention));
    const auto max_den = static_cast<long long>(num_or(kv, "max_den", 16));
    json o;
    o["double_gg"] =
        fit_json(dgg::fit::fit_shapes(data, cond, m1b, m2b, max_den), "m1",
                 "m2");
    o["gamma_gamma"] = fit_json(
        dgg::fit::fit_candidate(data, dgg::fit::CandidateModel::GammaGamma),
        "m1", "m2");
    o["double_weibull"] = fit_json(
        dgg::fit::fit_candidate(data, dgg::fit::CandidateModel::DoubleWeibull),
        "gamma1", "gamma2");
    o["k"] = fit_json(
        dgg::fit::fit_candidate(data, dgg::fit::CandidateModel::K), "m1",
        nullptr);
    emit(o.dump(2) + "\n", c.out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Double Generalized Gamma fading-channel toolkit"};
    app.require_subcommand(1);

    Common c;
    Grid grid{0.0, 60.0, 1.0};
    Grid igrid{0.01, 5.0, 0.01};
    double snr_db = 30.0, threshold_db = 0.0;
    std::string metric = "ber", sweep_metric = "outage", method = "quad";
    std::string ber_path = "auto", data_path;
    dgg::fit::Bounds m1b{0.5, 5.0}, m2b{0.5, 5.0};
    bool mc_overlay = false;

    auto* params = app.add_subcommand("params", "derive and report channel parameters");
    add_common(params, c);

    auto* pdf = app.add_subcommand("pdf", "density over an irradiance grid");
    add_common(pdf, c);
    pdf->add_option("--i-start", igrid.start, "grid start");
    pdf->add_option("--i-stop", igrid.stop, "grid stop");
    pdf->add_option("--i-step", igrid.step, "grid step");
    pdf->add_option("--method", method, "evaluation path")
        ->check(CLI::IsMember({"quad", "meijer"}));

    auto* cdf = app.add_subcommand("cdf", "distribution over an irradiance grid");
    add_common(cdf, c);
    cdf->add_option("--i-start", igrid.start, "grid start");
    cdf->add_option("--i-stop", igrid.stop, "grid stop");
    cdf->add_option("--i-step", igrid.step, "grid step");
    cdf->add_option("--method", method, "evaluation path")
        ->check(CLI::IsMember({"quad", "meijer"}));

    auto* outage = app.add_subcommand("outage", "outage probability at one SNR ratio");
    add_common(outage, c);
    outage->add_option("--snr-db", snr_db, "avg SNR over threshold SNR, dB")
        ->required();

    auto* ber = app.add_subcommand("ber", "average BER at one SNR");
    add_common(ber, c);
    ber->add_option("--snr-db", snr_db, "average electrical SNR, dB")
        ->required();
    ber->add_option("--path", ber_path, "computation path")
        ->check(CLI::IsMember({"auto", "quad", "closed"}));

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate at one SNR");
    add_common(simulate, c);
    simulate->add_option("--snr-db", snr_db, "average electrical SNR, dB")
        ->required();
    simulate->add_option("--metric", metric, "estimated quantity")
        ->check(CLI::IsMember({"ber", "outage"}));
    simulate->add_option("--threshold-db", threshold_db,
                         "outage threshold SNR, dB");

    auto* sweep = app.add_subcommand("sweep", "metric curve over an SNR range");
    add_common(sweep, c);
    sweep->add_option("--metric", sweep_metric, "swept quantity")
        ->check(CLI::IsMember(
            {"outage", "ber-siso", "ber-simo", "ber-asymptotic"}));
    sweep->add_option("--start-db", grid.start, "range start, dB");
    sweep->add_option("--stop-db", grid.stop, "range stop, dB");
    sweep->add_option("--step-db", grid.step, "range step, dB");
    sweep->add_flag("--mc", mc_overlay, "append Monte Carlo overlay columns");

    auto* fitc = app.add_subcommand("fit", "fit shapes to an empirical curve");
    add_common(fitc, c);
    fitc->add_option("--data", data_path, "empirical pdf file (header x,f)")
        ->required();
    fitc->add_option("--m1-lo", m1b.lo, "m1 lower bound");
    fitc->add_option("--m1-hi", m1b.hi, "m1 upper bound");
    fitc->add_option("--m2-lo", m2b.lo, "m2 lower bound");
    fitc->add_option("--m2-hi", m2b.hi, "m2 upper bound");

    CLI11_PARSE(app, argc, argv);

    try {
        if (params->parsed()) {
            const Channel ch = channel_of(c);
            if (c.format == "json") {
                emit(params_json(ch).dump(2) + "\n", c.out_path);
            } else {
                std::ostringstream os;
                os << "key,value\n";
                for (const auto& [k, v] : params_json(ch).items())
                    os << k << ',' << fmt(v.get<double>()) << '\n';
                emit(os.str(), c.out_path);
            }
            return 0;
        }
        if (pdf->parsed())
            return run_density(c, igrid, false, method);
        if (cdf->parsed())
            return run_density(c, igrid, true, method);
        if (outage->parsed())
            return run_outage(c, snr_db);
        if (ber->parsed())
            return run_ber(c, snr_db, ber_path);
        if (simulate->parsed())
            return run_simulate(c, snr_db, metric, threshold_db);
        if (sweep->parsed())
            return run_sweep(c, grid, sweep_metric, mc_overlay);
        if (fitc->parsed())
            return run_fit(c, data_path, m1b, m2b);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
