#pragma once

// Config-driven experiments behind the ergodia command line: systems and observables
// by name, Gamma-series CSV/SVG, stabilization and approximation reports as JSON.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "approximation.hpp"
#include "integrability.hpp"
#include "invariants.hpp"
#include "means.hpp"
#include "model_systems.hpp"
#include "random.hpp"
#include "stabilization.hpp"
#include "surgery.hpp"
#include "synthesis.hpp"

namespace ergodia::cli {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum ExitCode : int { exit_ok = 0, exit_invariant = 1, exit_config = 2, exit_io = 3 };

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    bool svg = false;
    bool exact = false;
    bool timestamp = true;
    /// file name stem for outputs; defaults to the config file stem
    std::string prefix = "run";
};

/// Sets above this size are reported by count only.
inline constexpr std::size_t report_set_limit = 10'000;

inline json load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed config " + path.string() + ": " + e.what());
    }
}

inline void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    out.close();
    if (!out) throw IoError("write failed for " + path.string());
}

namespace detail {

template <typename T>
T required(const json& j, const char* key, const char* where)
{
    if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string(where) + ": missing '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string(where) + ": bad '" + key + "': " + e.what());
    }
}

template <typename T>
T optional_value(const json& j, const char* key, T fallback)
{
    if (!j.is_object() || !j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad '") + key + "': " + e.what());
    }
}

inline Scale parse_scale(const json& j)
{
    try {
        if (j.is_string()) return Scale::parse(j.get<std::string>());
        if (j.is_number_unsigned() || j.is_number_integer()) return Scale{j.get<std::uint64_t>(), 1};
        if (j.is_number()) return Scale::parse(j.dump());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad scale: ") + e.what());
    }
    throw ConfigError("scale must be a number or a 'p/q' string");
}

inline std::string format_g(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail

struct BuiltSystem {
    FinitePermutation T;
    json info;
};

/// Systems by name: drift, identity, shift, rotation, bernoulli.
inline BuiltSystem build_system(const json& node)
{
    const auto name = detail::required<std::string>(node, "name", "system");
    json info = node;
    if (name == "drift" || name == "identity") {
        const auto M = detail::required<std::size_t>(node, "M", "system");
        if (M < 2) throw ConfigError("system: M must be at least 2");
        return {name == "drift" ? build_drift_system(M).T : FinitePermutation::identity(M), info};
    }
    if (name == "shift") {
        const auto M = detail::required<std::size_t>(node, "M", "system");
        const auto P = detail::required<std::uint64_t>(node, "P", "system");
        if (M < 1) throw ConfigError("system: M must be positive");
        return {FinitePermutation::shift(M, P), info};
    }
    if (name == "rotation") {
        const auto M = detail::required<std::size_t>(node, "M", "system");
        const auto t = detail::optional_value<double>(node, "t", 0.0);
        const auto coprime = detail::optional_value<bool>(node, "coprime_required", true);
        RotationSystem r = node.contains("P") ? rotation_with_shift(M, node.at("P").get<std::uint64_t>(), t, coprime)
                                              : build_rotation(M, t);
        info["P"] = r.P;
        info["defect"] = r.defect;
        info["cycles"] = r.T.cycle_index()->cycle_count();
        return {r.T, info};
    }
    if (name == "bernoulli") {
        const auto m = detail::optional_value<unsigned>(node, "m", 2);
        const auto N = detail::required<int>(node, "N", "system");
        const auto mode = detail::optional_value<std::string>(node, "mode", "debruijn");
        if (mode != "naive" && mode != "debruijn") throw ConfigError("system: mode must be naive or debruijn");
        auto s = build_bernoulli(m, N, mode == "naive" ? ShiftMode::naive : ShiftMode::debruijn);
        info["M"] = s.M;
        return {s.T, info};
    }
    throw ConfigError("unknown system '" + name + "'");
}

inline Observable build_observable(const json& node, std::size_t M, const json& system)
{
    ObservableParams p;
    p.M = M;
    const auto name = detail::required<std::string>(node, "name", "observable");
    if (node.contains("amplitude")) p.amplitude = node.at("amplitude").get<double>();
    if (node.contains("K")) p.K = node.at("K").get<std::uint64_t>();
    if (node.contains("value")) p.value = node.at("value").get<double>();
    if (name == "chi0") {
        p.m = detail::optional_value<unsigned>(system, "m", 2);
        if (system.contains("N")) p.N = system.at("N").get<int>();
    }
    try {
        return paper_observable(name, p);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("observable: ") + e.what());
    }
}

/// Start points: an explicit array, {"list": [...]}, {"random": n} or {"stratified": n, "extras": e}.
inline std::vector<index_t> resolve_start_points(const json& node, std::size_t M, std::uint64_t seed)
{
    std::vector<index_t> out;
    const auto check = [&](std::uint64_t y) {
        if (y >= M) throw ConfigError("start point " + std::to_string(y) + " outside Y of size " + std::to_string(M));
        out.push_back(static_cast<index_t>(y));
    };
    if (node.is_array()) {
        for (const auto& y : node) check(y.get<std::uint64_t>());
    } else if (node.is_object() && node.contains("list")) {
        for (const auto& y : node.at("list")) check(y.get<std::uint64_t>());
    } else if (node.is_object() && node.contains("random")) {
        out = random_start_points(static_cast<std::uint32_t>(M), node.at("random").get<std::size_t>(), seed);
    } else if (node.is_object() && node.contains("stratified")) {
        out = stratified_start_points(static_cast<std::uint32_t>(M), node.at("stratified").get<std::size_t>(),
                                      detail::optional_value<std::size_t>(node, "extras", 0), seed);
    } else if (node.is_object() && node.contains("all")) {
        out.resize(M);
        for (std::size_t y = 0; y < M; ++y) out[y] = static_cast<index_t>(y);
    } else {
        throw ConfigError("start_points must be a list, {random}, {stratified} or {all}");
    }
    if (out.empty()) throw ConfigError("no start points");
    return out;
}

inline std::uint64_t config_seed(const json& cfg, const RunOptions& opt)
{
    return opt.seed.value_or(detail::optional_value<std::uint64_t>(cfg, "seed", 0));
}

// ---------------------------------------------------------------- gamma

inline std::string gamma_csv(const GammaSeries& g)
{
    std::string out = "n,n_over_M,mean\n";
    for (const auto& p : g.points) {
        out += std::to_string(p.n);
        out += ',';
        out += detail::format_g(p.n_over_M);
        out += ',';
        out += detail::format_g(p.mean);
        out += '\n';
    }
    return out;
}

/// Gamma series with every mean computed in exact rational arithmetic.
inline GammaSeries gamma_series_exact(const Observable& F, const FinitePermutation& T, index_t y, Scale k,
                                      std::optional<std::uint64_t> stride)
{
    GammaSeries g = gamma_series(F, T, y, k, stride); // validation and layout
    Accumulator<Rational> sum;
    index_t z = y;
    std::size_t next = 0;
    for (std::uint64_t n = 1; n <= g.horizon && next < g.points.size(); ++n) {
        sum.add(F.exact(z));
        z = T(z);
        if (g.points[next].n == n) g.points[next++].mean = to_double(Rational(sum.value() / Rational(n)));
    }
    return g;
}

inline std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Standalone SVG scatter of (n/M, A_n) with x-axis [0, k].
inline std::string gamma_svg(const GammaSeries& g, const std::string& title, bool timestamp)
{
    const double W = 640, H = 400, left = 60, right = 20, top = 30, bottom = 40;
    double lo = 0.0, hi = 0.0;
    if (!g.points.empty()) {
        lo = hi = g.points.front().mean;
        for (const auto& p : g.points) {
            lo = std::min(lo, p.mean);
            hi = std::max(hi, p.mean);
        }
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    const double xmax = g.k.value();
    const auto X = [&](double x) { return left + (W - left - right) * x / xmax; };
    const auto Yc = [&](double v) { return top + (H - top - bottom) * (hi - v) / (hi - lo); };

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (timestamp) s << "<!-- generated " << utc_timestamp() << " -->\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << title << "</text>\n";
    s << "<g stroke=\"black\" stroke-width=\"1\">\n";
    s << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
      << "\"/>\n";
    s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom << "\"/>\n";
    s << "</g>\n<g font-family=\"sans-serif\" font-size=\"10\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmax * i / 4.0, yv = lo + (hi - lo) * i / 4.0;
        s << "<text x=\"" << X(xv) << "\" y=\"" << H - bottom + 14 << "\" text-anchor=\"middle\">"
          << detail::format_g(xv) << "</text>\n";
        s << "<text x=\"" << left - 4 << "\" y=\"" << Yc(yv) + 3 << "\" text-anchor=\"end\">"
          << detail::format_g(static_cast<double>(static_cast<float>(yv))) << "</text>\n";
    }
    s << "<text x=\"" << W / 2 << "\" y=\"" << H - 6 << "\" text-anchor=\"middle\">n/M</text>\n</g>\n";
    const double r = g.points.size() > 5000 ? 0.6 : 1.2;
    s << "<g fill=\"#1f4e9c\">\n";
    char buf[96];
    for (const auto& p : g.points) {
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.1f\"/>\n", X(p.n_over_M), Yc(p.mean), r);
        s << buf;
    }
    s << "</g>\n</svg>\n";
    return s.str();
}

struct GammaOutput {
    std::vector<std::filesystem::path> files;
    std::vector<GammaSeries> series;
};

/// One CSV (and optionally one SVG) per start point and scale.
inline GammaOutput cmd_gamma(const json& cfg, const RunOptions& opt)
{
    const auto sys = build_system(detail::required<json>(cfg, "system", "config"));
    const auto F = build_observable(detail::required<json>(cfg, "observable", "config"), sys.T.size(),
                                    cfg.at("system"));
    const auto ys = resolve_start_points(detail::required<json>(cfg, "start_points", "config"), sys.T.size(),
                                         config_seed(cfg, opt));
    std::vector<Scale> ks;
    const json kspec = cfg.contains("k") ? cfg.at("k") : json(1);
    if (kspec.is_array()) {
        for (const auto& k : kspec) ks.push_back(detail::parse_scale(k));
    } else {
        ks.push_back(detail::parse_scale(kspec));
    }
    if (ks.empty()) throw ConfigError("empty k list");
    std::optional<std::uint64_t> stride;
    if (cfg.contains("stride")) stride = cfg.at("stride").get<std::uint64_t>();
    const bool exact = opt.exact || detail::optional_value<bool>(cfg, "exact", false);
    const Observable dense = F.materialized();

    GammaOutput out;
    for (index_t y : ys) {
        for (std::size_t i = 0; i < ks.size(); ++i) {
            GammaSeries g;
            try {
                g = exact ? gamma_series_exact(dense, sys.T, y, ks[i], stride)
                          : gamma_series(dense, sys.T, y, ks[i], stride);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("gamma: ") + e.what());
            }
            std::string stem = opt.prefix + "_y" + std::to_string(y);
            if (ks.size() > 1) stem += "_k" + std::to_string(i);
            const auto csv = opt.out_dir / (stem + ".csv");
            write_file(csv, gamma_csv(g));
            out.files.push_back(csv);
            if (opt.svg) {
                const std::string title =
                    F.name() + ", M = " + std::to_string(sys.T.size()) + ", y = " + std::to_string(y) + ", k = " + ks[i].to_string();
                const auto svg = opt.out_dir / (stem + ".svg");
                write_file(svg, gamma_svg(g, title, opt.timestamp));
                out.files.push_back(svg);
            }
            out.series.push_back(std::move(g));
        }
    }
    return out;
}

// ---------------------------------------------------------------- stab

template <typename Container>
json index_set(const Container& s)
{
    json j;
    j["count"] = s.size();
    if (s.size() <= report_set_limit) j["elements"] = s;
    return j;
}

inline json cmd_stab(const json& cfg, const RunOptions& opt)
{
    const auto sys = build_system(detail::required<json>(cfg, "system", "config"));
    const std::size_t M = sys.T.size();
    const auto F = build_observable(detail::required<json>(cfg, "observable", "config"), M, cfg.at("system"))
                       .materialized();
    const json st = detail::required<json>(cfg, "stab", "config");
    const std::uint64_t seed = config_seed(cfg, opt);
    const bool exact = opt.exact || detail::optional_value<bool>(cfg, "exact", false);
    const unsigned threads = resolve_thread_count(opt.threads);

    json report;
    report["system"] = sys.info;
    report["observable"] = F.name();
    report["M"] = M;
    report["arithmetic"] = exact ? "exact" : "floating";

    try {
        const std::vector<index_t> ys =
            cfg.contains("start_points") ? resolve_start_points(cfg.at("start_points"), M, seed) : std::vector<index_t>{};
        if (st.contains("epsilon")) {
            const double eps = st.at("epsilon").get<double>();
            const auto n_min = detail::required<std::uint64_t>(st, "n_min", "stab");
            const auto scan = detail::optional_value<std::uint64_t>(st, "scan_limit", M);
            json per = json::array();
            for (index_t y : ys) {
                const auto s = stabilization_segment(F, sys.T, y, n_min, eps, scan);
                per.push_back({{"y", y},
                               {"n_min", s.n_min},
                               {"K_star", s.K_star},
                               {"reached_scan_limit", s.reached_scan_limit},
                               {"witness", s.witness}});
            }
            report["per_point"] = per;
            if (st.contains("eta")) {
                const double eta = st.at("eta").get<double>();
                std::vector<index_t> sample;
                if (st.contains("sample"))
                    sample = resolve_start_points(st.at("sample"), M, seed);
                else
                    sample = resolve_start_points(json{{"all", true}}, M, seed);
                const auto c = common_stabilization_segment(F, sys.T, n_min, eps, eta, scan, sample, threads);
                report["common"] = {{"n_min", c.n_min},
                                    {"K_star", c.K_star},
                                    {"epsilon", c.epsilon},
                                    {"eta", c.eta},
                                    {"sample_size", c.sample_size},
                                    {"excluded_fraction", c.excluded_fraction},
                                    {"excluded", index_set(c.excluded)},
                                    {"reached_scan_limit", c.reached_scan_limit},
                                    {"witness", c.witness}};
            }
        }
        json disc = json::array();
        if (st.contains("pairs")) {
            const std::vector<double> eps_list = detail::optional_value<std::vector<double>>(st, "exceedance_eps", {});
            for (const auto& pair : st.at("pairs")) {
                if (!pair.is_array() || pair.size() != 2) throw ConfigError("stab: pairs must be [K, L]");
                const auto K = pair[0].get<std::uint64_t>(), L = pair[1].get<std::uint64_t>();
                const auto r = sup_discrepancy(F, sys.T, K, L, ys);
                json entry = {{"K", K}, {"L", L}, {"sup_disc", r.sup_disc}, {"argmax", r.argmax},
                              {"bound_violations", r.bound_violations}};
                json ex = json::array();
                for (double e : eps_list) ex.push_back({{"eps", e}, {"fraction", r.exceedance(e)}});
                entry["exceedance"] = ex;
                json tested = json::array();
                for (const auto& t : r.tested) {
                    json row = {{"y", t.y}, {"gap", t.gap}, {"U", t.U}, {"V", t.V}};
                    if (exact) {
                        const auto q = discrepancy_terms<Rational>(F, sys.T, t.y, K, L);
                        row["gap_exact"] = q.gap.str();
                        row["bound_exact"] = Rational(q.U + q.V).str();
                        row["bound_holds"] = q.gap <= q.U + q.V;
                    }
                    tested.push_back(row);
                }
                entry["tested"] = tested;
                disc.push_back(entry);
            }
        }
        report["discrepancy"] = disc;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("stab: ") + e.what());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("stab: ") + e.what());
    }
    write_file(opt.out_dir / (opt.prefix + "_stab.json"), report.dump(2) + "\n");
    return report;
}

// ---------------------------------------------------------------- approx

inline std::function<double(const double&)> circle_target(const json& node)
{
    const auto name = detail::required<std::string>(node, "name", "target");
    if (name == "identity") return identity_map();
    if (name == "rotation") return rotation_map(detail::required<double>(node, "t", "target"));
    if (name == "doubling") return doubling_map();
    throw ConfigError("unknown target map '" + name + "'");
}

inline json approx_pipeline(const json& ap, unsigned threads)
{
    const auto tau = circle_target(detail::required<json>(ap, "target", "approx"));
    const auto Ms = detail::required<std::vector<std::size_t>>(ap, "M_values", "approx");
    const auto deltas = detail::optional_value<std::vector<double>>(ap, "delta_factors", {2.0});
    const auto eps_factor = detail::optional_value<double>(ap, "eps_factor", 20.0);
    json runs = json::array();
    for (std::size_t M : Ms) {
        if (M < 2) throw ConfigError("approx: M must be at least 2");
        const auto phi = circle_grid(M);
        std::vector<double> targets(M);
        for (std::size_t y = 0; y < M; ++y) targets[y] = tau(phi(static_cast<index_t>(y)));
        for (double f : deltas) {
            const double delta = f / static_cast<double>(M), eps = eps_factor / static_cast<double>(M);
            const auto syn = synthesize_permutation(targets, delta);
            const auto tr = make_transitive(syn.T);
            json run = {{"M", M},
                        {"delta", delta},
                        {"eps", eps},
                        {"mismatch_count", syn.mismatch_count},
                        {"mismatch_fraction", static_cast<double>(syn.mismatch_count) / static_cast<double>(M)},
                        {"empty_neighborhoods", syn.empty_neighborhoods},
                        {"cycle_count", tr.cycle_count},
                        {"transitivity_mismatch", index_set(tr.B)},
                        {"map_mismatch_T_delta", map_mismatch_fraction(phi, syn.T, tau, eps, threads)},
                        {"map_mismatch_transitive", map_mismatch_fraction(phi, tr.C, tau, eps, threads)}};
            runs.push_back(run);
        }
    }
    return runs;
}

template <typename Space>
json quality_common(const PointEmbedding<Space>& phi, const json& ap)
{
    json out;
    json sets = json::array();
    if (ap.contains("sets")) {
        const auto eps_list = detail::optional_value<std::vector<double>>(ap, "set_eps", {1.0 / static_cast<double>(phi.size())});
        for (const auto& s : ap.at("sets")) {
            ClosedSet C;
            std::string label = s.dump();
            if (s.contains("intervals")) {
                IntervalUnion u;
                for (const auto& iv : s.at("intervals")) u.pieces.emplace_back(iv.at(0).get<double>(), iv.at(1).get<double>());
                C = u;
            } else if (s.contains("cylinders")) {
                CylinderUnion u;
                for (const auto& cyl : s.at("cylinders")) {
                    Cylinder c;
                    for (const auto& f : cyl) c.fixed.emplace_back(f.at(0).get<int>(), f.at(1).get<std::uint8_t>());
                    u.cylinders.push_back(c);
                }
                C = u;
            } else {
                throw ConfigError("approx: unsupported set descriptor " + label);
            }
            for (double e : eps_list) sets.push_back({{"set", label}, {"eps", e}, {"error", thickening_measure_error(phi, C, e)}});
        }
    }
    out["thickening_errors"] = sets;
    return out;
}

inline json approx_quality(const json& cfg, const json& ap, unsigned threads)
{
    const auto space = detail::optional_value<std::string>(ap, "space", "interval");
    json out;
    if (space == "symbolic") {
        const json sysspec = detail::required<json>(cfg, "system", "config");
        const auto sys = build_system(sysspec);
        const auto m = detail::optional_value<unsigned>(sysspec, "m", 2);
        const auto N = detail::required<int>(sysspec, "N", "system");
        const auto phi = symbolic_words(m, N);
        out = quality_common(phi, ap);
        out["weak_star_errors"] = json::array();
        const auto errs = weak_star_error(phi, {coordinate_indicator(m)});
        out["weak_star_errors"].push_back({{"test", "chi0"}, {"error", errs[0]}});
        json mm = json::array();
        for (double e : detail::optional_value<std::vector<double>>(ap, "mismatch_eps", {})) {
            const auto bad = map_mismatch_set(phi, sys.T, symbolic_shift_map(), e, threads);
            mm.push_back({{"eps", e}, {"fraction", static_cast<double>(bad.size()) / static_cast<double>(phi.size())},
                          {"set", index_set(bad)}});
        }
        out["map_mismatch"] = mm;
        return out;
    }

    const auto M = detail::required<std::size_t>(ap, "M", "approx");
    const auto degree = detail::optional_value<unsigned>(ap, "monomials", 3);
    std::vector<TestFunction<double>> tests;
    for (unsigned k = 0; k <= degree; ++k) tests.push_back(monomial(k));
    const auto report_tests = [&](const auto& phi) {
        json w = json::array();
        const auto errs = weak_star_error(phi, tests);
        for (std::size_t i = 0; i < tests.size(); ++i) w.push_back({{"test", tests[i].name}, {"error", errs[i]}});
        return w;
    };
    const auto mismatch = [&](const auto& phi) {
        json mm = json::array();
        if (!cfg.contains("system") || !ap.contains("target")) return mm;
        const auto sys = build_system(cfg.at("system"));
        if (sys.T.size() != M) throw ConfigError("approx: system size differs from M");
        const auto tau = circle_target(ap.at("target"));
        for (double e : detail::optional_value<std::vector<double>>(ap, "mismatch_eps", {})) {
            const auto bad = map_mismatch_set(phi, sys.T, tau, e, threads);
            mm.push_back({{"eps", e}, {"fraction", static_cast<double>(bad.size()) / static_cast<double>(M)},
                          {"set", index_set(bad)}});
        }
        return mm;
    };
    if (space == "circle") {
        const auto phi = circle_grid(M);
        out = quality_common(phi, ap);
        out["weak_star_errors"] = report_tests(phi);
        out["map_mismatch"] = mismatch(phi);
    } else if (space == "interval") {
        const auto phi = interval_grid(M);
        out = quality_common(phi, ap);
        out["weak_star_errors"] = report_tests(phi);
        out["map_mismatch"] = mismatch(phi);
    } else {
        throw ConfigError("approx: unknown space '" + space + "'");
    }
    return out;
}

inline json cmd_approx(const json& cfg, const RunOptions& opt)
{
    const json ap = detail::required<json>(cfg, "approx", "config");
    const auto mode = detail::optional_value<std::string>(ap, "mode", "quality");
    const unsigned threads = resolve_thread_count(opt.threads);
    json report;
    report["mode"] = mode;
    try {
        if (mode == "pipeline")
            report["runs"] = approx_pipeline(ap, threads);
        else if (mode == "quality")
            report["quality"] = approx_quality(cfg, ap, threads);
        else
            throw ConfigError("approx: mode must be quality or pipeline");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("approx: ") + e.what());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("approx: ") + e.what());
    }
    write_file(opt.out_dir / (opt.prefix + "_approx.json"), report.dump(2) + "\n");
    return report;
}

// ---------------------------------------------------------------- check

/// Runs the invariant suites; extra permutation fixtures come from "check.fixtures".
inline Failures cmd_check(const json& cfg, const RunOptions& opt)
{
    const json ch = cfg.contains("check") ? cfg.at("check") : json::object();
    const auto M = detail::optional_value<std::size_t>(ch, "M", 1000);
    if (M < 8) throw ConfigError("check: M must be at least 8");
    const bool exact = opt.exact || detail::optional_value<bool>(ch, "exact", false);
    Failures out;
    if (ch.contains("fixtures")) {
        for (const auto& fx : ch.at("fixtures")) {
            const auto label = detail::optional_value<std::string>(fx, "label", "fixture");
            const auto image = detail::required<std::vector<index_t>>(fx, "image", "fixture");
            auto f = check_bijection_fixture(image, label);
            out.insert(out.end(), f.begin(), f.end());
        }
    }
    auto f = run_default_suite(M, exact ? ArithmeticMode::exact : ArithmeticMode::floating, config_seed(cfg, opt));
    out.insert(out.end(), f.begin(), f.end());
    return out;
}

inline std::string failure_line(const InvariantFailure& f)
{
    return json{{"suite", f.suite}, {"invariant", f.invariant}, {"detail", f.detail}}.dump();
}

} // namespace ergodia::cli
