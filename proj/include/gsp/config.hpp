#ifndef GSP_CONFIG_HPP
#define GSP_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsp/filter.hpp"
#include "gsp/gnn.hpp"
#include "gsp/graphon.hpp"
#include "gsp/io.hpp"
#include "gsp/signal.hpp"
#include "gsp/stability.hpp"

namespace gsp {

using json = nlohmann::json;

inline json json_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw config_error("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

namespace detail {

inline const json& require_field(const json& j, const char* key, const std::string& ctx) {
    if (!j.is_object()) throw config_error("field '" + ctx + "' must be an object");
    auto it = j.find(key);
    if (it == j.end()) throw config_error("missing field '" + ctx + "." + key + "'");
    return *it;
}

inline double number_field(const json& j, const char* key, const std::string& ctx) {
    const json& v = require_field(j, key, ctx);
    if (!v.is_number()) throw config_error("field '" + ctx + "." + key + "' must be a number");
    return v.get<double>();
}

inline double number_field_or(const json& j, const char* key, const std::string& ctx,
                              double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return number_field(j, key, ctx);
}

inline int int_field(const json& j, const char* key, const std::string& ctx) {
    const json& v = require_field(j, key, ctx);
    if (!v.is_number_integer())
        throw config_error("field '" + ctx + "." + key + "' must be an integer");
    return v.get<int>();
}

inline int int_field_or(const json& j, const char* key, const std::string& ctx, int fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return int_field(j, key, ctx);
}

inline std::string string_field(const json& j, const char* key, const std::string& ctx) {
    const json& v = require_field(j, key, ctx);
    if (!v.is_string()) throw config_error("field '" + ctx + "." + key + "' must be a string");
    return v.get<std::string>();
}

inline std::string string_field_or(const json& j, const char* key, const std::string& ctx,
                                   const std::string& fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return string_field(j, key, ctx);
}

inline std::string resolve_path(const std::string& path, const std::string& base_dir) {
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

inline Eigen::MatrixXd matrix_field(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty())
        throw config_error("field '" + ctx + "' must be a non-empty array of rows");
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    if (cols == 0) throw config_error("field '" + ctx + "' rows must be non-empty arrays");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw config_error("field '" + ctx + "' must be rectangular");
        for (std::size_t k = 0; k < cols; ++k) {
            if (!row[k].is_number())
                throw config_error("field '" + ctx + "' entries must be numbers");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k].get<double>();
        }
    }
    return m;
}

inline json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

inline SampleMode mode_from_string(const std::string& s) {
    if (s == "deterministic") return SampleMode::Deterministic;
    if (s == "stochastic") return SampleMode::Stochastic;
    throw config_error("unknown mode '" + s + "' (expected deterministic or stochastic)");
}

inline Nonlinearity nonlinearity_from_string(const std::string& s) {
    if (s == "relu") return Nonlinearity::Relu;
    if (s == "abs") return Nonlinearity::Abs;
    if (s == "tanh") return Nonlinearity::Tanh;
    throw config_error("unknown nonlinearity '" + s + "' (expected relu, abs or tanh)");
}

inline FilterForm filter_form_from_string(const std::string& s) {
    if (s == "poly") return FilterForm::Poly;
    if (s == "band") return FilterForm::Band;
    throw config_error("unknown filter form '" + s + "' (expected poly or band)");
}

/// Graphon config block: {"kind": ..., ...family parameters...,
/// "policy": "reject"|"clip"}.  Grid values come inline ("values") or
/// from a CSV file ("csv", resolved relative to the config file).
inline Graphon graphon_from_json(const json& j, const std::string& base_dir = "") {
    const std::string ctx = "graphon";
    const std::string kind = detail::string_field(j, "kind", ctx);
    const std::string policy_tag = detail::string_field_or(j, "policy", ctx, "reject");
    RangePolicy policy;
    if (policy_tag == "reject")
        policy = RangePolicy::Reject;
    else if (policy_tag == "clip")
        policy = RangePolicy::Clip;
    else
        throw config_error("field 'graphon.policy' must be reject or clip");

    try {
        if (kind == "constant") return Graphon::constant(detail::number_field(j, "p", ctx), policy);
        if (kind == "smooth-exp")
            return Graphon::smooth_exp(detail::number_field(j, "beta", ctx), policy);
        if (kind == "sbm") {
            const json& b = detail::require_field(j, "boundaries", ctx);
            if (!b.is_array()) throw config_error("field 'graphon.boundaries' must be an array");
            std::vector<double> boundaries;
            for (const json& v : b) {
                if (!v.is_number())
                    throw config_error("field 'graphon.boundaries' entries must be numbers");
                boundaries.push_back(v.get<double>());
            }
            const Eigen::MatrixXd probs =
                detail::matrix_field(detail::require_field(j, "probs", ctx), "graphon.probs");
            return Graphon::sbm(std::move(boundaries), probs, policy);
        }
        if (kind == "grid") {
            if (j.contains("values"))
                return Graphon::grid(detail::matrix_field(j["values"], "graphon.values"), policy);
            const std::string path =
                detail::resolve_path(detail::string_field(j, "csv", ctx), base_dir);
            return Graphon::grid(load_matrix_csv(path), policy);
        }
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("invalid graphon config: ") + e.what());
    }
    throw config_error("unknown graphon kind '" + kind +
                       "' (expected constant, sbm, smooth-exp or grid)");
}

inline json graphon_to_json(const Graphon& w) {
    json j;
    j["policy"] = w.policy() == RangePolicy::Reject ? "reject" : "clip";
    switch (w.kind()) {
        case GraphonKind::Constant:
            j["kind"] = "constant";
            j["p"] = w.value_range().first;
            break;
        case GraphonKind::SmoothExp:
            j["kind"] = "smooth-exp";
            j["beta"] = w.beta();
            if (w.affine_scale() != 1.0 || w.affine_offset() != 0.0) {
                j["scale"] = w.affine_scale();
                j["offset"] = w.affine_offset();
            }
            break;
        case GraphonKind::Sbm:
            j["kind"] = "sbm";
            j["boundaries"] = w.boundaries();
            j["probs"] = detail::matrix_to_json(w.effective_cells());
            break;
        case GraphonKind::Grid:
            j["kind"] = "grid";
            j["values"] = detail::matrix_to_json(w.effective_cells());
            break;
    }
    return j;
}

/// Perturbation config block, applied lazily so one parsed config can
/// perturb any graphon:
///   {"kind": "additive-constant", "a": 0.05}
///   {"kind": "scaled-copy", "alpha": 0.9}
///   {"kind": "inv-exp", "w_min": 0.05}
///   {"kind": "custom-grid", "csv": path}  (or inline "values")
struct PerturbationConfig {
    std::string kind = "additive-constant";
    double a = 0.0;
    double alpha = 1.0;
    double w_min = 0.05;
    std::optional<Eigen::MatrixXd> grid;

    Perturbation apply(const Graphon& w, int resolution) const {
        if (kind == "additive-constant") return perturb_additive(w, a, resolution);
        if (kind == "scaled-copy") return perturb_scale(w, alpha, resolution);
        if (kind == "inv-exp") return perturb_inv_exp(w, w_min, resolution);
        if (kind == "custom-grid") return perturb_grid(w, *grid);
        throw config_error("unknown perturbation kind '" + kind + "'");
    }
};

inline PerturbationConfig perturbation_from_json(const json& j,
                                                 const std::string& base_dir = "") {
    const std::string ctx = "perturbation";
    PerturbationConfig p;
    p.kind = detail::string_field(j, "kind", ctx);
    if (p.kind == "additive-constant") {
        p.a = detail::number_field(j, "a", ctx);
    } else if (p.kind == "scaled-copy") {
        p.alpha = detail::number_field(j, "alpha", ctx);
    } else if (p.kind == "inv-exp") {
        p.w_min = detail::number_field_or(j, "w_min", ctx, 0.05);
    } else if (p.kind == "custom-grid") {
        if (j.contains("values")) {
            p.grid = detail::matrix_field(j["values"], "perturbation.values");
        } else {
            const std::string path =
                detail::resolve_path(detail::string_field(j, "csv", ctx), base_dir);
            p.grid = load_matrix_csv(path);
        }
    } else {
        throw config_error("unknown perturbation kind '" + p.kind +
                           "' (expected additive-constant, scaled-copy, inv-exp or custom-grid)");
    }
    return p;
}

inline json perturbation_to_json(const PerturbationConfig& p) {
    json j;
    j["kind"] = p.kind;
    if (p.kind == "additive-constant") j["a"] = p.a;
    if (p.kind == "scaled-copy") j["alpha"] = p.alpha;
    if (p.kind == "inv-exp") j["w_min"] = p.w_min;
    if (p.kind == "custom-grid") j["values"] = detail::matrix_to_json(*p.grid);
    return j;
}

/// Signal config block: constant/linear/cosine/step (inline values or a
/// one-column CSV).
inline GraphonSignal signal_from_json(const json& j, const std::string& base_dir = "") {
    const std::string ctx = "signal";
    const std::string kind = detail::string_field(j, "kind", ctx);
    if (kind == "constant") return GraphonSignal::constant(detail::number_field(j, "value", ctx));
    if (kind == "linear")
        return GraphonSignal::linear(detail::number_field(j, "a", ctx),
                                     detail::number_field(j, "b", ctx));
    if (kind == "cosine")
        return GraphonSignal::cosine(detail::number_field(j, "amp", ctx),
                                     detail::number_field(j, "k", ctx));
    if (kind == "step") {
        if (j.contains("values")) {
            const json& vals = j["values"];
            if (!vals.is_array() || vals.empty())
                throw config_error("field 'signal.values' must be a non-empty array");
            Eigen::VectorXd x(static_cast<Eigen::Index>(vals.size()));
            for (std::size_t i = 0; i < vals.size(); ++i) {
                if (!vals[i].is_number())
                    throw config_error("field 'signal.values' entries must be numbers");
                x(static_cast<Eigen::Index>(i)) = vals[i].get<double>();
            }
            return GraphonSignal::step(std::move(x));
        }
        const std::string path =
            detail::resolve_path(detail::string_field(j, "csv", ctx), base_dir);
        return GraphonSignal::step(load_signal_csv(path));
    }
    throw config_error("unknown signal kind '" + kind +
                       "' (expected constant, linear, cosine or step)");
}

inline json signal_to_json(const GraphonSignal& x) {
    json j;
    switch (x.kind()) {
        case SignalKind::Constant:
            j["kind"] = "constant";
            j["value"] = x(0.0);
            break;
        case SignalKind::Linear:
            j["kind"] = "linear";
            j["a"] = x.param_a();
            j["b"] = x.param_b();
            break;
        case SignalKind::Cosine:
            j["kind"] = "cosine";
            j["amp"] = x.param_a();
            j["k"] = x.param_b();
            break;
        case SignalKind::Step: {
            json vals = json::array();
            for (Eigen::Index i = 0; i < x.step_values().size(); ++i)
                vals.push_back(x.step_values()(i));
            j["kind"] = "step";
            j["values"] = std::move(vals);
            break;
        }
    }
    return j;
}

/// Full sweep configuration (also accepted, with a single size and mode,
/// by the one-cell `bounds` command).
struct ExperimentConfig {
    Graphon graphon = Graphon::constant(0.5);
    PerturbationConfig perturbation;
    std::vector<int> sizes;
    std::vector<std::uint64_t> trials;  // trial labels feeding the seed derivation
    std::vector<SampleMode> modes;
    int layers = 2;
    int width = 1;
    int order = 5;
    Nonlinearity sigma = Nonlinearity::Relu;
    FilterForm form = FilterForm::Band;
    double c = 0.3;
    double xi = 0.05;
    int resolution = 1024;
    GraphonSignal signal = GraphonSignal::constant(1.0);
    std::uint64_t master_seed = 0;
    std::optional<double> a1_override;
    std::optional<double> a3_override;
};

inline ExperimentConfig experiment_from_json(const json& j, const std::string& base_dir = "") {
    ExperimentConfig cfg;
    cfg.graphon = graphon_from_json(detail::require_field(j, "graphon", "config"), base_dir);
    cfg.perturbation =
        perturbation_from_json(detail::require_field(j, "perturbation", "config"), base_dir);

    const json& sizes = detail::require_field(j, "sizes", "config");
    if (!sizes.is_array() || sizes.empty())
        throw config_error("field 'sizes' must be a non-empty array");
    for (const json& v : sizes) {
        if (!v.is_number_integer() || v.get<int>() < 1)
            throw config_error("field 'sizes' entries must be positive integers");
        cfg.sizes.push_back(v.get<int>());
    }
    for (std::size_t i = 1; i < cfg.sizes.size(); ++i)
        if (cfg.sizes[i] <= cfg.sizes[i - 1])
            throw config_error("field 'sizes' must be strictly ascending");

    if (j.contains("seeds")) {
        const json& seeds = j["seeds"];
        if (seeds.is_number_integer()) {
            const int count = seeds.get<int>();
            if (count < 1) throw config_error("field 'seeds' count must be >= 1");
            for (int t = 0; t < count; ++t)
                cfg.trials.push_back(static_cast<std::uint64_t>(t));
        } else if (seeds.is_array() && !seeds.empty()) {
            for (const json& v : seeds) {
                if (!v.is_number_unsigned() && !v.is_number_integer())
                    throw config_error("field 'seeds' entries must be integers");
                cfg.trials.push_back(v.get<std::uint64_t>());
            }
        } else {
            throw config_error("field 'seeds' must be a count or a non-empty array");
        }
    } else {
        cfg.trials.push_back(0);
    }

    const std::string mode = detail::string_field_or(j, "mode", "config", "deterministic");
    if (mode == "both") {
        cfg.modes = {SampleMode::Deterministic, SampleMode::Stochastic};
    } else {
        cfg.modes = {mode_from_string(mode)};
    }

    if (j.contains("architecture")) {
        const json& arch = j["architecture"];
        cfg.layers = detail::int_field_or(arch, "layers", "architecture", cfg.layers);
        cfg.width = detail::int_field_or(arch, "width", "architecture", cfg.width);
        cfg.order = detail::int_field_or(arch, "order", "architecture", cfg.order);
        cfg.sigma = nonlinearity_from_string(
            detail::string_field_or(arch, "nonlinearity", "architecture", "relu"));
        if (cfg.layers < 1 || cfg.width < 1 || cfg.order < 0)
            throw config_error("field 'architecture' values out of range");
    }
    if (j.contains("filter"))
        cfg.form = filter_form_from_string(detail::string_field(j["filter"], "form", "filter"));

    cfg.c = detail::number_field_or(j, "c", "config", cfg.c);
    if (!(cfg.c > 0.0 && cfg.c < 1.0)) throw config_error("field 'c' must lie in (0,1)");
    cfg.xi = detail::number_field_or(j, "xi", "config", cfg.xi);
    if (!(cfg.xi > 0.0 && cfg.xi < 1.0)) throw config_error("field 'xi' must lie in (0,1)");
    cfg.resolution = detail::int_field_or(j, "resolution", "config", cfg.resolution);
    if (cfg.resolution < 2) throw config_error("field 'resolution' must be >= 2");
    if (j.contains("signal")) cfg.signal = signal_from_json(j["signal"], base_dir);
    if (j.contains("master_seed")) {
        const json& s = j["master_seed"];
        if (!s.is_number_unsigned() && !s.is_number_integer())
            throw config_error("field 'master_seed' must be an integer");
        cfg.master_seed = s.get<std::uint64_t>();
    }
    if (j.contains("constants")) {
        const json& k = j["constants"];
        if (k.contains("a1")) cfg.a1_override = detail::number_field(k, "a1", "constants");
        if (k.contains("a3")) cfg.a3_override = detail::number_field(k, "a3", "constants");
    }
    return cfg;
}

inline json experiment_to_json(const ExperimentConfig& cfg) {
    json j;
    j["graphon"] = graphon_to_json(cfg.graphon);
    j["perturbation"] = perturbation_to_json(cfg.perturbation);
    j["sizes"] = cfg.sizes;
    j["seeds"] = cfg.trials;
    j["mode"] = cfg.modes.size() == 2 ? "both" : to_string(cfg.modes.front());
    j["architecture"] = {{"layers", cfg.layers},
                         {"width", cfg.width},
                         {"order", cfg.order},
                         {"nonlinearity", to_string(cfg.sigma)}};
    j["filter"] = {{"form", to_string(cfg.form)}};
    j["c"] = cfg.c;
    j["xi"] = cfg.xi;
    j["resolution"] = cfg.resolution;
    j["signal"] = signal_to_json(cfg.signal);
    j["master_seed"] = cfg.master_seed;
    if (cfg.a1_override || cfg.a3_override) {
        json k;
        if (cfg.a1_override) k["a1"] = *cfg.a1_override;
        if (cfg.a3_override) k["a3"] = *cfg.a3_override;
        j["constants"] = std::move(k);
    }
    return j;
}

inline ContextOptions context_options_from(const ExperimentConfig& cfg) {
    ContextOptions opt;
    opt.c = cfg.c;
    opt.xi = cfg.xi;
    opt.resolution = cfg.resolution;
    opt.signal = cfg.signal;
    opt.layers = cfg.layers;
    opt.width = cfg.width;
    opt.order = cfg.order;
    opt.form = cfg.form;
    opt.sigma = cfg.sigma;
    opt.a1_override = cfg.a1_override;
    opt.a3_override = cfg.a3_override;
    return opt;
}

inline json bound_to_json(const BoundValue& b) {
    json j;
    j["applicable"] = b.applicable;
    j["infinite"] = b.infinite;
    if (b.applicable && !b.infinite) j["value"] = b.value;
    return j;
}

inline json report_to_json(const StabilityReport& r) {
    json j;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["mode"] = to_string(r.mode);
    j["filter_form"] = to_string(r.form);
    j["epsilon"] = r.eps;
    j["A1"] = r.a1;
    j["A2"] = r.a2;
    j["A3"] = r.a3;
    j["B"] = r.b;
    j["sup_response"] = r.sup_response;
    j["band_deviation"] = r.band_deviation;
    json nc;
    nc["continuum"] = r.nc_w;
    nc["continuum_perturbed"] = r.nc_wp;
    nc["weighted"] = r.nc_bar;
    nc["weighted_perturbed"] = r.nc_bar_p;
    if (r.nc_rand) nc["bernoulli"] = *r.nc_rand;
    if (r.nc_rand_p) nc["bernoulli_perturbed"] = *r.nc_rand_p;
    j["band_counts"] = std::move(nc);
    json gaps;
    auto put_gap = [&gaps](const char* key, const std::optional<double>& v) {
        if (v) gaps[key] = *v;
    };
    put_gap("pair", r.delta_pair);
    put_gap("base_vs_weighted", r.delta_w_bar);
    put_gap("perturbed_vs_weighted", r.delta_wp_barp);
    put_gap("weighted_vs_bernoulli", r.delta_bar_rand);
    put_gap("weighted_vs_bernoulli_perturbed", r.delta_barp_randp);
    j["band_gaps"] = std::move(gaps);
    j["n_c_max"] = r.nc_max;
    if (r.delta_min) j["delta_c_min"] = *r.delta_min;
    j["bound_thm4"] = bound_to_json(r.filter_bound);
    j["bound_thm1"] = bound_to_json(r.continuum_bound);
    j["bound_thm2"] = bound_to_json(r.sampled_bound);
    j["bound_thm3"] = bound_to_json(r.bernoulli_bound);
    j["bound_lemma1"] = bound_to_json(r.transfer_bound);
    j["node_signal_norm"] = r.node_signal_norm;
    j["empirical_l2"] = r.empirical_l2;
    j["empirical_l2_continuum"] = r.empirical_l2 / std::sqrt(static_cast<double>(r.n));
    if (r.empirical_rel_defined) j["empirical_rel"] = r.empirical_rel;
    j["as1_pass"] = r.as1_pass;
    json deg;
    deg["applicable"] = r.degree.applicable;
    if (r.degree.applicable) {
        deg["pass"] = r.degree.pass;
        deg["margin_base"] = r.degree.margin_base;
        deg["margin_perturbed"] = r.degree.margin_perturbed;
    }
    j["degree_assumption"] = std::move(deg);
    if (r.sample_distance) {
        json c;
        c["distance"] = *r.sample_distance;
        c["threshold"] = *r.sample_threshold;
        c["within"] = *r.sample_concentrated;
        c["degree_floor_ok"] = *r.degree_radius_ok;
        j["concentration"] = std::move(c);
    }
    if (r.transfer_empirical) j["transfer_empirical"] = *r.transfer_empirical;
    j["flags"] = r.flags;
    return j;
}

/// Filter-bank parameters as a single JSON document: widths,
/// nonlinearity, per-layer banks (row-major over output then input
/// features).
inline json params_to_json(const GnnParams& params) {
    json j;
    j["widths"] = params.widths();
    j["nonlinearity"] = to_string(params.sigma);
    json layers = json::array();
    for (const auto& layer : params.banks) {
        json rows = json::array();
        for (const auto& row : layer) {
            json filters = json::array();
            for (const auto& f : row) {
                json fj;
                if (const auto* poly = std::get_if<PolyFilter>(&f)) {
                    fj["form"] = "poly";
                    fj["coefficients"] = poly->coefficients();
                } else {
                    const auto& band = std::get<BandFilter>(f);
                    fj["form"] = "band";
                    fj["g0"] = band.g0();
                    fj["gain"] = band.gain();
                    fj["c"] = band.band_threshold();
                }
                filters.push_back(std::move(fj));
            }
            rows.push_back(std::move(filters));
        }
        layers.push_back(std::move(rows));
    }
    j["layers"] = std::move(layers);
    return j;
}

inline FilterSpec filter_from_json(const json& j) {
    const std::string form = detail::string_field(j, "form", "filter");
    if (form == "poly") {
        const json& coeffs = detail::require_field(j, "coefficients", "filter");
        if (!coeffs.is_array() || coeffs.empty())
            throw config_error("field 'filter.coefficients' must be a non-empty array");
        std::vector<double> h;
        for (const json& v : coeffs) {
            if (!v.is_number())
                throw config_error("field 'filter.coefficients' entries must be numbers");
            h.push_back(v.get<double>());
        }
        return PolyFilter(std::move(h));
    }
    if (form == "band")
        return BandFilter(detail::number_field(j, "g0", "filter"),
                          detail::number_field(j, "gain", "filter"),
                          detail::number_field(j, "c", "filter"));
    throw config_error("unknown filter form '" + form + "'");
}

inline GnnParams params_from_json(const json& j) {
    GnnParams params;
    params.sigma =
        nonlinearity_from_string(detail::string_field(j, "nonlinearity", "params"));
    const json& layers = detail::require_field(j, "layers", "params");
    if (!layers.is_array() || layers.empty())
        throw config_error("field 'params.layers' must be a non-empty array");
    for (const json& layer : layers) {
        if (!layer.is_array() || layer.empty())
            throw config_error("field 'params.layers' entries must be non-empty arrays");
        std::vector<std::vector<FilterSpec>> rows;
        for (const json& row : layer) {
            if (!row.is_array() || row.empty())
                throw config_error("filter bank rows must be non-empty arrays");
            std::vector<FilterSpec> filters;
            for (const json& f : row) filters.push_back(filter_from_json(f));
            rows.push_back(std::move(filters));
        }
        params.banks.push_back(std::move(rows));
    }
    params.widths();  // validate shape consistency
    return params;
}

}  // namespace gsp

#endif  // GSP_CONFIG_HPP
