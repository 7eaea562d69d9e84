// gsp - graphon signal processing batch tool.
//
// Subcommands: sample, spectrum, bounds, sweep, homdensity, train,
// ingest-ratings.  Every command reads a JSON config (--config), writes
// its artifacts into --out, and is deterministic given (config, --seed).
// Exit codes: 0 success, 1 usage/configuration error, 2 numerical
// failure.

#include <CLI11.hpp>

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gsp/config.hpp"
#include "gsp/gnn.hpp"
#include "gsp/homomorphism.hpp"
#include "gsp/io.hpp"
#include "gsp/ratings.hpp"
#include "gsp/sampling.hpp"
#include "gsp/spectral.hpp"
#include "gsp/stability.hpp"
#include "gsp/sweep.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    int threads = 1;
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file")->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "master seed override");
    cmd->add_option("--threads", args.threads, "worker threads for sweeps");
    cmd->add_flag("--strict", args.strict, "fail on cells with no usable bound");
}

std::string out_path(const CommonArgs& args, const std::string& name) {
    std::filesystem::create_directories(args.out_dir);
    return (std::filesystem::path(args.out_dir) / name).string();
}

std::string config_dir(const CommonArgs& args) {
    return std::filesystem::path(args.config_path).parent_path().string();
}

std::uint64_t master_seed(const gsp::json& j, const CommonArgs& args) {
    if (args.seed) return *args.seed;
    if (j.contains("master_seed")) {
        const gsp::json& s = j["master_seed"];
        if (!s.is_number_integer() && !s.is_number_unsigned())
            throw gsp::config_error("field 'master_seed' must be an integer");
        return s.get<std::uint64_t>();
    }
    return 0;
}

void write_json(const std::string& path, const gsp::json& j) {
    std::ofstream out(path);
    if (!out) throw gsp::config_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------- sample

int run_sample(const CommonArgs& args) {
    const gsp::json cfg = gsp::json_from_file(args.config_path);
    const gsp::Graphon w = gsp::graphon_from_json(
        gsp::detail::require_field(cfg, "graphon", "config"), config_dir(args));
    const int n = gsp::detail::int_field(cfg, "n", "config");
    const gsp::SampleMode mode =
        gsp::mode_from_string(gsp::detail::string_field_or(cfg, "mode", "config", "deterministic"));
    const std::string format = gsp::detail::string_field_or(cfg, "format", "config", "csv");

    gsp::Graph g = mode == gsp::SampleMode::Deterministic
                       ? gsp::deterministic_graph(w, n)
                       : gsp::stochastic_graph(w, n, master_seed(cfg, args));
    if (format == "csv") {
        gsp::save_matrix_csv(out_path(args, "graph.csv"), g.adjacency());
    } else if (format == "edgelist") {
        gsp::save_edge_list(out_path(args, "graph_edges.csv"), g);
    } else {
        throw gsp::config_error("field 'format' must be csv or edgelist");
    }
    return 0;
}

// -------------------------------------------------------------- spectrum

int run_spectrum(const CommonArgs& args) {
    const gsp::json cfg = gsp::json_from_file(args.config_path);
    const std::string scale_tag =
        gsp::detail::string_field_or(cfg, "scale", "config", "graphon");
    gsp::SpectrumScale scale;
    if (scale_tag == "graphon")
        scale = gsp::SpectrumScale::Graphon;
    else if (scale_tag == "graph")
        scale = gsp::SpectrumScale::Graph;
    else
        throw gsp::config_error("field 'scale' must be graphon or graph");
    const bool vectors = cfg.contains("vectors") && cfg["vectors"].is_boolean() &&
                         cfg["vectors"].get<bool>();

    gsp::Graph g = [&]() {
        if (cfg.contains("graph_csv")) {
            const std::string path = gsp::detail::resolve_path(
                gsp::detail::string_field(cfg, "graph_csv", "config"), config_dir(args));
            return gsp::Graph(gsp::load_matrix_csv(path));
        }
        const gsp::Graphon w = gsp::graphon_from_json(
            gsp::detail::require_field(cfg, "graphon", "config"), config_dir(args));
        const int n = gsp::detail::int_field(cfg, "n", "config");
        const gsp::SampleMode mode = gsp::mode_from_string(
            gsp::detail::string_field_or(cfg, "mode", "config", "deterministic"));
        return mode == gsp::SampleMode::Deterministic
                   ? gsp::deterministic_graph(w, n)
                   : gsp::stochastic_graph(w, n, master_seed(cfg, args));
    }();

    const gsp::SignedSpectrum spec = gsp::decompose(g, scale, vectors);
    gsp::save_spectrum_csv(out_path(args, "spectrum.csv"), spec);
    if (vectors) {
        Eigen::MatrixXd v(spec.dim(), spec.positive_count() + spec.negative_count());
        Eigen::Index col = 0;
        for (const auto& [idx, value] : spec.export_order()) v.col(col++) = spec.eigenvector(idx);
        gsp::save_matrix_csv(out_path(args, "eigenvectors.csv"), v);
    }
    return 0;
}

// ---------------------------------------------------------- bounds/sweep

int run_bounds(const CommonArgs& args) {
    const gsp::json raw = gsp::json_from_file(args.config_path);
    gsp::ExperimentConfig cfg = gsp::experiment_from_json(raw, config_dir(args));
    if (args.seed) cfg.master_seed = *args.seed;
    if (cfg.modes.size() != 1)
        throw gsp::config_error("bounds runs a single cell; mode must not be 'both'");

    const gsp::StabilityContext ctx = gsp::make_stability_context(
        cfg.graphon, cfg.perturbation.apply(cfg.graphon, cfg.resolution),
        gsp::context_options_from(cfg));
    const int n = cfg.sizes.front();
    const std::uint64_t seed =
        gsp::cell_seed(cfg.master_seed, n, cfg.trials.front(), cfg.modes.front());
    const gsp::StabilityReport report = gsp::run_stability_cell(ctx, n, seed, cfg.modes.front());

    write_json(out_path(args, "report.json"), gsp::report_to_json(report));
    std::ofstream csv(out_path(args, "report.csv"));
    csv << gsp::stability_csv_header() << '\n' << gsp::stability_csv_row(report) << '\n';
    return 0;
}

int run_sweep_cmd(const CommonArgs& args) {
    const gsp::json raw = gsp::json_from_file(args.config_path);
    gsp::ExperimentConfig cfg = gsp::experiment_from_json(raw, config_dir(args));
    if (args.seed) cfg.master_seed = *args.seed;

    const gsp::SweepResult result = gsp::run_sweep(cfg, args.threads);
    if (args.strict) gsp::enforce_strict(result);
    gsp::write_stability_csv(out_path(args, "stability.csv"), result);
    write_json(out_path(args, "summary.json"), gsp::sweep_summary(cfg, result));
    return 0;
}

// ------------------------------------------------------------ homdensity

int run_homdensity(const CommonArgs& args) {
    const gsp::json cfg = gsp::json_from_file(args.config_path);
    const gsp::Graphon w = gsp::graphon_from_json(
        gsp::detail::require_field(cfg, "graphon", "config"), config_dir(args));

    std::vector<gsp::Motif> motifs;
    const gsp::json& mj = gsp::detail::require_field(cfg, "motifs", "config");
    if (!mj.is_array() || mj.empty())
        throw gsp::config_error("field 'motifs' must be a non-empty array");
    for (const gsp::json& m : mj) {
        if (!m.is_string()) throw gsp::config_error("field 'motifs' entries must be strings");
        try {
            motifs.push_back(gsp::motif_from_string(m.get<std::string>()));
        } catch (const std::invalid_argument& e) {
            throw gsp::config_error(e.what());
        }
    }
    std::vector<int> sizes;
    const gsp::json& sj = gsp::detail::require_field(cfg, "sizes", "config");
    if (!sj.is_array() || sj.empty())
        throw gsp::config_error("field 'sizes' must be a non-empty array");
    for (const gsp::json& s : sj) {
        if (!s.is_number_integer() || s.get<int>() < 1)
            throw gsp::config_error("field 'sizes' entries must be positive integers");
        sizes.push_back(s.get<int>());
    }
    const gsp::SampleMode mode = gsp::mode_from_string(
        gsp::detail::string_field_or(cfg, "mode", "config", "deterministic"));
    const int seeds = gsp::detail::int_field_or(cfg, "seeds", "config", 10);
    const int resolution = gsp::detail::int_field_or(cfg, "resolution", "config", 1024);

    std::vector<gsp::HomDensityRow> rows;
    try {
        rows = gsp::convergence_table(w, motifs, sizes, mode, seeds, master_seed(cfg, args),
                                      resolution);
    } catch (const std::invalid_argument& e) {
        throw gsp::config_error(e.what());
    }

    std::ofstream out(out_path(args, "homdensity.csv"));
    if (!out) throw gsp::config_error("cannot write homdensity.csv");
    out << "motif,n,mode,seed_count,density_graph,density_graphon,gap\n";
    for (const gsp::HomDensityRow& r : rows)
        out << gsp::to_string(r.motif) << ',' << r.n << ',' << gsp::to_string(r.mode) << ','
            << r.seed_count << ',' << gsp::format_double(r.density_graph) << ','
            << gsp::format_double(r.density_graphon) << ',' << gsp::format_double(r.gap) << '\n';
    return 0;
}

// ----------------------------------------------------------------- train

int run_train(const CommonArgs& args) {
    const gsp::json cfg = gsp::json_from_file(args.config_path);
    const std::uint64_t seed = master_seed(cfg, args);

    gsp::RatingsMatrix ratings;
    if (cfg.contains("ratings_csv")) {
        const std::string path = gsp::detail::resolve_path(
            gsp::detail::string_field(cfg, "ratings_csv", "config"), config_dir(args));
        ratings = gsp::load_ratings_csv(path);
    } else if (cfg.contains("synthetic")) {
        const gsp::json& syn = cfg["synthetic"];
        const gsp::Graphon w = gsp::graphon_from_json(
            gsp::detail::require_field(syn, "graphon", "synthetic"), config_dir(args));
        gsp::SyntheticRatingsOptions opt;
        opt.missing_rate =
            gsp::detail::number_field_or(syn, "missing_rate", "synthetic", opt.missing_rate);
        opt.gain = gsp::detail::number_field_or(syn, "gain", "synthetic", opt.gain);
        try {
            ratings = gsp::generate_synthetic_ratings(
                w, gsp::detail::int_field(syn, "users", "synthetic"),
                gsp::detail::int_field(syn, "items", "synthetic"), gsp::mix64(seed), opt);
        } catch (const std::invalid_argument& e) {
            throw gsp::config_error(e.what());
        }
    } else {
        throw gsp::config_error("train config needs 'ratings_csv' or 'synthetic'");
    }

    const bool corated =
        cfg.contains("corated_only") && cfg["corated_only"].is_boolean() &&
        cfg["corated_only"].get<bool>();
    const gsp::CorrelationGraph cg = gsp::build_correlation_graph(ratings, corated);
    if (!cg.constant_items.empty())
        std::cerr << "note: " << cg.constant_items.size()
                  << " constant rating column(s) carry zero weight\n";
    const int n = cg.graph.size();

    // Dataset: the target item is the most-rated column; each user who
    // rated it contributes (row with the target zeroed) -> (full row).
    // Ratings are scaled into [0,1].
    int target = 0, best_count = -1;
    for (int m = 0; m < ratings.items(); ++m) {
        int count = 0;
        for (int u = 0; u < ratings.users(); ++u)
            if (ratings.values(u, m) != 0.0) ++count;
        if (count > best_count) {
            best_count = count;
            target = m;
        }
    }
    std::vector<Eigen::VectorXd> inputs, targets;
    for (int u = 0; u < ratings.users(); ++u) {
        if (ratings.values(u, target) == 0.0) continue;
        Eigen::VectorXd full = ratings.values.row(u).transpose() / 5.0;
        Eigen::VectorXd masked = full;
        masked(target) = 0.0;
        inputs.push_back(std::move(masked));
        targets.push_back(std::move(full));
    }
    if (inputs.size() < 2)
        throw gsp::config_error("fewer than 2 users rated the target item; nothing to train on");

    // Per-row 90-10 split after a seeded shuffle.
    const double split = gsp::detail::number_field_or(cfg, "split", "config", 0.9);
    if (!(split > 0.0 && split <= 1.0))
        throw gsp::config_error("field 'split' must lie in (0,1]");
    gsp::Rng rng(gsp::derive_seed(seed, 0x5117, inputs.size()));
    std::vector<std::size_t> perm(inputs.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform() * i)]);
    const auto train_count =
        std::max<std::size_t>(1, static_cast<std::size_t>(split * perm.size()));
    std::vector<Eigen::VectorXd> train_x, train_t, val_x, val_t;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        auto& bucket_x = i < train_count ? train_x : val_x;
        auto& bucket_t = i < train_count ? train_t : val_t;
        bucket_x.push_back(inputs[perm[i]]);
        bucket_t.push_back(targets[perm[i]]);
    }

    int layers = 2, width = 4, order = 5;
    gsp::Nonlinearity sigma = gsp::Nonlinearity::Relu;
    if (cfg.contains("architecture")) {
        const gsp::json& arch = cfg["architecture"];
        layers = gsp::detail::int_field_or(arch, "layers", "architecture", layers);
        width = gsp::detail::int_field_or(arch, "width", "architecture", width);
        order = gsp::detail::int_field_or(arch, "order", "architecture", order);
        sigma = gsp::nonlinearity_from_string(
            gsp::detail::string_field_or(arch, "nonlinearity", "architecture", "relu"));
    }
    const double lr = gsp::detail::number_field_or(cfg, "learning_rate", "config", 0.05);
    const int steps = gsp::detail::int_field_or(cfg, "steps", "config", 100);

    std::vector<int> widths(static_cast<std::size_t>(layers) + 1, width);
    widths.front() = 1;
    widths.back() = 1;
    gsp::Rng init_rng(gsp::derive_seed(seed, 0x1117, 1));
    gsp::GnnParams params = gsp::random_poly_gnn(widths, order, sigma, init_rng);

    const gsp::TrainResult trace =
        gsp::train_mse(params, cg.graph, static_cast<double>(n), train_x, train_t, lr, steps);

    std::ofstream loss(out_path(args, "loss.csv"));
    loss << "step,loss\n";
    for (std::size_t i = 0; i < trace.loss_trace.size(); ++i)
        loss << i << ',' << gsp::format_double(trace.loss_trace[i]) << '\n';

    gsp::json model = gsp::params_to_json(params);
    model["target_item"] = target + 1;  // 1-indexed, as in the ratings format
    model["train_rows"] = train_x.size();
    model["validation_rows"] = val_x.size();
    model["final_train_loss"] = trace.loss_trace.back();
    if (!val_x.empty())
        model["validation_loss"] =
            gsp::mse_loss(params, cg.graph, static_cast<double>(n), val_x, val_t);
    write_json(out_path(args, "model.json"), model);
    return 0;
}

// -------------------------------------------------------- ingest-ratings

int run_ingest(const CommonArgs& args) {
    const gsp::json cfg = gsp::json_from_file(args.config_path);
    const std::string path = gsp::detail::resolve_path(
        gsp::detail::string_field(cfg, "ratings_csv", "config"), config_dir(args));
    const bool corated =
        cfg.contains("corated_only") && cfg["corated_only"].is_boolean() &&
        cfg["corated_only"].get<bool>();
    const gsp::RatingsMatrix ratings = gsp::load_ratings_csv(path);
    const gsp::CorrelationGraph cg = gsp::build_correlation_graph(ratings, corated);
    if (!cg.constant_items.empty())
        std::cerr << "note: " << cg.constant_items.size()
                  << " constant rating column(s) carry zero weight\n";
    gsp::save_matrix_csv(out_path(args, "correlation_graph.csv"), cg.graph.adjacency());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphon signal processing toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* c_sample = app.add_subcommand("sample", "sample a graph from a graphon");
    CLI::App* c_spectrum = app.add_subcommand("spectrum", "signed spectrum of a graph/graphon");
    CLI::App* c_bounds = app.add_subcommand("bounds", "evaluate one stability cell");
    CLI::App* c_sweep = app.add_subcommand("sweep", "run a full stability sweep");
    CLI::App* c_hom = app.add_subcommand("homdensity", "motif density convergence table");
    CLI::App* c_train = app.add_subcommand("train", "train a polynomial filter network");
    CLI::App* c_ingest =
        app.add_subcommand("ingest-ratings", "ratings matrix to correlation graph");
    for (CLI::App* cmd :
         {c_sample, c_spectrum, c_bounds, c_sweep, c_hom, c_train, c_ingest})
        add_common(cmd, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_sample->parsed()) return run_sample(args);
        if (c_spectrum->parsed()) return run_spectrum(args);
        if (c_bounds->parsed()) return run_bounds(args);
        if (c_sweep->parsed()) return run_sweep_cmd(args);
        if (c_hom->parsed()) return run_homdensity(args);
        if (c_train->parsed()) return run_train(args);
        if (c_ingest->parsed()) return run_ingest(args);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const gsp::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const gsp::numeric_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
