// File formats and config parsing: CSV readers/writers, the stability
// row layout, JSON round-trips and the ratings pipeline.

#include <catch2/catch_amalgamated.hpp>

#include <gsp/config.hpp>
#include <gsp/graphon.hpp>
#include <gsp/io.hpp>
#include <gsp/ratings.hpp>
#include <gsp/sampling.hpp>
#include <gsp/spectral.hpp>
#include <gsp/stability.hpp>

#include <Eigen/Dense>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using namespace gsp;
namespace fs = std::filesystem;

namespace {

/// Fresh scratch directory per test case, removed on destruction.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("gsp-test-" + std::to_string(Catch::rngSeed()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

// ---------------------------------------------------------- formatting

TEST_CASE("numbers are printed with 12 significant digits", "[io]") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double(1e-15) == "1e-15");
    CHECK(format_double(123456789012345.0) == "1.23456789012e+14");
    CHECK(format_double(0.0) == "0");
}

TEST_CASE("bound cells collapse to na and inf markers", "[io]") {
    CHECK(format_bound(BoundValue::not_applicable()) == "na");
    BoundValue inf;
    inf.infinite = true;
    CHECK(format_bound(inf) == "inf");
    BoundValue fine;
    fine.value = 2.5;
    CHECK(format_bound(fine) == "2.5");
    CHECK(format_optional(std::nullopt) == "na");
    CHECK(format_optional(0.25) == "0.25");
}

TEST_CASE("flags join with semicolons", "[io]") {
    CHECK(join_flags({}) == "");
    CHECK(join_flags({"a"}) == "a");
    CHECK(join_flags({"a", "b"}) == "a;b");
}

// ------------------------------------------------------------ matrices

TEST_CASE("matrices survive a CSV round-trip", "[io]") {
    TempDir tmp;
    Eigen::MatrixXd m(2, 3);
    m << 0.5, 1.0 / 3.0, 0, -2, 1e-9, 7;
    save_matrix_csv(tmp.file("m.csv"), m);
    const Eigen::MatrixXd back = load_matrix_csv(tmp.file("m.csv"));
    REQUIRE(back.rows() == 2);
    REQUIRE(back.cols() == 3);
    CHECK((back - m).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("matrix loading rejects broken files", "[io]") {
    TempDir tmp;
    CHECK_THROWS_AS(load_matrix_csv(tmp.file("absent.csv")), config_error);

    write_text(tmp.file("ragged.csv"), "1,2\n3\n");
    CHECK_THROWS_AS(load_matrix_csv(tmp.file("ragged.csv")), config_error);

    write_text(tmp.file("empty.csv"), "");
    CHECK_THROWS_AS(load_matrix_csv(tmp.file("empty.csv")), config_error);

    write_text(tmp.file("words.csv"), "1,banana\n");
    CHECK_THROWS_WITH(load_matrix_csv(tmp.file("words.csv")),
                      ContainsSubstring("malformed number"));
}

TEST_CASE("signals are one-column matrices", "[io]") {
    TempDir tmp;
    Eigen::VectorXd x(3);
    x << 1, -0.5, 0.25;
    save_signal_csv(tmp.file("x.csv"), x);
    CHECK(load_signal_csv(tmp.file("x.csv")) == x);

    write_text(tmp.file("wide.csv"), "1,2\n3,4\n");
    CHECK_THROWS_AS(load_signal_csv(tmp.file("wide.csv")), config_error);
}

// ------------------------------------------------------- graph exports

TEST_CASE("edge lists keep the nonzero upper triangle, 1-indexed", "[io]") {
    TempDir tmp;
    Eigen::MatrixXd adj(2, 2);
    adj << 0.0, 0.5, 0.5, 0.75;
    save_edge_list(tmp.file("g.csv"), Graph(adj));
    CHECK(read_text(tmp.file("g.csv")) == "i,j,weight\n1,2,0.5\n2,2,0.75\n");
}

TEST_CASE("spectrum files list positive indices before negative", "[io]") {
    TempDir tmp;
    Eigen::MatrixXd swap(2, 2);
    swap << 0, 1, 1, 0;
    save_spectrum_csv(tmp.file("s.csv"),
                      decompose(Graph(swap), SpectrumScale::Graph, false));
    CHECK(read_text(tmp.file("s.csv")) == "signed_index,eigenvalue\n1,1\n-1,-1\n");

    Eigen::MatrixXd loop(2, 2);
    loop << 1, 0, 0, 0;
    save_spectrum_csv(tmp.file("z.csv"),
                      decompose(Graph(loop), SpectrumScale::Graph, false));
    // The zero eigenvalue trails the positive side.
    CHECK(read_text(tmp.file("z.csv")) == "signed_index,eigenvalue\n1,1\n2,0\n");
}

// ------------------------------------------------------- stability CSV

TEST_CASE("the stability header names all twenty columns", "[io]") {
    CHECK(stability_csv_header() ==
          "n,seed,mode,filter_form,epsilon,A1,A2,A3,B,n_c_max,delta_c_min,bound_thm1,"
          "bound_thm2,bound_thm3,bound_lemma1,empirical_l2,empirical_rel,as1_pass,as4_pass,"
          "flags");
}

TEST_CASE("stability rows serialize every field in order", "[io]") {
    StabilityReport r;
    r.n = 64;
    r.seed = 3;
    r.mode = SampleMode::Deterministic;
    r.form = FilterForm::Band;
    r.eps = 0.1;
    r.a2 = 0.5;
    r.nc_max = 1;
    r.delta_min = 0.5;
    r.continuum_bound.value = 1.5;
    r.sampled_bound.value = 2.5;
    r.bernoulli_bound = BoundValue::not_applicable();
    r.transfer_bound = BoundValue::not_applicable();
    r.empirical_l2 = 0.25;
    r.empirical_rel = 0.5;
    r.as1_pass = true;
    r.flags = {"band-deviation", "step-kernel"};

    CHECK(stability_csv_row(r) ==
          "64,3,deterministic,band,0.1,0,0.5,0,0,1,0.5,1.5,2.5,na,na,0.25,0.5,1,na,"
          "band-deviation;step-kernel");

    r.sampled_bound.infinite = true;
    r.empirical_rel_defined = false;
    r.delta_min = std::nullopt;
    r.degree.applicable = true;
    r.degree.pass = true;
    r.flags.clear();
    const std::string row = stability_csv_row(r);
    CHECK(row == "64,3,deterministic,band,0.1,0,0.5,0,0,1,na,1.5,inf,na,na,0.25,na,1,1,");

    int commas = 0;
    for (char ch : row)
        if (ch == ',') ++commas;
    CHECK(commas == 19);  // 20 fields
}

// ------------------------------------------------------- graphon JSON

TEST_CASE("graphon configs round-trip through JSON", "[config]") {
    const Graphon flat = Graphon::constant(0.5, RangePolicy::Clip);
    const Graphon flat2 = graphon_from_json(graphon_to_json(flat));
    CHECK(flat2.kind() == GraphonKind::Constant);
    CHECK(flat2.policy() == RangePolicy::Clip);
    CHECK_THAT(flat2(0.3, 0.7), WithinAbs(0.5, 1e-15));

    const Graphon smooth = Graphon::smooth_exp(2.0);
    const Graphon smooth2 = graphon_from_json(graphon_to_json(smooth));
    CHECK(smooth2.kind() == GraphonKind::SmoothExp);
    CHECK_THAT(smooth2(0.0, 0.5), WithinAbs(smooth(0.0, 0.5), 1e-15));

    const Graphon sbm = Graphon::sbm({0.25}, (Eigen::MatrixXd(2, 2) << 0.8, 0.2,
                                              0.2, 0.6).finished());
    const Graphon sbm2 = graphon_from_json(graphon_to_json(sbm));
    CHECK(sbm2.kind() == GraphonKind::Sbm);
    CHECK_THAT(sbm2(0.1, 0.1), WithinAbs(0.8, 1e-15));
    CHECK_THAT(sbm2(0.1, 0.9), WithinAbs(0.2, 1e-15));

    const Graphon grid = Graphon::grid((Eigen::MatrixXd(2, 2) << 0.1, 0.9,
                                        0.9, 0.4).finished());
    const Graphon grid2 = graphon_from_json(graphon_to_json(grid));
    CHECK(grid2.kind() == GraphonKind::Grid);
    CHECK_THAT(grid2(0.9, 0.1), WithinAbs(0.9, 1e-15));
}

TEST_CASE("graphon JSON errors name the offending field", "[config]") {
    CHECK_THROWS_WITH(graphon_from_json(json{{"kind", "constant"}}),
                      ContainsSubstring("graphon.p"));
    CHECK_THROWS_WITH(graphon_from_json(json{{"kind", "moebius"}}),
                      ContainsSubstring("unknown graphon kind"));
    CHECK_THROWS_WITH(graphon_from_json(json{{"kind", "constant"}, {"p", 1.5}}),
                      ContainsSubstring("invalid graphon config"));
    CHECK_THROWS_WITH(
        graphon_from_json(json{{"kind", "constant"}, {"p", 0.5}, {"policy", "maybe"}}),
        ContainsSubstring("policy"));
}

TEST_CASE("grid graphons can load their cells from a CSV file", "[config]") {
    TempDir tmp;
    write_text(tmp.file("w.csv"), "0.1,0.9\n0.9,0.4\n");
    const json j{{"kind", "grid"}, {"csv", "w.csv"}};
    const Graphon w = graphon_from_json(j, tmp.path.string());
    CHECK_THAT(w(0.0, 0.9), WithinAbs(0.9, 1e-15));
}

// -------------------------------------------------- perturbation JSON

TEST_CASE("perturbation configs round-trip and apply", "[config]") {
    const json add{{"kind", "additive-constant"}, {"a", 0.1}};
    PerturbationConfig p = perturbation_from_json(add);
    CHECK(perturbation_to_json(p) == add);
    const Perturbation applied = p.apply(Graphon::constant(0.5), 64);
    CHECK_THAT(applied.perturbed(0.5, 0.5), WithinAbs(0.6, 1e-15));

    p = perturbation_from_json(json{{"kind", "scaled-copy"}, {"alpha", 0.9}});
    CHECK_THAT(p.apply(Graphon::constant(0.5), 64).perturbed(0.2, 0.2),
               WithinAbs(0.45, 1e-15));

    p = perturbation_from_json(json{{"kind", "inv-exp"}});
    CHECK(p.w_min == 0.05);

    const json grid{{"kind", "custom-grid"},
                    {"values", {{0.1, -0.1}, {-0.1, 0.0}}}};
    p = perturbation_from_json(grid);
    CHECK(perturbation_to_json(p) == grid);

    CHECK_THROWS_WITH(perturbation_from_json(json{{"kind", "shear"}}),
                      ContainsSubstring("unknown perturbation kind"));
}

// -------------------------------------------------------- signal JSON

TEST_CASE("signal configs round-trip through JSON", "[config]") {
    for (const json j : {json{{"kind", "constant"}, {"value", 2.0}},
                         json{{"kind", "linear"}, {"a", 0.5}, {"b", 1.5}},
                         json{{"kind", "cosine"}, {"amp", 1.0}, {"k", 2.0}},
                         json{{"kind", "step"}, {"values", {1.0, -1.0, 0.5}}}}) {
        const GraphonSignal x = signal_from_json(j);
        CHECK(signal_to_json(x) == j);
    }
    CHECK_THROWS_WITH(signal_from_json(json{{"kind", "sawtooth"}}),
                      ContainsSubstring("unknown signal kind"));
}

TEST_CASE("step signals can load their values from a CSV file", "[config]") {
    TempDir tmp;
    write_text(tmp.file("x.csv"), "1\n2\n3\n");
    const GraphonSignal x =
        signal_from_json(json{{"kind", "step"}, {"csv", "x.csv"}}, tmp.path.string());
    CHECK_THAT(x(0.5), WithinAbs(2.0, 1e-15));
}

// ---------------------------------------------------- experiment JSON

TEST_CASE("experiment configs parse every block", "[config]") {
    const json j{{"graphon", {{"kind", "constant"}, {"p", 0.5}}},
                 {"perturbation", {{"kind", "additive-constant"}, {"a", 0.1}}},
                 {"sizes", {32, 64}},
                 {"seeds", 3},
                 {"mode", "both"},
                 {"architecture",
                  {{"layers", 2}, {"width", 2}, {"order", 4}, {"nonlinearity", "abs"}}},
                 {"filter", {{"form", "poly"}}},
                 {"c", 0.25},
                 {"xi", 0.1},
                 {"resolution", 128},
                 {"signal", {{"kind", "constant"}, {"value", 1.0}}},
                 {"master_seed", 99},
                 {"constants", {{"a1", 0.0}, {"a3", 0.0}}}};
    const ExperimentConfig cfg = experiment_from_json(j);
    CHECK(cfg.sizes == std::vector<int>{32, 64});
    CHECK(cfg.trials == std::vector<std::uint64_t>{0, 1, 2});
    CHECK(cfg.modes.size() == 2);
    CHECK(cfg.layers == 2);
    CHECK(cfg.width == 2);
    CHECK(cfg.order == 4);
    CHECK(cfg.sigma == Nonlinearity::Abs);
    CHECK(cfg.form == FilterForm::Poly);
    CHECK(cfg.c == 0.25);
    CHECK(cfg.xi == 0.1);
    CHECK(cfg.resolution == 128);
    CHECK(cfg.master_seed == 99);
    REQUIRE(cfg.a1_override.has_value());
    CHECK(*cfg.a1_override == 0.0);

    // Round-trip: serialize and re-parse, spot-checking a few fields.
    const ExperimentConfig cfg2 = experiment_from_json(experiment_to_json(cfg));
    CHECK(cfg2.sizes == cfg.sizes);
    CHECK(cfg2.trials == cfg.trials);
    CHECK(cfg2.form == cfg.form);
    CHECK(cfg2.master_seed == cfg.master_seed);
}

TEST_CASE("experiment configs reject malformed requests", "[config]") {
    json base{{"graphon", {{"kind", "constant"}, {"p", 0.5}}},
              {"perturbation", {{"kind", "additive-constant"}, {"a", 0.1}}},
              {"sizes", {16}}};
    CHECK_NOTHROW(experiment_from_json(base));

    json j = base;
    j.erase("graphon");
    CHECK_THROWS_WITH(experiment_from_json(j), ContainsSubstring("config.graphon"));

    j = base;
    j["sizes"] = {32, 16};
    CHECK_THROWS_WITH(experiment_from_json(j), ContainsSubstring("ascending"));

    j = base;
    j["sizes"] = json::array();
    CHECK_THROWS_AS(experiment_from_json(j), config_error);

    j = base;
    j["seeds"] = 0;
    CHECK_THROWS_AS(experiment_from_json(j), config_error);

    j = base;
    j["mode"] = "sometimes";
    CHECK_THROWS_WITH(experiment_from_json(j), ContainsSubstring("unknown mode"));

    j = base;
    j["c"] = 1.5;
    CHECK_THROWS_WITH(experiment_from_json(j), ContainsSubstring("'c'"));

    j = base;
    j["xi"] = 0.0;
    CHECK_THROWS_AS(experiment_from_json(j), config_error);

    j = base;
    j["resolution"] = 1;
    CHECK_THROWS_AS(experiment_from_json(j), config_error);
}

// -------------------------------------------------------- params JSON

TEST_CASE("filter banks round-trip through JSON", "[config]") {
    Rng rng(7);
    const GnnParams params = random_band_gnn({1, 2, 1}, 0.3, Nonlinearity::Tanh, rng);
    const GnnParams back = params_from_json(params_to_json(params));
    CHECK(back.sigma == Nonlinearity::Tanh);
    REQUIRE(back.widths() == params.widths());
    for (std::size_t l = 0; l < params.banks.size(); ++l)
        for (std::size_t f = 0; f < params.banks[l].size(); ++f)
            for (std::size_t g = 0; g < params.banks[l][f].size(); ++g) {
                const auto& a = std::get<BandFilter>(params.banks[l][f][g]);
                const auto& b = std::get<BandFilter>(back.banks[l][f][g]);
                CHECK(a.g0() == b.g0());
                CHECK(a.gain() == b.gain());
                CHECK(a.band_threshold() == b.band_threshold());
            }

    const GnnParams poly = params_from_json(params_to_json([] {
        Rng r2(8);
        return random_poly_gnn({1, 2, 1}, 3, Nonlinearity::Relu, r2);
    }()));
    CHECK(poly.widths() == std::vector<int>{1, 2, 1});
}

TEST_CASE("filter JSON validates its shape", "[config]") {
    CHECK_THROWS_WITH(filter_from_json(json{{"form", "poly"}, {"coefficients", json::array()}}),
                      ContainsSubstring("coefficients"));
    CHECK_THROWS_WITH(filter_from_json(json{{"form", "wavelet"}}),
                      ContainsSubstring("unknown filter form"));
    CHECK_THROWS_AS(params_from_json(json{{"nonlinearity", "relu"},
                                          {"layers", json::array()}}),
                    config_error);
}

// ------------------------------------------------------------ ratings

TEST_CASE("ratings files parse 1-indexed observations, last wins", "[ratings]") {
    TempDir tmp;
    write_text(tmp.file("r.csv"), "user,item,rating\n1,1,5\n2,3,4\n1,1,3\n");
    const RatingsMatrix r = load_ratings_csv(tmp.file("r.csv"));
    REQUIRE(r.users() == 2);
    REQUIRE(r.items() == 3);
    CHECK(r.values(0, 0) == 3.0);
    CHECK(r.values(1, 2) == 4.0);
    CHECK(r.values(0, 1) == 0.0);
}

TEST_CASE("ratings loading rejects malformed files", "[ratings]") {
    TempDir tmp;
    write_text(tmp.file("h.csv"), "user,item,score\n1,1,5\n");
    CHECK_THROWS_WITH(load_ratings_csv(tmp.file("h.csv")),
                      ContainsSubstring("header user,item,rating"));

    write_text(tmp.file("m.csv"), "user,item,rating\n1,1,5\n2,oops\n");
    CHECK_THROWS_WITH(load_ratings_csv(tmp.file("m.csv")), ContainsSubstring("line 3"));

    write_text(tmp.file("z.csv"), "user,item,rating\n0,1,5\n");
    CHECK_THROWS_WITH(load_ratings_csv(tmp.file("z.csv")), ContainsSubstring("1-indexed"));

    write_text(tmp.file("n.csv"), "user,item,rating\n1,1,-2\n");
    CHECK_THROWS_WITH(load_ratings_csv(tmp.file("n.csv")), ContainsSubstring("negative"));

    write_text(tmp.file("e.csv"), "");
    CHECK_THROWS_AS(load_ratings_csv(tmp.file("e.csv")), config_error);

    write_text(tmp.file("o.csv"), "user,item,rating\n");
    CHECK_THROWS_WITH(load_ratings_csv(tmp.file("o.csv")),
                      ContainsSubstring("no observations"));
}

TEST_CASE("ratings round-trip skips unobserved entries", "[ratings]") {
    TempDir tmp;
    RatingsMatrix r;
    r.values = Eigen::MatrixXd::Zero(2, 2);
    r.values(0, 1) = 4.0;
    r.values(1, 0) = 2.0;
    save_ratings_csv(tmp.file("r.csv"), r);
    CHECK(read_text(tmp.file("r.csv")) == "user,item,rating\n1,2,4\n2,1,2\n");
    const RatingsMatrix back = load_ratings_csv(tmp.file("r.csv"));
    CHECK(back.values == r.values);
}

TEST_CASE("synthetic ratings are reproducible, integral and sparse", "[ratings]") {
    const Graphon w = Graphon::constant(0.6);
    SyntheticRatingsOptions opt;
    opt.missing_rate = 0.8;
    const RatingsMatrix a = generate_synthetic_ratings(w, 50, 20, 12345, opt);
    const RatingsMatrix b = generate_synthetic_ratings(w, 50, 20, 12345, opt);
    CHECK(a.values == b.values);
    const RatingsMatrix c = generate_synthetic_ratings(w, 50, 20, 12346, opt);
    CHECK(a.values != c.values);

    REQUIRE(a.users() == 50);
    REQUIRE(a.items() == 20);
    int observed = 0;
    for (int u = 0; u < a.users(); ++u)
        for (int m = 0; m < a.items(); ++m) {
            const double v = a.values(u, m);
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 5.0);
            REQUIRE(v == std::round(v));
            if (v != 0.0) ++observed;
        }
    // 1000 entries at observation rate 0.2: allow 4 sigma around 200.
    CHECK(observed > 140);
    CHECK(observed < 260);
}

TEST_CASE("synthetic ratings validate their knobs", "[ratings]") {
    const Graphon w = Graphon::constant(0.5);
    CHECK_THROWS_AS(generate_synthetic_ratings(w, 1, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic_ratings(w, 5, 1, 1), std::invalid_argument);
    SyntheticRatingsOptions opt;
    opt.missing_rate = 1.0;
    CHECK_THROWS_AS(generate_synthetic_ratings(w, 5, 5, 1, opt), std::invalid_argument);
}

TEST_CASE("correlation graphs normalize clipped Pearson weights", "[ratings]") {
    RatingsMatrix r;
    r.values.resize(4, 3);
    // Columns 0 and 1 identical (correlation 1); column 2 anti-aligned.
    r.values << 1, 1, 2,
                2, 2, 1,
                1, 1, 2,
                2, 2, 1;
    const CorrelationGraph g = build_correlation_graph(r);
    CHECK(g.constant_items.empty());
    CHECK_THAT(g.graph.adjacency()(0, 1), WithinAbs(1.0, 1e-12));
    CHECK(g.graph.adjacency()(0, 2) == 0.0);  // negative correlation clips
    CHECK(g.graph.adjacency()(1, 2) == 0.0);
    for (int i = 0; i < 3; ++i) CHECK(g.graph.adjacency()(i, i) == 0.0);
}

TEST_CASE("constant rating columns are flagged and isolated", "[ratings]") {
    RatingsMatrix r;
    r.values.resize(3, 3);
    r.values << 3, 1, 5,
                3, 2, 4,
                3, 3, 3;
    const CorrelationGraph g = build_correlation_graph(r);
    CHECK(g.constant_items == std::vector<int>{0});
    CHECK(g.graph.adjacency().row(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.graph.adjacency()(1, 2) == 0.0);  // anti-aligned pair clips to 0
}

TEST_CASE("all-unobserved ratings produce an empty graph without NaNs", "[ratings]") {
    RatingsMatrix r;
    r.values = Eigen::MatrixXd::Zero(4, 3);
    const CorrelationGraph g = build_correlation_graph(r);
    CHECK(g.constant_items == std::vector<int>{0, 1, 2});
    CHECK(g.graph.adjacency().cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(build_correlation_graph(RatingsMatrix{Eigen::MatrixXd::Zero(4, 1)}),
                    config_error);
}

TEST_CASE("co-rated restriction ignores sparse pairs", "[ratings]") {
    RatingsMatrix r;
    r.values.resize(4, 2);
    // Only one row rates both items, so the pair has too little support.
    r.values << 5, 0,
                4, 0,
                0, 3,
                2, 1;
    const CorrelationGraph g = build_correlation_graph(r, /*corated_only=*/true);
    CHECK(g.graph.adjacency()(0, 1) == 0.0);
}

TEST_CASE("co-rated correlations use only rows rating both items", "[ratings]") {
    RatingsMatrix r;
    r.values.resize(4, 2);
    // Co-rated rows (1,2), (2,4), (3,5) align perfectly; the last row
    // rates only item 0 and must not disturb the estimate.
    r.values << 1, 2,
                2, 4,
                3, 5,
                5, 0;
    const CorrelationGraph g = build_correlation_graph(r, /*corated_only=*/true);
    CHECK_THAT(g.graph.adjacency()(0, 1), WithinAbs(1.0, 1e-12));
}

TEST_CASE("block-structured tastes yield heavier within-block weights", "[ratings]") {
    const Graphon w = Graphon::sbm({0.5}, (Eigen::MatrixXd(2, 2) << 0.9, 0.05,
                                           0.05, 0.9).finished());
    SyntheticRatingsOptions opt;
    opt.missing_rate = 0.3;
    opt.gain = 3.0;
    const RatingsMatrix r = generate_synthetic_ratings(w, 120, 16, 2024, opt);
    const CorrelationGraph g = build_correlation_graph(r);
    double within = 0.0, cross = 0.0;
    int nw = 0, nc = 0;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < i; ++j) {
            const bool same = (i < 8) == (j < 8);
            (same ? within : cross) += g.graph.adjacency()(i, j);
            ++(same ? nw : nc);
        }
    CHECK(within / nw > cross / nc);
}
