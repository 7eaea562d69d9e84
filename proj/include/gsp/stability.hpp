#ifndef GSP_STABILITY_HPP
#define GSP_STABILITY_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "gsp/common.hpp"
#include "gsp/filter.hpp"
#include "gsp/gnn.hpp"
#include "gsp/graph.hpp"
#include "gsp/graphon.hpp"
#include "gsp/rng.hpp"
#include "gsp/sampling.hpp"
#include "gsp/signal.hpp"
#include "gsp/spectral.hpp"

namespace gsp {

enum class FilterForm { Poly, Band };

inline const char* to_string(FilterForm f) { return f == FilterForm::Poly ? "poly" : "band"; }

/// A bound value that may be flagged infinite (degenerate eigengap) or
/// not applicable (mode or assumption rules it out).
struct BoundValue {
    double value = 0.0;
    bool infinite = false;
    bool applicable = true;

    static BoundValue not_applicable() { return {0.0, false, false}; }

    /// Finite numeric value; +inf when flagged infinite.  Only meaningful
    /// when applicable.
    double numeric() const {
        return infinite ? std::numeric_limits<double>::infinity() : value;
    }
};

constexpr double kDegenerateGapTolerance = 1e-12;

/// Shared core of all the bounds:
///   amplification * (A2 + pi * n_c / delta_c) * size_term * signal_norm.
/// An empty reference band (n_c = 0) drops the spectral term entirely; a
/// degenerate gap with a non-empty band makes the bound infinite.
inline BoundValue spectral_stability_bound(double amplification, double a2, int n_c,
                                           std::optional<double> delta_c, double size_term,
                                           double signal_norm) {
    if (n_c < 0) throw std::invalid_argument("band count must be >= 0");
    BoundValue out;
    if (n_c == 0) {
        out.value = amplification * a2 * size_term * signal_norm;
        return out;
    }
    if (!delta_c || *delta_c <= kDegenerateGapTolerance) {
        out.infinite = true;
        return out;
    }
    out.value = amplification * (a2 + std::numbers::pi * n_c / *delta_c) * size_term * signal_norm;
    return out;
}

/// Amplification factor L * F^{L-1} accumulated by an L-layer, width-F
/// network.
inline double layer_amplification(int layers, int width) {
    if (layers < 1 || width < 1)
        throw std::invalid_argument("layer_amplification needs layers, width >= 1");
    return layers * std::pow(static_cast<double>(width), layers - 1);
}

/// Single-filter perturbation bound (A2 + pi n_c/delta_c) * eps * ||X||.
inline BoundValue filter_perturbation_bound(double a2, int n_c, std::optional<double> delta_c,
                                            double eps, double signal_norm) {
    return spectral_stability_bound(1.0, a2, n_c, delta_c, eps, signal_norm);
}

/// Continuum network bound L F^{L-1} (A2 + pi n_c/delta_c) * eps * ||X||,
/// with n_c from the perturbed kernel and delta_c across the pair.
inline BoundValue continuum_network_bound(int layers, int width, double a2, int n_c,
                                          std::optional<double> delta_c, double eps,
                                          double signal_norm) {
    return spectral_stability_bound(layer_amplification(layers, width), a2, n_c, delta_c, eps,
                                    signal_norm);
}

/// Finite-sample penalty constant B = sqrt(A1) + sqrt(A1 + A3).
inline double finite_size_constant(double a1, double a3) {
    if (a1 < 0.0 || a1 + a3 < 0.0)
        throw std::invalid_argument("Lipschitz constants must be non-negative");
    return std::sqrt(a1) + std::sqrt(a1 + a3);
}

/// Sampled-network bound on the regular weighted graphs:
///   L F^{L-1} (A2 + pi n_hat/delta_hat) (eps + B/sqrt(n)) ||x_n||.
inline BoundValue sampled_network_bound(int layers, int width, double a2, int n_hat,
                                        std::optional<double> delta_hat, double eps, double b,
                                        int n, double node_signal_norm) {
    if (n < 1) throw std::invalid_argument("graph size must be >= 1");
    const double size_term = eps + b / std::sqrt(static_cast<double>(n));
    return spectral_stability_bound(layer_amplification(layers, width), a2, n_hat, delta_hat,
                                    size_term, node_signal_norm);
}

/// Bernoulli-sampled network bound, valid with probability >= 1 - xi:
///   L F^{L-1} (A2 + pi n_chk/delta_chk) (eps + (B + 4 sqrt(log(2n/xi)))/sqrt(n)) ||x_n||.
inline BoundValue bernoulli_network_bound(int layers, int width, double a2, int n_chk,
                                          std::optional<double> delta_chk, double eps, double b,
                                          int n, double xi, double node_signal_norm) {
    if (n < 1) throw std::invalid_argument("graph size must be >= 1");
    if (!(xi > 0.0 && xi < 1.0))
        throw std::domain_error("confidence parameter xi must lie in (0,1)");
    const double root_n = std::sqrt(static_cast<double>(n));
    const double size_term =
        eps + (b + 4.0 * std::sqrt(std::log(2.0 * n / xi))) / root_n;
    return spectral_stability_bound(layer_amplification(layers, width), a2, n_chk, delta_chk,
                                    size_term, node_signal_norm);
}

/// Transfer bound between the weighted and the Bernoulli sample of the
/// same graphon: L F^{L-1} (A2 + pi n_c/delta_c) (2 sqrt(log(2n/xi))/sqrt(n)) ||x_n||.
inline BoundValue sampling_transfer_bound(int layers, int width, double a2, int n_c,
                                          std::optional<double> delta_c, int n, double xi,
                                          double node_signal_norm) {
    if (n < 1) throw std::invalid_argument("graph size must be >= 1");
    if (!(xi > 0.0 && xi < 1.0))
        throw std::domain_error("confidence parameter xi must lie in (0,1)");
    const double size_term =
        2.0 * std::sqrt(std::log(2.0 * n / xi)) / std::sqrt(static_cast<double>(n));
    return spectral_stability_bound(layer_amplification(layers, width), a2, n_c, delta_c,
                                    size_term, node_signal_norm);
}

/// Two-sided degree condition for the Bernoulli bounds: evaluated for the
/// base kernel (constant A1) and the perturbed one (constant A1+A3).
struct DegreeAssumption {
    bool applicable = false;  // false when a max degree is 0
    bool pass = false;
    double margin_base = 0.0;       // lhs - rhs for W
    double margin_perturbed = 0.0;  // lhs - rhs for W'
};

inline DegreeAssumption check_degree_assumption(int n, double xi, double d_w, double d_wp,
                                                double a1, double a3) {
    DegreeAssumption out;
    if (!(d_w > 0.0) || !(d_wp > 0.0)) return out;
    const AssumptionCheck base = degree_assumption_check(n, xi, d_w, a1);
    const AssumptionCheck pert = degree_assumption_check(n, xi, d_wp, a1 + a3);
    out.applicable = true;
    out.margin_base = base.lhs - base.rhs;
    out.margin_perturbed = pert.lhs - pert.rhs;
    out.pass = base.pass && pert.pass;
    return out;
}

/// Everything fixed across a sweep: the kernel pair, its constants, the
/// continuum reference spectra and the experiment knobs.
struct StabilityContext {
    StabilityContext(Graphon w_, Graphon wp_, Kernel kernel_)
        : w(std::move(w_)), wp(std::move(wp_)), kernel(std::move(kernel_)) {}

    Graphon w;
    Graphon wp;
    Kernel kernel;

    double eps = 0.0;       // ||W' - W|| as an operator
    double a1 = 0.0;        // graphon Lipschitz constant
    double a3 = 0.0;        // perturbation Lipschitz constant
    bool a1_estimated = false;
    bool a3_estimated = false;
    bool step_kernel = false;  // a finite-difference scan hit a step family
    double b = 0.0;         // sqrt(A1) + sqrt(A1+A3)
    double d_w = 0.0;       // max degrees for the degree assumption
    double d_wp = 0.0;

    double c = 0.3;         // band threshold for the spectral counts
    double xi = 0.05;
    int resolution = 1024;  // continuum proxy resolution

    SignedSpectrum spec_w;   // continuum pair at `resolution` (values only)
    SignedSpectrum spec_wp;
    int nc_w = 0;            // band counts of the pair
    int nc_wp = 0;
    std::optional<double> delta_pair;  // gap across (W, W')

    GraphonSignal signal = GraphonSignal::constant(1.0);

    int layers = 2;
    int width = 1;
    int order = 5;           // polynomial order (poly form)
    FilterForm form = FilterForm::Band;
    Nonlinearity sigma = Nonlinearity::Relu;
};

struct ContextOptions {
    double c = 0.3;
    double xi = 0.05;
    int resolution = 1024;
    GraphonSignal signal = GraphonSignal::constant(1.0);
    int layers = 2;
    int width = 1;
    int order = 5;
    FilterForm form = FilterForm::Band;
    Nonlinearity sigma = Nonlinearity::Relu;
    std::optional<double> a1_override;  // trusted user-supplied constants
    std::optional<double> a3_override;
    int lipschitz_probes = 2048;
};

/// Gap across two spectra, absent instead of throwing when the reference
/// band is empty.
inline std::optional<double> band_gap_or_absent(const SignedSpectrum& p, const SignedSpectrum& q,
                                                double c) {
    if (band_count(q, c) == 0) return std::nullopt;
    return min_band_gap(p, q, c);
}

inline StabilityContext make_stability_context(const Graphon& w, const Perturbation& pert,
                                               const ContextOptions& opt) {
    check_band_threshold(opt.c);
    if (!(opt.xi > 0.0 && opt.xi < 1.0))
        throw std::domain_error("confidence parameter xi must lie in (0,1)");
    if (opt.resolution < 2) throw std::invalid_argument("context resolution must be >= 2");
    if (opt.layers < 1 || opt.width < 1)
        throw std::invalid_argument("architecture needs layers, width >= 1");

    StabilityContext ctx(w, pert.perturbed, pert.kernel);
    ctx.c = opt.c;
    ctx.xi = opt.xi;
    ctx.resolution = opt.resolution;
    ctx.signal = opt.signal;
    ctx.layers = opt.layers;
    ctx.width = opt.width;
    ctx.order = opt.order;
    ctx.form = opt.form;
    ctx.sigma = opt.sigma;

    ctx.eps = operator_norm(ctx.kernel, opt.resolution);

    if (opt.a1_override) {
        ctx.a1 = *opt.a1_override;
    } else {
        const LipschitzEstimate est = estimate_lipschitz(ctx.w, opt.lipschitz_probes);
        ctx.a1 = est.value;
        ctx.a1_estimated = !est.exact;
        ctx.step_kernel = ctx.step_kernel || est.step_kernel_warning;
    }
    if (opt.a3_override) {
        ctx.a3 = *opt.a3_override;
    } else {
        const LipschitzEstimate est = estimate_lipschitz(ctx.kernel, opt.lipschitz_probes);
        ctx.a3 = est.value;
        ctx.a3_estimated = !est.exact;
        ctx.step_kernel = ctx.step_kernel || est.step_kernel_warning;
    }
    ctx.b = finite_size_constant(ctx.a1, ctx.a3);
    ctx.d_w = ctx.w.max_degree();
    ctx.d_wp = ctx.wp.max_degree();

    ctx.spec_w = decompose(deterministic_graph(ctx.w, opt.resolution), SpectrumScale::Graphon,
                           /*with_vectors=*/false);
    ctx.spec_wp = decompose(deterministic_graph(ctx.wp, opt.resolution), SpectrumScale::Graphon,
                            /*with_vectors=*/false);
    ctx.nc_w = band_count(ctx.spec_w, ctx.c);
    ctx.nc_wp = band_count(ctx.spec_wp, ctx.c);
    ctx.delta_pair = band_gap_or_absent(ctx.spec_w, ctx.spec_wp, ctx.c);
    return ctx;
}

/// Data shared by every trial at one graph size: the weighted sample
/// pair, its spectra (with eigenvectors, reused by flat-band forward
/// passes), and the sampled input signal.
struct SizeData {
    int n = 0;
    Graph gbar;
    Graph gbar_p;
    SignedSpectrum spec_bar;    // induced spectrum of gbar
    SignedSpectrum spec_bar_p;  // induced spectrum of gbar_p
    int nc_bar = 0;
    int nc_bar_p = 0;
    std::optional<double> delta_w_bar;    // gap (W, induced(gbar))
    std::optional<double> delta_wp_barp;  // gap (W', induced(gbar_p))
    Eigen::VectorXd x;
    DegreeAssumption degree;
};

inline SizeData make_size_data(const StabilityContext& ctx, int n) {
    if (n < 1) throw std::invalid_argument("graph size must be >= 1");
    SizeData d;
    d.n = n;
    d.gbar = deterministic_graph(ctx.w, n);
    d.gbar_p = deterministic_graph(ctx.wp, n);
    d.spec_bar = decompose(d.gbar, SpectrumScale::Graphon, true);
    d.spec_bar_p = decompose(d.gbar_p, SpectrumScale::Graphon, true);
    d.nc_bar = band_count(d.spec_bar, ctx.c);
    d.nc_bar_p = band_count(d.spec_bar_p, ctx.c);
    d.delta_w_bar = band_gap_or_absent(ctx.spec_w, d.spec_bar, ctx.c);
    d.delta_wp_barp = band_gap_or_absent(ctx.spec_wp, d.spec_bar_p, ctx.c);
    d.x = sample_signal(ctx.signal, n);
    d.degree = check_degree_assumption(n, ctx.xi, ctx.d_w, ctx.d_wp, ctx.a1, ctx.a3);
    return d;
}

/// One evaluated experiment cell: every quantity entering the certified
/// bounds, the bounds in the graph 2-norm, and the measured output
/// differences.
struct StabilityReport {
    int n = 0;
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::Deterministic;
    FilterForm form = FilterForm::Band;

    double eps = 0.0;
    double a1 = 0.0, a2 = 0.0, a3 = 0.0, b = 0.0;
    double sup_response = 0.0;
    double band_deviation = 0.0;  // poly form: max in-band response drift

    // Band counts: continuum pair, induced weighted pair, Bernoulli pair
    // (the latter only in stochastic mode).
    int nc_w = 0, nc_wp = 0, nc_bar = 0, nc_bar_p = 0;
    std::optional<int> nc_rand, nc_rand_p;
    std::optional<double> delta_pair, delta_w_bar, delta_wp_barp;
    std::optional<double> delta_bar_rand, delta_barp_randp;
    int nc_max = 0;                      // aggregate actually used in the headline bound
    std::optional<double> delta_min;     // matching aggregate gap

    BoundValue filter_bound;      // single-filter continuum bound
    BoundValue continuum_bound;   // L-layer continuum bound   (CSV bound_thm1)
    BoundValue sampled_bound;     // weighted-sample bound      (CSV bound_thm2)
    BoundValue bernoulli_bound;   // Bernoulli-sample bound     (CSV bound_thm3)
    BoundValue transfer_bound;    // weighted->Bernoulli bound  (CSV bound_lemma1)

    double node_signal_norm = 0.0;  // ||x_n||
    double empirical_l2 = 0.0;      // ||y' - y|| on this cell's graphs
    double empirical_rel = 0.0;     // ||y' - y|| / ||y||
    bool empirical_rel_defined = true;

    // Stochastic-mode extras: adjacency concentration of the base sample
    // and the measured weighted-vs-Bernoulli output difference.
    std::optional<double> sample_distance;       // ||Sbar - S||
    std::optional<double> sample_threshold;      // 2 sqrt(n log(2n/xi))
    std::optional<bool> sample_concentrated;
    std::optional<bool> degree_radius_ok;        // max-degree floor for the radius
    std::optional<double> transfer_empirical;    // ||y(S) - y(Sbar)||

    bool as1_pass = false;
    DegreeAssumption degree;

    bool a1_estimated = false;
    bool a3_estimated = false;
    bool step_kernel = false;

    std::vector<std::string> flags;
};

namespace detail {

inline void collect_flags(StabilityReport& r) {
    auto add = [&r](const char* f) { r.flags.emplace_back(f); };
    if (r.a1_estimated || r.a3_estimated) add("estimated-constants");
    if (r.step_kernel) add("step-kernel");
    if (r.filter_bound.infinite || r.continuum_bound.infinite || r.sampled_bound.infinite ||
        r.bernoulli_bound.infinite || r.transfer_bound.infinite)
        add("degenerate-gap");
    if (r.form == FilterForm::Poly && r.band_deviation > 0.0) add("band-deviation");
    if (r.nc_wp == 0) add("empty-band");
    if (!r.empirical_rel_defined) add("zero-output");
    if (!r.as1_pass) add("as1-fail");
    std::sort(r.flags.begin(), r.flags.end());
}

inline std::optional<double> min_gap(std::initializer_list<std::optional<double>> gaps) {
    std::optional<double> best;
    for (const auto& g : gaps)
        if (g && (!best || *g < *best)) best = *g;
    return best;
}

}  // namespace detail

/// Run one experiment cell.  The per-cell random stream drives, in this
/// order: filter-bank parameters, then (stochastic mode) the two
/// Bernoulli graph samples.
inline StabilityReport run_stability_cell(const StabilityContext& ctx, const SizeData& size,
                                          std::uint64_t seed, SampleMode mode) {
    StabilityReport r;
    r.n = size.n;
    r.seed = seed;
    r.mode = mode;
    r.form = ctx.form;
    r.eps = ctx.eps;
    r.a1 = ctx.a1;
    r.a3 = ctx.a3;
    r.b = ctx.b;
    r.a1_estimated = ctx.a1_estimated;
    r.a3_estimated = ctx.a3_estimated;
    r.step_kernel = ctx.step_kernel;
    r.degree = size.degree;

    Rng rng(seed);
    std::vector<int> widths(static_cast<std::size_t>(ctx.layers) + 1, ctx.width);
    widths.front() = 1;
    widths.back() = 1;
    const GnnParams params = ctx.form == FilterForm::Band
                                 ? random_band_gnn(widths, ctx.c, ctx.sigma, rng)
                                 : random_poly_gnn(widths, ctx.order, ctx.sigma, rng);

    r.a2 = params.max_lipschitz();
    r.sup_response = params.max_sup_response();
    r.as1_pass = r.sup_response < 1.0;
    if (ctx.form == FilterForm::Poly) {
        for (const auto& layer : params.banks)
            for (const auto& row : layer)
                for (const auto& f : row)
                    r.band_deviation = std::max(r.band_deviation, band_deviation(f, ctx.c));
    }

    r.nc_w = ctx.nc_w;
    r.nc_wp = ctx.nc_wp;
    r.nc_bar = size.nc_bar;
    r.nc_bar_p = size.nc_bar_p;
    r.delta_pair = ctx.delta_pair;
    r.delta_w_bar = size.delta_w_bar;
    r.delta_wp_barp = size.delta_wp_barp;

    const double root_n = std::sqrt(static_cast<double>(size.n));
    r.node_signal_norm = size.x.norm();
    const double continuum_norm = r.node_signal_norm / root_n;  // ||X_n||

    r.filter_bound = filter_perturbation_bound(r.a2, ctx.nc_wp, ctx.delta_pair, ctx.eps,
                                               continuum_norm);
    r.continuum_bound = continuum_network_bound(ctx.layers, ctx.width, r.a2, ctx.nc_wp,
                                                ctx.delta_pair, ctx.eps, r.node_signal_norm);

    const int n_hat = std::max({ctx.nc_wp, size.nc_bar, size.nc_bar_p});
    const std::optional<double> delta_hat =
        detail::min_gap({ctx.delta_pair, size.delta_w_bar, size.delta_wp_barp});
    r.sampled_bound = sampled_network_bound(ctx.layers, ctx.width, r.a2, n_hat, delta_hat,
                                            ctx.eps, ctx.b, size.n, r.node_signal_norm);
    r.nc_max = n_hat;
    r.delta_min = delta_hat;

    const double m = static_cast<double>(size.n);
    if (mode == SampleMode::Deterministic) {
        const Eigen::VectorXd y = gnn_forward(params, size.gbar, m, size.x, &size.spec_bar);
        const Eigen::VectorXd yp = gnn_forward(params, size.gbar_p, m, size.x, &size.spec_bar_p);
        r.empirical_l2 = (yp - y).norm();
        const double base = y.norm();
        if (base > 0.0)
            r.empirical_rel = r.empirical_l2 / base;
        else
            r.empirical_rel_defined = false;
        r.bernoulli_bound = BoundValue::not_applicable();
        r.transfer_bound = BoundValue::not_applicable();
    } else {
        const Graph grand = stochastic_graph(ctx.w, size.n, rng);
        const Graph grand_p = stochastic_graph(ctx.wp, size.n, rng);
        const SignedSpectrum spec_rand = decompose(grand, SpectrumScale::Graphon, true);
        const SignedSpectrum spec_rand_p = decompose(grand_p, SpectrumScale::Graphon, true);
        r.nc_rand = band_count(spec_rand, ctx.c);
        r.nc_rand_p = band_count(spec_rand_p, ctx.c);
        r.delta_bar_rand = band_gap_or_absent(size.spec_bar, spec_rand, ctx.c);
        r.delta_barp_randp = band_gap_or_absent(size.spec_bar_p, spec_rand_p, ctx.c);

        const int n_chk = std::max({n_hat, *r.nc_rand, *r.nc_rand_p});
        const std::optional<double> delta_chk =
            detail::min_gap({delta_hat, r.delta_bar_rand, r.delta_barp_randp});
        r.nc_max = n_chk;
        r.delta_min = delta_chk;

        r.bernoulli_bound =
            size.degree.applicable && size.degree.pass
                ? bernoulli_network_bound(ctx.layers, ctx.width, r.a2, n_chk, delta_chk, ctx.eps,
                                          ctx.b, size.n, ctx.xi, r.node_signal_norm)
                : BoundValue::not_applicable();
        r.transfer_bound = sampling_transfer_bound(ctx.layers, ctx.width, r.a2, *r.nc_rand,
                                                   r.delta_bar_rand, size.n, ctx.xi,
                                                   r.node_signal_norm);

        const Eigen::VectorXd y = gnn_forward(params, grand, m, size.x, &spec_rand);
        const Eigen::VectorXd yp = gnn_forward(params, grand_p, m, size.x, &spec_rand_p);
        r.empirical_l2 = (yp - y).norm();
        const double base = y.norm();
        if (base > 0.0)
            r.empirical_rel = r.empirical_l2 / base;
        else
            r.empirical_rel_defined = false;

        const Eigen::VectorXd ybar = gnn_forward(params, size.gbar, m, size.x, &size.spec_bar);
        r.transfer_empirical = (y - ybar).norm();
        r.sample_distance = operator_norm_sym(grand.adjacency() - size.gbar.adjacency());
        r.sample_threshold = concentration_threshold(size.n, ctx.xi);
        r.sample_concentrated = *r.sample_distance <= *r.sample_threshold;
        r.degree_radius_ok = degree_concentration_check(size.gbar, ctx.xi).pass;
    }

    detail::collect_flags(r);
    return r;
}

/// Convenience wrapper for a standalone cell.
inline StabilityReport run_stability_cell(const StabilityContext& ctx, int n, std::uint64_t seed,
                                          SampleMode mode) {
    return run_stability_cell(ctx, make_size_data(ctx, n), seed, mode);
}

}  // namespace gsp

#endif  // GSP_STABILITY_HPP
