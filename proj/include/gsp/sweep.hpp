#ifndef GSP_SWEEP_HPP
#define GSP_SWEEP_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "gsp/config.hpp"
#include "gsp/io.hpp"
#include "gsp/stability.hpp"

namespace gsp {

/// Cell seed = deterministic hash of (master seed, n, trial label, mode
/// tag).  The schedule never touches it, so thread counts cannot change
/// any output byte.
inline std::uint64_t cell_seed(std::uint64_t master, int n, std::uint64_t trial,
                               SampleMode mode) {
    return derive_seed(master, static_cast<std::uint64_t>(n), trial,
                       mode == SampleMode::Deterministic ? 0 : 1);
}

struct SweepResult {
    std::vector<StabilityReport> rows;  // sorted by (n, seed, mode)
};

/// Run every (size, trial, mode) cell of the experiment.  Work is split
/// by (size, mode) group so the expensive per-size eigendecompositions
/// are shared across trials; groups run on `threads` workers.  Results
/// are assembled into slots and sorted, so the output is schedule-independent.
inline SweepResult run_sweep(const ExperimentConfig& cfg, int threads = 1) {
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    const StabilityContext ctx =
        make_stability_context(cfg.graphon, cfg.perturbation.apply(cfg.graphon, cfg.resolution),
                               context_options_from(cfg));

    struct Group {
        int n;
        SampleMode mode;
    };
    std::vector<Group> groups;
    for (int n : cfg.sizes)
        for (SampleMode mode : cfg.modes) groups.push_back({n, mode});

    std::vector<std::vector<StabilityReport>> slots(groups.size());
    std::atomic<std::size_t> cursor{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;

    auto worker = [&]() {
        for (;;) {
            const std::size_t g = cursor.fetch_add(1);
            if (g >= groups.size()) return;
            try {
                const SizeData size = make_size_data(ctx, groups[g].n);
                std::vector<StabilityReport> rows;
                rows.reserve(cfg.trials.size());
                for (std::uint64_t trial : cfg.trials) {
                    const std::uint64_t seed =
                        cell_seed(cfg.master_seed, groups[g].n, trial, groups[g].mode);
                    rows.push_back(run_stability_cell(ctx, size, seed, groups[g].mode));
                }
                slots[g] = std::move(rows);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int count = static_cast<int>(
            std::min(static_cast<std::size_t>(threads), groups.size()));
        pool.reserve(static_cast<std::size_t>(count));
        for (int t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    SweepResult result;
    for (auto& slot : slots)
        for (auto& row : slot) result.rows.push_back(std::move(row));
    std::sort(result.rows.begin(), result.rows.end(),
              [](const StabilityReport& a, const StabilityReport& b) {
                  if (a.n != b.n) return a.n < b.n;
                  if (a.seed != b.seed) return a.seed < b.seed;
                  return std::string(to_string(a.mode)) < to_string(b.mode);
              });
    return result;
}

/// Strict-mode postcondition: fail when any cell's bounds are all
/// unusable because of degenerate gaps.
inline void enforce_strict(const SweepResult& result) {
    for (const StabilityReport& r : result.rows) {
        const bool any_usable =
            (r.continuum_bound.applicable && !r.continuum_bound.infinite) ||
            (r.sampled_bound.applicable && !r.sampled_bound.infinite) ||
            (r.bernoulli_bound.applicable && !r.bernoulli_bound.infinite) ||
            (r.transfer_bound.applicable && !r.transfer_bound.infinite);
        if (!any_usable)
            throw numeric_error("strict mode: cell n=" + std::to_string(r.n) + " seed=" +
                                std::to_string(r.seed) + " has no usable bound (degenerate gap)");
    }
}

inline void write_stability_csv(const std::string& path, const SweepResult& result) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot write '" + path + "'");
    out << stability_csv_header() << '\n';
    for (const StabilityReport& r : result.rows) out << stability_csv_row(r) << '\n';
}

namespace detail {

inline double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

inline std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace detail

/// Sweep summary: the definitions of derived quantities, the config
/// echo, per-(size, mode) medians and bound-violation counts.  The
/// timestamp is the only non-reproducible field and lives here, never in
/// the CSV.
inline json sweep_summary(const ExperimentConfig& cfg, const SweepResult& result) {
    json j;
    j["definitions"] = {
        {"empirical_rel", "l2(y_perturbed - y) / l2(y)"},
        {"empirical_l2", "l2 norm of the output difference in the graph 2-norm"},
        {"bound_columns", "graph 2-norm; divide by sqrt(n) for the induced-signal norm"}};
    j["config"] = experiment_to_json(cfg);
    j["generated_at"] = detail::iso_timestamp();
    j["cells"] = result.rows.size();

    json per_size = json::array();
    for (int n : cfg.sizes) {
        for (SampleMode mode : cfg.modes) {
            std::vector<double> rel, bound2, bound3;
            int violations2 = 0, violations3 = 0;
            for (const StabilityReport& r : result.rows) {
                if (r.n != n || r.mode != mode) continue;
                if (r.empirical_rel_defined) rel.push_back(r.empirical_rel);
                if (r.sampled_bound.applicable && !r.sampled_bound.infinite) {
                    bound2.push_back(r.sampled_bound.value);
                    if (r.empirical_l2 > r.sampled_bound.value) ++violations2;
                }
                if (r.bernoulli_bound.applicable && !r.bernoulli_bound.infinite) {
                    bound3.push_back(r.bernoulli_bound.value);
                    if (r.empirical_l2 > r.bernoulli_bound.value) ++violations3;
                }
            }
            json row;
            row["n"] = n;
            row["mode"] = to_string(mode);
            row["median_empirical_rel"] = detail::median(rel);
            if (!bound2.empty()) {
                row["median_bound_thm2"] = detail::median(bound2);
                row["violations_thm2"] = violations2;
            }
            if (!bound3.empty()) {
                row["median_bound_thm3"] = detail::median(bound3);
                row["violations_thm3"] = violations3;
            }
            per_size.push_back(std::move(row));
        }
    }
    j["per_size"] = std::move(per_size);
    return j;
}

}  // namespace gsp

#endif  // GSP_SWEEP_HPP
