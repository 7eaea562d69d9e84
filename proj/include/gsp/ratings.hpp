#ifndef GSP_RATINGS_HPP
#define GSP_RATINGS_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gsp/common.hpp"
#include "gsp/graph.hpp"
#include "gsp/graphon.hpp"
#include "gsp/rng.hpp"

namespace gsp {

/// User-by-item rating matrix; 0 means "not rated".
struct RatingsMatrix {
    Eigen::MatrixXd values;  // U x M, nonnegative

    int users() const { return static_cast<int>(values.rows()); }
    int items() const { return static_cast<int>(values.cols()); }
};

/// Ratings file format: header `user,item,rating`, then one observation
/// per line with 1-indexed ids.  Matrix dimensions are taken from the
/// largest ids seen; duplicate (user,item) pairs keep the last value.
inline RatingsMatrix load_ratings_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open ratings file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw config_error("ratings file '" + path + "' is empty");
    if (line.size() && line.back() == '\r') line.pop_back();
    if (line != "user,item,rating")
        throw config_error("ratings file '" + path + "' must start with header user,item,rating");

    struct Entry {
        int user, item;
        double rating;
    };
    std::vector<Entry> entries;
    int max_user = 0, max_item = 0;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.size() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string u, i, r;
        if (!std::getline(ss, u, ',') || !std::getline(ss, i, ',') || !std::getline(ss, r))
            throw config_error("ratings file '" + path + "': malformed line " +
                               std::to_string(lineno));
        Entry e;
        try {
            e.user = std::stoi(u);
            e.item = std::stoi(i);
            e.rating = std::stod(r);
        } catch (const std::exception&) {
            throw config_error("ratings file '" + path + "': malformed line " +
                               std::to_string(lineno));
        }
        if (e.user < 1 || e.item < 1)
            throw config_error("ratings file '" + path + "': ids are 1-indexed (line " +
                               std::to_string(lineno) + ")");
        if (e.rating < 0.0)
            throw config_error("ratings file '" + path + "': negative rating (line " +
                               std::to_string(lineno) + ")");
        max_user = std::max(max_user, e.user);
        max_item = std::max(max_item, e.item);
        entries.push_back(e);
    }
    if (entries.empty()) throw config_error("ratings file '" + path + "' has no observations");
    RatingsMatrix r;
    r.values = Eigen::MatrixXd::Zero(max_user, max_item);
    for (const Entry& e : entries) r.values(e.user - 1, e.item - 1) = e.rating;
    return r;
}

inline void save_ratings_csv(const std::string& path, const RatingsMatrix& r) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot write ratings file '" + path + "'");
    out << "user,item,rating\n";
    for (int u = 0; u < r.users(); ++u)
        for (int m = 0; m < r.items(); ++m)
            if (r.values(u, m) != 0.0) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.12g", r.values(u, m));
                out << (u + 1) << ',' << (m + 1) << ',' << buf << '\n';
            }
}

struct SyntheticRatingsOptions {
    double missing_rate = 0.8;  // probability an entry stays unobserved
    double gain = 1.5;          // steers how far scores spread around the midpoint
};

/// Desk-scale synthetic ratings with graphon structure.  Items live at
/// the latent positions u_m = (m-1)/M; each user draws a taste vector
/// tau in [-1,1]^M once, and the affinity of user u for item m is the
/// graphon-smoothed score  (sum_m' W(u_m, u_m') tau_m') / sqrt(M).
/// Ratings are round(3 + gain*score) clamped to {0..5}; entries are then
/// observed with probability 1 - missing_rate.  Per user the draw order
/// is: M taste components, then M mask draws.
inline RatingsMatrix generate_synthetic_ratings(const Graphon& w, int users, int items,
                                                std::uint64_t seed,
                                                const SyntheticRatingsOptions& opt = {}) {
    if (users < 2 || items < 2)
        throw std::invalid_argument("synthetic ratings need users, items >= 2");
    if (!(opt.missing_rate >= 0.0 && opt.missing_rate < 1.0))
        throw std::invalid_argument("missing rate must lie in [0,1)");

    // Item-by-item kernel evaluated once at the latent positions.
    Eigen::MatrixXd k(items, items);
    for (int a = 0; a < items; ++a)
        for (int b = 0; b <= a; ++b) {
            const double v =
                w(static_cast<double>(a) / items, static_cast<double>(b) / items);
            k(a, b) = k(b, a) = v;
        }

    Rng rng(seed);
    RatingsMatrix out;
    out.values = Eigen::MatrixXd::Zero(users, items);
    const double scale = opt.gain / std::sqrt(static_cast<double>(items));
    Eigen::VectorXd taste(items);
    for (int u = 0; u < users; ++u) {
        for (int m = 0; m < items; ++m) taste(m) = rng.uniform(-1.0, 1.0);
        const Eigen::VectorXd score = k * taste;
        for (int m = 0; m < items; ++m) {
            const bool observed = rng.uniform() >= opt.missing_rate;
            if (!observed) continue;
            const double raw = std::round(3.0 + scale * score(m));
            out.values(u, m) = std::clamp(raw, 0.0, 5.0);
        }
    }
    return out;
}

struct CorrelationGraph {
    Graph graph;
    /// Items whose rating column is constant (zero variance); they get
    /// weight 0 to every other item.
    std::vector<int> constant_items;
};

/// Item-item graph from pairwise Pearson correlations of rating columns.
/// The default follows the literal construction: correlations over all
/// rows with missing entries kept as 0.  `corated_only` restricts each
/// pair to rows where both items are rated (pairs with fewer than two
/// such rows get weight 0).  Negative correlations clip to 0, the
/// diagonal is zeroed, and the matrix is divided by its maximum entry so
/// weights lie in [0,1].
inline CorrelationGraph build_correlation_graph(const RatingsMatrix& r,
                                                bool corated_only = false) {
    const int m = r.items();
    const int u = r.users();
    if (m < 2) throw config_error("correlation graph needs at least 2 items");

    CorrelationGraph out;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);

    if (!corated_only) {
        const Eigen::VectorXd mean = r.values.colwise().mean();
        const Eigen::MatrixXd centered = r.values.rowwise() - mean.transpose();
        const Eigen::VectorXd var = centered.colwise().squaredNorm() / static_cast<double>(u);
        for (int i = 0; i < m; ++i)
            if (var(i) <= 0.0) out.constant_items.push_back(i);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < i; ++j) {
                if (var(i) <= 0.0 || var(j) <= 0.0) continue;
                const double cov =
                    centered.col(i).dot(centered.col(j)) / static_cast<double>(u);
                const double corr = cov / std::sqrt(var(i) * var(j));
                w(i, j) = w(j, i) = std::max(corr, 0.0);
            }
        }
    } else {
        std::vector<char> constant(static_cast<std::size_t>(m), 1);
        for (int i = 0; i < m; ++i) {
            double first = 0.0;
            bool seen = false;
            for (int row = 0; row < u; ++row) {
                const double v = r.values(row, i);
                if (v == 0.0) continue;
                if (!seen) {
                    first = v;
                    seen = true;
                } else if (v != first) {
                    constant[static_cast<std::size_t>(i)] = 0;
                    break;
                }
            }
        }
        for (int i = 0; i < m; ++i)
            if (constant[static_cast<std::size_t>(i)]) out.constant_items.push_back(i);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < i; ++j) {
                if (constant[static_cast<std::size_t>(i)] ||
                    constant[static_cast<std::size_t>(j)])
                    continue;
                double si = 0.0, sj = 0.0, sii = 0.0, sjj = 0.0, sij = 0.0;
                int count = 0;
                for (int row = 0; row < u; ++row) {
                    const double a = r.values(row, i);
                    const double b = r.values(row, j);
                    if (a == 0.0 || b == 0.0) continue;
                    si += a;
                    sj += b;
                    sii += a * a;
                    sjj += b * b;
                    sij += a * b;
                    ++count;
                }
                if (count < 2) continue;
                const double vi = sii - si * si / count;
                const double vj = sjj - sj * sj / count;
                if (vi <= 0.0 || vj <= 0.0) continue;
                const double corr = (sij - si * sj / count) / std::sqrt(vi * vj);
                w(i, j) = w(j, i) = std::max(corr, 0.0);
            }
        }
    }

    const double top = w.maxCoeff();
    if (top > 0.0) w /= top;
    out.graph = Graph(std::move(w));
    return out;
}

}  // namespace gsp

#endif  // GSP_RATINGS_HPP
