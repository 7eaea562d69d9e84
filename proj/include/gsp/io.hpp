#ifndef GSP_IO_HPP
#define GSP_IO_HPP

#include <Eigen/Dense>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gsp/common.hpp"
#include "gsp/graph.hpp"
#include "gsp/spectral.hpp"
#include "gsp/stability.hpp"

namespace gsp {

/// All floating-point output goes through this: 12 significant digits,
/// locale-independent.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Bound cell for CSV: finite value, "inf", or "na".
inline std::string format_bound(const BoundValue& b) {
    if (!b.applicable) return "na";
    if (b.infinite) return "inf";
    return format_double(b.value);
}

inline std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("na");
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_double(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw config_error("malformed number '" + s + "' in " + where);
    }
}

}  // namespace detail

/// Dense numeric matrix from a comma-separated file: N rows of equally
/// many values, no header.
inline Eigen::MatrixXd load_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open matrix file '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const std::string& f : detail::split_csv_line(line))
            row.push_back(detail::parse_double(f, path));
        if (!rows.empty() && row.size() != rows.front().size())
            throw config_error("ragged rows in matrix file '" + path + "'");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw config_error("matrix file '" + path + "' is empty");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

inline void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot write matrix file '" + path + "'");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

/// Single-column signal file, no header.
inline Eigen::VectorXd load_signal_csv(const std::string& path) {
    const Eigen::MatrixXd m = load_matrix_csv(path);
    if (m.cols() != 1) throw config_error("signal file '" + path + "' must have one column");
    return m.col(0);
}

inline void save_signal_csv(const std::string& path, const Eigen::VectorXd& x) {
    save_matrix_csv(path, x);
}

/// Edge-list export: header `i,j,weight`, upper triangle including the
/// diagonal, zero weights skipped, 1-indexed endpoints.
inline void save_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot write edge list '" + path + "'");
    out << "i,j,weight\n";
    const Eigen::MatrixXd& s = g.adjacency();
    for (Eigen::Index i = 0; i < s.rows(); ++i)
        for (Eigen::Index j = i; j < s.cols(); ++j)
            if (s(i, j) != 0.0)
                out << (i + 1) << ',' << (j + 1) << ',' << format_double(s(i, j)) << '\n';
}

/// Spectrum export: header `signed_index,eigenvalue`, positive indices
/// first (descending values), then negative (ascending).
inline void save_spectrum_csv(const std::string& path, const SignedSpectrum& spec) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot write spectrum file '" + path + "'");
    out << "signed_index,eigenvalue\n";
    for (const auto& [idx, value] : spec.export_order())
        out << idx << ',' << format_double(value) << '\n';
}

inline std::string stability_csv_header() {
    return "n,seed,mode,filter_form,epsilon,A1,A2,A3,B,n_c_max,delta_c_min,bound_thm1,"
           "bound_thm2,bound_thm3,bound_lemma1,empirical_l2,empirical_rel,as1_pass,as4_pass,"
           "flags";
}

inline std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (i) out += ';';
        out += flags[i];
    }
    return out;
}

inline std::string stability_csv_row(const StabilityReport& r) {
    std::ostringstream out;
    out << r.n << ',' << r.seed << ',' << to_string(r.mode) << ',' << to_string(r.form) << ','
        << format_double(r.eps) << ',' << format_double(r.a1) << ',' << format_double(r.a2) << ','
        << format_double(r.a3) << ',' << format_double(r.b) << ',' << r.nc_max << ','
        << format_optional(r.delta_min) << ',' << format_bound(r.continuum_bound) << ','
        << format_bound(r.sampled_bound) << ',' << format_bound(r.bernoulli_bound) << ','
        << format_bound(r.transfer_bound) << ',' << format_double(r.empirical_l2) << ','
        << (r.empirical_rel_defined ? format_double(r.empirical_rel) : std::string("na")) << ','
        << (r.as1_pass ? 1 : 0) << ','
        << (r.degree.applicable ? std::string(r.degree.pass ? "1" : "0") : std::string("na"))
        << ',' << join_flags(r.flags);
    return out.str();
}

}  // namespace gsp

#endif  // GSP_IO_HPP
