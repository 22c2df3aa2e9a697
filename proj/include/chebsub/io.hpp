#pragma once

#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "chebsub/bases.hpp"
#include "chebsub/errors.hpp"
#include "chebsub/experiments.hpp"
#include "chebsub/index_sets.hpp"
#include "chebsub/sampling.hpp"

namespace chebsub::io {

inline constexpr const char* kRecordHeader =
    "d,R,m,M,n,b,basis,error_method,error,a_before,b_before,a_after,b_after,seed,ms";

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

inline std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && s[i] == ' ') ++i;
    return s.substr(i);
}

}  // namespace detail

/// One point per row, coordinates with 17 significant digits, no header.
inline void write_nodes_csv(std::ostream& os, const NodeSet& nodes) {
    os << std::setprecision(17);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t l = 0; l < nodes.dim(); ++l) {
            if (l) os << ',';
            os << nodes.points()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l));
        }
        os << '\n';
    }
}

inline NodeSet read_nodes_csv(std::istream& is, std::size_t dim, Measure measure, std::uint64_t seed = 0) {
    std::vector<double> values;
    std::string line;
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto cells = detail::split(line);
        if (cells.size() != dim)
            throw ParameterError("nodes csv: row " + std::to_string(rows + 1) + " has " + std::to_string(cells.size()) +
                                 " coordinates, expected " + std::to_string(dim));
        for (const auto& c : cells) values.push_back(std::stod(c));
        ++rows;
    }
    if (rows == 0) throw ParameterError("nodes csv: no points");
    RowMatrix pts = Eigen::Map<RowMatrix>(values.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(dim));
    return {std::move(pts), measure, seed};
}

/// Header row of multi-indices (k1|k2|...), then one row per node.
inline void write_design_csv(std::ostream& os, const DesignMatrix& matrix, const MultiIndexSet& indices) {
    for (std::size_t j = 0; j < indices.size(); ++j) os << (j ? "," : "") << indices[j].to_string();
    os << '\n' << std::setprecision(17);
    for (Eigen::Index i = 0; i < matrix.values.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix.values.cols(); ++j) os << (j ? "," : "") << matrix.values(i, j);
        os << '\n';
    }
}

inline void write_records_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
    os << kRecordHeader << '\n' << std::setprecision(17);
    for (const auto& r : records) {
        os << r.d << ',' << r.R << ',' << r.m << ',' << r.M << ',' << r.n << ',' << r.b << ',' << to_string(r.basis)
           << ',' << to_string(r.error_method) << ',' << r.error << ',' << r.a_before << ',' << r.b_before << ','
           << r.a_after << ',' << r.b_after << ',' << r.seed << ',' << r.ms << '\n';
    }
}

inline std::vector<ExperimentRecord> read_records_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || detail::trim(line) != kRecordHeader)
        throw ParameterError("records csv: missing or unexpected header");
    std::vector<ExperimentRecord> out;
    while (std::getline(is, line)) {
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto c = detail::split(line);
        if (c.size() != 15) throw ParameterError("records csv: expected 15 columns, got " + std::to_string(c.size()));
        ExperimentRecord r;
        r.d = std::stoul(c[0]);
        r.R = std::stoull(c[1]);
        r.m = std::stoul(c[2]);
        r.M = std::stoul(c[3]);
        r.n = std::stoul(c[4]);
        r.b = std::stod(c[5]);
        if (c[6] == "cheb") r.basis = BasisTag::Chebyshev;
        else if (c[6] == "hpc") r.basis = BasisTag::HalfPeriodCosine;
        else throw ParameterError("records csv: unknown basis '" + c[6] + "'");
        if (c[7] == "parseval") r.error_method = ErrorMethod::Parseval;
        else if (c[7] == "mc") r.error_method = ErrorMethod::MonteCarlo;
        else throw ParameterError("records csv: unknown error method '" + c[7] + "'");
        r.error = std::stod(c[8]);
        r.a_before = std::stod(c[9]);
        r.b_before = std::stod(c[10]);
        r.a_after = std::stod(c[11]);
        r.b_after = std::stod(c[12]);
        r.seed = std::stoull(c[13]);
        r.ms = std::stoll(c[14]);
        out.push_back(r);
    }
    return out;
}

}  // namespace chebsub::io
