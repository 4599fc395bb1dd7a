#include "egfp/io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace egfp::io {

json tuple_to_json(const IndexTuple& t) {
    json arr = json::array();
    for (const auto& e : t) {
        if (e.is_minus() && e.magnitude == 0)
            arr.push_back("-0");
        else
            arr.push_back(e.is_minus() ? -e.magnitude : e.magnitude);
    }
    return arr;
}

IndexTuple tuple_from_json(const json& j) {
    std::vector<SignedIndex> e;
    for (const auto& v : j) {
        if (v.is_string()) {
            std::string s = v.get<std::string>();
            if (s.empty()) throw std::invalid_argument("empty index string");
            if (s[0] == '-')
                e.push_back(neg(std::stoi(s.substr(1))));
            else
                e.push_back(pos(std::stoi(s)));
        } else {
            int x = v.get<int>();
            e.push_back(x >= 0 ? pos(x) : neg(-x));
        }
    }
    return IndexTuple(std::move(e));
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            std::complex<double> v = m(i, j);
            if (v.imag() == 0.0)
                row.push_back(v.real());
            else
                row.push_back(json::array({v.real(), v.imag()}));
        }
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
    const int rows = static_cast<int>(j.size());
    const int cols = rows ? static_cast<int>(j[0].size()) : 0;
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const json& v = j[i][k];
            if (v.is_array())
                m(i, k) = std::complex<double>(v[0].get<double>(), v[1].get<double>());
            else
                m(i, k) = std::complex<double>(v.get<double>(), 0.0);
        }
    return m;
}

json poly_to_json(const MatrixPolynomial& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(matrix_to_json(c));
    return json{{"n", p.n}, {"m", p.m}, {"coeffs", coeffs}};
}

MatrixPolynomial poly_from_json(const json& j) {
    std::vector<Eigen::MatrixXcd> cs;
    for (const auto& c : j.at("coeffs")) cs.push_back(matrix_from_json(c));
    return MatrixPolynomial(j.at("m").get<int>(), std::move(cs));
}

namespace {

json assignment_to_json(const DecorationAssignment& d) {
    if (d.trivial) return json{{"trivial", true}};
    json names = json::array();
    for (const auto& n : d.names) names.push_back(n);
    json values = json::array();
    for (const auto& v : d.values) values.push_back(matrix_to_json(v));
    return json{{"trivial", false}, {"names", names}, {"values", values}};
}

DecorationAssignment assignment_from_json(const json& j) {
    if (j.is_null() || (j.contains("trivial") && j.at("trivial").get<bool>()))
        return DecorationAssignment::make_trivial();
    std::vector<std::string> names;
    for (const auto& n : j.at("names")) names.push_back(n.get<std::string>());
    std::vector<Eigen::MatrixXcd> values;
    for (const auto& v : j.at("values")) values.push_back(matrix_from_json(v));
    return DecorationAssignment::make_named(std::move(names), std::move(values));
}

} // namespace

json spec_to_json(const EgfpSpec& s) {
    return json{{"m", s.m},
                {"sigma", tuple_to_json(s.sigma)},
                {"tau", tuple_to_json(s.tau)},
                {"sigma1", tuple_to_json(s.sigma1)},
                {"sigma2", tuple_to_json(s.sigma2)},
                {"tau1", tuple_to_json(s.tau1)},
                {"tau2", tuple_to_json(s.tau2)},
                {"assignments",
                 json{{"x1", assignment_to_json(s.x1)},
                      {"x2", assignment_to_json(s.x2)},
                      {"y1", assignment_to_json(s.y1)},
                      {"y2", assignment_to_json(s.y2)}}}};
}

EgfpSpec spec_from_json(const json& j) {
    EgfpSpec s;
    s.m = j.at("m").get<int>();
    s.sigma = tuple_from_json(j.at("sigma"));
    s.tau = tuple_from_json(j.at("tau"));
    if (j.contains("sigma1")) s.sigma1 = tuple_from_json(j.at("sigma1"));
    if (j.contains("sigma2")) s.sigma2 = tuple_from_json(j.at("sigma2"));
    if (j.contains("tau1")) s.tau1 = tuple_from_json(j.at("tau1"));
    if (j.contains("tau2")) s.tau2 = tuple_from_json(j.at("tau2"));
    if (j.contains("assignments")) {
        const json& a = j.at("assignments");
        if (a.contains("x1")) s.x1 = assignment_from_json(a.at("x1"));
        if (a.contains("x2")) s.x2 = assignment_from_json(a.at("x2"));
        if (a.contains("y1")) s.y1 = assignment_from_json(a.at("y1"));
        if (a.contains("y2")) s.y2 = assignment_from_json(a.at("y2"));
    }
    return s;
}

json realization_to_json(const Realization& r) {
    return json{{"P", poly_to_json(r.P)},
                {"A", matrix_to_json(r.A)},
                {"E", matrix_to_json(r.E)},
                {"B", matrix_to_json(r.B)},
                {"C", matrix_to_json(r.C)}};
}

Realization realization_from_json(const json& j) {
    MatrixPolynomial p = poly_from_json(j.at("P"));
    Eigen::MatrixXcd a = matrix_from_json(j.at("A"));
    Eigen::MatrixXcd e = matrix_from_json(j.at("E"));
    Eigen::MatrixXcd b = matrix_from_json(j.at("B"));
    Eigen::MatrixXcd c = matrix_from_json(j.at("C"));
    if (a.rows() == 0) {
        const int n = p.n;
        return Realization(std::move(p), Eigen::MatrixXcd(0, 0), Eigen::MatrixXcd(0, 0),
                           Eigen::MatrixXcd(0, n), Eigen::MatrixXcd(n, 0));
    }
    return Realization(std::move(p), std::move(a), std::move(e), std::move(b), std::move(c));
}

void write_matrix_market(std::ostream& os, const Eigen::MatrixXcd& m) {
    os << "%%MatrixMarket matrix coordinate complex general\n";
    std::size_t nnz = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != std::complex<double>(0, 0)) ++nnz;
    os << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
    os << std::setprecision(17);
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i)
            if (m(i, j) != std::complex<double>(0, 0))
                os << (i + 1) << ' ' << (j + 1) << ' ' << m(i, j).real() << ' '
                   << m(i, j).imag() << '\n';
}

Eigen::MatrixXcd read_matrix_market(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0)
        throw std::invalid_argument("not a Matrix Market stream");
    bool complex_field = line.find("complex") != std::string::npos;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '%') break;
    std::istringstream head(line);
    int rows = 0, cols = 0;
    long long nnz = 0;
    head >> rows >> cols >> nnz;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
    for (long long k = 0; k < nnz; ++k) {
        if (!std::getline(is, line)) throw std::invalid_argument("truncated Matrix Market data");
        std::istringstream e(line);
        int i = 0, j = 0;
        double re = 0, im = 0;
        e >> i >> j >> re;
        if (complex_field) e >> im;
        m(i - 1, j - 1) = std::complex<double>(re, im);
    }
    return m;
}

json tag_sidecar(const BlockMatrix& m) {
    json grid = json::array();
    for (int i = 0; i < m.mblocks(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.mblocks(); ++j) row.push_back(m.tag(i, j).str());
        grid.push_back(row);
    }
    return json{{"block_size", m.block_size()}, {"blocks", m.mblocks()}, {"tags", grid}};
}

} // namespace egfp::io
