#include "claycop/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace claycop {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

std::string trim(std::string s) {
    const auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n';
    };
    while (!s.empty() && is_space(s.front())) s.erase(s.begin());
    while (!s.empty() && is_space(s.back())) s.pop_back();
    return s;
}

}  // namespace

BivariateSample read_bivariate_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw CsvError(path + ": empty file");
    const std::string header = trim(line);
    if (header != "x1,x2" && header != "u1,u2")
        throw CsvError(path + ": expected header x1,x2 or u1,u2, got '" +
                       header + "'");

    BivariateSample sample;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        const std::string s = trim(line);
        if (s.empty()) continue;
        const auto comma = s.find(',');
        if (comma == std::string::npos)
            throw CsvError(path + ": row " + std::to_string(row) +
                           ": expected two comma-separated values");
        try {
            const double x1 = std::stod(s.substr(0, comma));
            const double x2 = std::stod(s.substr(comma + 1));
            sample.points.push_back({x1, x2});
        } catch (const std::exception&) {
            throw CsvError(path + ": row " + std::to_string(row) +
                           ": cannot parse '" + s + "'");
        }
    }
    return sample;
}

void write_pairs_csv(const std::string& path, const std::string& header,
                     const std::vector<std::array<double, 2>>& rows) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write " + path);
    out << header << "\n";
    for (const auto& r : rows)
        out << format_double(r[0]) << ',' << format_double(r[1]) << "\n";
}

void write_pseudo_csv(const std::string& path, const PseudoSample& pseudo) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write " + path);
    out << "i,t\n";
    for (std::size_t i = 0; i < pseudo.size(); ++i)
        out << i + 1 << ',' << format_double(pseudo.t[i]) << "\n";
}

void write_population_csv(const std::string& path,
                          const std::vector<double>& estimates) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write " + path);
    out << "alpha_hat\n";
    for (double e : estimates) out << format_double(e) << "\n";
}

}  // namespace claycop
