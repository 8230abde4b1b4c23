#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "claycop/pseudo.hpp"

namespace claycop {

struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest representation that round-trips the exact double.
std::string format_double(double x);

/// Reads a two-column CSV with header `x1,x2` or `u1,u2`. Malformed rows
/// raise CsvError with the offending line number.
BivariateSample read_bivariate_csv(const std::string& path);

void write_pairs_csv(const std::string& path, const std::string& header,
                     const std::vector<std::array<double, 2>>& rows);

/// Columns `i,t`, 1-based index.
void write_pseudo_csv(const std::string& path, const PseudoSample& pseudo);

/// Single column `alpha_hat`.
void write_population_csv(const std::string& path,
                          const std::vector<double>& estimates);

}  // namespace claycop
