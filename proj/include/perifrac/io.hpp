#pragma once

#include <string>
#include <utility>
#include <vector>

#include "perifrac/certificates.hpp"
#include "perifrac/continuation.hpp"

namespace perifrac {

// Shortest round-trip-exact decimal form (17 significant digits).
std::string format_g17(double x);

// Branch summary CSV with header
//   t,u_mean,u_min,u_max,l2_deriv,residual_sup,iterations,fold_flag
// one row per point in branch order; fold rows carry fold_flag = 1.
// PreconditionViolation on an empty branch.
void export_branch(const Branch& branch, const std::string& path);

// Companion full-field table (row: index, t, then the n nodal values) so
// identity checks can rerun offline from the artifact alone.
void export_branch_fields(const Branch& branch, const std::string& path);

// Reads a table written by export_branch_fields.
std::vector<std::pair<double, SpectralField>> import_branch_fields(const std::string& path);

// Flat sorted "key=value" report, one pair per line.
void write_report(const std::vector<std::pair<std::string, std::string>>& entries,
                  const std::string& path);

std::vector<std::pair<std::string, std::string>> report_entries(const CertificateReport& report);

void write_solution_csv(const Solution& sol, const std::string& path);

} // namespace perifrac
