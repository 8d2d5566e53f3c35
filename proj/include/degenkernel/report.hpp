#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

#include "degenkernel/spectral.hpp"
#include "degenkernel/verify.hpp"

namespace degen {

/// Fixed CSV schemas (golden-file tested):
///   kernel:    t,r_x,r_y,cos_gamma,k_mu,k,tail_bound
///   spectrum:  ell,index,lambda
///   constants: t,C_star
extern const char* kKernelCsvHeader;
extern const char* kSpectrumCsvHeader;
extern const char* kConstantsCsvHeader;

void write_kernel_csv(const std::string& path,
                      const std::vector<KernelEvaluation>& rows);
void write_spectrum_csv(const std::string& path,
                        const std::map<int, Eigen::VectorXd>& spectra);
void write_constants_csv(const std::string& path, const std::vector<double>& t,
                         const std::vector<double>& c_star);

void write_json(const std::string& path, const Json& doc);

/// Deterministic shortest-round-trip formatting for doubles in CSV output.
std::string format_double(double v);

}  // namespace degen
