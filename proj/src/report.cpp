#include "degenkernel/report.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace degen {

const char* kKernelCsvHeader = "t,r_x,r_y,cos_gamma,k_mu,k,tail_bound";
const char* kSpectrumCsvHeader = "ell,index,lambda";
const char* kConstantsCsvHeader = "t,C_star";

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

void write_kernel_csv(const std::string& path,
                      const std::vector<KernelEvaluation>& rows) {
  auto out = open_out(path);
  out << kKernelCsvHeader << "\n";
  for (const KernelEvaluation& ev : rows)
    out << format_double(ev.t) << ',' << format_double(ev.rx) << ','
        << format_double(ev.ry) << ',' << format_double(ev.cos_gamma) << ','
        << format_double(ev.value_kmu) << ',' << format_double(ev.value_k)
        << ',' << format_double(ev.tail_bound) << "\n";
}

void write_spectrum_csv(const std::string& path,
                        const std::map<int, Eigen::VectorXd>& spectra) {
  auto out = open_out(path);
  out << kSpectrumCsvHeader << "\n";
  for (const auto& [ell, lambdas] : spectra)
    for (int i = 0; i < lambdas.size(); ++i)
      out << ell << ',' << (i + 1) << ',' << format_double(lambdas[i]) << "\n";
}

void write_constants_csv(const std::string& path, const std::vector<double>& t,
                         const std::vector<double>& c_star) {
  if (t.size() != c_star.size())
    throw std::invalid_argument("write_constants_csv: size mismatch");
  auto out = open_out(path);
  out << kConstantsCsvHeader << "\n";
  for (size_t i = 0; i < t.size(); ++i)
    out << format_double(t[i]) << ',' << format_double(c_star[i]) << "\n";
}

void write_json(const std::string& path, const Json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
}

}  // namespace degen
