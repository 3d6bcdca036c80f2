#include "specden/metrics.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "specden/csv.hpp"
#include "specden/losses.hpp"
#include "specden/spectrum.hpp"

namespace specden {

double psnr(const Image& a, const Image& b) {
  require_same_shape(a, b, "psnr");
  double sum = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = da[i] - db[i];
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(da.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

MetricsReport measure(const Image& test, const Image& reference) {
  return {psnr(test, reference), ssim(test, reference), lfd(test, reference)};
}

void write_metrics_header(std::ostream& out) { out << "file,psnr,ssim,lfd\n"; }

void write_metrics_row(std::ostream& out, const std::string& name, const MetricsReport& m) {
  out << name << ',' << csv::format_double(m.psnr) << ',' << csv::format_double(m.ssim) << ','
      << csv::format_double(m.lfd) << '\n';
}

}  // namespace specden
