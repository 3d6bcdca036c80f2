#pragma once

#include <iosfwd>
#include <string>

#include "specden/image.hpp"

namespace specden {

/// 10*log10(1/MSE) with peak 1.0; +infinity when MSE is zero.
double psnr(const Image& a, const Image& b);

struct MetricsReport {
  double psnr = 0;  ///< dB, possibly +inf
  double ssim = 0;
  double lfd = 0;
};

/// PSNR, SSIM and LFD of `test` against `reference`.
MetricsReport measure(const Image& test, const Image& reference);

/// Header `file,psnr,ssim,lfd`; infinite PSNR is written as `inf`.
void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const std::string& name, const MetricsReport& m);

}  // namespace specden
