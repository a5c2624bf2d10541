#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hcslab::io {

// Writes the standard figure-data set (photon distributions, Mandel factor,
// skew information, quadrature and amplitude-squared squeezing sweeps, and a
// directory of Wigner heatmaps) as CSV + SVG under out_dir. A numerical error
// aborts only the affected figure; everything else is still produced.
struct FigureSet {
  std::vector<std::string> written;                          // paths
  std::vector<std::pair<std::string, std::string>> failures;  // figure -> reason
};

FigureSet reproduce_figures(const std::string& out_dir);

}  // namespace hcslab::io
