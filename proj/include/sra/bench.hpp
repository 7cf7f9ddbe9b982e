// Membership timing over growing inputs.
#pragma once

#include <vector>

#include "sra/sra.hpp"

namespace sra {

struct TimingPoint {
  std::size_t chars = 0;
  double seconds = 0;  ///< mean over the repetitions
  bool accepted = false;
};

/// Input of about `chars` symbols: `prefix` followed by whole copies of `tail`.
Word repeated_input(const Word& prefix, const Word& tail, std::size_t chars);

/// Times Matcher::accepts on repeated_input for each size.  Small inputs are
/// repeated until at least `min_seconds` have passed.
std::vector<TimingPoint> membership_scaling(const Sra& s, const Word& prefix, const Word& tail,
                                            const std::vector<std::size_t>& sizes, double min_seconds = 0.05);

/// Least-squares slope of log(seconds) against log(chars).
double loglog_slope(const std::vector<TimingPoint>& points);

}  // namespace sra
