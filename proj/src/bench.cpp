#include "sra/bench.hpp"

#include <chrono>
#include <cmath>

namespace sra {

Word repeated_input(const Word& prefix, const Word& tail, std::size_t chars) {
  Word w = prefix;
  w.reserve(chars + tail.size());
  if (tail.empty()) return w;
  while (w.size() + tail.size() <= chars) w.insert(w.end(), tail.begin(), tail.end());
  return w;
}

std::vector<TimingPoint> membership_scaling(const Sra& s, const Word& prefix, const Word& tail,
                                            const std::vector<std::size_t>& sizes, double min_seconds) {
  using clock = std::chrono::steady_clock;
  const Matcher m(s);
  std::vector<TimingPoint> out;
  for (std::size_t n : sizes) {
    const Word w = repeated_input(prefix, tail, n);
    TimingPoint p;
    p.chars = w.size();
    std::size_t runs = 0;
    const auto start = clock::now();
    double elapsed = 0;
    do {
      p.accepted = m.accepts(w);
      ++runs;
      elapsed = std::chrono::duration<double>(clock::now() - start).count();
    } while (elapsed < min_seconds);
    p.seconds = elapsed / static_cast<double>(runs);
    out.push_back(p);
  }
  return out;
}

double loglog_slope(const std::vector<TimingPoint>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(points.size());
  for (const auto& p : points) {
    const double x = std::log(static_cast<double>(p.chars));
    const double y = std::log(p.seconds);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace sra
