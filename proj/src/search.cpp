#include "nomafair/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "nomafair/errors.hpp"

namespace nomafair {

namespace {

bool better(const SearchResult& a, const SearchResult& b) {
  return a.value > b.value || (a.value == b.value && a.x < b.x);
}

SearchResult golden_section(const std::function<double(double)>& f, double a, double b,
                            double tol) {
  constexpr double kInvPhi = std::numbers::phi - 1.0;  // 0.618...
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? SearchResult{c, fc} : SearchResult{d, fd};
}

}  // namespace

SearchResult maximize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                  const SearchOptions& options) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("search interval must be finite with lo <= hi");
  }
  if (options.grid_points < 2) throw DomainError("search grid needs at least 2 points");
  if (hi - lo <= options.x_tol) {
    const SearchResult a{lo, f(lo)};
    const SearchResult b{hi, f(hi)};
    return better(b, a) ? b : a;
  }

  const int n = options.grid_points;
  const double step = (hi - lo) / (n - 1);
  std::vector<double> xs(n);
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = (i == n - 1) ? hi : lo + step * i;
    values[i] = f(xs[i]);
  }

  double top = values[0];
  for (int i = 1; i < n; ++i) top = std::max(top, values[i]);

  // Refine every grid peak close to the top, then treat refined peaks within
  // tie_tol of the best as equal so rounding noise cannot pick the later one.
  std::vector<SearchResult> peaks;
  for (int i = 0; i < n; ++i) {
    const bool local_max = (i == 0 || values[i] >= values[i - 1]) &&
                           (i == n - 1 || values[i] >= values[i + 1]);
    if (!local_max || values[i] < top - options.tie_tol) continue;
    const double a = xs[i == 0 ? 0 : i - 1];
    const double b = xs[i == n - 1 ? n - 1 : i + 1];
    SearchResult refined = golden_section(f, a, b, options.x_tol);
    if (values[i] > refined.value) refined = {xs[i], values[i]};
    peaks.push_back(refined);
  }
  double best_value = peaks.front().value;
  for (const SearchResult& p : peaks) best_value = std::max(best_value, p.value);
  SearchResult best = peaks.front();
  bool found = false;
  for (const SearchResult& p : peaks) {
    if (p.value < best_value - options.tie_tol) continue;
    if (!found || p.x < best.x) best = p;
    found = true;
  }
  return best;
}

}  // namespace nomafair
