#pragma once

#include <functional>

namespace nomafair {

struct SearchResult {
  double x;
  double value;
};

struct SearchOptions {
  int grid_points = 1000;  // includes both endpoints
  double x_tol = 1e-9;     // golden-section stopping width
  double tie_tol = 1e-9;   // grid maxima this close to the best are all refined
};

/// Global maximizer of a continuous function on [lo, hi]: uniform grid scan,
/// then golden-section refinement of every grid local maximum whose value is
/// within tie_tol of the best. Refined candidates within tie_tol of each other
/// count as tied and the smaller x wins. Requires lo <= hi.
SearchResult maximize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                  const SearchOptions& options = {});

}  // namespace nomafair
