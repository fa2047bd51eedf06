#pragma once

namespace ftk {

// Numeric policy shared by every check. Defaults are the documented contract;
// callers override per invocation, nothing reads hidden globals.
struct Tolerances {
  double rank = 1e-10;  // relative singular value cutoff for rank decisions
  double psd = 1e-9;    // slack for positivity / Loewner comparisons
  double eq = 1e-9;     // relative tolerance for matrix equality
  int max_iter = 10000; // iteration cap for limits
  double conv = 1e-12;  // convergence threshold for iterative limits

  // Same policy two orders of magnitude tighter, used to separate borderline
  // numerical artifacts from genuine structure.
  Tolerances tightened() const {
    Tolerances t = *this;
    t.rank /= 100.0;
    t.psd /= 100.0;
    t.eq /= 100.0;
    t.conv /= 100.0;
    return t;
  }
};

} // namespace ftk
