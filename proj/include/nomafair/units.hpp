#pragma once

#include <cmath>

namespace nomafair {

// dB <-> linear conversions. Only used at I/O boundaries; every formula in the
// library works on linear ratios.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

// dBm <-> mW
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

}  // namespace nomafair
