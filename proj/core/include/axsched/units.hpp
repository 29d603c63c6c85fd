// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace axsched {

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

}  // namespace axsched
