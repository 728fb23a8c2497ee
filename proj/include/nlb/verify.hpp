#pragma once

#include <string>
#include <vector>

#include "nlb/run_io.hpp"

namespace nlb {

struct LawCheck {
  std::string law;        ///< "E", "ML", "MP", "AMP", "HP", "decay_fit", "BKM", "avg_bounds"
  bool applicable = true; ///< e.g. (MP) is not applicable to negative data
  bool pass = true;
  double measured = 0.0;
  double threshold = 0.0;
  std::string note;
};

struct VerifyReport {
  std::vector<LawCheck> checks;
  bool overall_pass = true;
  std::string status;  ///< run termination status as recorded
};

/// Re-derives every monitored law from a finished run's files.
VerifyReport verify_run(const std::string& dir);

/// Machine-readable JSON rendering of the report.
std::string report_to_json(const VerifyReport& report);

}  // namespace nlb
