#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ghostsim/detection.hpp"

namespace ghostsim {

/// One measured quantity checked against its target.
struct CheckRow {
  std::string criterion;  ///< "1", "3a", ...
  std::string name;
  Real measured = 0;
  Real expected = 0;
  Real tolerance = 0;
  std::string tolerance_kind;  ///< "rel", "abs", "max", "range"
  bool passed = false;
  bool advisory = false;
  std::string note;
};

struct ValidationReport {
  std::vector<CheckRow> rows;

  /// True iff every non-advisory row passed.
  bool passed() const;
};

/// Shared FWHM cache so that criteria can reuse each other's profiles
/// within one process.
class ValidationContext {
 public:
  explicit ValidationContext(Resolution res = {}) : res_(res) {}

  const Resolution& resolution() const { return res_; }

  /// FWHM of compute_ccr(...) on the default grid, memoized by arguments.
  Real fwhm(const Scenario& s, Plane plane, DetectorModel model, Method method, const Resolution& res);
  Real fwhm(const Scenario& s, Plane plane, DetectorModel model, Method method) {
    return fwhm(s, plane, model, method, res_);
  }

 private:
  Resolution res_;
  std::map<std::string, Real> cache_;
};

struct Criterion {
  std::string id;
  std::string title;
  bool advisory = false;
};

/// The acceptance criteria, in order.
const std::vector<Criterion>& acceptance_criteria();

/// Evaluates one criterion; every row it returns carries the criterion id.
std::vector<CheckRow> evaluate_criterion(const std::string& id, ValidationContext& ctx);

/// Evaluates the listed criteria (all when empty).
ValidationReport run_validation(const std::vector<std::string>& ids = {}, const Resolution& res = {});

/// One line per row: status, id, name, measured/expected/tolerance, note.
void print_report(std::ostream& out, const ValidationReport& report, bool color);

}  // namespace ghostsim
