#ifndef PUNIP_CASES_HPP
#define PUNIP_CASES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "punip/homsolver.hpp"

namespace punip {

enum class Status { Verified, ForcedZeroWithinAnsatz, Failed, Overflow };

std::string to_string(Status s);

struct CaseParams {
  int p = 2;
  int n = 1;
  int coeff_deg = 4;
  /// Largest power exponent in the ansatz; defaults to n + 1.
  std::optional<int> max_power;
  /// Field header; defaults to GF(p)(l,m), or GF(p)(l,m,g) when a third indeterminate is needed.
  std::string field;
  /// Common denominator of the coefficient basis (an expression in the indeterminates).
  std::string denominator;
  int max_degree = 64;
};

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct StabilityLevel {
  int coeff_deg = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  std::size_t dim = 0;
  std::string status;
};

/// Outcome of one forced-vanishing solve, with its enlargement runs.
struct SolverReport {
  std::string label;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  std::size_t dim = 0;
  std::string status;
  std::string functional;
  std::string ansatz;
  bool saturates_boundary = false;
  std::vector<StabilityLevel> stability;
  std::string witness;

  bool forced_zero() const;
};

struct Certificate {
  std::string case_id;
  Status status = Status::Failed;
  CaseParams params;
  std::vector<Check> checks;
  std::vector<SolverReport> solves;
  /// Observations that do not decide the status (control runs and the like).
  std::vector<std::string> notes;
  std::string message;

  bool success() const noexcept { return status == Status::Verified || status == Status::ForcedZeroWithinAnsatz; }
};

struct CaseInfo {
  std::string id;
  std::string summary;
  std::string hypotheses;
};

const std::vector<CaseInfo>& case_registry();

/// Fills defaults and enforces the hypotheses of the case; throws DomainError
/// with an explanation for out-of-range or out-of-hypothesis requests.
CaseParams resolve_params(const std::string& id, CaseParams params);

/// Runs a registry case. Overflows are reported in the certificate, not thrown.
Certificate run_case(const std::string& id, const CaseParams& params);

/// Solve at `levels` successive coefficient degrees starting from a.coeff_basis's degree.
SolverReport forced_zero_report(const std::string& label, const std::function<HomSpace(const Ansatz&)>& solve,
                                const Functional& phi, const Field& f, int max_power, int coeff_deg,
                                const std::optional<MPoly>& denominator, int levels = 3);

/// Canonical one-line description of the inputs (hashed by the CLI).
std::string canonical_input(const std::string& id, const CaseParams& p);

std::string certificate_json(const Certificate& c, const std::string& input_hash);
std::string solver_report_json(const SolverReport& r);

}  // namespace punip

#endif  // PUNIP_CASES_HPP
