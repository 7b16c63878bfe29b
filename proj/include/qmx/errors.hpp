#pragma once

#include <stdexcept>
#include <string>

namespace qmx {

// Every recoverable failure in the library is thrown as an Error carrying one
// of these codes.  The CLI maps codes to process exit codes (see
// exit_code_for): malformed input -> 2, exhausted budgets -> 4, everything
// else that aborts a task -> 3.
enum class Errc {
  unknown_generator,
  empty_relator,
  unsupported_lambda,
  strategy_unsupported,
  undecidable_spec,
  budget_exceeded,
  not_in_domain,
  empty_pattern,
  conjugate_leaves_subgroup,
  k_letter_not_in_subgroup,
  x_letter_in_subgroup,
  vertex_not_in_ball,
  path_broken,
  relator_not_in_kernel,
  empty_kernel_sample,
  lift_mismatch,
  section_incomplete,
  no_candidate_found,
  witness_outside_ball,
  not_in_mixed_commutator_subgroup,
  degenerate_defect,
  parse_error,
  schema_error,
  io_error,
  internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::unknown_generator: return "UnknownGenerator";
    case Errc::empty_relator: return "EmptyRelator";
    case Errc::unsupported_lambda: return "UnsupportedLambda";
    case Errc::strategy_unsupported: return "StrategyUnsupported";
    case Errc::undecidable_spec: return "UndecidableSpec";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::not_in_domain: return "NotInDomain";
    case Errc::empty_pattern: return "EmptyPattern";
    case Errc::conjugate_leaves_subgroup: return "ConjugateLeavesSubgroup";
    case Errc::k_letter_not_in_subgroup: return "KLetterNotInSubgroup";
    case Errc::x_letter_in_subgroup: return "XLetterInSubgroup";
    case Errc::vertex_not_in_ball: return "VertexNotInBall";
    case Errc::path_broken: return "PathBroken";
    case Errc::relator_not_in_kernel: return "RelatorNotInKernel";
    case Errc::empty_kernel_sample: return "EmptyKernelSample";
    case Errc::lift_mismatch: return "LiftMismatch";
    case Errc::section_incomplete: return "SectionIncomplete";
    case Errc::no_candidate_found: return "NoCandidateFound";
    case Errc::witness_outside_ball: return "WitnessOutsideBall";
    case Errc::not_in_mixed_commutator_subgroup:
      return "NotInMixedCommutatorSubgroup";
    case Errc::degenerate_defect: return "DegenerateDefect";
    case Errc::parse_error: return "ParseError";
    case Errc::schema_error: return "SchemaError";
    case Errc::io_error: return "IoError";
    case Errc::internal: return "InternalError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

inline int exit_code_for(Errc c) {
  switch (c) {
    case Errc::parse_error:
    case Errc::schema_error:
    case Errc::unsupported_lambda:
      return 2;
    case Errc::budget_exceeded:
      return 4;
    default:
      return 3;
  }
}

}  // namespace qmx
