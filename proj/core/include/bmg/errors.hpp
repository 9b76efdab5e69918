#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bmg {

/// Machine-readable failure kinds shared by the game engine and the
/// structure layer. Strategy and construction errors surface either as a
/// thrown GameError or as a Failure value, depending on whether the
/// condition is expected in normal use (amalgamation of non-amalgamable
/// classes) or indicates a broken play.
enum class Fault {
  StrategyViolation,
  WitnessInvalid,
  EmptyLevel,
  NotABranch,
  NoCompatibleChild,
  NoCofinalWitness,
  NoJoin,
  AmalgamationFailure,
  RealizeFailure,
  DegreeExceeded,
  CycleDetected,
  InvalidArgument,
};

inline std::string_view fault_name(Fault f) {
  switch (f) {
    case Fault::StrategyViolation: return "STRATEGY_VIOLATION";
    case Fault::WitnessInvalid: return "WITNESS_INVALID";
    case Fault::EmptyLevel: return "EMPTY_LEVEL";
    case Fault::NotABranch: return "NOT_A_BRANCH";
    case Fault::NoCompatibleChild: return "NO_COMPATIBLE_CHILD";
    case Fault::NoCofinalWitness: return "NO_COFINAL_WITNESS";
    case Fault::NoJoin: return "NO_JOIN";
    case Fault::AmalgamationFailure: return "AMALGAMATION_FAILURE";
    case Fault::RealizeFailure: return "REALIZE_FAILURE";
    case Fault::DegreeExceeded: return "DEGREE_EXCEEDED";
    case Fault::CycleDetected: return "CYCLE_DETECTED";
    case Fault::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

class GameError : public std::runtime_error {
 public:
  GameError(Fault fault, std::string detail, int move_index = -1)
      : std::runtime_error(std::string(fault_name(fault)) + ": " + detail),
        fault_(fault),
        detail_(std::move(detail)),
        move_index_(move_index) {}

  Fault fault() const { return fault_; }
  const std::string& detail() const { return detail_; }
  /// Index of the offending move in the transcript, or -1.
  int move_index() const { return move_index_; }

 private:
  Fault fault_;
  std::string detail_;
  int move_index_;
};

/// Value-level failure, used where a typed failure is an ordinary result
/// (e.g. amalgamation in a class without the amalgamation property).
struct Failure {
  Fault fault;
  std::string detail;
};

}  // namespace bmg
