#include "crownlab/errors.hpp"

#include <sstream>

namespace crownlab {

namespace {

std::string fmt_minor(std::size_t index, double magnitude) {
  std::ostringstream os;
  os.precision(6);
  os << "near-singular leading minor: |Delta_" << index << "| = " << magnitude;
  return os.str();
}

std::string fmt_exit(double last_good_t, double attempted_t, double min_minor) {
  std::ostringstream os;
  os.precision(10);
  os << "domain exit near t=" << attempted_t << " (last good t=" << last_good_t
     << ", smallest minor magnitude " << min_minor << ")";
  return os.str();
}

std::string fmt_branch(double t, double jump) {
  std::ostringstream os;
  os.precision(10);
  os << "branch ambiguity at t=" << t << ": argument jump " << jump
     << " rad survives refinement";
  return os.str();
}

}  // namespace

NearSingularMinor::NearSingularMinor(std::size_t index, double magnitude)
    : DomainError(fmt_minor(index, magnitude)), index_(index), magnitude_(magnitude) {}

DomainExit::DomainExit(double last_good_t, double attempted_t, double min_minor)
    : DomainError(fmt_exit(last_good_t, attempted_t, min_minor)),
      last_good_t_(last_good_t),
      attempted_t_(attempted_t) {}

BranchAmbiguity::BranchAmbiguity(double t, double arg_jump)
    : DomainError(fmt_branch(t, arg_jump)), t_(t) {}

OrderUndetermined::OrderUndetermined(int cap)
    : DomainError("order undetermined: all Taylor coefficients up to order " +
                  std::to_string(cap) + " vanish within tolerance") {}

}  // namespace crownlab
