#pragma once

#include <stdexcept>

namespace gliders {

/// A caller broke an operation's precondition (bad argument, bad shape).
class ContractError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A window or walk does not cover the indices an operation needs.
class DomainError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

}  // namespace gliders
