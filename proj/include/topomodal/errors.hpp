#pragma once

#include <stdexcept>
#include <string>

namespace topomodal
{

/// Malformed topological data: a family that is not a topology, a foreign
/// point, a relation that is not a preorder.
class TopologyError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A search or enumeration was asked to exceed its configured size bound.
class GuardError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation failure, e.g. a variable without a valuation.
class EvalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace topomodal
