// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asymbft
{

// Base of every exception thrown by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// A fail-prone system violates Q3/B3, so no quorum system can be built.
class ConditionError : public Error
{
  public:
    using Error::Error;
};

// Input exceeds a documented capacity (process count, enumeration cap).
class CapacityError : public Error
{
  public:
    using Error::Error;
};

class ParseError : public Error
{
  public:
    ParseError(std::string const& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position))
        , mPosition(position)
    {
    }

    std::size_t
    position() const
    {
        return mPosition;
    }

  private:
    std::size_t mPosition;
};

// The simulation harness was driven incorrectly (e.g. an adversary tried to
// send with a correct process's identity). Indicates a test bug.
class SimulationFault : public Error
{
  public:
    using Error::Error;
};

} // namespace asymbft
