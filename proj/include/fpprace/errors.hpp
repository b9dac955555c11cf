#pragma once

#include <stdexcept>
#include <string>

namespace fpprace {

/// Invalid user-supplied parameters (model, laws, plans, config files).
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, std::string const &what)
{
  if (!cond) throw ContractViolation(what);
}

} // namespace fpprace
