#pragma once

#include <stdexcept>
#include <string>

namespace mfrisk
{
//! Base class for every library error. \c kind() names the failure class.
class Error : public std::runtime_error
{
  public:
    Error(std::string kind, std::string const& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind))
    {
    }
    std::string const& kind() const noexcept { return kind_; }

    //! Config-type errors map to CLI exit code 2, the rest to 3.
    virtual bool is_config_error() const noexcept { return false; }

  private:
    std::string kind_;
};

#define MFRISK_DEFINE_ERROR(Name)                                          \
    class Name : public Error                                              \
    {                                                                      \
      public:                                                              \
        explicit Name(std::string const& what) : Error(#Name, what) {}     \
    }

MFRISK_DEFINE_ERROR(DomainError);
MFRISK_DEFINE_ERROR(NonConvergence);
MFRISK_DEFINE_ERROR(GridError);
MFRISK_DEFINE_ERROR(NumericalInstability);
MFRISK_DEFINE_ERROR(RangeError);
MFRISK_DEFINE_ERROR(ExtendNeeded);
MFRISK_DEFINE_ERROR(FitError);
MFRISK_DEFINE_ERROR(NotSubexponential);
MFRISK_DEFINE_ERROR(CrossCheckFailure);

#undef MFRISK_DEFINE_ERROR

//! Claim model mean does not match the risk configuration.
class ConfigMismatch : public Error
{
  public:
    explicit ConfigMismatch(std::string const& what)
        : Error("ConfigMismatch", what)
    {
    }
    bool is_config_error() const noexcept override { return true; }
};

//! Invalid or incomplete experiment configuration.
class ConfigError : public Error
{
  public:
    explicit ConfigError(std::string const& what) : Error("ConfigError", what)
    {
    }
    bool is_config_error() const noexcept override { return true; }
};

}  // namespace mfrisk
