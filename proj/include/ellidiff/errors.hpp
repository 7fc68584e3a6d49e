#ifndef ELLIDIFF_ERRORS_HPP
#define ELLIDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ellidiff
{

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A theta-type series needed more terms than the modulus allows.
class TruncationOverflow : public Error
{
public:
    using Error::Error;
};

/// A denominator came within the pole-rejection floor.
///
/// Samplers catch this and redraw; it is never silently swallowed elsewhere.
class PoleProximity : public Error
{
public:
    using Error::Error;
};

class InvalidArgument : public Error
{
public:
    using Error::Error;
};

/// Two operators built over different step sizes or moduli were combined.
class ModulusMismatch : public Error
{
public:
    using Error::Error;
};

/// van Diejen parameters violating the balancing condition.
class ConstraintViolation : public Error
{
public:
    using Error::Error;
};

/// A small linear solve was too ill-conditioned to trust.
class IllConditioned : public Error
{
public:
    using Error::Error;
};

/// The pole-avoiding sampler ran out of retries.
class SamplerExhausted : public Error
{
public:
    using Error::Error;
};

class ConfigError : public Error
{
public:
    using Error::Error;
};

} // namespace ellidiff

#endif
