#pragma once

#include <stdexcept>

namespace ptthermo {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class NonFiniteError : public Error {
public:
    using Error::Error;
};

// Eigenbasis too ill-conditioned to trust; physically the neighbourhood of an
// exceptional point.
class NearDefectiveError : public Error {
public:
    using Error::Error;
};

class NotPsdError : public Error {
public:
    using Error::Error;
};

class InvalidStateError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class ExceptionalPointError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class BrokenPhaseError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class NonPhysicalError : public Error {
public:
    using Error::Error;
};

// Malformed run configuration (unknown key, wrong type, bad override).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace ptthermo
