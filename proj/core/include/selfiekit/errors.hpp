// Copyright Contributors to the selfiekit Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace selfiekit {

/// Base class for all selfiekit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An argument violates a documented precondition (bad shape, empty input, ...).
class InvalidInputError : public Error {
public:
    explicit InvalidInputError(const std::string& msg) : Error(msg) {}
};

/// A geometric configuration admits no unique solution (collinear points,
/// singular matrix, coincident landmarks, point at the camera center).
class DegenerateError : public Error {
public:
    explicit DegenerateError(const std::string& msg) : Error(msg) {}
};

/// Fewer data points than the estimator needs.
class InsufficientDataError : public Error {
public:
    explicit InsufficientDataError(const std::string& msg) : Error(msg) {}
};

/// A selfie could not be simulated for this image/part; the pair is skipped.
class SimulationFailureError : public Error {
public:
    explicit SimulationFailureError(const std::string& msg) : Error(msg) {}
};

/// A required feature was absent from the input (e.g. no person pixels).
class NotFoundError : public Error {
public:
    explicit NotFoundError(const std::string& msg) : Error(msg) {}
};

/// File or stream level failure.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace selfiekit
