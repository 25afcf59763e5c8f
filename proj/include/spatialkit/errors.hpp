#pragma once

#include <stdexcept>
#include <string>

namespace spatialkit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter is outside its documented domain.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// An operation received an image of the wrong color space or channel count.
class TypeError : public Error {
public:
    using Error::Error;
};

class ConversionError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    enum class Kind { MissingFile, UnsupportedFormat, MalformedHeader, WriteFailed };

    IoError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// A detector found nothing where the downstream stage needs a feature.
class NoFeatureError : public Error {
public:
    NoFeatureError(std::string stage, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace spatialkit
