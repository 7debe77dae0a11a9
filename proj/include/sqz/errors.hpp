#pragma once

#include <stdexcept>
#include <string>

namespace sqz {

// Argument outside the mathematical domain of an operation (negative
// variance, efficiency outside [0,1], non-power-of-two length, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Pump ratio at or above the oscillation threshold.
class ThresholdError : public DomainError {
public:
    using DomainError::DomainError;
};

// Dark-noise subtraction would leave a nonpositive variance.
class CorrectionUnderflow : public DomainError {
public:
    CorrectionUnderflow(double freq_hz, const std::string& what)
        : DomainError(what), freq_hz_(freq_hz) {}
    double frequency() const noexcept { return freq_hz_; }

private:
    double freq_hz_;
};

// Malformed binary or text file. offset() is the byte offset of the
// first offending field.
class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t offset, const std::string& what)
        : std::runtime_error(what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration. key() is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace sqz
