#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace sealscript {

/// Base of every recoverable error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A line does not follow the expected field layout.
class FormatError : public Error {
public:
    FormatError(std::string file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), file_(std::move(file)), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

/// Well-formed input that references something that does not exist or repeats an id.
/// Positions are zero-based indices into the sign list as written in the file.
class ValidationError : public Error {
public:
    ValidationError(std::string file, std::size_t line, std::string inscription_id,
                    std::optional<std::size_t> position, const std::string& what)
        : Error(compose(file, line, inscription_id, position, what)),
          file_(std::move(file)),
          line_(line),
          inscription_id_(std::move(inscription_id)),
          position_(position) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& inscription_id() const noexcept { return inscription_id_; }
    std::optional<std::size_t> position() const noexcept { return position_; }

private:
    static std::string compose(const std::string& file, std::size_t line, const std::string& id,
                               std::optional<std::size_t> position, const std::string& what) {
        std::string msg = file;
        if (line > 0) msg += ":" + std::to_string(line);
        msg += ": ";
        if (!id.empty()) {
            msg += "inscription '" + id + "'";
            if (position) msg += " position " + std::to_string(*position);
            msg += ": ";
        }
        return msg + what;
    }

    std::string file_;
    std::size_t line_;
    std::string inscription_id_;
    std::optional<std::size_t> position_;
};

/// A documented precondition was violated by the caller.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A transition probability is undefined (unsmoothed empty row) or zero along a scored path.
class UndefinedProbability : public Error {
public:
    using Error::Error;
};

/// A sign list cannot be read as numeral x counted sign.
class QuantityError : public Error {
public:
    enum class Kind { NotAQuantity, Ambiguous };

    QuantityError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// The grammar admits no non-empty realization.
class GenerationError : public Error {
public:
    using Error::Error;
};

}  // namespace sealscript
