#pragma once

#include <stdexcept>
#include <string>

namespace ctx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CTX_DECLARE_ERROR(Name)                 \
    class Name : public Error {                 \
    public:                                     \
        using Error::Error;                     \
    };

CTX_DECLARE_ERROR(NonUnitBloch)
CTX_DECLARE_ERROR(DimensionMismatch)
CTX_DECLARE_ERROR(NotHermitian)
CTX_DECLARE_ERROR(UnknownKind)
CTX_DECLARE_ERROR(InvalidN)
CTX_DECLARE_ERROR(ValidationError)
CTX_DECLARE_ERROR(TooLarge)
CTX_DECLARE_ERROR(NoEquivalences)
CTX_DECLARE_ERROR(EmptyPolytope)
CTX_DECLARE_ERROR(OutOfRange)

#undef CTX_DECLARE_ERROR

/// Malformed scenario text. Carries the offending location.
class ParseError : public Error {
public:
    ParseError(const std::string& field, const std::string& what, std::size_t line = 0)
        : Error(format(field, what, line)), field_(field), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& field, const std::string& what, std::size_t line) {
        std::string msg = "parse error";
        if (line != 0) msg += " at line " + std::to_string(line);
        if (!field.empty()) msg += " in '" + field + "'";
        return msg + ": " + what;
    }

    std::string field_;
    std::size_t line_;
};

}  // namespace ctx
