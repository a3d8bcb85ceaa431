#pragma once

#include <stdexcept>
#include <string>

namespace vbscore {

// Base class for all toolkit errors. Subclasses exist so callers can
// distinguish failure modes without parsing messages.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- input / file validation ---

class MalformedLine : public Error {
public:
    MalformedLine(const std::string& path, size_t line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": malformed line: " + what),
          line_number(line) {}
    size_t line_number;
};

class MissingField : public Error {
public:
    MissingField(const std::string& path, size_t line, const std::string& field)
        : Error(path + ":" + std::to_string(line) + ": missing field `" + field + "`"),
          line_number(line), field_name(field) {}
    size_t line_number;
    std::string field_name;
};

class DuplicateId : public Error {
public:
    DuplicateId(const std::string& path, size_t line, const std::string& id)
        : Error(path + ":" + std::to_string(line) + ": duplicate id `" + id + "`"),
          line_number(line), id(id) {}
    size_t line_number;
    std::string id;
};

class UnknownSampleId : public Error {
public:
    UnknownSampleId(const std::string& path, size_t line, const std::string& id)
        : Error(path + ":" + std::to_string(line) + ": sample_id `" + id +
                "` does not resolve against the loaded dataset"),
          line_number(line), id(id) {}
    size_t line_number;
    std::string id;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class IOFailure : public Error {
public:
    using Error::Error;
};

// --- text / scoring ---

class EmptyAfterNormalization : public Error {
public:
    explicit EmptyAfterNormalization(const std::string& raw)
        : Error("entity is empty after normalization: `" + raw + "`") {}
};

class EmptyGeneration : public Error {
public:
    EmptyGeneration() : Error("generated text contains no sentences") {}
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(size_t a, size_t b)
        : Error("embedding dimensions differ: " + std::to_string(a) + " vs " +
                std::to_string(b)) {}
};

class ZeroVector : public Error {
public:
    ZeroVector() : Error("embedding has zero norm") {}
};

// --- statistics ---

class EmptyInput : public Error {
public:
    EmptyInput() : Error("statistic requires at least one value") {}
};

class DegenerateDifferences : public Error {
public:
    DegenerateDifferences()
        : Error("paired differences are a nonzero constant (zero variance)") {}
};

class ZeroPooledSD : public Error {
public:
    ZeroPooledSD() : Error("pooled standard deviation is zero") {}
};

class SingleStratum : public Error {
public:
    SingleStratum() : Error("stratified comparison needs at least two nonempty strata") {}
};

class MismatchedSampleSets : public Error {
public:
    explicit MismatchedSampleSets(const std::string& detail)
        : Error("models were scored on different sample sets: " + detail) {}
};

// --- backends ---

class BackendUnavailable : public Error {
public:
    explicit BackendUnavailable(const std::string& detail)
        : Error("backend unavailable: " + detail) {}
};

class BackendProtocolError : public Error {
public:
    explicit BackendProtocolError(const std::string& detail)
        : Error("backend protocol error: " + detail) {}
};

class AuthenticationError : public Error {
public:
    explicit AuthenticationError(const std::string& detail)
        : Error("authentication failed: " + detail) {}
};

class RateLimited : public Error {
public:
    explicit RateLimited(const std::string& detail)
        : Error("rate limited: " + detail) {}
};

class MissingContext : public Error {
public:
    MissingContext() : Error("RAG prompt configuration requires nonempty context") {}
};

}  // namespace vbscore
