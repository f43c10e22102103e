#pragma once

#include <stdexcept>
#include <string>

namespace stairtile {

enum class ErrorKind {
    BadParameters,
    NonCubeAligned,
    EmptyUnion,
    UnknownRule,
    NotASuffix,
    GammaOutOfRange,
    NotPrimitive,
    NoConvergence,
    WordTooLong,
    ConfigParse,
    ScenarioUnknown,
    AssertionFailed,
    IoFailure,
};

const char* error_kind_name(ErrorKind kind);

struct Error : std::runtime_error {
    ErrorKind kind;

    Error(ErrorKind k, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(k)) + ": " + what), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace stairtile
