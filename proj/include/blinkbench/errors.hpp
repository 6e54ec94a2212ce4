#pragma once

#include <stdexcept>
#include <string>

namespace blinkbench {

// Base class for malformed or out-of-contract input data.
// The CLI maps these to exit code 3; programming-contract violations
// (bad argument ranges) use std::invalid_argument instead.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public DataError {
public:
    explicit ParseError(const std::string& msg) : DataError("parse error: " + msg) {}
};

// Header parsed fine but the data section holds zero rows.
class EmptyData : public DataError {
public:
    explicit EmptyData(const std::string& msg) : DataError("empty data: " + msg) {}
};

class RaggedRow : public DataError {
public:
    explicit RaggedRow(const std::string& msg) : DataError("ragged row: " + msg) {}
};

// A channel has zero sum of squares over the selected subset.
class DegenerateChannel : public DataError {
public:
    explicit DegenerateChannel(const std::string& msg) : DataError("degenerate channel: " + msg) {}
};

class EmptySubset : public DataError {
public:
    explicit EmptySubset(const std::string& msg) : DataError("empty subset: " + msg) {}
};

// Correlation requires zero-centered input channels.
class NotCentered : public DataError {
public:
    explicit NotCentered(const std::string& msg) : DataError("not centered: " + msg) {}
};

class InsufficientTransitions : public DataError {
public:
    explicit InsufficientTransitions(const std::string& msg)
        : DataError("insufficient transitions: " + msg) {}
};

class SingleClass : public DataError {
public:
    explicit SingleClass(const std::string& msg) : DataError("single class: " + msg) {}
};

}  // namespace blinkbench
