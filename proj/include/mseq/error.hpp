#pragma once

#include <stdexcept>
#include <string>

namespace mseq {

// Raised when an operation is called outside its documented domain
// (zero polynomial where a nonzero one is required, t out of range, ...).
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// A modulus handed to make_field does not generate the full multiplicative group.
class NotPrimitive : public std::invalid_argument {
public:
    explicit NotPrimitive(const std::string& what) : std::invalid_argument(what) {}
};

// Two canonical representations evaluated to the same field element.
class BijectionViolation : public std::logic_error {
public:
    explicit BijectionViolation(const std::string& what) : std::logic_error(what) {}
};

// Something that a theorem guarantees cannot happen did happen.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace mseq
