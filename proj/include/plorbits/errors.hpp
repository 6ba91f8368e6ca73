#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "plorbits/rational.hpp"

namespace plorbits {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument fell outside the map's domain, or a map construction violated
/// the self-map / ordering invariants.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An exact iterate would need more affine laps than the caller's budget.
/// Signals that the instance is too large for exact analysis; never silently
/// truncated.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::size_t budget, unsigned iterate)
        : Error("lap budget of " + std::to_string(budget) +
                " exceeded while building iterate " + std::to_string(iterate)),
          budget_(budget),
          iterate_(iterate) {}

    std::size_t budget() const { return budget_; }
    unsigned iterate() const { return iterate_; }

private:
    std::size_t budget_;
    unsigned iterate_;
};

/// Some branch of an iterate is exactly the identity on a nondegenerate
/// subinterval, so the fixed-point set is a continuum. Carries the segments;
/// the caller decides how to proceed.
class IdentitySegment : public Error {
public:
    explicit IdentitySegment(std::vector<Interval> segments)
        : Error("identity segment: a continuum of fixed points on " +
                (segments.empty() ? std::string("?")
                                  : to_string(segments.front()))),
          segments_(std::move(segments)) {}

    const std::vector<Interval>& segments() const { return segments_; }

private:
    std::vector<Interval> segments_;
};

class NotPeriodic : public Error {
public:
    using Error::Error;
};

class NoSuchOrbit : public Error {
public:
    using Error::Error;
};

/// The supplied points/successors do not form a genuine orbit of the map.
class MalformedOrbit : public Error {
public:
    using Error::Error;
};

/// The requested walk is not a closed walk of the covering graph.
class NotACycle : public Error {
public:
    using Error::Error;
};

/// The actual map fails to realize a covering required by a walk. The
/// pattern graph is connect-the-dots; real maps can disagree between orbit
/// points.
class CoverageFailure : public Error {
public:
    using Error::Error;
};

/// An exact root required by a min/max witness selection does not exist;
/// usually indicates a violated precondition or a degenerate instance.
class WitnessNotFound : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

/// A surgery would break continuity; carries the offending endpoint.
class ContinuityError : public Error {
public:
    ContinuityError(const Rational& endpoint, const std::string& detail)
        : Error("surgery discontinuous at " + to_string(endpoint) + ": " +
                detail),
          endpoint_(endpoint) {}

    const Rational& endpoint() const { return endpoint_; }

private:
    Rational endpoint_;
};

/// A point required to be an exact fixed point is not.
class NotFixed : public Error {
public:
    explicit NotFixed(const Rational& point)
        : Error(to_string(point) + " is not a fixed point"), point_(point) {}

    const Rational& point() const { return point_; }

private:
    Rational point_;
};

/// Rejected input text; `where` locates the offending element (a JSON path
/// or byte offset).
class ParseError : public Error {
public:
    ParseError(std::string where, const std::string& detail)
        : Error(detail + (where.empty() ? "" : " at " + where)),
          where_(std::move(where)) {}

    const std::string& where() const { return where_; }

private:
    std::string where_;
};

}  // namespace plorbits
