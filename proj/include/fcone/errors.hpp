#pragma once

#include <stdexcept>
#include <string>

namespace fcone {

// every failure mode gets its own type so callers can catch exactly what they
// can handle and tests can assert on the condition, not on message text.

#define FCONE_ERROR(Name)                                                  \
    class Name : public std::runtime_error {                               \
    public:                                                                \
        explicit Name(const std::string& what = #Name)                     \
            : std::runtime_error(what) {}                                  \
    }

FCONE_ERROR(ParseError);
FCONE_ERROR(SchemaError);

FCONE_ERROR(MalformedProgram);

FCONE_ERROR(EmptyGenerators);
FCONE_ERROR(DimensionMismatch);
FCONE_ERROR(EmptySet);

FCONE_ERROR(NotInOrderError);
FCONE_ERROR(DichotomyViolation);
FCONE_ERROR(EmptySupport);
FCONE_ERROR(PointOutside);

FCONE_ERROR(SectionHypothesisViolated);

FCONE_ERROR(MassMismatch);
FCONE_ERROR(NotLipschitz);
FCONE_ERROR(InvalidMetric);

FCONE_ERROR(DisconnectedInterior);
FCONE_ERROR(StartOnBoundary);
FCONE_ERROR(DomainsAdjacent);
FCONE_ERROR(AmbiguousBoundary);
FCONE_ERROR(UnknownScenario);
FCONE_ERROR(NotPlanar);

#undef FCONE_ERROR

}  // namespace fcone
