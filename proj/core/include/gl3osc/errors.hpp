#pragma once
// Exception taxonomy shared by all modules.  The CLI maps these onto its
// exit-code contract (0 ok, 2 input/format, 3 config window, 4 budget).

#include <stdexcept>
#include <string>

namespace gl3osc {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Adaptive quadrature gave up before reaching the requested tolerance.
struct QuadratureNonConvergence : Error {
    explicit QuadratureNonConvergence(const std::string& msg) : Error(msg) {}
};

// min |f^(r)| vanished on the sampled grid, so the derivative test is void.
struct DegenerateDerivative : Error {
    explicit DegenerateDerivative(const std::string& msg) : Error(msg) {}
};

struct StationaryPointInside : Error {
    explicit StationaryPointInside(const std::string& msg) : Error(msg) {}
};

struct NoInteriorStationaryPoint : Error {
    explicit NoInteriorStationaryPoint(const std::string& msg) : Error(msg) {}
};

struct NonPositiveSecondDerivative : Error {
    explicit NonPositiveSecondDerivative(const std::string& msg) : Error(msg) {}
};

struct PoleEncountered : Error {
    explicit PoleEncountered(const std::string& msg) : Error(msg) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

struct NormalizationError : Error {
    explicit NormalizationError(const std::string& msg) : Error(msg) {}
};

struct InsufficientData : Error {
    explicit InsufficientData(const std::string& msg) : Error(msg) {}
};

struct ContourOutOfRange : Error {
    explicit ContourOutOfRange(const std::string& msg) : Error(msg) {}
};

// Desk-scale guard tripped: projected work exceeds the configured cap.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

// Parameter outside the admissible window (e.g. Q vs N,t constraints).
struct WindowViolation : Error {
    explicit WindowViolation(const std::string& msg) : Error(msg) {}
};

}  // namespace gl3osc
