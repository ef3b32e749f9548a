#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adsplit {

// One named bound violation, e.g. {"v", "v < 2t violated: 1 > 0.8"}.
struct BoundViolation {
    std::string field;
    std::string detail;
};

// Parameter or argument outside its admissible range. Carries every violated
// bound, not just the first one found.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(std::vector<BoundViolation> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<BoundViolation>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<BoundViolation>& v) {
        std::string msg = "out of domain:";
        for (const auto& b : v) {
            msg += " [";
            msg += b.field;
            msg += ": ";
            msg += b.detail;
            msg += "]";
        }
        return msg;
    }

    std::vector<BoundViolation> violations_;
};

// Purchase cutoffs failed the required ordering 0 < z_B < z_AB < z_A < 1.
struct ThresholdOrderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Root finder was handed an interval without a sign change.
struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite-difference step would leave the valid parameter domain.
struct StepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A search grid does not contain the point it is supposed to bracket.
struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Derivative signs at the precision bounds contradict the expected structure
// (ad-fee derivative should be negative, commission derivative positive).
struct DegenerateThresholdsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace adsplit
