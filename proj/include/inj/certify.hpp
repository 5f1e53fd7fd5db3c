#ifndef INJ_CERTIFY_HPP
#define INJ_CERTIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "inj/oracle.hpp"

namespace inj {

enum class Verdict { Certified, Unknown, Refuted };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "CERTIFIED";
        case Verdict::Unknown: return "UNKNOWN";
        case Verdict::Refuted: return "REFUTED";
    }
    return "UNKNOWN";
}

struct CriterionAnww {
    double gamma = 0.0;
};
struct CriterionMocanu {
    double gamma = 0.0;
    MocanuVariant variant = MocanuVariant::Standard;
};
struct CriterionEq3 {
    WitnessPair w;
};
struct CriterionSylvester {
    LinearOperator a;
    MinorSign sign = MinorSign::Positive;
};

using Criterion = std::variant<CriterionAnww, CriterionMocanu, CriterionEq3, CriterionSylvester>;

const char* criterion_tag(const Criterion& c);

struct Budget {
    int max_depth = 24;
    std::uint64_t max_boxes = 1000000;
};

struct CertifyOptions {
    Budget budget;
    OracleOptions oracle;  // drives the collision search on the refutation path
    bool parallel = true;
};

// The verdict object.  CERTIFIED is rigorous (every leaf box verified with
// a positive interval lower bound), REFUTED is witnessed by a re-verified
// collision pair, UNKNOWN is inconclusive and never asserts non-injectivity.
struct Certificate {
    Verdict verdict = Verdict::Unknown;
    std::string criterion;
    std::optional<double> margin_lower_bound;  // min over leaves when certified
    std::uint64_t boxes_processed = 0;
    int max_depth_reached = 0;
    std::optional<Collision> refutation;
    double wall_time_seconds = 0.0;
    std::string note;  // explanation for inconclusive outcomes
};

// Interval margin of the criterion over one box.
Margin verify_box(const MapSpec& m, const Criterion& c, const Box& b);

// Adaptive subdivision over the whole domain: verify every box, bisecting
// the widest dimension (ties to the lowest index) until the budget runs
// out.  A box whose margin upper bound is negative disproves the criterion
// (not injectivity); the collision oracle then decides between REFUTED and
// UNKNOWN.  The certificate is independent of worker count.
Certificate certify(const MapSpec& m, const Criterion& c, const CertifyOptions& opts);

// Plain-loop reference implementation with identical semantics.
Certificate certify_serial(const MapSpec& m, const Criterion& c, const CertifyOptions& opts);

} // namespace inj

#endif
