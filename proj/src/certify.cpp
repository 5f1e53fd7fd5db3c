#include "inj/certify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace inj {

namespace {

struct WorkItem {
    Box box;
    int depth = 0;
};

enum class BoxStatus { Verified, Failed, Straddle, NotHolomorphic, EvalError };

struct BoxOutcome {
    BoxStatus status = BoxStatus::EvalError;
    Interval margin{};
    std::string error;
};

BoxOutcome evaluate_box(const MapSpec& m, const Criterion& c, const Box& b) {
    BoxOutcome out;
    try {
        const Margin margin = verify_box(m, c, b);
        out.margin = margin.value;
        if (margin.value.lo > 0.0)
            out.status = BoxStatus::Verified;
        else if (margin.value.hi < 0.0)
            out.status = BoxStatus::Failed;
        else
            out.status = BoxStatus::Straddle;
    } catch (const NotHolomorphic& e) {
        out.status = BoxStatus::NotHolomorphic;
        out.error = e.what();
    } catch (const Error& e) {
        out.status = BoxStatus::EvalError;
        out.error = e.what();
    }
    return out;
}

void validate_criterion(const MapSpec& m, const Criterion& c) {
    if (std::holds_alternative<CriterionSylvester>(c)) {
        require_nonsingular(std::get<CriterionSylvester>(c).a);
        return;
    }
    if (m.kind != MapSpec::Kind::ComplexFunction)
        throw DimensionMismatch("this criterion applies to complex functions only");
    if (const auto* eq3 = std::get_if<CriterionEq3>(&c); eq3 && !eq3->w.valid())
        throw DegenerateWitness();
}

Certificate certify_impl(const MapSpec& m, const Criterion& c, const CertifyOptions& opts,
                         bool parallel) {
    if (opts.budget.max_depth < 0 || opts.budget.max_boxes < 1) throw BudgetMisconfigured();
    validate_criterion(m, c);

    const auto t0 = std::chrono::steady_clock::now();
    Certificate cert;
    cert.criterion = criterion_tag(c);

    std::vector<WorkItem> queue;
    queue.push_back({m.domain, 0});

    double global_min = std::numeric_limits<double>::infinity();
    bool definite_fail = false;
    bool out_of_depth = false;
    std::string eval_note;

    while (!queue.empty()) {
        // Trim the wave to the box budget.
        std::uint64_t wave_size = queue.size();
        bool budget_clip = false;
        if (cert.boxes_processed + wave_size > opts.budget.max_boxes) {
            wave_size = opts.budget.max_boxes - cert.boxes_processed;
            budget_clip = true;
        }
        if (wave_size == 0) break;

        std::vector<BoxOutcome> outcomes(wave_size);
        if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(wave_size); ++i)
                outcomes[static_cast<std::size_t>(i)] =
                    evaluate_box(m, c, queue[static_cast<std::size_t>(i)].box);
        } else {
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(wave_size); ++i)
                outcomes[static_cast<std::size_t>(i)] =
                    evaluate_box(m, c, queue[static_cast<std::size_t>(i)].box);
        }

        std::vector<WorkItem> next;
        bool not_holomorphic = false;
        for (std::uint64_t i = 0; i < wave_size; ++i) {
            const WorkItem& item = queue[static_cast<std::size_t>(i)];
            const BoxOutcome& out = outcomes[static_cast<std::size_t>(i)];
            cert.max_depth_reached = std::max(cert.max_depth_reached, item.depth);
            switch (out.status) {
                case BoxStatus::Verified:
                    global_min = std::min(global_min, out.margin.lo);
                    break;
                case BoxStatus::Failed:
                    definite_fail = true;
                    break;
                case BoxStatus::NotHolomorphic:
                    not_holomorphic = true;
                    eval_note = out.error;
                    break;
                case BoxStatus::EvalError:
                case BoxStatus::Straddle:
                    if (item.depth >= opts.budget.max_depth) {
                        out_of_depth = true;
                        if (out.status == BoxStatus::EvalError) eval_note = out.error;
                    } else {
                        auto [a, b] = item.box.split(item.box.widest_dim());
                        next.push_back({std::move(a), item.depth + 1});
                        next.push_back({std::move(b), item.depth + 1});
                    }
                    break;
            }
        }
        cert.boxes_processed += wave_size;

        if (not_holomorphic) {
            cert.verdict = Verdict::Unknown;
            cert.note = eval_note;
            cert.wall_time_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return cert;
        }
        if (definite_fail) break;
        if (budget_clip) {
            out_of_depth = true;  // unprocessed boxes remain
            break;
        }
        queue = std::move(next);
        if (cert.boxes_processed >= opts.budget.max_boxes && !queue.empty()) {
            out_of_depth = true;
            break;
        }
    }

    if (definite_fail) {
        // The criterion definitely fails somewhere.  That never disproves
        // injectivity; only a genuine collision does.
        OracleOptions oracle = opts.oracle;
        oracle.parallel = parallel;
        const std::optional<Collision> col = parallel
                                                 ? find_collision(m, m.domain, oracle)
                                                 : find_collision_serial(m, m.domain, oracle);
        bool refuted = false;
        if (col) {
            // Independent re-verification of the reported pair.
            const std::vector<double> f1 = eval_map(m, col->x1);
            const std::vector<double> f2 = eval_map(m, col->x2);
            double gap = 0.0, sep = 0.0;
            for (std::size_t d = 0; d < f1.size(); ++d) {
                gap += (f1[d] - f2[d]) * (f1[d] - f2[d]);
            }
            for (std::size_t d = 0; d < col->x1.size(); ++d)
                sep += (col->x1[d] - col->x2[d]) * (col->x1[d] - col->x2[d]);
            gap = std::sqrt(gap);
            sep = std::sqrt(sep);
            if (gap <= kCollisionTol && sep >= kSeparationMin) refuted = true;
        }
        if (refuted) {
            cert.verdict = Verdict::Refuted;
            cert.refutation = col;
        } else {
            cert.verdict = Verdict::Unknown;
            cert.note =
                "criterion margin is negative on a sub-box, but the collision search "
                "found no counterexample";
        }
    } else if (out_of_depth) {
        cert.verdict = Verdict::Unknown;
        cert.note = eval_note.empty()
                        ? "subdivision budget exhausted before every box was verified"
                        : "box evaluation failed: " + eval_note;
    } else {
        cert.verdict = Verdict::Certified;
        cert.margin_lower_bound = global_min;
    }
    cert.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cert;
}

} // namespace

const char* criterion_tag(const Criterion& c) {
    if (std::holds_alternative<CriterionAnww>(c)) return "anww";
    if (std::holds_alternative<CriterionEq3>(c)) return "eq3";
    if (std::holds_alternative<CriterionSylvester>(c)) return "sylvester";
    return std::get<CriterionMocanu>(c).variant == MocanuVariant::Standard
               ? "mocanu"
               : "mocanu_conjugate";
}

Margin verify_box(const MapSpec& m, const Criterion& c, const Box& b) {
    return std::visit(
        [&](const auto& crit) -> Margin {
            using T = std::decay_t<decltype(crit)>;
            if constexpr (std::is_same_v<T, CriterionAnww>) {
                return anww_margin(m, crit.gamma, b);
            } else if constexpr (std::is_same_v<T, CriterionMocanu>) {
                return mocanu_margin(m, crit.gamma, crit.variant, b);
            } else if constexpr (std::is_same_v<T, CriterionEq3>) {
                return eq3_margin(m, crit.w, b);
            } else {
                return sylvester_margin(m, crit.a, b, crit.sign);
            }
        },
        c);
}

Certificate certify(const MapSpec& m, const Criterion& c, const CertifyOptions& opts) {
    return certify_impl(m, c, opts, opts.parallel);
}

Certificate certify_serial(const MapSpec& m, const Criterion& c, const CertifyOptions& opts) {
    return certify_impl(m, c, opts, false);
}

} // namespace inj
