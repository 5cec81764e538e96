#ifndef CAKECUT_ORACLE_HPP
#define CAKECUT_ORACLE_HPP

#include <iosfwd>
#include <vector>

#include "cakecut/valuation.hpp"

namespace cakecut {

enum class QueryKind { Eval, Cut };

struct QueryRecord {
    int agent;  // 0-based
    QueryKind kind;
    double arg0, arg1;
    double answer;
};

/// Append-only transcript of Robertson-Webb queries issued during one run.
class QueryLog {
public:
    int eval_count() const { return eval_count_; }
    int cut_count() const { return cut_count_; }
    const std::vector<QueryRecord>& transcript() const { return records_; }

    /// One query per line: agent (1-based), kind, args, answer.
    void write_transcript(std::ostream& os) const;

    void record(QueryRecord r);

private:
    int eval_count_ = 0;
    int cut_count_ = 0;
    std::vector<QueryRecord> records_;
};

struct SupportTriple {
    double l, p, r;
};

struct RecoveredShape {
    double p, h, k;
};

/// Robertson-Webb query front end over a cake instance. Mechanisms interact
/// with agents exclusively through this class; every query is counted and
/// transcribed. A QueryLog belongs to a single run; independent runs may
/// execute concurrently.
class RwOracle {
public:
    explicit RwOracle(const CakeInstance& instance) : instance_(&instance) {}

    double rw_eval(int agent, double x, double y);
    double rw_cut(int agent, double x, double target);

    /// Identifies (l, p, r) for one agent from exactly two cut queries (the
    /// 1/4 and 3/4 quantile points), by case analysis over the truncation
    /// patterns of the triangle. Throws RecoveryAmbiguous if several
    /// parameter sets reproduce both quantiles.
    SupportTriple recover_structure(int agent);

    /// Completes (p, h, k) from a recovered support triple. Free when the
    /// support is truncated on at most one side (normalization pins the
    /// shape); needs two eval queries when the support is all of [0,1].
    RecoveredShape recover_shape(int agent, const SupportTriple& t);

    const QueryLog& log() const { return log_; }
    int n() const { return instance_->n(); }

private:
    const CakeInstance* instance_;
    QueryLog log_;
};

}  // namespace cakecut

#endif
