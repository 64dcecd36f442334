#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dpds/index_set.hpp"
#include "dpds/query_model.hpp"

namespace dpds {

enum class ColumnType { Integer, Real, String, Date };

using Value = std::variant<std::int64_t, double, std::string>;

struct Column {
    std::string name;
    ColumnType type = ColumnType::String;
};

struct Schema {
    std::vector<Column> columns;
    std::optional<std::size_t> index_of(const std::string& name) const;
};

struct Dataset {
    Schema schema;
    std::vector<std::vector<Value>> rows;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// UTF-8, comma-separated, one header row, RFC-4180 quoting.
Dataset load_csv(const std::string& path, const Schema& schema);
Dataset parse_csv(const std::string& text, const Schema& schema);
void write_csv(const Dataset& dataset, const std::string& path);

// Group-by cells the query answers over. Order is lexicographic by value
// tuple and stays fixed for a run; indices are stable.
struct PredicateDomain {
    std::vector<std::string> group_columns;
    std::vector<std::vector<Value>> predicates;
    std::size_t size() const { return predicates.size(); }
};

PredicateDomain enumerate_predicates(const Dataset& dataset,
                                     const std::vector<std::string>& group_columns);
PredicateDomain explicit_predicates(std::vector<std::string> group_columns,
                                    std::vector<std::vector<Value>> tuples);

// Exact (non-private) per-predicate aggregates for one atomic query, clamped
// to its declared value range.
struct GroupAggregates {
    std::string atomic_id;
    std::vector<double> values;  // length k
};

GroupAggregates exact_aggregate(const Dataset& dataset, const AtomicQuery& atomic,
                                const PredicateDomain& domain);

// Atomic query bound to a dataset: exact aggregates plus per-predicate
// thresholds resolved from the scalar-or-list form.
struct BoundAtomic {
    AtomicQuery query;
    std::vector<double> thresholds;  // length k
    GroupAggregates exact;

    double sensitivity() const { return query.aggregate.sensitivity; }
    double range_width() const { return query.value_range.width(); }
};

BoundAtomic bind_atomic(const Dataset& dataset, const AtomicQuery& atomic,
                        const PredicateDomain& domain);

// Ground truth for a single atomic: strict, direction-aware comparison.
IndexSet atomic_truth(const BoundAtomic& atomic);

// Non-private ground truth for the whole tree; this is the testing oracle.
IndexSet true_answer(const CompiledQuery& compiled, const std::vector<BoundAtomic>& bound,
                     const PredicateDomain& domain);

} // namespace dpds
