#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dpds {

// ---------------------------------------------------------------------------
// Atomic aggregate-threshold queries and the AND/OR trees built over them.
// ---------------------------------------------------------------------------

enum class AggregateKind { CountStar, CountDistinct, Sum, Avg };

struct AggregateSpec {
    AggregateKind kind = AggregateKind::CountStar;
    std::string column;   // unused for CountStar
    double sensitivity = 1.0;

    void validate() const;
};

enum class Comparator { Eq, Ne, Lt, Le, Gt, Ge };

struct FilterClause {
    std::string column;
    Comparator op = Comparator::Eq;
    // literal typed at bind time against the column
    std::string literal;
};

// Conjunctive selection condition over dataset columns.
using Filter = std::vector<FilterClause>;

enum class Direction { Greater, Less };

struct ValueRange {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

// One aggregate-threshold sub-query. Thresholds are either a scalar broadcast
// over every predicate or an explicit per-predicate list resolved at bind time.
struct AtomicQuery {
    std::string id;
    AggregateSpec aggregate;
    Filter filter;
    std::variant<double, std::vector<double>> thresholds = 0.0;
    Direction direction = Direction::Greater;
    ValueRange value_range;

    void validate() const;
};

// Binary AND/OR tree over atomic-query ids.
struct QueryNode;
using QueryNodePtr = std::shared_ptr<const QueryNode>;

struct QueryNode {
    enum class Kind { Leaf, And, Or };
    Kind kind = Kind::Leaf;
    std::string atomic_id;  // Leaf only
    QueryNodePtr left, right;

    static QueryNodePtr leaf(std::string id) {
        auto n = std::make_shared<QueryNode>();
        n->kind = Kind::Leaf;
        n->atomic_id = std::move(id);
        return n;
    }
    static QueryNodePtr branch(Kind k, QueryNodePtr l, QueryNodePtr r) {
        auto n = std::make_shared<QueryNode>();
        n->kind = k;
        n->left = std::move(l);
        n->right = std::move(r);
        return n;
    }
};

class QueryTree {
public:
    QueryTree() = default;
    explicit QueryTree(QueryNodePtr root) : root_(std::move(root)) {}
    const QueryNodePtr& root() const { return root_; }
    bool valid() const { return root_ != nullptr; }

    // distinct atomic ids in first-appearance (pre-order) order
    std::vector<std::string> distinct_atomics() const;
    std::size_t leaf_count() const;

private:
    QueryNodePtr root_;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// Grammar: expr := term (OR term)* ; term := factor (AND factor)* ;
// factor := id | '(' expr ')'. AND binds tighter than OR, both left-associative.
QueryTree parse_query(const std::string& text, const std::vector<std::string>& known_ids);

// Minimal-parenthesis form; reparsing the output yields an identical tree.
std::string pretty_print(const QueryTree& tree);

bool evaluate_truth(const QueryTree& tree, const std::map<std::string, bool>& assignment);

// Minimized query plus the leaf-occurrence counts the budget apportionment needs.
struct CompiledQuery {
    QueryTree tree;
    std::vector<std::string> atomic_ids;   // distinct, in first-appearance order of the minimized tree
    std::vector<int> occurrences;          // o_i, aligned with atomic_ids
};

// Quine-McCluskey minimization to a sum-of-products tree, re-binarized
// right-leaning. Requires <= 16 distinct atomics. With minimize=false the
// source tree is compiled as-is (occurrences still counted).
CompiledQuery compile_tree(const QueryTree& tree, bool minimize = true);
CompiledQuery minimize_tree(const QueryTree& tree);

} // namespace dpds
