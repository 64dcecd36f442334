#include "dpds/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dpds {

std::optional<std::size_t> Schema::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == name) return i;
    return std::nullopt;
}

namespace {

// RFC-4180 field splitting; returns one record per row, handling quoted
// fields with embedded commas, quotes and newlines.
std::vector<std::vector<std::string>> split_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool row_has_content = false;

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            row_has_content = true;
            break;
        case ',':
            fields.push_back(std::move(field));
            field.clear();
            row_has_content = true;
            break;
        case '\r':
            break;
        case '\n':
            if (row_has_content || !field.empty() || !fields.empty()) {
                fields.push_back(std::move(field));
                field.clear();
                records.push_back(std::move(fields));
                fields.clear();
            }
            row_has_content = false;
            break;
        default:
            field += c;
            row_has_content = true;
        }
    }
    if (row_has_content || !field.empty() || !fields.empty()) {
        fields.push_back(std::move(field));
        records.push_back(std::move(fields));
    }
    return records;
}

bool looks_like_date(const std::string& s) {
    // YYYY-MM-DD
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Value parse_value(const std::string& text, ColumnType type, std::size_t row,
                  const std::string& column) {
    auto fail = [&](const char* what) -> Value {
        throw DataError("row " + std::to_string(row) + ", column '" + column + "': " + what +
                        " '" + text + "'");
    };
    switch (type) {
    case ColumnType::Integer: {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            return fail("not an integer");
        return v;
    }
    case ColumnType::Real: {
        try {
            std::size_t used = 0;
            double v = std::stod(text, &used);
            if (used != text.size()) return fail("not a real");
            return v;
        } catch (const std::exception&) {
            return fail("not a real");
        }
    }
    case ColumnType::Date:
        if (!looks_like_date(text)) return fail("not a YYYY-MM-DD date");
        return text;
    case ColumnType::String:
        return text;
    }
    return text;
}

double numeric_value(const Value& v) {
    if (std::holds_alternative<std::int64_t>(v))
        return static_cast<double>(std::get<std::int64_t>(v));
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    throw DataError("expected a numeric value");
}

std::string value_to_string(const Value& v) {
    if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
    if (std::holds_alternative<std::int64_t>(v)) return std::to_string(std::get<std::int64_t>(v));
    std::ostringstream os;
    os.precision(17);
    os << std::get<double>(v);
    return os.str();
}

int compare_values(const Value& a, const Value& b) {
    bool a_num = !std::holds_alternative<std::string>(a);
    bool b_num = !std::holds_alternative<std::string>(b);
    if (a_num && b_num) {
        double x = numeric_value(a), y = numeric_value(b);
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    const std::string& x = std::get<std::string>(a);
    const std::string& y = std::get<std::string>(b);
    return x < y ? -1 : (x > y ? 1 : 0);
}

bool clause_matches(const FilterClause& clause, const Value& cell, ColumnType type) {
    Value literal = parse_value(clause.literal, type, 0, clause.column);
    int c = compare_values(cell, literal);
    switch (clause.op) {
    case Comparator::Eq: return c == 0;
    case Comparator::Ne: return c != 0;
    case Comparator::Lt: return c < 0;
    case Comparator::Le: return c <= 0;
    case Comparator::Gt: return c > 0;
    case Comparator::Ge: return c >= 0;
    }
    return false;
}

} // namespace

Dataset parse_csv(const std::string& text, const Schema& schema) {
    auto records = split_records(text);
    if (records.empty()) throw DataError("missing CSV header row");
    const auto& header = records.front();
    if (header.size() != schema.columns.size())
        throw DataError("header has " + std::to_string(header.size()) + " columns, schema has " +
                        std::to_string(schema.columns.size()));
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] != schema.columns[i].name)
            throw DataError("header column '" + header[i] + "' does not match schema column '" +
                            schema.columns[i].name + "'");

    Dataset out;
    out.schema = schema;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != schema.columns.size())
            throw DataError("row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                            " fields, expected " + std::to_string(schema.columns.size()));
        std::vector<Value> row;
        row.reserve(rec.size());
        for (std::size_t c = 0; c < rec.size(); ++c)
            row.push_back(parse_value(rec[c], schema.columns[c].type, r, schema.columns[c].name));
        out.rows.push_back(std::move(row));
    }
    return out;
}

Dataset load_csv(const std::string& path, const Schema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), schema);
}

void write_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += "\"\"";
            else q += c;
        }
        return q + "\"";
    };
    for (std::size_t i = 0; i < dataset.schema.columns.size(); ++i)
        out << (i ? "," : "") << quote(dataset.schema.columns[i].name);
    out << "\n";
    for (const auto& row : dataset.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << quote(value_to_string(row[i]));
        out << "\n";
    }
}

PredicateDomain enumerate_predicates(const Dataset& dataset,
                                     const std::vector<std::string>& group_columns) {
    std::vector<std::size_t> idx;
    for (const auto& name : group_columns) {
        auto i = dataset.schema.index_of(name);
        if (!i) throw DataError("group column '" + name + "' not in schema");
        idx.push_back(*i);
    }
    std::set<std::vector<Value>> distinct;
    for (const auto& row : dataset.rows) {
        std::vector<Value> tuple;
        tuple.reserve(idx.size());
        for (auto i : idx) tuple.push_back(row[i]);
        distinct.insert(std::move(tuple));
    }
    if (distinct.empty()) throw DataError("empty predicate domain");
    PredicateDomain domain;
    domain.group_columns = group_columns;
    domain.predicates.assign(distinct.begin(), distinct.end());
    return domain;
}

PredicateDomain explicit_predicates(std::vector<std::string> group_columns,
                                    std::vector<std::vector<Value>> tuples) {
    if (tuples.empty()) throw DataError("empty predicate domain");
    std::set<std::vector<Value>> distinct(tuples.begin(), tuples.end());
    if (distinct.size() != tuples.size()) throw DataError("duplicate predicate tuples");
    PredicateDomain domain;
    domain.group_columns = std::move(group_columns);
    domain.predicates.assign(distinct.begin(), distinct.end());
    return domain;
}

GroupAggregates exact_aggregate(const Dataset& dataset, const AtomicQuery& atomic,
                                const PredicateDomain& domain) {
    atomic.validate();
    const std::size_t k = domain.size();

    std::vector<std::size_t> group_idx;
    for (const auto& name : domain.group_columns) {
        auto i = dataset.schema.index_of(name);
        if (!i) throw DataError("group column '" + name + "' not in schema");
        group_idx.push_back(*i);
    }
    std::vector<std::pair<std::size_t, ColumnType>> filter_idx;
    for (const auto& clause : atomic.filter) {
        auto i = dataset.schema.index_of(clause.column);
        if (!i) throw DataError("filter column '" + clause.column + "' not in schema");
        filter_idx.emplace_back(*i, dataset.schema.columns[*i].type);
    }
    std::optional<std::size_t> agg_idx;
    if (atomic.aggregate.kind != AggregateKind::CountStar) {
        agg_idx = dataset.schema.index_of(atomic.aggregate.column);
        if (!agg_idx)
            throw DataError("aggregate column '" + atomic.aggregate.column + "' not in schema");
    }

    std::map<std::vector<Value>, std::size_t> predicate_index;
    for (std::size_t j = 0; j < k; ++j) predicate_index[domain.predicates[j]] = j;

    std::vector<double> count(k, 0.0), sum(k, 0.0);
    std::vector<std::set<std::string>> distinct(
        atomic.aggregate.kind == AggregateKind::CountDistinct ? k : 0);

    for (const auto& row : dataset.rows) {
        bool pass = true;
        for (std::size_t f = 0; f < atomic.filter.size(); ++f) {
            if (!clause_matches(atomic.filter[f], row[filter_idx[f].first], filter_idx[f].second)) {
                pass = false;
                break;
            }
        }
        if (!pass) continue;
        std::vector<Value> tuple;
        tuple.reserve(group_idx.size());
        for (auto i : group_idx) tuple.push_back(row[i]);
        auto it = predicate_index.find(tuple);
        if (it == predicate_index.end()) continue;  // outside the public domain
        std::size_t j = it->second;
        switch (atomic.aggregate.kind) {
        case AggregateKind::CountStar:
            count[j] += 1.0;
            break;
        case AggregateKind::CountDistinct:
            distinct[j].insert(value_to_string(row[*agg_idx]));
            break;
        case AggregateKind::Sum:
        case AggregateKind::Avg:
            count[j] += 1.0;
            sum[j] += numeric_value(row[*agg_idx]);
            break;
        }
    }

    GroupAggregates out;
    out.atomic_id = atomic.id;
    out.values.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        double v = 0.0;
        switch (atomic.aggregate.kind) {
        case AggregateKind::CountStar: v = count[j]; break;
        case AggregateKind::CountDistinct: v = static_cast<double>(distinct[j].size()); break;
        case AggregateKind::Sum: v = sum[j]; break;
        case AggregateKind::Avg:
            // empty groups sit at the bottom of the declared range
            v = count[j] > 0.0 ? sum[j] / count[j] : atomic.value_range.lo;
            break;
        }
        out.values[j] = std::clamp(v, atomic.value_range.lo, atomic.value_range.hi);
    }
    return out;
}

BoundAtomic bind_atomic(const Dataset& dataset, const AtomicQuery& atomic,
                        const PredicateDomain& domain) {
    BoundAtomic b;
    b.query = atomic;
    if (std::holds_alternative<double>(atomic.thresholds)) {
        b.thresholds.assign(domain.size(), std::get<double>(atomic.thresholds));
    } else {
        b.thresholds = std::get<std::vector<double>>(atomic.thresholds);
        if (b.thresholds.size() != domain.size())
            throw DataError("atomic '" + atomic.id + "': " + std::to_string(b.thresholds.size()) +
                            " thresholds for " + std::to_string(domain.size()) + " predicates");
    }
    b.exact = exact_aggregate(dataset, atomic, domain);
    return b;
}

IndexSet atomic_truth(const BoundAtomic& atomic) {
    const std::size_t k = atomic.exact.values.size();
    IndexSet truth(k);
    for (std::size_t j = 0; j < k; ++j) {
        double v = atomic.exact.values[j], c = atomic.thresholds[j];
        bool in = atomic.query.direction == Direction::Greater ? v > c : v < c;
        if (in) truth.insert(j);
    }
    return truth;
}

IndexSet true_answer(const CompiledQuery& compiled, const std::vector<BoundAtomic>& bound,
                     const PredicateDomain& domain) {
    const std::size_t k = domain.size();
    std::vector<IndexSet> truths;
    truths.reserve(bound.size());
    for (const auto& b : bound) truths.push_back(atomic_truth(b));

    IndexSet out(k);
    std::map<std::string, bool> assignment;
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < bound.size(); ++i)
            assignment[compiled.atomic_ids[i]] = truths[i].contains(j);
        if (evaluate_truth(compiled.tree, assignment)) out.insert(j);
    }
    return out;
}

} // namespace dpds
