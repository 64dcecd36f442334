#include "dpds/query_model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace dpds {

void AggregateSpec::validate() const {
    if (!(sensitivity > 0.0))
        throw std::invalid_argument("aggregate sensitivity must be > 0");
    bool counting = kind == AggregateKind::CountStar || kind == AggregateKind::CountDistinct;
    if (counting && sensitivity != 1.0)
        throw std::invalid_argument("count aggregates have sensitivity exactly 1");
    if (kind != AggregateKind::CountStar && column.empty())
        throw std::invalid_argument("aggregate needs a column");
}

void AtomicQuery::validate() const {
    aggregate.validate();
    if (!(value_range.width() > 0.0))
        throw std::invalid_argument("atomic '" + id + "': value_range width must be > 0");
    auto check = [&](double c) {
        if (c < value_range.lo || c > value_range.hi)
            throw std::invalid_argument("atomic '" + id + "': threshold outside value_range");
    };
    if (std::holds_alternative<double>(thresholds)) {
        check(std::get<double>(thresholds));
    } else {
        for (double c : std::get<std::vector<double>>(thresholds)) check(c);
    }
}

namespace {

void collect_atomics(const QueryNodePtr& node, std::vector<std::string>& out,
                     std::set<std::string>& seen) {
    if (!node) return;
    if (node->kind == QueryNode::Kind::Leaf) {
        if (seen.insert(node->atomic_id).second) out.push_back(node->atomic_id);
        return;
    }
    collect_atomics(node->left, out, seen);
    collect_atomics(node->right, out, seen);
}

std::size_t count_leaves(const QueryNodePtr& node) {
    if (!node) return 0;
    if (node->kind == QueryNode::Kind::Leaf) return 1;
    return count_leaves(node->left) + count_leaves(node->right);
}

} // namespace

std::vector<std::string> QueryTree::distinct_atomics() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    collect_atomics(root_, out, seen);
    return out;
}

std::size_t QueryTree::leaf_count() const { return count_leaves(root_); }

// --- parser ----------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { Id, And, Or, LParen, RParen, End };
    Kind kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::size_t start = pos_;
        if (pos_ >= text_.size()) return {Token::Kind::End, "", start};
        char c = text_[pos_];
        if (c == '(') { ++pos_; return {Token::Kind::LParen, "(", start}; }
        if (c == ')') { ++pos_; return {Token::Kind::RParen, ")", start}; }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string word = text_.substr(start, pos_ - start);
            std::string upper = word;
            std::transform(upper.begin(), upper.end(), upper.begin(),
                           [](unsigned char ch) { return std::toupper(ch); });
            if (upper == "AND") return {Token::Kind::And, word, start};
            if (upper == "OR") return {Token::Kind::Or, word, start};
            return {Token::Kind::Id, word, start};
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& known)
        : lexer_(text), known_(known.begin(), known.end()) {
        advance();
    }

    QueryNodePtr parse() {
        QueryNodePtr e = parse_or();
        if (cur_.kind != Token::Kind::End)
            throw ParseError("unexpected token '" + cur_.text + "'", cur_.pos);
        return e;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    QueryNodePtr parse_or() {
        QueryNodePtr left = parse_and();
        while (cur_.kind == Token::Kind::Or) {
            advance();
            QueryNodePtr right = parse_and();
            left = QueryNode::branch(QueryNode::Kind::Or, std::move(left), std::move(right));
        }
        return left;
    }

    QueryNodePtr parse_and() {
        QueryNodePtr left = parse_factor();
        while (cur_.kind == Token::Kind::And) {
            advance();
            QueryNodePtr right = parse_factor();
            left = QueryNode::branch(QueryNode::Kind::And, std::move(left), std::move(right));
        }
        return left;
    }

    QueryNodePtr parse_factor() {
        if (cur_.kind == Token::Kind::LParen) {
            advance();
            QueryNodePtr e = parse_or();
            if (cur_.kind != Token::Kind::RParen)
                throw ParseError("expected ')'", cur_.pos);
            advance();
            return e;
        }
        if (cur_.kind == Token::Kind::Id) {
            if (!known_.count(cur_.text))
                throw ParseError("unknown atomic id '" + cur_.text + "'", cur_.pos);
            QueryNodePtr leaf = QueryNode::leaf(cur_.text);
            advance();
            return leaf;
        }
        throw ParseError("expected atomic id or '('", cur_.pos);
    }

    Lexer lexer_;
    std::set<std::string> known_;
    Token cur_{Token::Kind::End, "", 0};
};

void print_node(const QueryNodePtr& node, QueryNode::Kind parent, bool right_child,
                std::string& out) {
    if (node->kind == QueryNode::Kind::Leaf) {
        out += node->atomic_id;
        return;
    }
    // Parens when the child binds looser than the parent, or when a same-op
    // chain hangs to the right (reparse would otherwise rebuild it left-assoc).
    bool need_parens = false;
    if (parent == QueryNode::Kind::And && node->kind == QueryNode::Kind::Or) need_parens = true;
    if (right_child && parent == node->kind) need_parens = true;
    if (need_parens) out += "(";
    print_node(node->left, node->kind, false, out);
    out += node->kind == QueryNode::Kind::And ? " AND " : " OR ";
    print_node(node->right, node->kind, true, out);
    if (need_parens) out += ")";
}

bool eval_node(const QueryNodePtr& node, const std::map<std::string, bool>& assignment) {
    switch (node->kind) {
    case QueryNode::Kind::Leaf: {
        auto it = assignment.find(node->atomic_id);
        if (it == assignment.end())
            throw std::invalid_argument("missing assignment for atomic '" + node->atomic_id + "'");
        return it->second;
    }
    case QueryNode::Kind::And:
        return eval_node(node->left, assignment) && eval_node(node->right, assignment);
    case QueryNode::Kind::Or:
        return eval_node(node->left, assignment) || eval_node(node->right, assignment);
    }
    return false;
}

} // namespace

QueryTree parse_query(const std::string& text, const std::vector<std::string>& known_ids) {
    Parser parser(text, known_ids);
    return QueryTree(parser.parse());
}

std::string pretty_print(const QueryTree& tree) {
    if (!tree.valid()) return "";
    std::string out;
    // An Or pseudo-parent in left position never forces parens at top level.
    print_node(tree.root(), QueryNode::Kind::Or, false, out);
    return out;
}

bool evaluate_truth(const QueryTree& tree, const std::map<std::string, bool>& assignment) {
    if (!tree.valid()) throw std::invalid_argument("empty query tree");
    return eval_node(tree.root(), assignment);
}

} // namespace dpds
