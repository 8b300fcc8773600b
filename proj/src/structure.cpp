#include "reliab/structure.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <utility>

#include "reliab/errors.hpp"

namespace reliab {

namespace {

void check_component_id(int id) {
    if (id < 1) throw ConfigError("component id must be >= 1");
}

int count_components(const StructureExpr& e) {
    if (e.kind == NodeKind::component) return e.component_id;
    int m = 0;
    for (const auto& c : e.children) m = std::max(m, count_components(c));
    return m;
}

}  // namespace

int StructureExpr::component_count() const { return count_components(*this); }

StructureExpr component(int id) {
    check_component_id(id);
    StructureExpr e;
    e.kind = NodeKind::component;
    e.component_id = id;
    return e;
}

StructureExpr series(std::vector<StructureExpr> children) {
    if (children.size() < 2) throw ConfigError("series needs at least 2 children");
    StructureExpr e;
    e.kind = NodeKind::series;
    e.children = std::move(children);
    return e;
}

StructureExpr parallel(std::vector<StructureExpr> children) {
    if (children.size() < 2) throw ConfigError("parallel needs at least 2 children");
    StructureExpr e;
    e.kind = NodeKind::parallel;
    e.children = std::move(children);
    return e;
}

StructureExpr k_of_n(int k, std::vector<StructureExpr> children) {
    if (children.empty()) throw ConfigError("kofn needs at least 1 child");
    if (k < 1 || k > static_cast<int>(children.size()))
        throw ConfigError("kofn requires 1 <= k <= n");
    StructureExpr e;
    e.kind = NodeKind::k_of_n;
    e.k = k;
    e.children = std::move(children);
    return e;
}

StructureExpr bridge(int a, int b, int c, int d, int e) {
    return parallel({
        series({component(a), component(d)}),
        series({component(b), component(e)}),
        series({component(a), component(c), component(e)}),
        series({component(b), component(c), component(d)}),
    });
}

StructureExpr bridge() { return bridge(1, 2, 3, 4, 5); }

StructureExpr two_of_three() {
    return k_of_n(2, {component(1), component(2), component(3)});
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    StructureExpr parse() {
        StructureExpr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input after expression");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, static_cast<std::ptrdiff_t>(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool try_consume(char c) {
        skip_ws();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    std::string_view read_word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start) fail("expected a name");
        return text_.substr(start, pos_ - start);
    }

    int read_int() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start) fail("expected an integer");
        int value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_) {
            pos_ = start;
            fail("integer out of range");
        }
        return value;
    }

    int read_component_leaf() {
        skip_ws();
        std::size_t at = pos_;
        std::string_view word = read_word();
        if (word != "c") {
            pos_ = at;
            fail("expected a component leaf 'cN'");
        }
        int id = read_int();
        if (id < 1) {
            pos_ = at;
            fail("component id must be >= 1");
        }
        return id;
    }

    std::vector<StructureExpr> parse_children() {
        std::vector<StructureExpr> children;
        children.push_back(parse_expr());
        while (try_consume(',')) children.push_back(parse_expr());
        expect(')');
        return children;
    }

    StructureExpr parse_expr() {
        skip_ws();
        std::size_t at = pos_;
        std::string_view word = read_word();
        if (word == "c") {
            int id = read_int();
            if (id < 1) {
                pos_ = at;
                fail("component id must be >= 1");
            }
            return component(id);
        }
        if (word == "series") {
            expect('(');
            auto children = parse_children();
            if (children.size() < 2) {
                pos_ = at;
                fail("series needs at least 2 children");
            }
            return series(std::move(children));
        }
        if (word == "parallel") {
            expect('(');
            auto children = parse_children();
            if (children.size() < 2) {
                pos_ = at;
                fail("parallel needs at least 2 children");
            }
            return parallel(std::move(children));
        }
        if (word == "kofn") {
            expect('(');
            int k = read_int();
            expect(';');
            auto children = parse_children();
            if (k < 1 || k > static_cast<int>(children.size())) {
                pos_ = at;
                fail("kofn requires 1 <= k <= n");
            }
            return k_of_n(k, std::move(children));
        }
        if (word == "bridge") {
            expect('(');
            int a = read_component_leaf();
            expect(',');
            int b = read_component_leaf();
            expect(',');
            int c = read_component_leaf();
            expect(',');
            int d = read_component_leaf();
            expect(',');
            int e = read_component_leaf();
            expect(')');
            return bridge(a, b, c, d, e);
        }
        pos_ = at;
        fail("unknown structure form '" + std::string(word) + "'");
    }
};

void append_string(const StructureExpr& e, std::string& out) {
    switch (e.kind) {
        case NodeKind::component:
            out += 'c';
            out += std::to_string(e.component_id);
            return;
        case NodeKind::series:
        case NodeKind::parallel: {
            out += e.kind == NodeKind::series ? "series(" : "parallel(";
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += ", ";
                append_string(e.children[i], out);
            }
            out += ')';
            return;
        }
        case NodeKind::k_of_n: {
            out += "kofn(";
            out += std::to_string(e.k);
            out += "; ";
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += ", ";
                append_string(e.children[i], out);
            }
            out += ')';
            return;
        }
    }
}

}  // namespace

StructureExpr parse_structure(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const StructureExpr& expr) {
    std::string out;
    append_string(expr, out);
    return out;
}

bool evaluate(const StructureExpr& expr, const ComponentState& state) {
    switch (expr.kind) {
        case NodeKind::component: {
            std::size_t idx = static_cast<std::size_t>(expr.component_id) - 1;
            if (idx >= state.size())
                throw DataError("state vector shorter than component count");
            return state[idx];
        }
        case NodeKind::series:
            for (const auto& c : expr.children)
                if (!evaluate(c, state)) return false;
            return true;
        case NodeKind::parallel:
            for (const auto& c : expr.children)
                if (evaluate(c, state)) return true;
            return false;
        case NodeKind::k_of_n: {
            int working = 0;
            int remaining = static_cast<int>(expr.children.size());
            for (const auto& c : expr.children) {
                if (evaluate(c, state)) ++working;
                --remaining;
                if (working >= expr.k) return true;
                if (working + remaining < expr.k) return false;
            }
            return false;
        }
    }
    return false;
}

double system_lifetime(const StructureExpr& expr, std::span<const double> lifetimes) {
    switch (expr.kind) {
        case NodeKind::component: {
            std::size_t idx = static_cast<std::size_t>(expr.component_id) - 1;
            if (idx >= lifetimes.size())
                throw DataError("lifetime vector shorter than component count");
            return lifetimes[idx];
        }
        case NodeKind::series: {
            double t = std::numeric_limits<double>::infinity();
            for (const auto& c : expr.children)
                t = std::min(t, system_lifetime(c, lifetimes));
            return t;
        }
        case NodeKind::parallel: {
            double t = -std::numeric_limits<double>::infinity();
            for (const auto& c : expr.children)
                t = std::max(t, system_lifetime(c, lifetimes));
            return t;
        }
        case NodeKind::k_of_n: {
            // The system works while at least k children work, so it fails at
            // the (n-k+1)-th smallest child failure time.
            std::vector<double> child_times;
            child_times.reserve(expr.children.size());
            for (const auto& c : expr.children)
                child_times.push_back(system_lifetime(c, lifetimes));
            std::size_t order = child_times.size() - static_cast<std::size_t>(expr.k);
            std::nth_element(child_times.begin(), child_times.begin() + order,
                             child_times.end());
            return child_times[order];
        }
    }
    return 0.0;
}

}  // namespace reliab
