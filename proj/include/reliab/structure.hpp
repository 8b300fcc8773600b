#pragma once

// Coherent-system structure expressions.
//
// A system of m components is described by a tree of series / parallel /
// k-of-n nodes over component leaves. The same component id may appear in
// several leaves (bridge and k-of-n series-parallel forms repeat components);
// repeated leaves share one physical component and one lifetime.
//
// DSL grammar (whitespace-insensitive):
//
//   expr := 'c' INT
//         | 'series' '(' expr (',' expr)+ ')'
//         | 'parallel' '(' expr (',' expr)+ ')'
//         | 'kofn' '(' INT ';' expr (',' expr)* ')'
//         | 'bridge' '(' cLEAF ',' cLEAF ',' cLEAF ',' cLEAF ',' cLEAF ')'
//
// bridge(a,b,c,d,e) expands to the parallel-of-series form over the minimal
// path sets {a,d}, {b,e}, {a,c,e}, {b,c,d}.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reliab {

enum class NodeKind { component, series, parallel, k_of_n };

struct StructureExpr {
    NodeKind kind = NodeKind::component;
    int component_id = 0;                 // component leaves
    int k = 0;                            // k_of_n nodes
    std::vector<StructureExpr> children;  // inner nodes

    // Largest component id referenced anywhere in the tree; this is the
    // declared component count m (ids are 1..m).
    int component_count() const;
};

StructureExpr component(int id);
StructureExpr series(std::vector<StructureExpr> children);
StructureExpr parallel(std::vector<StructureExpr> children);
StructureExpr k_of_n(int k, std::vector<StructureExpr> children);
StructureExpr bridge(int a, int b, int c, int d, int e);
StructureExpr bridge();       // bridge(1,2,3,4,5)
StructureExpr two_of_three();  // kofn(2; c1,c2,c3)

// Throws ParseError with a byte offset on syntax/arity/range violations.
StructureExpr parse_structure(std::string_view text);

std::string to_string(const StructureExpr& expr);

// true = working. Working-state vector indexed by component id - 1.
using ComponentState = std::vector<bool>;

bool evaluate(const StructureExpr& expr, const ComponentState& state);

// Failure time of the system given component lifetimes (indexed by id - 1):
// min at series nodes, max at parallel nodes, the (n-k+1)-th order statistic
// at k-of-n nodes. Equals the time at which evaluate() flips as components
// fail in lifetime order, ties failing together.
double system_lifetime(const StructureExpr& expr, std::span<const double> lifetimes);

}  // namespace reliab
