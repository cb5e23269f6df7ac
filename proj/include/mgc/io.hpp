#ifndef MGC_IO_HPP
#define MGC_IO_HPP

#include <string>
#include <vector>

#include "mgc/gaussian.hpp"
#include "mgc/graph.hpp"
#include "mgc/hidden.hpp"

namespace mgc {

/// Raw parsed graph file: declarations as written, before label resolution.
/// Edges referencing undeclared labels are kept aside so validation can
/// report them.
struct GraphDocument {
    std::vector<std::string> nodes;
    EdgeList directed, bidirected;       // resolvable edges only
    std::vector<std::string> unknown_refs;
};

/// Line format: `node L`, `dir U V` (U->V), `bi U V` (U<->V), '#' comments.
GraphDocument parse_graph_text(const std::string& text);

/// {"nodes":[...], "directed":[[u,v],...], "bidirected":[[u,v],...]};
/// labels may be strings or numbers.
GraphDocument parse_graph_json(const std::string& text);

/// Sniffs JSON ('{' first) vs line format.
GraphDocument parse_graph_auto(const std::string& text);
GraphDocument load_graph_document(const std::string& path);

MixedGraph to_graph(const GraphDocument& doc); // throws on unknown refs
MixedGraph load_graph_file(const std::string& path);

/// Structural validation including file-level unknown references.
ValidationReport validate_document(const GraphDocument& doc);

/// Matrix CSV: first row vertex labels, then the full symmetric matrix,
/// 17 significant digits on output.
std::string matrix_to_csv(const CovMatrix& s);
CovMatrix parse_matrix_csv(const std::string& text);
CovMatrix load_matrix_csv(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// DOT export: directed edges as arrows, bidirected with arrowheads at both
/// ends, hidden vertices unfilled.
std::string to_dot(const MixedGraph& g, const std::vector<std::string>& hidden_labels = {});
std::string to_dot(const HiddenExpansion& e);

} // namespace mgc

#endif
