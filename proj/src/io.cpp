#include "mgc/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mgc {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

void finish_document(GraphDocument& doc, const EdgeList& rawd, const EdgeList& rawb) {
    std::set<std::string> declared(doc.nodes.begin(), doc.nodes.end());
    std::set<std::string> unknown;
    auto keep = [&](const EdgeList& src, EdgeList& dst) {
        for (const auto& [a, b] : src) {
            if (declared.count(a) && declared.count(b)) {
                dst.emplace_back(a, b);
            } else {
                if (!declared.count(a)) unknown.insert(a);
                if (!declared.count(b)) unknown.insert(b);
            }
        }
    };
    EdgeList d, b;
    keep(rawd, d);
    keep(rawb, b);
    doc.directed = std::move(d);
    doc.bidirected = std::move(b);
    doc.unknown_refs.assign(unknown.begin(), unknown.end());
}

} // namespace

GraphDocument parse_graph_text(const std::string& text) {
    GraphDocument doc;
    EdgeList rawd, rawb;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string where = " at line " + std::to_string(lineno);
        if (toks[0] == "node") {
            if (toks.size() != 2) throw ParseError("node expects one label" + where);
            doc.nodes.push_back(toks[1]);
        } else if (toks[0] == "dir") {
            if (toks.size() != 3) throw ParseError("dir expects two labels" + where);
            rawd.emplace_back(toks[1], toks[2]);
        } else if (toks[0] == "bi") {
            if (toks.size() != 3) throw ParseError("bi expects two labels" + where);
            rawb.emplace_back(toks[1], toks[2]);
        } else {
            throw ParseError("unknown directive '" + toks[0] + "'" + where);
        }
    }
    finish_document(doc, rawd, rawb);
    return doc;
}

namespace {

std::string label_of_json(const nlohmann::json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ParseError("graph labels must be strings or integers");
}

} // namespace

GraphDocument parse_graph_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad graph JSON: ") + e.what());
    }
    GraphDocument doc;
    EdgeList rawd, rawb;
    if (!j.contains("nodes") || !j["nodes"].is_array())
        throw ParseError("graph JSON needs a \"nodes\" array");
    for (const auto& n : j["nodes"]) doc.nodes.push_back(label_of_json(n));
    auto read_edges = [&](const char* key, EdgeList& out) {
        if (!j.contains(key)) return;
        if (!j[key].is_array()) throw ParseError(std::string(key) + " must be an array");
        for (const auto& e : j[key]) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError(std::string(key) + " entries must be [u, v] pairs");
            out.emplace_back(label_of_json(e[0]), label_of_json(e[1]));
        }
    };
    read_edges("directed", rawd);
    read_edges("bidirected", rawb);
    finish_document(doc, rawd, rawb);
    return doc;
}

GraphDocument parse_graph_auto(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? parse_graph_json(text) : parse_graph_text(text);
    }
    return GraphDocument{};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
}

GraphDocument load_graph_document(const std::string& path) {
    return parse_graph_auto(read_text_file(path));
}

MixedGraph to_graph(const GraphDocument& doc) {
    if (!doc.unknown_refs.empty())
        throw UnknownVertex("undeclared vertex: " + doc.unknown_refs.front());
    return MixedGraph(doc.nodes, doc.directed, doc.bidirected);
}

MixedGraph load_graph_file(const std::string& path) {
    return to_graph(load_graph_document(path));
}

ValidationReport validate_document(const GraphDocument& doc) {
    MixedGraph g(doc.nodes, doc.directed, doc.bidirected);
    auto rep = validate(g);
    rep.unknown_refs = doc.unknown_refs;
    return rep;
}

std::string matrix_to_csv(const CovMatrix& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += s.labels()[i];
    }
    out += "\n";
    char buf[64];
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j) out += ",";
            std::snprintf(buf, sizeof buf, "%.17g",
                          s.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            out += buf;
        }
        out += "\n";
    }
    return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& s : out) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    }
    return out;
}

} // namespace

CovMatrix parse_matrix_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        auto cells = split_csv(line);
        if (labels.empty()) {
            labels = cells;
            continue;
        }
        std::vector<double> row;
        for (const auto& c : cells) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(c, &pos);
            } catch (const std::exception&) {
                throw ParseError("bad matrix entry '" + c + "'");
            }
            if (pos != c.size()) throw ParseError("bad matrix entry '" + c + "'");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (labels.empty()) throw ParseError("empty matrix file");
    Eigen::MatrixXd m(rows.size(), labels.size());
    if (rows.size() != labels.size()) throw ParseError("matrix is not square");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != labels.size()) throw ParseError("ragged matrix row");
        for (std::size_t j = 0; j < labels.size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return CovMatrix(labels, std::move(m));
}

CovMatrix load_matrix_csv(const std::string& path) {
    return parse_matrix_csv(read_text_file(path));
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string to_dot(const MixedGraph& g, const std::vector<std::string>& hidden_labels) {
    std::set<std::string> hidden(hidden_labels.begin(), hidden_labels.end());
    std::string out = "digraph G {\n  node [shape=circle, style=filled, fillcolor=gray88];\n";
    for (const auto& label : g.labels()) {
        out += "  " + dot_quote(label);
        if (hidden.count(label)) out += " [style=solid]";
        out += ";\n";
    }
    for (auto [u, v] : g.directed_edges())
        out += "  " + dot_quote(g.label(u)) + " -> " + dot_quote(g.label(v)) + ";\n";
    for (auto [u, v] : g.bidirected_edges())
        out += "  " + dot_quote(g.label(u)) + " -> " + dot_quote(g.label(v)) + " [dir=both];\n";
    out += "}\n";
    return out;
}

std::string to_dot(const HiddenExpansion& e) {
    std::vector<std::string> hidden;
    for (const auto& [label, members] : e.hidden) {
        (void)members;
        hidden.push_back(label);
    }
    return to_dot(e.dag, hidden);
}

} // namespace mgc
