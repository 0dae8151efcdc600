#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klm/matroid.hpp"

// Matroid spec strings and input file formats.
//
// Spec grammar (no whitespace):
//   uniform:m,d | complete:n | thagomizer:n | k2n:n
//   graph:PATH  | linear:PATH:p | edges:u-v,u-v,...
//   dsum:(SPEC)+(SPEC)
// Graph files: one edge "u v" per line. Matrix files: one row of integers
// per line. Both allow blank lines and '#' comments.

namespace klm {

// Parse failures carry the byte offset into the original spec string.
struct spec_error : std::invalid_argument {
    std::size_t position;
    spec_error(std::size_t pos, const std::string& msg)
        : std::invalid_argument("spec error at offset " + std::to_string(pos) + ": " + msg),
          position(pos) {}
};

namespace detail {

inline int parse_spec_int(const std::string& s, std::size_t& pos, std::size_t end) {
    std::size_t start = pos;
    while (pos < end && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw spec_error(start, "expected a number");
    if (pos - start > 7) throw spec_error(start, "number is implausibly large");
    return std::stoi(s.substr(start, pos - start));
}

inline void expect_char(const std::string& s, std::size_t& pos, std::size_t end, char c) {
    if (pos >= end || s[pos] != c)
        throw spec_error(pos, std::string("expected '") + c + "'");
    ++pos;
}

// index of the ')' matching the '(' at pos, honoring nesting
inline std::size_t matching_paren(const std::string& s, std::size_t pos, std::size_t end) {
    int depth = 0;
    for (std::size_t i = pos; i < end; ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')' && --depth == 0) return i;
    }
    throw spec_error(pos, "unbalanced '('");
}

}  // namespace detail

inline std::vector<std::pair<int, int>> parse_edge_lines(std::istream& in,
                                                         const std::string& where) {
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        long u, v;
        if (!(row >> u)) continue;  // blank or comment-only line
        std::string extra;
        if (!(row >> v) || (row >> extra) || u < 0 || v < 0)
            throw std::runtime_error(where + ":" + std::to_string(lineno) +
                                     ": expected one edge \"u v\" per line");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return edges;
}

inline Matroid graph_from_edges(std::vector<std::pair<int, int>> edges) {
    int nv = 0;
    for (const auto& [u, v] : edges) nv = std::max({nv, u + 1, v + 1});
    return Matroid::graphic(nv, std::move(edges));
}

inline Matroid load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return graph_from_edges(parse_edge_lines(in, path));
}

inline std::vector<std::vector<int>> parse_matrix_lines(std::istream& in,
                                                        const std::string& where) {
    std::vector<std::vector<int>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::vector<int> entries;
        long x;
        while (row >> x) entries.push_back(static_cast<int>(x));
        if (!row.eof())
            throw std::runtime_error(where + ":" + std::to_string(lineno) +
                                     ": matrix entries must be integers");
        if (!entries.empty()) rows.push_back(std::move(entries));
    }
    return rows;
}

inline Matroid load_linear_file(const std::string& path, int p) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    return Matroid::linear(parse_matrix_lines(in, path), p);
}

namespace detail {

inline Matroid parse_spec_range(const std::string& s, std::size_t pos, std::size_t end) {
    std::size_t kw_start = pos;
    while (pos < end && s[pos] != ':') ++pos;
    if (pos == end) throw spec_error(kw_start, "expected \"name:arguments\"");
    std::string kw = s.substr(kw_start, pos - kw_start);
    ++pos;  // consume ':'

    auto finish = [&](Matroid m) {
        if (pos != end) throw spec_error(pos, "trailing characters after spec");
        return m;
    };

    if (kw == "uniform") {
        int m = parse_spec_int(s, pos, end);
        expect_char(s, pos, end, ',');
        int d = parse_spec_int(s, pos, end);
        return finish(Matroid::uniform(m, d));
    }
    if (kw == "complete") return finish(Matroid::complete_graph(parse_spec_int(s, pos, end)));
    if (kw == "thagomizer") return finish(Matroid::thagomizer(parse_spec_int(s, pos, end)));
    if (kw == "k2n") return finish(Matroid::k2n(parse_spec_int(s, pos, end)));
    if (kw == "graph") {
        if (pos == end) throw spec_error(pos, "expected a file path");
        return load_graph_file(s.substr(pos, end - pos));
    }
    if (kw == "linear") {
        std::size_t sep = s.rfind(':', end - 1);
        if (sep == std::string::npos || sep < pos)
            throw spec_error(pos, "expected \"linear:PATH:p\"");
        if (sep == pos) throw spec_error(pos, "expected a file path");
        std::string path = s.substr(pos, sep - pos);
        std::size_t ppos = sep + 1;
        int p = parse_spec_int(s, ppos, end);
        if (ppos != end) throw spec_error(ppos, "trailing characters after spec");
        return load_linear_file(path, p);
    }
    if (kw == "edges") {
        std::vector<std::pair<int, int>> edges;
        while (true) {
            int u = parse_spec_int(s, pos, end);
            expect_char(s, pos, end, '-');
            int v = parse_spec_int(s, pos, end);
            edges.emplace_back(u, v);
            if (pos == end) break;
            expect_char(s, pos, end, ',');
        }
        return graph_from_edges(std::move(edges));
    }
    if (kw == "dsum") {
        expect_char(s, pos, end, '(');
        std::size_t close_a = matching_paren(s, pos - 1, end);
        Matroid a = parse_spec_range(s, pos, close_a);
        pos = close_a + 1;
        expect_char(s, pos, end, '+');
        expect_char(s, pos, end, '(');
        std::size_t close_b = matching_paren(s, pos - 1, end);
        Matroid b = parse_spec_range(s, pos, close_b);
        pos = close_b + 1;
        if (pos != end) throw spec_error(pos, "trailing characters after spec");
        return direct_sum(a, b);
    }
    throw spec_error(kw_start, "unknown matroid family \"" + kw + "\"");
}

}  // namespace detail

inline Matroid parse_matroid_spec(const std::string& spec) {
    if (spec.empty()) throw spec_error(0, "empty spec");
    return detail::parse_spec_range(spec, 0, spec.size());
}

// Corpus file: one graph per line in the inline-edges spec form
// ("0-1,0-2,1-2"), '#' comments and blank lines skipped. Each entry is
// returned with its re-parseable spec string.
inline std::vector<std::pair<std::string, Matroid>> load_graph_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph corpus: " + path);
    std::vector<std::pair<std::string, Matroid>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        std::size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
            ++start;
        if (start >= line.size()) continue;
        std::string spec = "edges:" + line.substr(start);
        out.emplace_back(spec, parse_matroid_spec(spec));
    }
    return out;
}

}  // namespace klm
