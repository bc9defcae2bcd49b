#include "hamlab/hypergraph_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string_view>
#include <vector>

namespace hamlab {

namespace {

auto parse_ints(std::string_view line, std::size_t line_no) -> std::vector<int> {
    std::vector<int> out;
    std::size_t pos = 0;
    while (true) {
        if (pos >= line.size() || line[pos] == ' ') {
            throw ParseError("line " + std::to_string(line_no) + ": expected a label (labels are separated by single spaces)");
        }
        int value = 0;
        const auto* first = line.data() + pos;
        const auto* last = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) {
            throw ParseError("line " + std::to_string(line_no) + ": malformed integer");
        }
        if (*first == '-' || *first == '+') throw ParseError("line " + std::to_string(line_no) + ": labels must be non-negative");
        out.push_back(value);
        pos = static_cast<std::size_t>(ptr - line.data());
        if (pos == line.size()) return out;
        if (line[pos] != ' ') throw ParseError("line " + std::to_string(line_no) + ": unexpected character");
        ++pos;
    }
}

}  // namespace

auto parse_hypergraph(const std::string& text) -> Hypergraph {
    if (text.empty()) throw ParseError("empty hypergraph file");
    if (text.back() != '\n') throw ParseError("hypergraph file must end with a newline");

    std::vector<std::string_view> lines;
    std::string_view rest(text);
    while (!rest.empty()) {
        const auto nl = rest.find('\n');
        lines.push_back(rest.substr(0, nl));
        rest.remove_prefix(nl + 1);
    }

    const auto header = parse_ints(lines.front(), 1);
    if (header.size() != 2) throw ParseError("line 1: header must be \"n k\"");
    const int n = header[0];
    const int k = header[1];
    if (k < 1 || k > n) throw ParseError("line 1: need 1 <= k <= n");

    std::vector<VertexSet> edges;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line = lines[i];
        if (!line.empty() && line.front() == '#') continue;
        const auto labels = parse_ints(line, i + 1);
        if (static_cast<int>(labels.size()) != k) {
            throw ParseError("line " + std::to_string(i + 1) + ": expected " + std::to_string(k) + " labels");
        }
        VertexSet e;
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (labels[j] >= n) throw ParseError("line " + std::to_string(i + 1) + ": label out of range");
            if (j > 0 && labels[j] <= labels[j - 1]) {
                throw ParseError("line " + std::to_string(i + 1) + ": labels must be strictly increasing");
            }
            e.insert(labels[j]);
        }
        if (!edges.empty() && !(edges.back() < e)) {
            throw ParseError("line " + std::to_string(i + 1) + ": edges must be in strictly increasing lexicographic order");
        }
        edges.push_back(std::move(e));
    }
    return Hypergraph::from_edges(n, k, std::move(edges));
}

auto read_hypergraph(std::istream& in) -> Hypergraph {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_hypergraph(text);
}

auto read_hypergraph_file(const std::string& path) -> Hypergraph {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return read_hypergraph(in);
}

auto format_hypergraph(const Hypergraph& h, Budget& budget) -> std::string {
    std::ostringstream out;
    out << h.n() << ' ' << h.k() << '\n';
    for_each_edge(h, budget, [&](const VertexSet& e) {
        bool first = true;
        e.for_each([&](Vertex v) {
            if (!first) out << ' ';
            out << v;
            first = false;
        });
        out << '\n';
        return true;
    });
    return out.str();
}

auto format_hypergraph(const Hypergraph& h) -> std::string {
    Budget budget;
    return format_hypergraph(h, budget);
}

auto write_hypergraph_file(const Hypergraph& h, const std::string& path) -> void {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << format_hypergraph(h);
}

}  // namespace hamlab
