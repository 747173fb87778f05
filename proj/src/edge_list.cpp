#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "graphmem/errors.hpp"
#include "graphmem/graph.hpp"

namespace graphmem {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Parses exactly two unsigned integers separated by whitespace.
bool parse_pair(std::string_view s, std::uint64_t& a, std::uint64_t& b) {
  const char* p = s.data();
  const char* end = s.data() + s.size();
  auto r1 = std::from_chars(p, end, a);
  if (r1.ec != std::errc{} || r1.ptr == end || (*r1.ptr != ' ' && *r1.ptr != '\t')) return false;
  p = r1.ptr;
  while (p < end && (*p == ' ' || *p == '\t')) ++p;
  auto r2 = std::from_chars(p, end, b);
  return r2.ec == std::errc{} && r2.ptr == end;
}

}  // namespace

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "n " << g.num_vertices() << '\n';
  for (const auto& [i, j] : g.edge_list()) out << i << ' ' << j << '\n';
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  write_edge_list(g, out);
  out.flush();
  if (!out) throw std::ios_base::failure("write to " + path.string() + " failed");
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::uint64_t n = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;

  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (!have_header) {
      if (body.size() < 3 || body[0] != 'n' || (body[1] != ' ' && body[1] != '\t')) {
        throw ParseError(line_no, "expected header \"n <count>\"");
      }
      const auto count = trim(body.substr(1));
      auto r = std::from_chars(count.data(), count.data() + count.size(), n);
      if (r.ec != std::errc{} || r.ptr != count.data() + count.size()) {
        throw ParseError(line_no, "malformed vertex count");
      }
      if (n > std::numeric_limits<VertexId>::max()) throw ParseError(line_no, "vertex count too large");
      have_header = true;
      continue;
    }
    std::uint64_t i = 0;
    std::uint64_t j = 0;
    if (!parse_pair(body, i, j)) throw ParseError(line_no, "expected \"i j\"");
    if (i >= n || j >= n) throw ParseError(line_no, "vertex out of range [0, " + std::to_string(n) + ")");
    if (i == j) throw ParseError(line_no, "self-loop " + std::to_string(i));
    if (i > j) throw ParseError(line_no, "expected i < j");
    if (!seen.insert(i * n + j).second) {
      throw ParseError(line_no, "duplicate edge " + std::to_string(i) + " " + std::to_string(j));
    }
    edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
  }
  if (!have_header) throw ParseError(line_no + 1, "missing header \"n <count>\"");
  return Graph::from_edges(n, edges);
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return read_edge_list(in);
}

}  // namespace graphmem
