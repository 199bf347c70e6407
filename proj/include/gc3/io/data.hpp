#pragma once

#include "gc3/complex/chain.hpp"
#include "gc3/graph/graph.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gc3 {

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#ifdef GC3_DATA_DIR
inline constexpr const char* default_data_dir = GC3_DATA_DIR;
#else
inline constexpr const char* default_data_dir = "data";
#endif

inline std::string data_path(const std::string& file, const std::string& dir = default_data_dir) {
  return dir + "/" + file;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// One row of the six-loop integral table: oriented graph, λ-vector and numeric value.
struct Table4Row {
  std::string name, edges;
  OrientedGraph graph;
  std::array<long, 7> lambda{};
  double tau1 = 0;
};

/// Tab-separated: name, edges, λ1..λ7, tau1; '#' lines are comments.
inline std::vector<Table4Row> parse_table4(const std::string& text) {
  std::vector<Table4Row> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, '\t');) cells.push_back(cell);
    if (cells.size() != 10) throw DataError("table line " + std::to_string(lineno) + ": expected 10 columns");
    Table4Row r;
    r.name = cells[0];
    r.edges = cells[1];
    try {
      r.graph = parse_adjacency(r.edges);
      for (std::size_t i = 0; i < 7; ++i) r.lambda[i] = std::stol(cells[2 + i]);
      r.tau1 = std::stod(cells[9]);
    } catch (const std::exception& e) {
      throw DataError("table line " + std::to_string(lineno) + ": " + e.what());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<Table4Row> load_table4(const std::string& path = data_path("table4.tsv")) {
  return parse_table4(read_file(path));
}

inline std::vector<NamedGraph> load_graph_list(const std::string& path = data_path("graphs_6_6.txt")) {
  try {
    return parse_graph_list(read_file(path));
  } catch (const GraphError& e) {
    throw DataError(path + ": " + e.what());
  }
}

inline Chain load_chain(const std::string& path = data_path("X.chain")) {
  try {
    return parse_chain(read_file(path));
  } catch (const ComplexError& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace gc3
