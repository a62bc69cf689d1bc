#pragma once
#include <Eigen/Dense>
#include <string>
#include <vector>

#include "odl/model.hpp"

namespace odl {

struct ConnectionGraph;   // conngraph.hpp
struct OverlapClustering; // cluster.hpp

// Binary matrix format: 8-byte magic "DLMAT001", u64 rows, u64 cols, then
// row-major little-endian f64.
void write_matrix(const std::string& path, const Eigen::MatrixXd& mat);
Eigen::MatrixXd read_matrix(const std::string& path);

// SparseCode text: one record per line, space-separated "index:value" pairs
// (0-indexed).
void write_codes(const std::string& path, const std::vector<SparseCode>& codes);
std::vector<SparseCode> read_codes(const std::string& path);

// Flat key=value config text.
void write_genconfig(const std::string& path, const GenConfig& cfg);
GenConfig read_genconfig(const std::string& path);
GenConfig parse_genconfig_text(const std::string& text);

// Graph dump: header "p=<p> tau=<tau>", then one 0-indexed "i j" line per edge.
void write_graph(const std::string& path, const ConnectionGraph& g);
ConnectionGraph read_graph(const std::string& path);

// Clustering dump: per cluster a "# pair u v..." provenance comment followed by
// the space-separated sorted sample indices.
void write_clustering(const std::string& path, const OverlapClustering& c);
OverlapClustering read_clustering(const std::string& path);

}  // namespace odl
