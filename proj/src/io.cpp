#include "odl/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "odl/cluster.hpp"
#include "odl/conngraph.hpp"

namespace odl {
namespace {

constexpr char kMagic[8] = {'D', 'L', 'M', 'A', 'T', '0', '0', '1'};

[[noreturn]] void fail(const std::string& what, const std::string& path) {
    throw std::runtime_error(what + ": " + path);
}

std::string value_dist_name(ValueDist d) {
    return d == ValueDist::rademacher ? "rademacher" : "uniform_signed";
}

std::string support_dist_name(SupportDist d) {
    return d == SupportDist::uniform_k_subset ? "uniform_k_subset" : "correlated_blocks";
}

ValueDist parse_value_dist(const std::string& s) {
    if (s == "rademacher") return ValueDist::rademacher;
    if (s == "uniform_signed") return ValueDist::uniform_signed;
    throw std::runtime_error("unknown value_dist: " + s);
}

SupportDist parse_support_dist(const std::string& s) {
    if (s == "uniform_k_subset") return SupportDist::uniform_k_subset;
    if (s == "correlated_blocks") return SupportDist::correlated_blocks;
    throw std::runtime_error("unknown support_dist: " + s);
}

}  // namespace

void write_matrix(const std::string& path, const Eigen::MatrixXd& mat) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("write_matrix: cannot open", path);
    out.write(kMagic, sizeof(kMagic));
    const std::uint64_t rows = static_cast<std::uint64_t>(mat.rows());
    const std::uint64_t cols = static_cast<std::uint64_t>(mat.cols());
    out.write(reinterpret_cast<const char*>(&rows), 8);
    out.write(reinterpret_cast<const char*>(&cols), 8);
    // file is row-major; Eigen default is column-major
    for (Eigen::Index i = 0; i < mat.rows(); ++i)
        for (Eigen::Index j = 0; j < mat.cols(); ++j) {
            const double v = mat(i, j);
            out.write(reinterpret_cast<const char*>(&v), 8);
        }
    if (!out) fail("write_matrix: write failed", path);
}

Eigen::MatrixXd read_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("read_matrix: cannot open", path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0) fail("read_matrix: bad magic", path);
    std::uint64_t rows = 0, cols = 0;
    in.read(reinterpret_cast<char*>(&rows), 8);
    in.read(reinterpret_cast<char*>(&cols), 8);
    if (!in) fail("read_matrix: truncated header", path);
    Eigen::MatrixXd mat(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::uint64_t i = 0; i < rows; ++i)
        for (std::uint64_t j = 0; j < cols; ++j) {
            double v;
            in.read(reinterpret_cast<char*>(&v), 8);
            if (!in) fail("read_matrix: truncated payload", path);
            mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
    return mat;
}

void write_codes(const std::string& path, const std::vector<SparseCode>& codes) {
    std::ofstream out(path);
    if (!out) fail("write_codes: cannot open", path);
    out.precision(17);
    for (const auto& code : codes) {
        for (std::size_t t = 0; t < code.support.size(); ++t) {
            if (t) out << ' ';
            out << code.support[t] << ':' << code.values[t];
        }
        out << '\n';
    }
    if (!out) fail("write_codes: write failed", path);
}

std::vector<SparseCode> read_codes(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("read_codes: cannot open", path);
    std::vector<SparseCode> codes;
    std::string line;
    while (std::getline(in, line)) {
        SparseCode code;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos) fail("read_codes: malformed pair", path);
            code.support.push_back(std::stoi(tok.substr(0, colon)));
            code.values.push_back(std::stod(tok.substr(colon + 1)));
        }
        codes.push_back(std::move(code));
    }
    return codes;
}

void write_genconfig(const std::string& path, const GenConfig& cfg) {
    std::ofstream out(path);
    if (!out) fail("write_genconfig: cannot open", path);
    out.precision(17);
    out << "n=" << cfg.n << '\n'
        << "m=" << cfg.m << '\n'
        << "k=" << cfg.k << '\n'
        << "C=" << cfg.C << '\n'
        << "value_dist=" << value_dist_name(cfg.value_dist) << '\n'
        << "support_dist=" << support_dist_name(cfg.support_dist) << '\n'
        << "noise_sigma=" << cfg.noise_sigma << '\n'
        << "seed=" << cfg.seed << '\n'
        << "block_size=" << cfg.block_size << '\n'
        << "moment_inflation=" << cfg.moment_inflation << '\n';
    if (!out) fail("write_genconfig: write failed", path);
}

GenConfig parse_genconfig_text(const std::string& text) {
    GenConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("genconfig: malformed line: " + line);
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key == "n") cfg.n = std::stoi(val);
        else if (key == "m") cfg.m = std::stoi(val);
        else if (key == "k") cfg.k = std::stoi(val);
        else if (key == "C") cfg.C = std::stod(val);
        else if (key == "value_dist") cfg.value_dist = parse_value_dist(val);
        else if (key == "support_dist") cfg.support_dist = parse_support_dist(val);
        else if (key == "noise_sigma") cfg.noise_sigma = std::stod(val);
        else if (key == "seed") cfg.seed = std::stoull(val);
        else if (key == "block_size") cfg.block_size = std::stoi(val);
        else if (key == "moment_inflation") cfg.moment_inflation = std::stod(val);
        else throw std::runtime_error("genconfig: unknown key: " + key);
    }
    return cfg;
}

GenConfig read_genconfig(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("read_genconfig: cannot open", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_genconfig_text(buf.str());
}

void write_graph(const std::string& path, const ConnectionGraph& g) {
    std::ofstream out(path);
    if (!out) fail("write_graph: cannot open", path);
    out.precision(17);
    out << "p=" << g.p << " tau=" << g.tau << '\n';
    for (int u = 0; u < g.p; ++u)
        for (int v : g.neighbors[u])
            if (v > u) out << u << ' ' << v << '\n';
    if (!out) fail("write_graph: write failed", path);
}

ConnectionGraph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("read_graph: cannot open", path);
    std::string header;
    if (!std::getline(in, header)) fail("read_graph: missing header", path);
    int p = 0;
    double tau = 0.0;
    if (std::sscanf(header.c_str(), "p=%d tau=%lf", &p, &tau) != 2 || p < 1)
        fail("read_graph: malformed header", path);
    ConnectionGraph g = ConnectionGraph::blank(p, tau);
    int u, v;
    while (in >> u >> v) {
        if (u < 0 || v < 0 || u >= p || v >= p || u == v)
            fail("read_graph: bad edge", path);
        g.set_edge(u, v);
    }
    g.rebuild_neighbor_lists();
    return g;
}

void write_clustering(const std::string& path, const OverlapClustering& c) {
    std::ofstream out(path);
    if (!out) fail("write_clustering: cannot open", path);
    for (std::size_t i = 0; i < c.clusters.size(); ++i) {
        out << "# pair";
        if (i < c.provenance.size())
            for (int u : c.provenance[i]) out << ' ' << u;
        out << '\n';
        for (std::size_t t = 0; t < c.clusters[i].size(); ++t) {
            if (t) out << ' ';
            out << c.clusters[i][t];
        }
        out << '\n';
    }
    if (!out) fail("write_clustering: write failed", path);
}

OverlapClustering read_clustering(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("read_clustering: cannot open", path);
    OverlapClustering c;
    std::string line;
    std::vector<int> pending_pair;
    bool have_pair = false;
    while (std::getline(in, line)) {
        if (line.rfind("# pair", 0) == 0) {
            pending_pair.clear();
            std::istringstream ls(line.substr(6));
            int u;
            while (ls >> u) pending_pair.push_back(u);
            have_pair = true;
            continue;
        }
        if (line.empty()) continue;
        std::vector<int> members;
        std::istringstream ls(line);
        int u;
        while (ls >> u) members.push_back(u);
        c.clusters.push_back(std::move(members));
        c.provenance.push_back(have_pair ? pending_pair : std::vector<int>{});
        have_pair = false;
    }
    return c;
}

}  // namespace odl
