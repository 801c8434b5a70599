#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace kvqe {

// Undirected site graph. Edges are stored with a < b.
struct LatticeGraph {
    int n_sites = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> site_labels;

    std::vector<int> degrees() const;
    void validate() const;  // throws std::invalid_argument on self-loops / duplicates
};

// Injective site -> register qubit assignment.
struct QubitMapping {
    std::vector<int> site_to_qubit;
    int n_qubits = 16;

    static QubitMapping identity(int n_sites, int n_qubits);
    void validate(int n_sites) const;
};

// The 12-site hexagram (six corner-sharing triangles), 18 edges.
// Sites are numbered along a Hamiltonian path of the graph, so that
// consecutive indices are always adjacent: even indices are the
// degree-2 triangle tips, odd indices the degree-4 inner hexagon.
LatticeGraph build_kagome_unit_cell();

// Plain-text lattice file: first non-comment line "<n_sites>", then one
// edge per line as "<a> <b>".
LatticeGraph load_lattice_file(const std::string& path);
void save_lattice_file(const LatticeGraph& g, const std::string& path);

}  // namespace kvqe
