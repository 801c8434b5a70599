#include "kvqe/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kvqe {

std::vector<int> LatticeGraph::degrees() const {
    std::vector<int> deg(n_sites, 0);
    for (const auto& [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

void LatticeGraph::validate() const {
    if (n_sites <= 0) throw std::invalid_argument("lattice must have at least one site");
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n_sites || b >= n_sites) {
            throw std::invalid_argument("edge references a site outside [0, n_sites)");
        }
        if (a == b) throw std::invalid_argument("self-loop edge");
        const auto key = std::minmax(a, b);
        if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge");
    }
}

QubitMapping QubitMapping::identity(int n_sites, int n_qubits) {
    QubitMapping m;
    m.n_qubits = n_qubits;
    m.site_to_qubit.resize(n_sites);
    for (int i = 0; i < n_sites; ++i) m.site_to_qubit[i] = i;
    m.validate(n_sites);
    return m;
}

void QubitMapping::validate(int n_sites) const {
    if (static_cast<int>(site_to_qubit.size()) < n_sites) {
        throw std::invalid_argument("qubit mapping does not cover all lattice sites");
    }
    std::set<int> used;
    for (int i = 0; i < n_sites; ++i) {
        const int q = site_to_qubit[i];
        if (q < 0 || q >= n_qubits) throw std::invalid_argument("mapped qubit outside register");
        if (!used.insert(q).second) throw std::invalid_argument("qubit mapping is not injective");
    }
}

LatticeGraph build_kagome_unit_cell() {
    // Hexagram vertices in Hamiltonian-path order: tips at even indices,
    // inner hexagon at odd indices. Triangle k (k = 0..5) is
    // {tip 2k, hex 2k+1, hex (2k+11) mod 12}.
    LatticeGraph g;
    g.n_sites = 12;
    for (int k = 0; k < 6; ++k) {
        const int tip = 2 * k;
        const int h1 = (2 * k + 1) % 12;
        const int h0 = (2 * k + 11) % 12;
        g.edges.emplace_back(std::min(tip, h0), std::max(tip, h0));
        g.edges.emplace_back(std::min(tip, h1), std::max(tip, h1));
        g.edges.emplace_back(std::min(h0, h1), std::max(h0, h1));
    }
    for (int i = 0; i < 12; ++i) {
        std::ostringstream label;
        if (i % 2 == 0) {
            label << "tip" << i / 2;
        } else {
            label << "hex" << i / 2;
        }
        g.site_labels.push_back(label.str());
    }
    g.validate();
    return g;
}

LatticeGraph load_lattice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lattice file: " + path);
    LatticeGraph g;
    std::string line;
    bool have_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        if (!have_header) {
            if (ss >> g.n_sites) have_header = true;
            continue;
        }
        int a, b;
        if (ss >> a) {
            if (!(ss >> b)) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": edge line needs two site indices");
            }
            g.edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    if (!have_header) throw std::runtime_error(path + ": missing site-count header");
    g.validate();
    return g;
}

void save_lattice_file(const LatticeGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write lattice file: " + path);
    out << g.n_sites << "\n";
    for (const auto& [a, b] : g.edges) out << a << " " << b << "\n";
}

}  // namespace kvqe
