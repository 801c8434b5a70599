#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "kvqe/lattice.hpp"
#include "kvqe/pauli.hpp"

using namespace kvqe;

TEST_CASE("kagome unit cell is the 12-site hexagram") {
    const auto g = build_kagome_unit_cell();
    CHECK(g.n_sites == 12);
    CHECK(g.edges.size() == 18);

    auto deg = g.degrees();
    std::sort(deg.begin(), deg.end());
    const std::vector<int> expected{2, 2, 2, 2, 2, 2, 4, 4, 4, 4, 4, 4};
    CHECK(deg == expected);
}

TEST_CASE("unit-cell sites are numbered along a Hamiltonian path") {
    const auto g = build_kagome_unit_cell();
    for (int i = 0; i + 1 < g.n_sites; ++i) {
        const bool adjacent = std::any_of(g.edges.begin(), g.edges.end(), [&](const auto& e) {
            return e.first == i && e.second == i + 1;
        });
        CHECK_MESSAGE(adjacent, "sites ", i, " and ", i + 1, " must share an edge");
    }
}

TEST_CASE("lattice validation rejects malformed graphs") {
    LatticeGraph g;
    g.n_sites = 3;
    g.edges = {{0, 0}};
    CHECK_THROWS(g.validate());
    g.edges = {{0, 1}, {1, 0}};
    CHECK_THROWS(g.validate());
    g.edges = {{0, 5}};
    CHECK_THROWS(g.validate());
}

TEST_CASE("heisenberg on the unit cell has 54 unit-weight terms") {
    const auto g = build_kagome_unit_cell();
    const auto h = build_heisenberg(g, QubitMapping::identity(12, 16), 1.0);
    CHECK(h.n_qubits == 16);
    REQUIRE(h.terms.size() == 54);
    for (const auto& t : h.terms) {
        CHECK(t.coefficient == 1.0);
        const auto support = term_support(t.label);
        REQUIRE(support.size() == 2);
        const char a = t.label[t.label.size() - 1 - support[0]];
        const char b = t.label[t.label.size() - 1 - support[1]];
        CHECK(a == b);
    }
}

TEST_CASE("single edge expands to XX, YY, ZZ") {
    LatticeGraph g;
    g.n_sites = 2;
    g.edges = {{0, 1}};
    const auto h = build_heisenberg(g, QubitMapping::identity(2, 2), 1.0);
    REQUIRE(h.terms.size() == 3);
    CHECK(h.terms[0].label == "XX");
    CHECK(h.terms[1].label == "YY");
    CHECK(h.terms[2].label == "ZZ");
    for (const auto& t : h.terms) CHECK(t.coefficient == 1.0);
}

TEST_CASE("J scales every coefficient") {
    const auto g = build_kagome_unit_cell();
    const auto h = build_heisenberg(g, QubitMapping::identity(12, 16), 2.0);
    for (const auto& t : h.terms) CHECK(t.coefficient == 2.0);
}

TEST_CASE("set_uniform_interaction rescales and rejects non-positive J") {
    const auto g = build_kagome_unit_cell();
    const auto h = build_heisenberg(g, QubitMapping::identity(12, 16), 1.0);

    const auto same = h.with_uniform_interaction(1.0);
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        CHECK(same.terms[i].coefficient == h.terms[i].coefficient);
    }

    const auto scaled = h.with_uniform_interaction(0.98);
    CHECK(scaled.uniform_interaction == 0.98);
    for (const auto& t : scaled.terms) CHECK(t.coefficient == doctest::Approx(0.98).epsilon(1e-15));

    CHECK_THROWS(h.with_uniform_interaction(0.0));
    CHECK_THROWS(h.with_uniform_interaction(-1.0));
}

TEST_CASE("mapping validation") {
    const auto g = build_kagome_unit_cell();
    QubitMapping m;
    m.n_qubits = 16;
    m.site_to_qubit = {0, 1, 2};  // too short
    CHECK_THROWS(build_heisenberg(g, m, 1.0));

    m.site_to_qubit = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 10};  // not injective
    CHECK_THROWS(build_heisenberg(g, m, 1.0));

    m.site_to_qubit = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 16};  // out of register
    CHECK_THROWS(build_heisenberg(g, m, 1.0));
}

TEST_CASE("measurement bases split the Heisenberg sum into 3 x 18") {
    const auto g = build_kagome_unit_cell();
    const auto h = build_heisenberg(g, QubitMapping::identity(12, 16), 1.0);
    const auto groups = measurement_bases(h);
    REQUIRE(groups.size() == 3);
    std::vector<char> seen;
    std::size_t covered = 0;
    for (const auto& grp : groups) {
        seen.push_back(grp.basis);
        CHECK(grp.term_indices.size() == 18);
        covered += grp.term_indices.size();
    }
    CHECK(covered == h.terms.size());
    CHECK(seen == std::vector<char>{'X', 'Y', 'Z'});
}

TEST_CASE("measurement bases of small sums") {
    LatticeGraph g;
    g.n_sites = 2;
    g.edges = {{0, 1}};
    const auto h = build_heisenberg(g, QubitMapping::identity(2, 2), 1.0);
    const auto groups = measurement_bases(h);
    REQUIRE(groups.size() == 3);
    for (const auto& grp : groups) CHECK(grp.term_indices.size() == 1);

    PauliSum zonly;
    zonly.n_qubits = 2;
    zonly.terms = {{1.0, "ZI"}, {0.5, "IZ"}};
    zonly.base_weights = {1.0, 0.5};
    CHECK(measurement_bases(zonly).size() == 1);

    PauliSum mixed;
    mixed.n_qubits = 2;
    mixed.terms = {{1.0, "XZ"}};
    mixed.base_weights = {1.0};
    CHECK_THROWS(measurement_bases(mixed));
}

TEST_CASE("lattice file round trip and hamiltonian dump") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "kvqe_lattice_test";
    fs::create_directories(dir);

    const auto g = build_kagome_unit_cell();
    const auto path = (dir / "cell.txt").string();
    save_lattice_file(g, path);
    const auto g2 = load_lattice_file(path);
    CHECK(g2.n_sites == g.n_sites);
    CHECK(g2.edges == g.edges);

    const auto h = build_heisenberg(g, QubitMapping::identity(12, 16), 1.0);
    const auto csv = (dir / "h.csv").string();
    dump_hamiltonian_csv(h, csv);
    std::ifstream in(csv);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 55);  // header + 54 terms

    CHECK_THROWS(load_lattice_file((dir / "missing.txt").string()));
    std::ofstream bad(dir / "bad.txt");
    bad << "3\n0\n";
    bad.close();
    CHECK_THROWS(load_lattice_file((dir / "bad.txt").string()));
}
