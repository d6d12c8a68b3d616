// Hardware connectivity graphs constraining two-qubit gate placement.
#pragma once

#include <utility>
#include <vector>

namespace robustprep::prep {

struct CouplingMap {
    int n_qubits = 0;
    // Undirected, stored with first < second, sorted, no duplicates.
    std::vector<std::pair<int, int>> edges;

    // Throws unless all edges are valid, loop-free, and the graph is connected.
    void validate() const;
    bool has_edge(int a, int b) const;
};

CouplingMap normalized_coupling(int n_qubits, std::vector<std::pair<int, int>> edges);

// Linear chain 0-1-...-(n-1) (the "I" layout).
CouplingMap path_coupling(int n_qubits);

// Path through qubits 0..n-2 with the last qubit attached to qubit 1 as a
// stem (the "T" layout).
CouplingMap t_coupling(int n_qubits);

CouplingMap ring_coupling(int n_qubits);

}  // namespace robustprep::prep
