#include "robustprep/prep/coupling.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace robustprep::prep {

void CouplingMap::validate() const {
    if (n_qubits < 1) {
        throw std::invalid_argument("CouplingMap: n_qubits must be >= 1");
    }
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n_qubits || b >= n_qubits) {
            throw std::invalid_argument("CouplingMap: edge endpoint out of range");
        }
        if (a == b) {
            throw std::invalid_argument("CouplingMap: self-loop edge");
        }
        if (a > b) {
            throw std::invalid_argument("CouplingMap: edges must be stored with first < second");
        }
    }
    if (n_qubits == 1) {
        return;
    }
    // Connectivity via union-find.
    std::vector<int> parent(static_cast<std::size_t>(n_qubits));
    for (int i = 0; i < n_qubits; ++i) {
        parent[static_cast<std::size_t>(i)] = i;
    }
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        }
        return x;
    };
    for (const auto& [a, b] : edges) {
        parent[static_cast<std::size_t>(find(a))] = find(b);
    }
    const int root = find(0);
    for (int i = 1; i < n_qubits; ++i) {
        if (find(i) != root) {
            throw std::invalid_argument("CouplingMap: graph is not connected");
        }
    }
}

bool CouplingMap::has_edge(int a, int b) const {
    if (a > b) {
        std::swap(a, b);
    }
    return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end();
}

CouplingMap normalized_coupling(int n_qubits, std::vector<std::pair<int, int>> edges) {
    for (auto& [a, b] : edges) {
        if (a > b) {
            std::swap(a, b);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    CouplingMap map{n_qubits, std::move(edges)};
    map.validate();
    return map;
}

CouplingMap path_coupling(int n_qubits) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n_qubits; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return normalized_coupling(n_qubits, std::move(edges));
}

CouplingMap t_coupling(int n_qubits) {
    if (n_qubits < 3) {
        return path_coupling(n_qubits);
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 2 < n_qubits; ++i) {
        edges.emplace_back(i, i + 1);
    }
    edges.emplace_back(1, n_qubits - 1);
    return normalized_coupling(n_qubits, std::move(edges));
}

CouplingMap ring_coupling(int n_qubits) {
    if (n_qubits < 3) {
        return path_coupling(n_qubits);
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n_qubits; ++i) {
        edges.emplace_back(i, (i + 1) % n_qubits);
    }
    return normalized_coupling(n_qubits, std::move(edges));
}

}  // namespace robustprep::prep
