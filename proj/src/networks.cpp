#include "onebit/networks.hpp"

#include <stdexcept>

namespace onebit::net {

ComponentChannel dueck_component(dueck::SymbolMap map) {
    return ComponentChannel::deterministic(
        kDueckComponent, {node::tx1, node::tx2}, {4, 2}, {node::rx, node::rx}, {6, 2},
        [map](std::span<const Symbol> in) {
            const auto o = map(static_cast<dueck::Sym1>(in[0]), static_cast<dueck::Sym2>(in[1]));
            return std::vector<Symbol>{dueck::code(o.y), dueck::code(o.x2)};
        });
}

namespace {

std::vector<ComponentChannel> n0_components(dueck::SymbolMap map) {
    std::vector<ComponentChannel> comps;
    comps.push_back(dueck_component(map));
    comps.push_back(ComponentChannel::pipe("pipe1", node::tx1, node::cf, 4));
    comps.push_back(ComponentChannel::pipe("pipe2", node::tx2, node::cf, 2));
    return comps;
}

std::vector<std::vector<NodeId>> transmitter_demands(std::size_t nodes) {
    std::vector<std::vector<NodeId>> d(nodes);
    d[node::tx1] = {node::rx};
    d[node::tx2] = {node::rx};
    return d;
}

}  // namespace

NetworkModel build_dueck_network(dueck::SymbolMap map) {
    std::vector<ComponentChannel> comps;
    comps.push_back(dueck_component(map));
    return NetworkModel(3, std::move(comps), transmitter_demands(3));
}

NetworkModel build_n0(dueck::SymbolMap map) {
    return NetworkModel(4, n0_components(map), transmitter_demands(4));
}

NetworkModel build_nplus(std::size_t k, dueck::SymbolMap map) {
    if (k == 0) throw std::invalid_argument("N_plus needs at least one cf -> rx 1-bit channel");
    auto comps = n0_components(map);
    comps.push_back(ComponentChannel::one_bit(kEdgeE, node::cf, node::tx1));
    for (std::size_t j = 1; j <= k; ++j)
        comps.push_back(ComponentChannel::one_bit("f" + std::to_string(j), node::cf, node::rx));
    return NetworkModel(4, std::move(comps), transmitter_demands(4));
}

}  // namespace onebit::net
