#pragma once

// The three networks of the construction:
//   N_D    Dueck's MAC: transmitters tx1, tx2, receiver rx.
//   N_0    N_D plus the cooperation facilitator (cf) and two noiseless pipes,
//          tx1 -> cf carrying one 4-ary symbol per step and tx2 -> cf one bit.
//   N_plus N_0 plus 1-bit channels f1..fk (cf -> rx) and e (cf -> tx1).
//
// Component order (and so port order) is dueck, pipe1, pipe2, e, f1..fk.
// The dueck component has input slots (x1, x2) with codes from dueck.hpp and
// two output slots at rx: (y31, y32).

#include "onebit/dueck.hpp"
#include "onebit/network.hpp"

namespace onebit::net {

namespace node {
inline constexpr NodeId tx1 = 0;
inline constexpr NodeId tx2 = 1;
inline constexpr NodeId rx = 2;
inline constexpr NodeId cf = 3;
}  // namespace node

// Receive-tuple positions at rx, and transmit-tuple positions at tx1/tx2.
namespace port {
inline constexpr std::size_t y31 = 0;
inline constexpr std::size_t y32 = 1;
inline constexpr std::size_t first_f = 2;
inline constexpr std::size_t dueck_in = 0;
inline constexpr std::size_t pipe_in = 1;
}  // namespace port

inline constexpr const char* kDueckComponent = "dueck";
inline constexpr const char* kEdgeE = "e";

ComponentChannel dueck_component(dueck::SymbolMap map = dueck::w_single);

NetworkModel build_dueck_network(dueck::SymbolMap map = dueck::w_single);
NetworkModel build_n0(dueck::SymbolMap map = dueck::w_single);
// Throws std::invalid_argument when k == 0.
NetworkModel build_nplus(std::size_t k, dueck::SymbolMap map = dueck::w_single);

}  // namespace onebit::net
