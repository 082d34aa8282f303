#pragma once

#include "omack/mackey.hpp"

#include <string>

namespace omack {

// Lewis diagram: one node per level labeled with its dimension (and basis
// when available), solid edges for cover restrictions, bold colored edges
// for cover transfers, dashed self-loops marking nontrivial Weyl actions.
std::string lewis_diagram_dot(const MackeyFunctor& m, const std::string& title = "mackey");

// The relation of a transfer system over the subgroup lattice.
std::string transfer_system_dot(const TransferSystem& ts, const std::string& title = "system");

} // namespace omack
