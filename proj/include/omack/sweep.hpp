#pragma once

#include "omack/mackey.hpp"

#include <string>
#include <vector>

namespace omack {

struct SweepReport {
    int systems = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Per-system check batteries. Both return human-readable failure notes
// (empty = everything holds). These are the serial reference kernels; the
// *_sweep drivers run them over a system list, optionally in parallel.
std::vector<std::string> check_system_burnside(const TransferSystem& ts);
std::vector<std::string> check_system_mackey(const TransferSystem& ts, bool with_oracles,
                                             int represented_count);

SweepReport burnside_sweep(LatticePtr lat, const std::vector<TransferSystem>& systems, int jobs = 0);
SweepReport burnside_sweep_serial(LatticePtr lat, const std::vector<TransferSystem>& systems);

struct MackeySweepOptions {
    int jobs = 0;
    bool with_oracles = true;
    int represented = 3;
};
SweepReport mackey_sweep(LatticePtr lat, const std::vector<TransferSystem>& systems,
                         const MackeySweepOptions& opt);
SweepReport mackey_sweep_serial(LatticePtr lat, const std::vector<TransferSystem>& systems,
                                const MackeySweepOptions& opt);

// Alternative displayed form of the coinduction transfer, used to
// cross-check the implemented one on every swept instance.
QMatrix coinduct_tr_alt(const TransferSystem& ts, int label, const MackeyFunctor& m_class, int l,
                        int k);

} // namespace omack
