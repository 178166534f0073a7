#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace relwave {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;   // measured values vs limits; deterministic content
    double seconds = 0.0;
};

/// Runs the full built-in verification battery (canonical invariance,
/// invariant Hamiltonian, inertial parameters, the linear time law, flux
/// characteristics, mass conservation, uncertainty products, the overlap
/// identity, the coherence limit, Klein-Gordon residuals, the
/// nonrelativistic limit, hydrogen corrections, the velocity cutoff, the gas
/// maximum, Fokker-Planck stationarity and fit recovery).
std::vector<CriterionResult> run_acceptance_criteria();

/// One line per criterion: "C## PASS|FAIL name detail". Timing is printed
/// only when include_timing is set, keeping the default table deterministic.
void print_acceptance_table(std::ostream& out, const std::vector<CriterionResult>& results,
                            bool include_timing = false);

}  // namespace relwave
