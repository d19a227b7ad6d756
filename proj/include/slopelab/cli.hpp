#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slopelab/serialization.hpp"

namespace slopelab {

// One run of the command-line harness, fully described: the same RunConfig
// (seed included) always produces byte-identical JSON reports, across repeated
// runs and across thread counts. To keep that promise the thread count is
// deliberately *not* part of the serialized config or the content hash — it is
// execution plumbing resolved from --threads or SLOPELAB_THREADS, never
// experiment identity.
struct RunConfig {
    // dispatch
    std::string command;  // modulus | axioms | descend | sequence | oracle |
                          // flow | example | determine
    std::uint64_t seed = 7;

    // output
    std::string format = "json";  // json | csv (csv only where a table exists)
    std::string output_path;      // empty = standard output
    bool inject_failure = false;  // append an always-false labeled property

    // tolerances (all must be positive)
    double criticality_tol = 1e-9;  // profile value treated as a zero
    double quadrature_tol = 1e-6;   // integral comparisons
    double tail_tol = 1e-8;         // tail-increment convergence evidence

    // budgets (all must be >= 1)
    long enumeration_budget = 1000000;  // oracle sweep cap on |grid|^|X|
    long iteration_budget = 1000;       // descent step cap
    long prefix_budget = 64;            // sequence prefix length

    // instance / grid parameters
    int points = 6;            // finite-space size or tabulation nodes
    int spaces = 20;           // oracle sweep width
    int start = -1;            // descent start index (-1 = seeded draw)
    int trials = 1000;         // axiom suite trials
    std::string axiom = "all";     // D0 | D1 | D2 | D3 | translation | all
    std::string paradigm = "global";  // global | local | average | diffusion | all
    std::string name;          // example name / flow function / descend partner
    double rho = 1.0;
    double delta = 1.0;
    double c = 1.0;        // level-curve parameter
    double t_max = 10.0;   // integration horizon
    double dt = 1e-3;      // integrator step
    double x0x = 1.0, x0y = 0.0;
    double reparam_ds = 0.0;  // > 0: arc-length resample + integrability report
    double x_max = 4.0;       // staircase tabulation extent
    int n_max = 50;           // integer-chain size
    double gap_tol = 0.05;    // infimizing gap tolerance
    std::vector<double> grid_values = {0.0, 0.25, 0.5, 1.0};  // oracle value grid

    // runtime-only (not serialized, not hashed)
    int threads = 0;  // 0 = resolve from SLOPELAB_THREADS, else 1

    // Throws PreconditionError on the first violated invariant (unknown
    // command, non-positive tolerance, budget < 1, bad format, ...).
    void validate() const;

    // Canonical serialization: fixed key order, every field that defines the
    // experiment. Delivery settings (`format`, `output_path`, `threads`) are
    // excluded — the same run written elsewhere, or computed on more workers,
    // is the same artifact. from_json still accepts them.
    json to_json() const;

    // Strict parse: unknown keys and wrong types are PreconditionErrors, so a
    // typo in a config file surfaces as a usage error instead of a silently
    // ignored field. Missing keys keep their defaults.
    static RunConfig from_json(const json& j);
};

// FNV-1a 64-bit over the canonical config bytes; the provenance stamp embedded
// in every report as "fnv1a:<16 hex digits>".
std::string content_hash(const RunConfig& config);

struct CommandResult {
    int exit_code = 0;   // 0 = every asserted property holds, 1 = witness inside
    json envelope;       // {"schema","command","config","content_hash","properties","ok","report"}
    std::string csv;     // populated iff csv_available
    bool csv_available = false;
};

// Dispatches one validated RunConfig to the owning module and assembles the
// report envelope. Mathematical-diagnosis errors raised mid-run (step too
// large, hypothesis failure, no witness, infinite modulus, critical member,
// degenerate curve) become failed properties with the error as witness and
// exit code 1. Malformed-input errors (precondition, domain, budget, metric
// violation, space mismatch) propagate to the caller, which maps them to the
// usage exit code 2.
CommandResult run_command(const RunConfig& config);

}  // namespace slopelab
