#pragma once

#include "dunkl/classical.hpp"
#include "dunkl/models.hpp"

#include <functional>

namespace dunkl {

/// A labeled operator identity. The builder constructs the defect
/// (lhs - rhs) under the given parameter substitution; pass an empty
/// substitution for the fully symbolic check.
struct Identity {
    std::string label;
    std::string ref; // statement of the relation being checked
    int n = 0;       // ambient dimension (drives parameter sampling)
    std::function<NormalOp(const Substitution&)> defect;
};

enum class CheckStatus { Pass, Fail, Skipped };

struct Witness {
    std::vector<int> refl;
    std::vector<int> deriv;
    std::string monomial;
    std::string coeff;
};

struct CheckResult {
    std::string label;
    std::string ref;
    CheckStatus status = CheckStatus::Skipped;
    std::optional<Witness> witness;
    int64_t millis = 0;
    std::string mode = "symbolic";
    std::string diagnostic;
};

struct Suite {
    std::string name;
    std::string model; // empty when not model-bound
    int n = 0;
    ConfigPtr probeConfig; // ring configuration for probe evaluation
    std::vector<Identity> identities;
};

struct RunOptions {
    bool sampled = false;
    uint64_t seed = 0;
    int draws = 3; // independent parameter draws in sampled mode
    int jobs = 1;
    size_t termBudget = 500000;
};

/// All relations among positions, momenta, reflections, Dunkl momenta and
/// Dunkl angular momenta, including the anticommutator forms and the
/// explicit expansions of pi^2, x.pi, Lambda_ij and Lambda^2.
Suite coreSuite(int n, const Substitution& base = {});
/// sl(2,R) relations per contiguous site range, partial-Casimir
/// conservation and involution, split-part conservation, the full explicit
/// Casimir forms, and the degenerate one-site values.
Suite coproductSuite(int n, const Substitution& base = {});
/// The quadratic algebra of angular momenta, curved momenta and reflections
/// with both reductions (flat kappa -> 0, reflectionless mu -> 0).
Suite appendixSuite(int n, const Substitution& base = {});
/// Universal and extra integrals against the model Hamiltonian, the
/// decomposition/functional identities, and the specialization chains.
Suite modelSuite(const ModelSpec& spec, const Substitution& base = {});
/// Universal integrals against a user-supplied Hamiltonian.
Suite customSuite(const ConfigPtr& cfg, const NormalOp& hamiltonian);
/// Deliberately perturbed identities; every entry must fail both paths.
std::vector<Identity> negativeControls(int n);

/// Documented sampling distribution: numerator uniform in +-{1..12},
/// denominator uniform in {1..12}.
Substitution sampleParameters(int n, uint64_t seed);

CheckResult checkIdentity(const Identity& id, const RunOptions& opts);
/// Independent second path: apply the symbolic defect to every probe.
CheckResult probeCheck(const Identity& id, const std::vector<FieldElem>& probes);

/// Run every identity (concurrently up to opts.jobs); results are in suite
/// order regardless of completion order.
std::vector<CheckResult> runSuite(const Suite& suite, const RunOptions& opts);

struct SuiteReport {
    std::string suite;
    std::string model;
    int n = 0;
    std::string mode;
    std::optional<uint64_t> seed;
    std::vector<CheckResult> checks;
};

/// JSON document (array of suite objects with summaries). Timing is zeroed
/// unless withTiming is set, keeping reports byte-identical across runs.
std::string reportJson(const std::vector<SuiteReport>& reports, bool withTiming = false);
std::string reportMarkdown(const std::vector<SuiteReport>& reports);

} // namespace dunkl
