#pragma once

#include "dunkl/operators.hpp"

namespace dunkl {

enum class Model {
    Osc,
    SW,
    Higgs,
    CurvedSW,
    DarbouxIII,
    GenDarbouxIII,
    KC,
    QGenKC,
    CurvedKC,
    QGenCurvedKC,
    TaubNUT,
    QGenTaubNUT
};

struct ModelInfo {
    Model model;
    std::string name;        // stable CLI name
    std::string description;
    bool kcFamily;           // needs r and N >= 2
    bool curved;             // uses kappa
    bool darboux;            // uses lambda
    bool taubnut;            // uses eta
    int betaGammaSites;      // -1: all, 0: none, -2: all but last (quasi-generalized)
    int extraIntegralCount(int n) const;
};

const std::vector<ModelInfo>& listModels();
const ModelInfo& modelInfo(Model m);
std::optional<Model> modelByName(const std::string& name);

struct ModelSpec {
    Model model;
    int n;
    ConfigPtr config; // flags already set for the model

    static ModelSpec make(Model m, int n, Substitution subs = {});
};

struct ModelBundle {
    ModelSpec spec;
    NormalOp hamiltonian;
    std::vector<std::pair<std::string, NormalOp>> universalIntegrals; // 2N-3 of them
    std::vector<std::pair<std::string, NormalOp>> extraIntegrals;
};

NormalOp buildHamiltonian(const ModelSpec& spec);
std::vector<std::pair<std::string, NormalOp>> buildExtraIntegrals(const ModelSpec& spec,
                                                                  const NormalOp& hamiltonian);
/// The 2N-3 universal integrals: left Casimir momentum parts for m = 2..N
/// and right ones for m = 2..N-1.
std::vector<std::pair<std::string, NormalOp>> universalIntegrals(const ModelSpec& spec);

struct NamedIdentity {
    std::string label;
    std::string ref; // formula statement of the relation
    NormalOp lhs, rhs;
};

struct IdentityMeta {
    std::string label, ref;
};

/// Labels of the decomposition identities without building any operator.
std::vector<IdentityMeta> decompositionMeta(Model m);
/// Model-specific trace/decomposition/functional relations.
std::vector<NamedIdentity> decompositionIdentities(const ModelSpec& spec);

ModelBundle buildModel(const ModelSpec& spec);

} // namespace dunkl
