#include "dunkl/verify.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>

namespace dunkl {

namespace {

using Clock = std::chrono::steady_clock;
using OJson = nlohmann::ordered_json;

Substitution merged(const Substitution& base, const Substitution& s) {
    Substitution m = base;
    for (const auto& [k, v] : s) m[k] = v;
    return m;
}

Substitution without(Substitution s, std::initializer_list<int> ids) {
    for (int id : ids) s.erase(id);
    return s;
}

std::string ax(int i) { return std::to_string(i + 1); }

// delta_ij (1 + 2 mu_j R_j) scaled by i hbar
NormalOp ihOnePlus2MuR(const ConfigPtr& c, int j) {
    return (NormalOp::identity(c) +
            NormalOp::reflOp(c, j).scaled(muScalar(c, j).scaled(GaussianRational(2))))
        .scaled(iHbarScalar(c));
}

NormalOp reflectionTerms(const NormalOp& op) {
    NormalOp out = NormalOp::zero(op.config());
    for (const auto& [k, c] : op.terms()) {
        bool hasRefl = false;
        for (uint8_t e : k.refl) hasRefl = hasRefl || e;
        if (hasRefl) out.insert(k, c);
    }
    return out;
}

Witness witnessOf(const NormalOp& defect) {
    Witness w;
    auto t = defect.smallestTerm();
    if (!t) return w;
    for (uint8_t e : t->first.refl) w.refl.push_back(int(e));
    for (uint32_t e : t->first.deriv) w.deriv.push_back(int(e));
    const FieldElem& c = t->second;
    if (!c.num().empty()) {
        const auto& [m, ps] = *c.num().begin();
        std::string mono;
        for (size_t i = 0; i < m.xexp.size(); ++i) {
            if (m.xexp[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (m.xexp[i] != 1) mono += "^" + std::to_string(m.xexp[i]);
        }
        if (m.rflag) mono += mono.empty() ? "r" : "*r";
        if (mono.empty()) mono = "1";
        w.monomial = mono;
    }
    w.coeff = c.str();
    return w;
}

} // namespace

Substitution sampleParameters(int n, uint64_t seed) {
    std::mt19937_64 eng(seed);
    Substitution s;
    for (int id = 0; id < paramCount(n); ++id) {
        long num = 1 + long(eng() % 12);
        if (eng() & 1) num = -num;
        long den = 1 + long(eng() % 12);
        mpq_class q(num, den);
        q.canonicalize();
        s[id] = q;
    }
    return s;
}

CheckResult checkIdentity(const Identity& id, const RunOptions& opts) {
    CheckResult res;
    res.label = id.label;
    res.ref = id.ref;
    res.mode = opts.sampled ? "sampled" : "symbolic";
    auto start = Clock::now();
    TermBudgetGuard guard(opts.termBudget);
    try {
        if (!opts.sampled) {
            NormalOp defect = id.defect({});
            if (defect.isZero()) {
                res.status = CheckStatus::Pass;
            } else {
                res.status = CheckStatus::Fail;
                res.witness = witnessOf(defect);
            }
        } else {
            res.status = CheckStatus::Pass;
            for (int d = 0; d < opts.draws && res.status == CheckStatus::Pass; ++d) {
                Substitution s = sampleParameters(id.n, opts.seed + uint64_t(d));
                NormalOp defect = id.defect(s);
                if (!defect.isZero()) {
                    res.status = CheckStatus::Fail;
                    res.witness = witnessOf(defect);
                }
            }
        }
    } catch (const TermBudgetExceeded& e) {
        res.status = CheckStatus::Skipped;
        res.diagnostic = e.what();
    }
    res.millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    return res;
}

CheckResult probeCheck(const Identity& id, const std::vector<FieldElem>& probes) {
    CheckResult res;
    res.label = id.label;
    res.ref = id.ref;
    res.mode = "probe";
    auto start = Clock::now();
    NormalOp defect = id.defect({});
    res.status = CheckStatus::Pass;
    for (const auto& probe : probes) {
        FieldElem out = defect.apply(probe);
        if (!out.isZero()) {
            res.status = CheckStatus::Fail;
            Witness w;
            w.monomial = probe.str();
            w.coeff = out.str();
            res.witness = w;
            break;
        }
    }
    res.millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    return res;
}

std::vector<CheckResult> runSuite(const Suite& suite, const RunOptions& opts) {
    std::vector<CheckResult> results(suite.identities.size());
    int jobs = std::max(1, opts.jobs);
    if (jobs == 1 || suite.identities.size() <= 1) {
        for (size_t i = 0; i < suite.identities.size(); ++i)
            results[i] = checkIdentity(suite.identities[i], opts);
        return results;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= suite.identities.size()) return;
            results[i] = checkIdentity(suite.identities[i], opts);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

// ---------------------------------------------------------------------------
// suites

Suite coreSuite(int n, const Substitution& base) {
    Suite suite;
    suite.name = "core";
    suite.n = n;
    const bool useR = n >= 2;
    suite.probeConfig = SiteConfig::make(n, useR, false, base);
    auto mk = [=](const Substitution& s) {
        return SiteConfig::make(n, useR, false, merged(s, base));
    };
    auto& ids = suite.identities;
    auto add = [&](std::string label, std::string ref,
                   std::function<NormalOp(const ConfigPtr&)> f) {
        ids.push_back(
            {std::move(label), std::move(ref), n, [=](const Substitution& s) { return f(mk(s)); }});
    };

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i < j) {
                add("heisenberg.xx." + ax(i) + ax(j), "[x_i, x_j] = 0", [=](const ConfigPtr& c) {
                    return commutator(atomicOperator(c, AtomicKind::Position, i),
                                      atomicOperator(c, AtomicKind::Position, j));
                });
                add("heisenberg.pp." + ax(i) + ax(j), "[p_i, p_j] = 0", [=](const ConfigPtr& c) {
                    return commutator(atomicOperator(c, AtomicKind::Momentum, i),
                                      atomicOperator(c, AtomicKind::Momentum, j));
                });
                add("reflection.RR." + ax(i) + ax(j), "[R_i, R_j] = 0", [=](const ConfigPtr& c) {
                    return commutator(NormalOp::reflOp(c, i), NormalOp::reflOp(c, j));
                });
                add("dunkl.pipi." + ax(i) + ax(j), "[pi_i, pi_j] = 0", [=](const ConfigPtr& c) {
                    return commutator(dunklMomentum(c, i), dunklMomentum(c, j));
                });
            }
            add("heisenberg.xp." + ax(i) + ax(j), "[x_i, p_j] = i hbar delta_ij",
                [=](const ConfigPtr& c) {
                    NormalOp lhs = commutator(atomicOperator(c, AtomicKind::Position, i),
                                              atomicOperator(c, AtomicKind::Momentum, j));
                    if (i == j) lhs = lhs - NormalOp::identity(c).scaled(iHbarScalar(c));
                    return lhs;
                });
            add("reflection.xR." + ax(i) + ax(j), "[x_i, R_j] = 2 delta_ij x_i R_j",
                [=](const ConfigPtr& c) {
                    NormalOp lhs = commutator(atomicOperator(c, AtomicKind::Position, i),
                                              NormalOp::reflOp(c, j));
                    if (i == j)
                        lhs = lhs - (atomicOperator(c, AtomicKind::Position, i) *
                                     NormalOp::reflOp(c, j))
                                        .scaled(GaussianRational(2));
                    return lhs;
                });
            add("reflection.pR." + ax(i) + ax(j), "[p_i, R_j] = 2 delta_ij p_i R_j",
                [=](const ConfigPtr& c) {
                    NormalOp lhs = commutator(atomicOperator(c, AtomicKind::Momentum, i),
                                              NormalOp::reflOp(c, j));
                    if (i == j)
                        lhs = lhs - (atomicOperator(c, AtomicKind::Momentum, i) *
                                     NormalOp::reflOp(c, j))
                                        .scaled(GaussianRational(2));
                    return lhs;
                });
            add("dunkl.xpi." + ax(i) + ax(j), "[x_i, pi_j] = i hbar delta_ij (1 + 2 mu_j R_j)",
                [=](const ConfigPtr& c) {
                    NormalOp lhs = commutator(atomicOperator(c, AtomicKind::Position, i),
                                              dunklMomentum(c, j));
                    if (i == j) lhs = lhs - ihOnePlus2MuR(c, j);
                    return lhs;
                });
            add("dunkl.piR." + ax(i) + ax(j), "[pi_i, R_j] = 2 delta_ij pi_j R_j",
                [=](const ConfigPtr& c) {
                    NormalOp lhs = commutator(dunklMomentum(c, i), NormalOp::reflOp(c, j));
                    if (i == j)
                        lhs = lhs - (dunklMomentum(c, j) * NormalOp::reflOp(c, j))
                                        .scaled(GaussianRational(2));
                    return lhs;
                });
        }
    }

    // angular momentum sector
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            add("lambda.expansion." + ax(i) + ax(j),
                "Lambda_ij = L_ij + i hbar (mu_i x_j/x_i (1-R_i) - mu_j x_i/x_j (1-R_j))",
                [=](const ConfigPtr& c) {
                    NormalOp plain = atomicOperator(c, AtomicKind::Position, i) *
                                         atomicOperator(c, AtomicKind::Momentum, j) -
                                     atomicOperator(c, AtomicKind::Position, j) *
                                         atomicOperator(c, AtomicKind::Momentum, i);
                    FieldElem xji =
                        FieldElem::coordinate(c, j) * FieldElem::coordinate(c, i, -1);
                    FieldElem xij =
                        FieldElem::coordinate(c, i) * FieldElem::coordinate(c, j, -1);
                    NormalOp corrI =
                        (NormalOp::mulBy(xji) - NormalOp::mulBy(xji) * NormalOp::reflOp(c, i))
                            .scaled(iHbarScalar(c) * muScalar(c, i));
                    NormalOp corrJ =
                        (NormalOp::mulBy(xij) - NormalOp::mulBy(xij) * NormalOp::reflOp(c, j))
                            .scaled(iHbarScalar(c) * muScalar(c, j));
                    return angMomentum(c, i, j) - (plain + corrI - corrJ);
                });
            for (int k = 0; k < n; ++k) {
                add("lambda.R." + ax(i) + ax(j) + "." + ax(k),
                    "[Lambda_ij, R_k] = 2 delta_ik Lambda_ij R_k + 2 delta_jk Lambda_ik R_j",
                    [=](const ConfigPtr& c) {
                        NormalOp lhs =
                            commutator(angMomentum(c, i, j), NormalOp::reflOp(c, k));
                        NormalOp rhs = NormalOp::zero(c);
                        if (k == i)
                            rhs = rhs + (angMomentum(c, i, j) * NormalOp::reflOp(c, k))
                                            .scaled(GaussianRational(2));
                        if (k == j)
                            rhs = rhs + (angMomentum(c, i, k) * NormalOp::reflOp(c, j))
                                            .scaled(GaussianRational(2));
                        return lhs - rhs;
                    });
                if (k != i && k != j)
                    add("lambda.R.anticomm.vanishes." + ax(i) + ax(j) + "." + ax(k),
                        "[Lambda_ij, R_k] = 0 for distinct i, j, k", [=](const ConfigPtr& c) {
                            return commutator(angMomentum(c, i, j), NormalOp::reflOp(c, k));
                        });
            }
            add("lambda.R.anticomm.i." + ax(i) + ax(j), "{Lambda_ij, R_i} = 0",
                [=](const ConfigPtr& c) {
                    return anticommutator(angMomentum(c, i, j), NormalOp::reflOp(c, i));
                });
            add("lambda.R.anticomm.j." + ax(i) + ax(j), "{Lambda_ij, R_j} = 0",
                [=](const ConfigPtr& c) {
                    return anticommutator(angMomentum(c, i, j), NormalOp::reflOp(c, j));
                });
            for (int k = 0; k < n; ++k)
                for (int l = k + 1; l < n; ++l)
                    add("lambda.comm." + ax(i) + ax(j) + "." + ax(k) + ax(l),
                        "[Lambda_ij, Lambda_kl] = i hbar (d_ik (1+2mu_k R_k) Lambda_jl + "
                        "d_jl (1+2mu_l R_l) Lambda_ik - d_il (1+2mu_i R_i) Lambda_jk - "
                        "d_jk (1+2mu_j R_j) Lambda_il)",
                        [=](const ConfigPtr& c) {
                            auto lam = [&](int a, int b) {
                                if (a == b) return NormalOp::zero(c);
                                return angMomentum(c, a, b);
                            };
                            NormalOp lhs = commutator(lam(i, j), lam(k, l));
                            NormalOp rhs = NormalOp::zero(c);
                            if (i == k) rhs = rhs + ihOnePlus2MuR(c, k) * lam(j, l);
                            if (j == l) rhs = rhs + ihOnePlus2MuR(c, l) * lam(i, k);
                            if (i == l) rhs = rhs - ihOnePlus2MuR(c, i) * lam(j, k);
                            if (j == k) rhs = rhs - ihOnePlus2MuR(c, j) * lam(i, l);
                            return lhs - rhs;
                        });
        }

    // explicit expansions
    add("dunkl.laplacian", "pi^2 = -hbar^2 sum_i (d_i^2 + 2 mu_i/x_i d_i - mu_i/x_i^2 (1-R_i))",
        [=](const ConfigPtr& c) {
            NormalOp lap = NormalOp::zero(c);
            for (int i = 0; i < n; ++i) {
                FieldElem invX = FieldElem::coordinate(c, i, -1);
                FieldElem invX2 = FieldElem::coordinate(c, i, -2);
                lap = lap + NormalOp::partialOp(c, i) * NormalOp::partialOp(c, i) +
                      NormalOp::mulBy(invX.scaled(muScalar(c, i).scaled(GaussianRational(2)))) *
                          NormalOp::partialOp(c, i) -
                      NormalOp::mulBy(invX2.scaled(muScalar(c, i))) +
                      NormalOp::mulBy(invX2.scaled(muScalar(c, i))) * NormalOp::reflOp(c, i);
            }
            return piSquared(c) -
                   lap.scaled(-(hbarScalar(c) * hbarScalar(c)));
        });
    add("dunkl.xdotpi", "x.pi = -i hbar (sum_i x_i d_i + mu_i (1 - R_i))",
        [=](const ConfigPtr& c) {
            NormalOp rhs = NormalOp::zero(c);
            for (int i = 0; i < n; ++i) {
                rhs = rhs + NormalOp::mulBy(FieldElem::coordinate(c, i)) *
                                NormalOp::partialOp(c, i) +
                      NormalOp::identity(c).scaled(muScalar(c, i)) -
                      NormalOp::reflOp(c, i).scaled(muScalar(c, i));
            }
            return xDotPi(c) - rhs.scaled(-iHbarScalar(c));
        });
    if (n >= 2)
        add("lambda.squared.explicit",
            "Lambda^2 = hbar^2 (-x^2 Lap_D + (x.grad_D)^2 + (x.grad_D)(N-2+2 sum mu_i R_i))",
            [=](const ConfigPtr& c) {
                NormalOp xDotD = NormalOp::zero(c);
                NormalOp lapD = NormalOp::zero(c);
                for (int i = 0; i < n; ++i) {
                    xDotD = xDotD + NormalOp::mulBy(FieldElem::coordinate(c, i)) *
                                        dunklDerivative(c, i);
                    lapD = lapD + dunklDerivative(c, i) * dunklDerivative(c, i);
                }
                NormalOp inner =
                    NormalOp::identity(c).scaled(
                        ParamScalar::constant(n, GaussianRational(n - 2))) +
                    muReflSum(c).scaled(GaussianRational(2));
                NormalOp rhs = (NormalOp::mulBy(-FieldElem::atomPoly(c, A_S)) * lapD +
                                xDotD * xDotD + xDotD * inner)
                                   .scaled(hbarScalar(c) * hbarScalar(c));
                return totalLambdaSq(c) - rhs;
            });
    return suite;
}

Suite coproductSuite(int n, const Substitution& base) {
    Suite suite;
    suite.name = "coproduct";
    suite.n = n;
    suite.probeConfig = SiteConfig::make(n, false, true, base);
    auto mk = [=](const Substitution& s) {
        return SiteConfig::make(n, false, true, merged(s, base));
    };
    auto& ids = suite.identities;
    auto add = [&](std::string label, std::string ref,
                   std::function<NormalOp(const ConfigPtr&)> f) {
        ids.push_back(
            {std::move(label), std::move(ref), n, [=](const Substitution& s) { return f(mk(s)); }});
    };
    ParamScalar h2 = ParamScalar::variable(n, P_HBAR).pow(2);

    // sl2 relations on every contiguous range
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            std::string rng = ax(a) + "-" + ax(b);
            add("sl2.minusplus." + rng, "[J-, J+] = 4 i hbar J3", [=](const ConfigPtr& c) {
                Sl2Triple t = sl2Realization(c, a, b);
                return commutator(t.jMinus, t.jPlus) -
                       t.j3.scaled(iHbarScalar(c).scaled(GaussianRational(4)));
            });
            add("sl2.3plus." + rng, "[J3, J+] = 2 i hbar J+", [=](const ConfigPtr& c) {
                Sl2Triple t = sl2Realization(c, a, b);
                return commutator(t.j3, t.jPlus) -
                       t.jPlus.scaled(iHbarScalar(c).scaled(GaussianRational(2)));
            });
            add("sl2.3minus." + rng, "[J3, J-] = -2 i hbar J-", [=](const ConfigPtr& c) {
                Sl2Triple t = sl2Realization(c, a, b);
                return commutator(t.j3, t.jMinus) +
                       t.jMinus.scaled(iHbarScalar(c).scaled(GaussianRational(2)));
            });
        }

    // conservation of the partial Casimirs and of their split parts
    struct Side {
        const char* tag;
        bool left;
    };
    for (Side side : {Side{"left", true}, Side{"right", false}}) {
        int mMax = side.left ? n : n - 1;
        for (int m = 2; m <= mMax; ++m) {
            std::string cm = std::string(side.tag) + std::to_string(m);
            auto cas = [side, m](const ConfigPtr& c) {
                return side.left ? leftCasimir(c, m) : rightCasimir(c, m);
            };
            const char* alpha[] = {"plus", "minus", "3"};
            for (int ai = 0; ai < 3; ++ai) {
                int aIdx = ai;
                add("casimir.commutes." + cm + ".J" + alpha[ai], "[C^[m], J_alpha] = 0",
                    [=](const ConfigPtr& c) {
                        Sl2Triple t = sl2Realization(c);
                        NormalOp j = aIdx == 0 ? t.jPlus : (aIdx == 1 ? t.jMinus : t.j3);
                        return commutator(cas(c).full, j);
                    });
                add("casimir.split1.commutes." + cm + ".J" + alpha[ai],
                    "[C^[m]_1, J_alpha] = 0 (momentum part conserved separately)",
                    [=](const ConfigPtr& c) {
                        Sl2Triple t = sl2Realization(c);
                        NormalOp j = aIdx == 0 ? t.jPlus : (aIdx == 1 ? t.jMinus : t.j3);
                        return commutator(cas(c).momentumPart, j);
                    });
                add("casimir.split2.commutes." + cm + ".J" + alpha[ai],
                    "[C^[m]_2, J_alpha] = 0 (reflection part conserved separately)",
                    [=](const ConfigPtr& c) {
                        Sl2Triple t = sl2Realization(c);
                        NormalOp j = aIdx == 0 ? t.jPlus : (aIdx == 1 ? t.jMinus : t.j3);
                        return commutator(cas(c).reflectionPart, j);
                    });
            }
            add("casimir.split." + cm, "C^[m] = C^[m]_1 + hbar^2 C^[m]_2",
                [=](const ConfigPtr& c) {
                    CasimirParts p = cas(c);
                    return p.full - (p.momentumPart + p.reflectionPart.scaled(h2));
                });
        }
        // pairwise involution
        for (int m = 2; m <= mMax; ++m)
            for (int m2 = m + 1; m2 <= mMax; ++m2)
                add(std::string("casimir.involution.") + side.tag + std::to_string(m) + "." +
                        std::to_string(m2),
                    "[C^[m], C^[m']] = 0", [=](const ConfigPtr& c) {
                        auto casm = side.left ? leftCasimir(c, m) : rightCasimir(c, m);
                        auto casm2 = side.left ? leftCasimir(c, m2) : rightCasimir(c, m2);
                        return commutator(casm.full, casm2.full);
                    });
    }

    add("casimir.leftright.N", "C^[N] = C_[N]", [=](const ConfigPtr& c) {
        return leftCasimir(c, n).full - rightCasimir(c, n).full;
    });

    // one-site closed form, left and right
    add("casimir.onesite.left",
        "C^[1] = beta_1 + gamma_1 R_1 - hbar^2 (3/4 - mu_1(mu_1 - R_1))",
        [=](const ConfigPtr& c) {
            ParamScalar mu = muScalar(c, 0);
            NormalOp expect =
                NormalOp::identity(c).scaled(ParamScalar::variable(n, betaParam(n, 0))) +
                NormalOp::reflOp(c, 0).scaled(ParamScalar::variable(n, gammaParam(n, 0))) -
                (NormalOp::identity(c).scaled(GaussianRational(3, 4)) -
                 NormalOp::identity(c).scaled(mu * mu) + NormalOp::reflOp(c, 0).scaled(mu))
                    .scaled(h2);
            return leftCasimir(c, 1).full - expect;
        });
    add("casimir.onesite.right",
        "C_[1] = beta_N + gamma_N R_N - hbar^2 (3/4 - mu_N(mu_N - R_N))",
        [=](const ConfigPtr& c) {
            int i = n - 1;
            ParamScalar mu = muScalar(c, i);
            NormalOp expect =
                NormalOp::identity(c).scaled(ParamScalar::variable(n, betaParam(n, i))) +
                NormalOp::reflOp(c, i).scaled(ParamScalar::variable(n, gammaParam(n, i))) -
                (NormalOp::identity(c).scaled(GaussianRational(3, 4)) -
                 NormalOp::identity(c).scaled(mu * mu) + NormalOp::reflOp(c, i).scaled(mu))
                    .scaled(h2);
            return rightCasimir(c, 1).full - expect;
        });

    // product form of the centrifugal sum
    for (int m = 2; m <= n; ++m)
        add("casimir.productform.left" + std::to_string(m),
            "C^[m]_1 = sum Lambda_ij^2 + (sum x_i^2)(sum (beta_i + gamma_i R_i)/x_i^2)",
            [=](const ConfigPtr& c) {
                NormalOp rhs = NormalOp::zero(c);
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j) {
                        NormalOp lam = angMomentum(c, i, j);
                        rhs = rhs + lam * lam;
                    }
                FieldElem xsq = FieldElem::zero(c);
                NormalOp cent = NormalOp::zero(c);
                for (int i = 0; i < m; ++i) {
                    xsq = xsq + FieldElem::coordinate(c, i, 2);
                    cent = cent + centrifugalTerm(c, i);
                }
                rhs = rhs + NormalOp::mulBy(xsq) * cent;
                return leftCasimir(c, m).momentumPart - rhs;
            });

    // reflectionless reduction: with beta = gamma = 0 the momentum part is
    // the sum of angular momentum squares
    for (int m = 2; m <= n; ++m)
        ids.push_back(
            {"casimir.lambdasum.left" + std::to_string(m),
             "C^[m]_1 -> sum_{i<j<=m} Lambda_ij^2 when beta = gamma = 0", n,
             [=](const Substitution& sIn) {
                 Substitution zero;
                 for (int i = 0; i < n; ++i) {
                     zero[betaParam(n, i)] = 0;
                     zero[gammaParam(n, i)] = 0;
                 }
                 Substitution s = merged(sIn, base);
                 for (const auto& [k, v] : zero) s.erase(k);
                 auto c = SiteConfig::make(n, false, true, s);
                 auto cz = c->with(zero);
                 NormalOp rhs = NormalOp::zero(cz);
                 for (int i = 0; i < m; ++i)
                     for (int j = i + 1; j < m; ++j) {
                         NormalOp lam = angMomentum(cz, i, j);
                         rhs = rhs + lam * lam;
                     }
                 return leftCasimir(c, m).momentumPart.substituted(zero) - rhs;
             }});
    return suite;
}

Suite appendixSuite(int n, const Substitution& base) {
    Suite suite;
    suite.name = "appendix";
    suite.n = n;
    suite.probeConfig = SiteConfig::make(n, false, false, base);
    auto mk = [=](const Substitution& s) {
        return SiteConfig::make(n, false, false, merged(s, base));
    };
    auto& ids = suite.identities;
    auto add = [&](std::string label, std::string ref,
                   std::function<NormalOp(const ConfigPtr&)> f) {
        ids.push_back(
            {std::move(label), std::move(ref), n, [=](const Substitution& s) { return f(mk(s)); }});
    };
    ParamScalar kappa = ParamScalar::variable(n, P_KAPPA);

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            add("quadratic.gammagamma." + ax(i) + ax(j),
                "[Gamma_i, Gamma_j] = 4 i hbar kappa Lambda_ij", [=](const ConfigPtr& c) {
                    return commutator(curvedMomentum(c, i), curvedMomentum(c, j)) -
                           angMomentum(c, i, j).scaled(
                               (iHbarScalar(c) * kappa).scaled(GaussianRational(4)));
                });
            for (int k = 0; k < n; ++k)
                add("quadratic.lambdagamma." + ax(i) + ax(j) + "." + ax(k),
                    "[Lambda_ij, Gamma_k] = i hbar (d_ik (1+2mu_i R_i) Gamma_j - "
                    "d_jk (1+2mu_j R_j) Gamma_i)",
                    [=](const ConfigPtr& c) {
                        NormalOp lhs = commutator(angMomentum(c, i, j), curvedMomentum(c, k));
                        NormalOp rhs = NormalOp::zero(c);
                        if (k == i) rhs = rhs + ihOnePlus2MuR(c, i) * curvedMomentum(c, j);
                        if (k == j) rhs = rhs - ihOnePlus2MuR(c, j) * curvedMomentum(c, i);
                        return lhs - rhs;
                    });
            for (int k = 0; k < n; ++k)
                for (int l = k + 1; l < n; ++l)
                    add("quadratic.lambdalambda." + ax(i) + ax(j) + "." + ax(k) + ax(l),
                        "[Lambda_ij, Lambda_kl] closes on the reflection-extended so(N)",
                        [=](const ConfigPtr& c) {
                            auto lam = [&](int a, int b) {
                                if (a == b) return NormalOp::zero(c);
                                return angMomentum(c, a, b);
                            };
                            NormalOp lhs = commutator(lam(i, j), lam(k, l));
                            NormalOp rhs = NormalOp::zero(c);
                            if (i == k) rhs = rhs + ihOnePlus2MuR(c, k) * lam(j, l);
                            if (j == l) rhs = rhs + ihOnePlus2MuR(c, l) * lam(i, k);
                            if (i == l) rhs = rhs - ihOnePlus2MuR(c, i) * lam(j, k);
                            if (j == k) rhs = rhs - ihOnePlus2MuR(c, j) * lam(i, l);
                            return lhs - rhs;
                        });
            add("quadratic.lambdaR.anticomm." + ax(i) + ax(j),
                "{Lambda_ij, R_i} = {Lambda_ij, R_j} = 0", [=](const ConfigPtr& c) {
                    return anticommutator(angMomentum(c, i, j), NormalOp::reflOp(c, i)) +
                           anticommutator(angMomentum(c, i, j), NormalOp::reflOp(c, j));
                });
            for (int k = 0; k < n; ++k)
                add("quadratic.lambdaR." + ax(i) + ax(j) + "." + ax(k),
                    "[Lambda_ij, R_k] = 2 d_ik Lambda_ij R_k + 2 d_jk Lambda_ik R_j",
                    [=](const ConfigPtr& c) {
                        NormalOp lhs = commutator(angMomentum(c, i, j), NormalOp::reflOp(c, k));
                        NormalOp rhs = NormalOp::zero(c);
                        if (k == i)
                            rhs = rhs + (angMomentum(c, i, j) * NormalOp::reflOp(c, k))
                                            .scaled(GaussianRational(2));
                        if (k == j)
                            rhs = rhs + (angMomentum(c, i, k) * NormalOp::reflOp(c, j))
                                            .scaled(GaussianRational(2));
                        return lhs - rhs;
                    });
            add("quadratic.RR." + ax(i) + ax(j), "[R_i, R_j] = 0", [=](const ConfigPtr& c) {
                return commutator(NormalOp::reflOp(c, i), NormalOp::reflOp(c, j));
            });
        }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            add("quadratic.gammaR." + ax(i) + ax(j),
                "[Gamma_i, R_j] = 2 delta_ij Gamma_j R_j", [=](const ConfigPtr& c) {
                    NormalOp lhs = commutator(curvedMomentum(c, i), NormalOp::reflOp(c, j));
                    if (i == j)
                        lhs = lhs - (curvedMomentum(c, j) * NormalOp::reflOp(c, j))
                                        .scaled(GaussianRational(2));
                    return lhs;
                });
        add("quadratic.gammaR.anticomm." + ax(i), "{Gamma_i, R_i} = 0",
            [=](const ConfigPtr& c) {
                return anticommutator(curvedMomentum(c, i), NormalOp::reflOp(c, i));
            });
        ids.push_back({"contraction.flat." + ax(i), "Gamma_i -> pi_i as kappa -> 0", n,
                       [=](const Substitution& sIn) {
                           Substitution s = without(merged(sIn, base), {P_KAPPA});
                           auto c = SiteConfig::make(n, false, false, s);
                           Substitution flat{{P_KAPPA, 0}};
                           return curvedMomentum(c, i).substituted(flat) -
                                  dunklMomentum(c->with(flat), i);
                       }});
    }

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            add("contraction.flat.comm." + ax(i) + ax(j), "[Gamma_i, Gamma_j] -> 0 as kappa -> 0",
                [=](const ConfigPtr& c) {
                    Substitution flat{{P_KAPPA, 0}};
                    return commutator(curvedMomentum(c, i), curvedMomentum(c, j))
                        .substituted(flat);
                });
            // reflectionless reduction: the Lie algebra so_kappa(N+1)
            add("reduction.lie.lambdagamma." + ax(i) + ax(j),
                "[Lambda_ij, Gamma_i] -> i hbar Gamma_j when mu -> 0",
                [=](const ConfigPtr& c) {
                    Substitution zero;
                    for (int a = 0; a < n; ++a) zero[muParam(a)] = 0;
                    auto cz = c->with(zero);
                    return commutator(angMomentum(c, i, j), curvedMomentum(c, i))
                               .substituted(zero) -
                           curvedMomentum(cz, j).scaled(iHbarScalar(cz));
                });
            add("reduction.lie.gammagamma." + ax(i) + ax(j),
                "[Gamma_i, Gamma_j] = 4 i hbar kappa Lambda_ij when mu -> 0",
                [=](const ConfigPtr& c) {
                    Substitution zero;
                    for (int a = 0; a < n; ++a) zero[muParam(a)] = 0;
                    auto cz = c->with(zero);
                    return commutator(curvedMomentum(c, i), curvedMomentum(c, j))
                               .substituted(zero) -
                           angMomentum(cz, i, j).scaled(
                               (iHbarScalar(cz) * kappa.substituted(zero))
                                   .scaled(GaussianRational(4)));
                });
        }
    return suite;
}

Suite modelSuite(const ModelSpec& spec, const Substitution& base) {
    Suite suite;
    const ModelInfo& info = modelInfo(spec.model);
    suite.name = "model";
    suite.model = info.name;
    suite.n = spec.n;
    suite.probeConfig = ModelSpec::make(spec.model, spec.n, base).config;
    const Model model = spec.model;
    const int n = spec.n;
    auto mkSpec = [=](const Substitution& s) {
        return ModelSpec::make(model, n, merged(s, base));
    };
    auto& ids = suite.identities;

    // universal integrals
    for (int m = 2; m <= n; ++m)
        ids.push_back({"universal.left" + std::to_string(m) + ".commutes",
                       "[C^[m], H] = 0", n, [=](const Substitution& s) {
                           ModelSpec sp = mkSpec(s);
                           return commutator(leftCasimir(sp.config, m).momentumPart,
                                             buildHamiltonian(sp));
                       }});
    for (int m = 2; m <= n - 1; ++m)
        ids.push_back({"universal.right" + std::to_string(m) + ".commutes",
                       "[C_[m], H] = 0", n, [=](const Substitution& s) {
                           ModelSpec sp = mkSpec(s);
                           return commutator(rightCasimir(sp.config, m).momentumPart,
                                             buildHamiltonian(sp));
                       }});

    // extra integrals
    int extraCount = info.extraIntegralCount(n);
    for (int idx = 0; idx < extraCount; ++idx)
        ids.push_back({"extra." + std::to_string(idx) + ".commutes",
                       "[extra integral, H] = 0", n, [=](const Substitution& s) {
                           ModelSpec sp = mkSpec(s);
                           NormalOp h = buildHamiltonian(sp);
                           auto extras = buildExtraIntegrals(sp, h);
                           return commutator(extras.at(size_t(idx)).second, h);
                       }});

    // decomposition / functional identities
    {
        auto metas = decompositionMeta(model);
        for (size_t idx = 0; idx < metas.size(); ++idx) {
            ids.push_back({"structure." + metas[idx].label, metas[idx].ref, n,
                           [=](const Substitution& s) {
                               auto di = decompositionIdentities(mkSpec(s)).at(idx);
                               return di.lhs - di.rhs;
                           }});
        }
    }

    // specialization chains
    auto addChain = [&](const char* label, int param, Model target, const char* ref) {
        ids.push_back({label, ref, n, [=](const Substitution& sIn) {
                           Substitution s = without(merged(sIn, base), {param});
                           Substitution zero{{param, 0}};
                           NormalOp from =
                               buildHamiltonian(ModelSpec::make(model, n, s)).substituted(zero);
                           NormalOp to = buildHamiltonian(ModelSpec::make(target, n, merged(s, zero)));
                           return from - to;
                       }});
    };
    switch (model) {
    case Model::Higgs: addChain("chain.kappa0", P_KAPPA, Model::Osc, "H -> Osc as kappa -> 0"); break;
    case Model::CurvedSW: addChain("chain.kappa0", P_KAPPA, Model::SW, "H -> SW as kappa -> 0"); break;
    case Model::CurvedKC: addChain("chain.kappa0", P_KAPPA, Model::KC, "H -> KC as kappa -> 0"); break;
    case Model::QGenCurvedKC:
        addChain("chain.kappa0", P_KAPPA, Model::QGenKC, "H -> QGenKC as kappa -> 0");
        break;
    case Model::DarbouxIII:
        addChain("chain.lambda0", P_LAMBDA, Model::Osc, "H -> Osc as lambda -> 0");
        break;
    case Model::GenDarbouxIII:
        addChain("chain.lambda0", P_LAMBDA, Model::SW, "H -> SW as lambda -> 0");
        break;
    case Model::TaubNUT: addChain("chain.eta0", P_ETA, Model::KC, "H -> KC as eta -> 0"); break;
    case Model::QGenTaubNUT:
        addChain("chain.eta0", P_ETA, Model::QGenKC, "H -> QGenKC as eta -> 0");
        break;
    default: break;
    }

    // quasi-generalized integrals reduce to the plain component
    if (model == Model::QGenKC || model == Model::QGenTaubNUT || model == Model::QGenCurvedKC) {
        Model target = model == Model::QGenKC
                           ? Model::KC
                           : (model == Model::QGenTaubNUT ? Model::TaubNUT : Model::CurvedKC);
        ids.push_back(
            {"chain.plainlrl", "A_N -> N-th LRL component as beta, gamma -> 0", n,
             [=](const Substitution& sIn) {
                 Substitution zero;
                 for (int i = 0; i < n; ++i) {
                     zero[betaParam(n, i)] = 0;
                     zero[gammaParam(n, i)] = 0;
                 }
                 Substitution s = without(merged(sIn, base), {});
                 for (auto& [k, v] : zero) s.erase(k);
                 ModelSpec qg = ModelSpec::make(model, n, s);
                 NormalOp a = buildExtraIntegrals(qg, buildHamiltonian(qg))
                                  .at(0)
                                  .second.substituted(zero);
                 ModelSpec plain = ModelSpec::make(target, n, merged(s, zero));
                 NormalOp aPlain = buildExtraIntegrals(plain, buildHamiltonian(plain))
                                       .at(size_t(n - 1))
                                       .second;
                 return a - aPlain;
             }});
    }

    // mu, gamma -> 0 removes every reflection term from the Hamiltonian
    ids.push_back({"chain.reflectionfree", "H has no reflection terms once mu = gamma = 0", n,
                   [=](const Substitution& sIn) {
                       Substitution zero;
                       for (int i = 0; i < n; ++i) {
                           zero[muParam(i)] = 0;
                           zero[gammaParam(n, i)] = 0;
                       }
                       Substitution s = merged(sIn, base);
                       for (auto& [k, v] : zero) s.erase(k);
                       NormalOp h =
                           buildHamiltonian(ModelSpec::make(model, n, s)).substituted(zero);
                       return reflectionTerms(h);
                   }});
    return suite;
}

Suite customSuite(const ConfigPtr& cfg, const NormalOp& hamiltonian) {
    Suite suite;
    suite.name = "custom";
    suite.model = "custom";
    suite.n = cfg->n;
    suite.probeConfig = cfg;
    for (int m = 2; m <= cfg->n; ++m)
        suite.identities.push_back({"universal.left" + std::to_string(m) + ".commutes",
                                    "[C^[m], H] = 0", cfg->n, [=](const Substitution& s) {
                                        auto c = s.empty() ? cfg : cfg->with(s);
                                        NormalOp h =
                                            s.empty() ? hamiltonian : hamiltonian.substituted(s);
                                        return commutator(leftCasimir(c, m).momentumPart, h);
                                    }});
    for (int m = 2; m <= cfg->n - 1; ++m)
        suite.identities.push_back({"universal.right" + std::to_string(m) + ".commutes",
                                    "[C_[m], H] = 0", cfg->n, [=](const Substitution& s) {
                                        auto c = s.empty() ? cfg : cfg->with(s);
                                        NormalOp h =
                                            s.empty() ? hamiltonian : hamiltonian.substituted(s);
                                        return commutator(rightCasimir(c, m).momentumPart, h);
                                    }});
    return suite;
}

std::vector<Identity> negativeControls(int n) {
    std::vector<Identity> out;
    out.push_back({"control.osc.tensor.signflip",
                   "[H_osc, pi_1 pi_2 - omega^2 x_1 x_2] must not vanish", n,
                   [n](const Substitution& s) {
                       ModelSpec sp = ModelSpec::make(Model::Osc, n, s);
                       auto c = sp.config;
                       NormalOp bad =
                           dunklMomentum(c, 0) * dunklMomentum(c, 1) -
                           NormalOp::mulBy((FieldElem::coordinate(c, 0) *
                                            FieldElem::coordinate(c, 1))
                                               .scaled(ParamScalar::variable(c->n, P_OMEGA).pow(2)));
                       return commutator(buildHamiltonian(sp), bad);
                   }});
    out.push_back({"control.sl2.wrongconstant",
                   "[J-, J+] - 5 i hbar J3 must not vanish", n, [n](const Substitution& s) {
                       auto c = SiteConfig::make(n, false, true, s);
                       Sl2Triple t = sl2Realization(c);
                       return commutator(t.jMinus, t.jPlus) -
                              t.j3.scaled(iHbarScalar(c).scaled(GaussianRational(5)));
                   }});
    out.push_back({"control.kc.functional.signflip",
                   "KC functional relation with -k^2 must not vanish", n,
                   [n](const Substitution& s) {
                       ModelSpec sp = ModelSpec::make(Model::KC, n, s);
                       auto ids = decompositionIdentities(sp);
                       auto c = sp.config;
                       return ids.at(0).lhs - ids.at(0).rhs +
                              NormalOp::identity(c).scaled(
                                  ParamScalar::variable(c->n, P_K).pow(2).scaled(
                                      GaussianRational(2)));
                   }});
    return out;
}

// ---------------------------------------------------------------------------
// reports

namespace {

const char* statusName(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "skipped";
    }
}

OJson witnessJson(const std::optional<Witness>& w) {
    if (!w) return nullptr;
    OJson j;
    j["refl"] = w->refl;
    j["deriv"] = w->deriv;
    j["monomial"] = w->monomial;
    j["coeff"] = w->coeff;
    return j;
}

} // namespace

std::string reportJson(const std::vector<SuiteReport>& reports, bool withTiming) {
    OJson arr = OJson::array();
    for (const auto& rep : reports) {
        OJson j;
        j["suite"] = rep.suite;
        if (rep.model.empty())
            j["model"] = nullptr;
        else
            j["model"] = rep.model;
        j["n"] = rep.n;
        j["mode"] = rep.mode;
        if (rep.seed)
            j["seed"] = *rep.seed;
        else
            j["seed"] = nullptr;
        OJson checks = OJson::array();
        int passed = 0, failed = 0, skipped = 0;
        for (const auto& c : rep.checks) {
            OJson cj;
            cj["label"] = c.label;
            cj["paper_ref"] = c.ref;
            cj["status"] = statusName(c.status);
            cj["millis"] = withTiming ? c.millis : 0;
            cj["witness"] = witnessJson(c.witness);
            if (!c.diagnostic.empty()) cj["diagnostic"] = c.diagnostic;
            checks.push_back(std::move(cj));
            switch (c.status) {
            case CheckStatus::Pass: ++passed; break;
            case CheckStatus::Fail: ++failed; break;
            default: ++skipped; break;
            }
        }
        j["checks"] = std::move(checks);
        j["summary"] = {{"total", rep.checks.size()},
                        {"passed", passed},
                        {"failed", failed},
                        {"skipped", skipped}};
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string reportMarkdown(const std::vector<SuiteReport>& reports) {
    std::ostringstream os;
    for (const auto& rep : reports) {
        os << "## Suite `" << rep.suite << "`";
        if (!rep.model.empty()) os << " (model `" << rep.model << "`)";
        os << " — N = " << rep.n << ", mode " << rep.mode;
        if (rep.seed) os << ", seed " << *rep.seed;
        os << "\n\n";
        os << "| check | relation | status | ms |\n|---|---|---|---|\n";
        int passed = 0, failed = 0, skipped = 0;
        for (const auto& c : rep.checks) {
            os << "| " << c.label << " | " << c.ref << " | " << statusName(c.status) << " | "
               << c.millis << " |\n";
            switch (c.status) {
            case CheckStatus::Pass: ++passed; break;
            case CheckStatus::Fail: ++failed; break;
            default: ++skipped; break;
            }
        }
        os << "\nTotal " << rep.checks.size() << ", passed " << passed << ", failed " << failed
           << ", skipped " << skipped << ".\n\n";
        for (const auto& c : rep.checks) {
            if (c.status == CheckStatus::Fail && c.witness) {
                os << "Witness for `" << c.label << "`: refl(";
                for (size_t k = 0; k < c.witness->refl.size(); ++k)
                    os << (k ? "," : "") << c.witness->refl[k];
                os << ") deriv(";
                for (size_t k = 0; k < c.witness->deriv.size(); ++k)
                    os << (k ? "," : "") << c.witness->deriv[k];
                os << ") monomial " << c.witness->monomial << " coeff " << c.witness->coeff
                   << "\n\n";
            }
            if (c.status == CheckStatus::Skipped && !c.diagnostic.empty())
                os << "Skipped `" << c.label << "`: " << c.diagnostic << "\n\n";
        }
    }
    return os.str();
}

} // namespace dunkl
