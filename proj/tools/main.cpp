// dunkl-verify: construct Dunkl-type operator families and mechanically
// verify their commutation and structure identities, exactly.

#include <CLI11.hpp>
#include <json.hpp>

#include "dunkl/parser.hpp"
#include "dunkl/verify.hpp"

#include <cstdlib>
#include <random>
#include <fstream>
#include <iostream>

using namespace dunkl;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_CHECK_FAILED = 1;
constexpr int EXIT_USAGE = 2;
constexpr int EXIT_SKIPPED_STRICT = 3;

mpq_class parseRational(const std::string& s) {
    mpq_class q(s);
    q.canonicalize();
    return q;
}

Substitution loadParams(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open params file: " + path);
    nlohmann::json j;
    in >> j;
    if (!j.is_object()) throw std::runtime_error("params file must be a JSON object");
    Substitution subs;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int id = paramIdByName(n, it.key());
        if (id < 0) throw std::runtime_error("unknown parameter '" + it.key() + "'");
        subs[id] = parseRational(it.value().get<std::string>());
    }
    return subs;
}

// deterministic dual-path spot check: probe a seeded subsample of the
// suite's identities and append any disagreement as a failed check
void dualPathSpotCheck(const Suite& suite, std::vector<CheckResult>& results, uint64_t seed,
                       int probeDegree) {
    if (suite.identities.empty()) return;
    std::mt19937_64 pick(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<FieldElem> probes = defaultProbes(suite.probeConfig, probeDegree);
    const size_t samples = std::min<size_t>(3, suite.identities.size());
    for (size_t k = 0; k < samples; ++k) {
        const Identity& id = suite.identities[pick() % suite.identities.size()];
        CheckResult res = probeCheck(id, probes);
        res.label = "dualpath." + res.label;
        res.ref = "probe application agrees with the normal-form verdict";
        results.push_back(std::move(res));
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of Dunkl-type operator algebras"};
    app.get_formatter()->column_width(34);

    std::string modelName;
    int dims = 0;
    std::string suitesArg;
    std::string mode;
    uint64_t seed = 0;
    int probeDegree = 3;
    std::string paramsFile;
    std::string output = "json";
    int jobs = 0;
    size_t termBudget = 500000;
    bool strict = false;
    std::string expr;
    bool listFlag = false;

    app.add_option("--model", modelName, "model name, or 'custom' with --expr");
    app.add_option("--dims", dims, "dimension N");
    app.add_option("--suites", suitesArg,
                   "comma-separated subset of core,coproduct,model,appendix,independence");
    app.add_option("--mode", mode, "symbolic or sampled (default: symbolic for N <= 3)");
    app.add_option("--seed", seed, "seed for sampled mode and spot checks");
    app.add_option("--probe-degree", probeDegree, "max exponent of probe monomials");
    app.add_option("--params", paramsFile, "JSON file fixing parameters to rationals p/q");
    app.add_option("--output", output, "json or markdown");
    app.add_option("--jobs", jobs, "worker threads (default: DUNKL_JOBS or 1)");
    app.add_option("--term-budget", termBudget, "max normal-form terms per product");
    app.add_flag("--strict", strict, "exit 3 when any check was skipped");
    app.add_option("--expr", expr, "custom Hamiltonian expression");
    app.add_flag("--list-models", listFlag, "print the model catalog and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? EXIT_OK : EXIT_USAGE;
    }

    try {
        if (listFlag) {
            for (const auto& info : listModels()) {
                std::cout << info.name << "\t" << info.description;
                if (info.kcFamily) std::cout << " [requires N >= 2]";
                if (info.betaGammaSites == -1) std::cout << " [beta/gamma active]";
                if (info.betaGammaSites == -2) std::cout << " [beta_N = gamma_N = 0]";
                std::cout << "\t" << info.extraIntegralCount(3) << " extra integrals at N=3"
                          << "\n";
            }
            return EXIT_OK;
        }

        if (dims < 1) {
            std::cerr << "error: --dims is required and must be >= 1\n";
            return EXIT_USAGE;
        }
        if (jobs <= 0) {
            if (const char* env = std::getenv("DUNKL_JOBS")) jobs = std::atoi(env);
            if (jobs <= 0) jobs = 1;
        }
        if (mode.empty()) mode = dims <= 3 ? "symbolic" : "sampled";
        if (mode != "symbolic" && mode != "sampled") {
            std::cerr << "error: --mode must be symbolic or sampled\n";
            return EXIT_USAGE;
        }
        if (output != "json" && output != "markdown") {
            std::cerr << "error: --output must be json or markdown\n";
            return EXIT_USAGE;
        }

        Substitution base;
        if (!paramsFile.empty()) base = loadParams(paramsFile, dims);

        std::optional<Model> model;
        bool custom = false;
        if (!modelName.empty()) {
            if (modelName == "custom") {
                custom = true;
                if (expr.empty()) {
                    std::cerr << "error: --model custom requires --expr\n";
                    return EXIT_USAGE;
                }
            } else {
                model = modelByName(modelName);
                if (!model) {
                    std::cerr << "error: unknown model '" << modelName
                              << "' (use --list-models)\n";
                    return EXIT_USAGE;
                }
            }
        }

        std::vector<std::string> suiteNames;
        if (suitesArg.empty()) {
            suiteNames = {"core", "coproduct"};
            if (model || custom) suiteNames.push_back("model");
        } else {
            std::stringstream ss(suitesArg);
            std::string part;
            while (std::getline(ss, part, ',')) suiteNames.push_back(part);
        }

        RunOptions opts;
        opts.sampled = mode == "sampled";
        opts.seed = seed;
        opts.draws = 3;
        opts.jobs = jobs;
        opts.termBudget = termBudget;

        std::vector<SuiteReport> reports;
        bool anyFail = false, anySkip = false;

        auto execute = [&](Suite suite) {
            SuiteReport rep;
            rep.suite = suite.name;
            rep.model = suite.model;
            rep.n = suite.n;
            rep.mode = mode;
            if (opts.sampled) rep.seed = seed;
            rep.checks = runSuite(suite, opts);
            if (!opts.sampled) dualPathSpotCheck(suite, rep.checks, seed, probeDegree);
            for (const auto& c : rep.checks) {
                anyFail = anyFail || c.status == CheckStatus::Fail;
                anySkip = anySkip || c.status == CheckStatus::Skipped;
            }
            reports.push_back(std::move(rep));
        };

        for (const std::string& name : suiteNames) {
            if (name == "core") {
                execute(coreSuite(dims, base));
            } else if (name == "coproduct") {
                execute(coproductSuite(dims, base));
            } else if (name == "appendix") {
                execute(appendixSuite(dims, base));
            } else if (name == "model") {
                if (custom) {
                    auto cfg = SiteConfig::make(dims, dims >= 2, true, base);
                    NormalOp h = lower(parseOperatorExpr(expr, cfg), cfg);
                    execute(customSuite(cfg, h));
                } else if (model) {
                    execute(modelSuite(ModelSpec::make(*model, dims), base));
                } else {
                    std::cerr << "error: suite 'model' requires --model\n";
                    return EXIT_USAGE;
                }
            } else if (name == "independence") {
                if (!model) {
                    std::cerr << "error: suite 'independence' requires --model\n";
                    return EXIT_USAGE;
                }
                ModelSpec spec = ModelSpec::make(*model, dims);
                SuiteReport rep;
                rep.suite = "independence";
                rep.model = modelInfo(*model).name;
                rep.n = dims;
                rep.mode = "sampled";
                rep.seed = seed;
                const int expected = independenceFunctionCount(spec);
                for (int point = 0; point < 5; ++point) {
                    CheckResult res;
                    res.label = "independence.rank.point" + std::to_string(point + 1);
                    res.ref = "Jacobian rank of the reflection-free classical symbols "
                              "{H, C^[m], C_[m]} (mu = gamma = 0) equals 2N-2";
                    int rank = independenceRank(spec, seed + uint64_t(point));
                    res.status = rank == expected ? CheckStatus::Pass : CheckStatus::Fail;
                    if (res.status == CheckStatus::Fail) {
                        Witness w;
                        w.coeff = "rank " + std::to_string(rank) + ", expected " +
                                  std::to_string(expected);
                        res.witness = w;
                    }
                    rep.checks.push_back(std::move(res));
                }
                {
                    CheckResult res;
                    res.label = "independence.rank.control.duplicate";
                    res.ref = "appending a duplicate function must not raise the rank";
                    int rank = independenceRank(spec, seed, true);
                    res.status = rank == expected ? CheckStatus::Pass : CheckStatus::Fail;
                    rep.checks.push_back(std::move(res));
                }
                for (const auto& c : rep.checks) anyFail = anyFail || c.status == CheckStatus::Fail;
                reports.push_back(std::move(rep));
            } else {
                std::cerr << "error: unknown suite '" << name << "'\n";
                return EXIT_USAGE;
            }
        }

        if (output == "json")
            std::cout << reportJson(reports);
        else
            std::cout << reportMarkdown(reports);

        if (anyFail) return EXIT_CHECK_FAILED;
        if (anySkip && strict) return EXIT_SKIPPED_STRICT;
        return EXIT_OK;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    }
}
