// Acceptance gate: one pass/fail line per criterion, exit 0 only when all
// criteria hold. Criterion 8 (report determinism) shells out to the CLI,
// whose path is passed with --cli.

#include "dunkl/parser.hpp"
#include "dunkl/verify.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

using namespace dunkl;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const std::string& what, bool ok, double secs,
            const std::string& detail = "") {
    std::ostringstream os;
    os << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << what << " ("
       << int(secs * 1000) << " ms)";
    if (!detail.empty()) os << " — " << detail;
    std::cout << os.str() << std::endl;
    if (!ok) ++failures;
}

int defaultJobs() {
    unsigned hc = std::thread::hardware_concurrency();
    return int(hc == 0 ? 1 : std::min(hc, 8u));
}

// run a suite and collect failing/skipped labels
bool allPass(const Suite& suite, const RunOptions& opts, std::string& detail) {
    auto results = runSuite(suite, opts);
    bool ok = true;
    for (const auto& r : results) {
        if (r.status != CheckStatus::Pass) {
            ok = false;
            if (detail.size() < 200)
                detail += (detail.empty() ? "" : ", ") + suite.name + "/" + r.label;
        }
    }
    return ok;
}

void criterion1() {
    Timer t;
    RunOptions opts;
    opts.jobs = defaultJobs();
    std::string detail;
    bool ok = true;
    for (int n : {2, 3}) ok = allPass(coreSuite(n), opts, detail) && ok;
    report(1, "core algebra relations at N = 2, 3 normalize to zero (symbolic, exact)", ok,
           t.seconds(), detail);
}

void criterion2() {
    Timer t;
    RunOptions opts;
    opts.jobs = defaultJobs();
    std::string detail;
    bool ok = true;
    for (int n : {2, 3}) ok = allPass(coproductSuite(n), opts, detail) && ok;
    RunOptions sampled = opts;
    sampled.sampled = true;
    sampled.seed = 20250808;
    sampled.draws = 3;
    ok = allPass(coproductSuite(4), sampled, detail) && ok;
    report(2, "coalgebra layer: sl(2) ranges, Casimir conservation/involution/split, closed "
              "forms (N = 2, 3 symbolic; N = 4 sampled, 3 draws)",
           ok, t.seconds(), detail);
}

void criterion3and4() {
    Timer t;
    RunOptions opts;
    opts.jobs = defaultJobs();
    bool okComm = true, okStruct = true;
    std::string detailComm, detailStruct;
    for (int n : {2, 3}) {
        for (const auto& info : listModels()) {
            Suite suite = modelSuite(ModelSpec::make(info.model, n));
            auto results = runSuite(suite, opts);
            for (const auto& r : results) {
                bool isStruct = r.label.rfind("structure.", 0) == 0;
                if (r.status != CheckStatus::Pass) {
                    std::string& d = isStruct ? detailStruct : detailComm;
                    (isStruct ? okStruct : okComm) = false;
                    if (d.size() < 160)
                        d += (d.empty() ? "" : ", ") + info.name + "/N=" + std::to_string(n) +
                             "/" + r.label;
                }
            }
        }
    }
    double secs = t.seconds();
    report(3, "all twelve models at N = 2, 3: Hamiltonian commutes exactly with the 2N-3 "
              "universal integrals and every extra integral",
           okComm, secs, detailComm);
    report(4, "structural identities: traces, curvature decompositions, KC and Taub-NUT "
              "functional relations (exact)",
           okStruct, 0.0, detailStruct);
}

void criterion5() {
    Timer t;
    RunOptions opts;
    opts.jobs = defaultJobs();
    std::string detail;
    bool ok = true;
    for (int n : {2, 3}) ok = allPass(appendixSuite(n), opts, detail) && ok;
    report(5, "quadratic algebra of {Lambda, R, Gamma}: all relations, anticommutator forms, "
              "kappa -> 0 and mu -> 0 reductions (N = 2, 3, exact)",
           ok, t.seconds(), detail);
}

void criterion6() {
    Timer t;
    bool ok = true;
    std::string detail;
    // pool of identities across suites, with their probe configurations
    std::vector<std::pair<Suite, size_t>> pool;
    std::vector<Suite> suites;
    suites.push_back(coreSuite(2));
    suites.push_back(coproductSuite(2));
    suites.push_back(appendixSuite(2));
    suites.push_back(modelSuite(ModelSpec::make(Model::Osc, 2)));
    suites.push_back(modelSuite(ModelSpec::make(Model::KC, 2)));
    for (const auto& s : suites)
        for (size_t k = 0; k < s.identities.size(); ++k) pool.emplace_back(s, k);
    std::mt19937_64 pick(271828);
    int checked = 0;
    RunOptions opts;
    while (checked < 50 && !pool.empty()) {
        auto& [suite, idx] = pool[pick() % pool.size()];
        const Identity& id = suite.identities[idx];
        CheckResult sym = checkIdentity(id, opts);
        if (sym.status != CheckStatus::Pass) continue; // only passing identities count
        auto probes = defaultProbes(suite.probeConfig, 3);
        CheckResult pr = probeCheck(id, probes);
        if (pr.status != CheckStatus::Pass) {
            ok = false;
            detail += (detail.empty() ? "" : ", ") + id.label;
        }
        ++checked;
    }
    if (checked < 50) {
        ok = false;
        detail += " (only " + std::to_string(checked) + " identities checked)";
    }
    // perturbed identities must fail on both paths
    for (const Identity& id : negativeControls(2)) {
        CheckResult sym = checkIdentity(id, opts);
        auto probes = defaultProbes(id.defect({}).config(), 3);
        CheckResult pr = probeCheck(id, probes);
        bool bothFail = sym.status == CheckStatus::Fail && pr.status == CheckStatus::Fail &&
                        sym.witness && pr.witness;
        if (!bothFail) {
            ok = false;
            detail += (detail.empty() ? "" : ", ") + id.label + " did not fail both paths";
        }
    }
    report(6, "dual-path consistency: 50 passing identities agree under probe application; 3 "
              "perturbed identities fail both paths with witnesses",
           ok, t.seconds(), detail);
}

void criterion7() {
    Timer t;
    bool ok = true;
    std::string detail;
    for (int n : {2, 3}) {
        for (Model m : {Model::Osc, Model::KC}) {
            ModelSpec spec = ModelSpec::make(m, n);
            const int expected = 2 * n - 2;
            for (uint64_t seed = 1; seed <= 5; ++seed) {
                int rank = independenceRank(spec, seed);
                if (rank != expected) {
                    ok = false;
                    detail += modelInfo(m).name + "/N=" + std::to_string(n) + " rank " +
                              std::to_string(rank);
                }
            }
            // duplicate-function control: the extra row must not add rank
            int dupRank = independenceRank(spec, 7, true);
            if (dupRank != expected) {
                ok = false;
                detail += modelInfo(m).name + "/N=" + std::to_string(n) + " control rank " +
                          std::to_string(dupRank);
            }
        }
    }
    report(7, "independence rank of reflection-free classical symbols (mu = gamma = 0): "
              "{H, universal integrals} has rank 2N-2 at 5 random points; duplicate row adds "
              "no rank",
           ok, t.seconds(), detail);
}

void criterion8(const std::string& cliPath) {
    Timer t;
    if (cliPath.empty()) {
        report(8, "byte-identical JSON reports for identical invocations", false, t.seconds(),
               "CLI path not provided (--cli)");
        return;
    }
    std::string f1 = "acceptance_report_1.json", f2 = "acceptance_report_2.json";
    std::string cmd = "'" + cliPath +
                      "' --model taubnut --dims 2 --mode sampled --seed 42 --jobs 4";
    int rc1 = std::system((cmd + " > " + f1 + " 2>/dev/null").c_str());
    int rc2 = std::system((cmd + " > " + f2 + " 2>/dev/null").c_str());
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    std::string a = slurp(f1), b = slurp(f2);
    bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
    std::remove(f1.c_str());
    std::remove(f2.c_str());
    report(8, "byte-identical JSON reports for identical seeded invocations", ok, t.seconds(),
           ok ? "" : "outputs differ or CLI failed");
}

} // namespace

int main(int argc, char** argv) {
    std::string cliPath;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cliPath = argv[i + 1];

    criterion1();
    criterion2();
    criterion3and4();
    criterion5();
    criterion6();
    criterion7();
    criterion8(cliPath);

    if (failures == 0) {
        std::cout << "acceptance: all criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << failures << " criterion(s) FAILED" << std::endl;
    return 1;
}
