#include "dunkl/classical.hpp"

#include <random>
#include <stdexcept>

namespace dunkl {

namespace {

// arithmetic in Q(sqrt(s0)); s0 is threaded explicitly
QuadExt qmul(const QuadExt& x, const QuadExt& y, const mpq_class& s0) {
    return {x.a * y.a + x.b * y.b * s0, x.a * y.b + x.b * y.a};
}
QuadExt qinv(const QuadExt& x, const mpq_class& s0) {
    mpq_class d = x.a * x.a - x.b * x.b * s0;
    if (d == 0) throw std::domain_error("QuadExt: not invertible (square s0?)");
    return {x.a / d, -x.b / d};
}

// value with exact gradient over the 2N phase-space variables (x, p)
struct DVal {
    QuadExt v;
    std::vector<QuadExt> g;

    explicit DVal(size_t vars) : g(vars) {}
};

struct Evaluator {
    mpq_class s0;
    size_t vars;

    DVal constant(const mpq_class& c) const {
        DVal d(vars);
        d.v = {c, 0};
        return d;
    }
    DVal var(size_t idx, const mpq_class& value) const {
        DVal d(vars);
        d.v = {value, 0};
        d.g[idx] = {1, 0};
        return d;
    }
    DVal add(const DVal& x, const DVal& y) const {
        DVal d(vars);
        d.v = x.v + y.v;
        for (size_t k = 0; k < vars; ++k) d.g[k] = x.g[k] + y.g[k];
        return d;
    }
    DVal sub(const DVal& x, const DVal& y) const {
        DVal d(vars);
        d.v = x.v - y.v;
        for (size_t k = 0; k < vars; ++k) d.g[k] = x.g[k] - y.g[k];
        return d;
    }
    DVal mul(const DVal& x, const DVal& y) const {
        DVal d(vars);
        d.v = qmul(x.v, y.v, s0);
        for (size_t k = 0; k < vars; ++k)
            d.g[k] = qmul(x.g[k], y.v, s0) + qmul(x.v, y.g[k], s0);
        return d;
    }
    DVal div(const DVal& x, const DVal& y) const {
        DVal d(vars);
        QuadExt inv = qinv(y.v, s0);
        d.v = qmul(x.v, inv, s0);
        // (x/y)' = (x' - (x/y) y') / y
        for (size_t k = 0; k < vars; ++k)
            d.g[k] = qmul(x.g[k] - qmul(d.v, y.g[k], s0), inv, s0);
        return d;
    }
    DVal scale(const DVal& x, const mpq_class& c) const {
        DVal d(vars);
        QuadExt cc{c, 0};
        d.v = qmul(x.v, cc, s0);
        for (size_t k = 0; k < vars; ++k) d.g[k] = qmul(x.g[k], cc, s0);
        return d;
    }
};

struct Point {
    std::vector<mpq_class> x, p;
    mpq_class s0; // sum of x_i^2 (kept non-square)
};

mpq_class sampleRational(std::mt19937_64& eng) {
    long num = 1 + long(eng() % 12);
    if (eng() & 1) num = -num;
    long den = 1 + long(eng() % 12);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

bool isPerfectSquare(const mpq_class& q) {
    if (q < 0) return false;
    return mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
           mpz_perfect_square_p(q.get_den().get_mpz_t());
}

} // namespace

int independenceFunctionCount(const ModelSpec& spec) { return 2 * spec.n - 2; }

int independenceRank(const ModelSpec& spec, uint64_t seed, bool duplicateFirst) {
    const int n = spec.n;
    const size_t vars = size_t(2 * n);
    std::mt19937_64 eng(seed);

    // model parameters (mu = gamma = 0 for the classical symbols)
    mpq_class omega = sampleRational(eng), coupling = sampleRational(eng),
              kappa = sampleRational(eng), lambda = sampleRational(eng),
              eta = sampleRational(eng);
    std::vector<mpq_class> beta(n, 0);
    for (int i = 0; i < n; ++i)
        if (spec.config->betaOn[i]) beta[i] = sampleRational(eng);

    // sample a point off the atom zero sets with non-square |x|^2
    Point pt;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 256) throw std::runtime_error("independenceRank: sampling failed");
        pt.x.clear();
        pt.p.clear();
        bool ok = true;
        mpq_class s0 = 0;
        for (int i = 0; i < n; ++i) {
            mpq_class xi = sampleRational(eng);
            if (xi == 0) ok = false;
            pt.x.push_back(xi);
            pt.p.push_back(sampleRational(eng));
            s0 += xi * xi;
        }
        if (!ok) continue;
        if (isPerfectSquare(s0)) continue;
        if (1 + kappa * s0 == 0 || 1 - kappa * s0 == 0 || 1 + lambda * s0 == 0) continue;
        pt.s0 = s0;
        break;
    }

    Evaluator ev{pt.s0, vars};
    auto X = [&](int i) { return ev.var(size_t(i), pt.x[i]); };
    auto P = [&](int i) { return ev.var(size_t(n + i), pt.p[i]); };
    // r = sqrt(s0): gradient dr/dx_i = x_i / r = (x_i / s0) sqrt(s0)
    DVal r(vars);
    r.v = {0, 1};
    for (int i = 0; i < n; ++i) r.g[size_t(i)] = {0, pt.x[i] / pt.s0};

    auto sq = [&](const DVal& d) { return ev.mul(d, d); };
    DVal S = ev.constant(0), psq = ev.constant(0), xdotp = ev.constant(0);
    for (int i = 0; i < n; ++i) {
        S = ev.add(S, sq(X(i)));
        psq = ev.add(psq, sq(P(i)));
        xdotp = ev.add(xdotp, ev.mul(X(i), P(i)));
    }
    DVal A = psq; // p^2 + sum beta_i / x_i^2
    for (int i = 0; i < n; ++i)
        if (beta[i] != 0) A = ev.add(A, ev.div(ev.constant(beta[i]), sq(X(i))));

    DVal one = ev.constant(1);
    auto hamiltonian = [&]() -> DVal {
        switch (spec.model) {
        case Model::Osc:
        case Model::SW: return ev.add(ev.scale(A, mpq_class(1, 2)), ev.scale(S, omega * omega / 2));
        case Model::Higgs:
        case Model::CurvedSW: {
            DVal kin = ev.scale(ev.mul(sq(ev.add(one, ev.scale(S, kappa))), A), mpq_class(1, 2));
            DVal pot = ev.scale(ev.div(S, sq(ev.sub(one, ev.scale(S, kappa)))), omega * omega / 2);
            return ev.add(kin, pot);
        }
        case Model::DarbouxIII:
        case Model::GenDarbouxIII: {
            DVal denom = ev.add(one, ev.scale(S, lambda));
            return ev.add(ev.scale(ev.div(A, denom), mpq_class(1, 2)),
                          ev.scale(ev.div(S, denom), omega * omega / 2));
        }
        case Model::KC:
        case Model::QGenKC:
            return ev.sub(ev.scale(A, mpq_class(1, 2)), ev.scale(ev.div(one, r), coupling));
        case Model::CurvedKC:
        case Model::QGenCurvedKC: {
            DVal kin = ev.scale(ev.mul(sq(ev.add(one, ev.scale(S, kappa))), A), mpq_class(1, 2));
            DVal pot = ev.scale(ev.div(ev.sub(one, ev.scale(S, kappa)), r), coupling);
            return ev.sub(kin, pot);
        }
        case Model::TaubNUT:
        case Model::QGenTaubNUT: {
            DVal denom = ev.add(ev.constant(eta), r);
            return ev.sub(ev.scale(ev.div(ev.mul(r, A), denom), mpq_class(1, 2)),
                          ev.scale(ev.div(one, denom), coupling));
        }
        }
        throw std::logic_error("independenceRank: model");
    };

    auto casimir = [&](int first, int last) {
        DVal c = ev.constant(0);
        for (int i = first; i <= last; ++i) {
            for (int j = i + 1; j <= last; ++j) {
                DVal lij = ev.sub(ev.mul(X(i), P(j)), ev.mul(X(j), P(i)));
                c = ev.add(c, sq(lij));
                if (beta[i] != 0)
                    c = ev.add(c, ev.scale(ev.div(sq(X(j)), sq(X(i))), beta[i]));
                if (beta[j] != 0)
                    c = ev.add(c, ev.scale(ev.div(sq(X(i)), sq(X(j))), beta[j]));
            }
            if (beta[i] != 0) c = ev.add(c, ev.constant(beta[i]));
        }
        return c;
    };

    std::vector<DVal> funcs;
    funcs.push_back(hamiltonian());
    for (int m = 2; m <= n; ++m) funcs.push_back(casimir(0, m - 1));
    for (int m = 2; m <= n - 1; ++m) funcs.push_back(casimir(n - m, n - 1));
    if (duplicateFirst) funcs.push_back(funcs.front());

    // exact Gaussian elimination on the Jacobian over Q(sqrt(s0))
    std::vector<std::vector<QuadExt>> mat;
    for (const auto& f : funcs) mat.push_back(f.g);
    int rank = 0;
    size_t col = 0;
    for (size_t row = 0; row < mat.size() && col < vars; ++col) {
        size_t pivot = row;
        while (pivot < mat.size() && mat[pivot][col].isZero()) ++pivot;
        if (pivot == mat.size()) continue;
        std::swap(mat[row], mat[pivot]);
        QuadExt inv = qinv(mat[row][col], pt.s0);
        for (size_t r2 = row + 1; r2 < mat.size(); ++r2) {
            if (mat[r2][col].isZero()) continue;
            QuadExt factor = qmul(mat[r2][col], inv, pt.s0);
            for (size_t c2 = col; c2 < vars; ++c2)
                mat[r2][c2] = mat[r2][c2] - qmul(factor, mat[row][c2], pt.s0);
        }
        ++row;
        ++rank;
    }
    return rank;
}

} // namespace dunkl
