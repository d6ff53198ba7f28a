#include "qbargain/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbargain {

TwoPartyState::TwoPartyState(Complex a00, Complex a01, Complex a10, Complex a11) : amps_{a00, a01, a10, a11} {
    for (auto a : amps_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("two-party state has non-finite amplitude");
    if (norm_sq() == 0.0) throw std::invalid_argument("zero vector is not a two-party state");
}

TwoPartyState TwoPartyState::product(const QubitState& alice, const QubitState& bob) {
    return {alice.xi0() * bob.xi0(), alice.xi0() * bob.xi1(), alice.xi1() * bob.xi0(), alice.xi1() * bob.xi1()};
}

double TwoPartyState::norm_sq() const {
    double n = 0.0;
    for (auto a : amps_) n += std::norm(a);
    return n;
}

BargainPolarization::BargainPolarization(Complex amp10, Complex amp01) : amp10_(amp10), amp01_(amp01) {
    if (std::norm(amp10) + std::norm(amp01) == 0.0)
        throw std::invalid_argument("bargain polarization must be nonzero");
}

Projection project_bargain(const TwoPartyState& psi) {
    const Complex a10 = psi.amp(1, 0);
    const Complex a01 = psi.amp(0, 1);
    const double inside = std::norm(a10) + std::norm(a01);
    if (inside == 0.0) throw std::domain_error("state orthogonal to bargaining subspace");
    return {BargainPolarization{a10, a01}, inside / psi.norm_sq()};
}

double p10(const BargainPolarization& bp) {
    const double n10 = std::norm(bp.amp10());
    return n10 / (n10 + std::norm(bp.amp01()));
}

double conditional_bob_probability(const TwoPartyState& psi, int alice_bit, int bob_bit) {
    const double marginal = std::norm(psi.amp(alice_bit, 0)) + std::norm(psi.amp(alice_bit, 1));
    if (marginal == 0.0) throw std::domain_error("Alice outcome has zero probability");
    return std::norm(psi.amp(alice_bit, bob_bit)) / marginal;
}

double prob_zero(const QubitState& s, const Basis& basis) {
    return std::norm(inner(basis.b0, s)) / (s.norm_sq() * basis.b0.norm_sq());
}

Dominance dominates(const QubitState& alice, const QubitState& bob, const Basis& basis) {
    const double pa = prob_zero(alice, basis);
    const double pb = prob_zero(bob, basis);
    if (pa > pb + kDominanceTieTol) return Dominance::AliceDominates;
    if (pb > pa + kDominanceTieTol) return Dominance::BobDominates;
    return Dominance::Neither;
}

const char* to_string(Dominance d) {
    switch (d) {
        case Dominance::AliceDominates: return "AliceDominates";
        case Dominance::BobDominates: return "BobDominates";
        case Dominance::Neither: return "Neither";
    }
    return "?";
}

namespace {

// DFS with white/grey/black colouring; grey-to-grey edge closes a cycle.
bool find_cycle(std::size_t v, const std::vector<std::vector<bool>>& edge, std::vector<int>& colour,
                std::vector<std::size_t>& stack, std::vector<std::size_t>& cycle) {
    colour[v] = 1;
    stack.push_back(v);
    for (std::size_t w = 0; w < edge.size(); ++w) {
        if (!edge[v][w]) continue;
        if (colour[w] == 1) {
            auto it = std::find(stack.begin(), stack.end(), w);
            cycle.assign(it, stack.end());
            cycle.push_back(w);
            return true;
        }
        if (colour[w] == 0 && find_cycle(w, edge, colour, stack, cycle)) return true;
    }
    stack.pop_back();
    colour[v] = 2;
    return false;
}

}  // namespace

DominanceMatrix dominance_matrix(std::span<const QubitState> states, const PairBasisFn& pair_basis) {
    const std::size_t n = states.size();
    DominanceMatrix out(n, std::vector<Dominance>(n, Dominance::Neither));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Dominance d = dominates(states[i], states[j], pair_basis(i, j));
            out[i][j] = d;
            out[j][i] = d == Dominance::AliceDominates ? Dominance::BobDominates
                        : d == Dominance::BobDominates ? Dominance::AliceDominates
                                                       : Dominance::Neither;
        }
    }
    return out;
}

CycleReport dominance_cycle(std::span<const QubitState> states, const PairBasisFn& pair_basis) {
    const std::size_t n = states.size();
    if (n < 3) throw std::invalid_argument("dominance_cycle needs at least three states");

    CycleReport report;
    report.outcome = dominance_matrix(states, pair_basis);
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) edge[i][j] = report.outcome[i][j] == Dominance::AliceDominates;

    std::vector<int> colour(n, 0);
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < n && !report.has_cycle; ++v)
        if (colour[v] == 0) report.has_cycle = find_cycle(v, edge, colour, stack, report.cycle);
    return report;
}

PairBasisFn pair_bases_from_list(std::size_t n, std::vector<Basis> bases) {
    if (bases.size() != n * (n - 1) / 2)
        throw std::invalid_argument("expected one basis per unordered pair");
    return [n, bases = std::move(bases)](std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        // Offset of row i in the packed upper triangle.
        const std::size_t row = i * n - i * (i + 1) / 2;
        return bases[row + (j - i - 1)];
    };
}

RpsWitness rps_witness() {
    auto direction = [](double angle) { return BlochVector{std::sin(angle), 0.0, std::cos(angle)}; };
    const double third = 2.0 * std::numbers::pi / 3.0;
    std::array<Basis, 3> bases{Basis::from_bloch(direction(0.0)), Basis::from_bloch(direction(third)),
                               Basis::from_bloch(direction(2.0 * third))};
    return {{bases[0].b0, bases[1].b0, bases[2].b0}, bases};
}

PairBasisFn RpsWitness::cyclic() const {
    return [b = bases](std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        if (i == 0 && j == 1) return b[0];
        if (i == 1 && j == 2) return b[1];
        return b[2];
    };
}

}  // namespace qbargain
