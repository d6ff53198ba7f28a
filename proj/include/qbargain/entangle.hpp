#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qbargain/polarization.hpp"

namespace qbargain {

// Joint Alice (x) Bob polarization with amplitudes on |00>, |01>, |10>, |11>
// (first index Alice).
class TwoPartyState {
public:
    TwoPartyState(Complex a00, Complex a01, Complex a10, Complex a11);

    static TwoPartyState product(const QubitState& alice, const QubitState& bob);

    Complex amp(int alice_bit, int bob_bit) const { return amps_[2 * alice_bit + bob_bit]; }
    double norm_sq() const;

private:
    std::array<Complex, 4> amps_;
};

// Bargaining polarization in span{|10>, |01>}: amp10 = Alice proposes the
// price, amp01 = Alice accepts or rejects.
class BargainPolarization {
public:
    BargainPolarization(Complex amp10, Complex amp01);

    Complex amp10() const { return amp10_; }
    Complex amp01() const { return amp01_; }

    /// As a two-party state (zero on |00> and |11>).
    TwoPartyState embed() const { return {0.0, amp01_, amp10_, 0.0}; }

private:
    Complex amp10_;
    Complex amp01_;
};

struct Projection {
    BargainPolarization polarization;
    double weight;  // probability mass of psi inside the bargaining subspace
};

/// Projects onto span{|10>, |01>}. Throws std::domain_error when the weight is zero.
Projection project_bargain(const TwoPartyState& psi);

/// Probability that Alice proposes, |amp10|^2 / (|amp10|^2 + |amp01|^2).
double p10(const BargainPolarization& bp);

/// P(bob = bob_bit | alice = alice_bit) for a two-party state. Throws
/// std::domain_error when the Alice outcome has zero probability.
double conditional_bob_probability(const TwoPartyState& psi, int alice_bit, int bob_bit);

/// |<basis.b0|s>|^2 / <s|s>.
double prob_zero(const QubitState& s, const Basis& basis);

enum class Dominance { AliceDominates, BobDominates, Neither };

inline constexpr double kDominanceTieTol = 1e-12;

/// Compares prob_zero of the two states; differences within
/// kDominanceTieTol are ties.
Dominance dominates(const QubitState& alice, const QubitState& bob, const Basis& basis);

const char* to_string(Dominance d);

// Basis used for the bargaining between participants i < j.
using PairBasisFn = std::function<Basis(std::size_t i, std::size_t j)>;

using DominanceMatrix = std::vector<std::vector<Dominance>>;

/// outcome[i][j] = dominates(states[i], states[j], pair_basis(min, max)),
/// oriented so row i plays Alice. Diagonal is Neither.
DominanceMatrix dominance_matrix(std::span<const QubitState> states, const PairBasisFn& pair_basis);

struct CycleReport {
    DominanceMatrix outcome;
    bool has_cycle = false;
    // Witness i0 -> i1 -> ... -> i0 (first index repeated at the end).
    std::vector<std::size_t> cycle;
};

/// Builds the dominance digraph (edge i -> j when i dominates j) and searches
/// it for a directed cycle. Requires at least three states.
CycleReport dominance_cycle(std::span<const QubitState> states, const PairBasisFn& pair_basis);

/// Pair bases listed in lexicographic (i < j) order: (0,1), (0,2), ..., (1,2), ...
PairBasisFn pair_bases_from_list(std::size_t n, std::vector<Basis> bases);

// Three states whose |0> directions sit 120 degrees apart on the x1-x3 great
// circle, each bargaining pair measured in the basis of its first member.
struct RpsWitness {
    std::array<QubitState, 3> states;
    std::array<Basis, 3> bases;  // bases[k] has b0 = states[k]
    PairBasisFn cyclic() const;  // (A,B)->bases[0], (B,C)->bases[1], (A,C)->bases[2]
};

RpsWitness rps_witness();

}  // namespace qbargain
