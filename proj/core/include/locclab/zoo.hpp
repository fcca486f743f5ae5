#pragma once

// Constructors for the critical state families and unitary families.
// Every constructor returns the unnormalized state with the amplitudes as
// written in the defining formulas (integers and square roots of
// rationals).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locclab/tensor.hpp"

namespace locclab {

struct DickeSpec {
  int parties;    // n
  int dim;        // d
  int excitations;  // k, 0 <= k <= n
  int level;      // j, 1 <= j <= d-1
};

/// Local unitaries U_0 = I, U_1, ..., U_{d-1} of a tripartite construction.
struct TripartiteUnitaryFamily {
  int dim = 0;
  std::vector<Matrix> unitaries;
};

/// Sum over the distinct vectors P_sigma|phi>, sigma in S_n.
QuditState symmetrize(const QuditState& phi);
/// Sum of the distinct permutations of the basis pattern |digits>.
QuditState symmetrize_basis(int dim, std::span<const int> digits);

/// Symmetrization of |j>^k |j-1>^(n-k). norm^2 = C(n,k).
QuditState dicke(const DickeSpec& spec);

/// Smallest k with 3 <= k <= n-2, n != 2k, gcd(n,k) = 1.
std::optional<int> select_k(int n);
/// Number of j < n with gcd(n, j) = 1 (so totient(1) = 0).
int totient(int n);
/// Exact binomial coefficient; throws on overflow.
long long binomial(int n, int k);

/// Psi_{n,d} for n = 5 or n >= 7, d >= 2.
QuditState psi_nd(int n, int d);
/// Coefficient c_i of Phi_{4,d}: (1/3) sqrt(1 - (-4/15)^(d-i)).
double phi4_coefficient(int d, int i);
/// Phi_{4,d} for d >= 3.
QuditState phi_4d(int d);
/// Symmetrization of |j>|j-1>^3|j-2>^2 in (C^d)^6.
QuditState phi6_component(int d, int j);
/// Phi_{6,d} for d >= 2 (dedicated formulas for d = 2 and d = 3).
QuditState phi_6d(int d);

/// (1/sqrt d) sum_j |j>^n.
QuditState ghz(int n, int d);
/// (1/sqrt d) sum_i |ii>.
QuditState bell_phi_plus(int d);

/// X_d^k1 Z_d^k2 with Z_d = diag(omega^k), omega = exp(2 pi i / d).
Matrix gen_pauli(int d, int k1, int k2);
/// U_{d,t} = (1/sqrt d) sum_{ij} (omega^j)^(d-i) (omega^-t)^(sum_{l=i}^{d-1} l) |i><j|.
/// Columns are eigenvectors of S_{d,(1,t)} when d is odd or t is even.
Matrix pauli_eigenbasis_transform(int d, int t);

/// The listed unitary families for d = 4, 5, 6.
TripartiteUnitaryFamily tripartite_unitaries(int d);

struct FamilyInvariantReport {
  double unitarity_defect = 0.0;     // max entry of |U^dag U - I|
  double orthogonality_defect = 0.0; // max |Tr(U_i^dag U_j) - d delta_ij|
  int independence_rank = 0;         // rank of {U_i U_j^dag}_{i != j}
  int independence_target = 0;       // d^2 - d
  bool identity_first = false;
  bool ok() const;
};
FamilyInvariantReport check_family(const TripartiteUnitaryFamily& fam);

/// (1/sqrt d) sum_j |j> (x) (U_j (x) I)|phi+>. Throws when the family
/// invariants fail. Use tripartite_state_unchecked for arbitrary lists.
QuditState tripartite_state(const TripartiteUnitaryFamily& fam);
QuditState tripartite_state_unchecked(const TripartiteUnitaryFamily& fam);

enum class Family { Psi, Phi4, Phi6, Ghz, Tripartite, Dicke };
std::optional<Family> parse_family(const std::string& name);
std::string family_name(Family f);

}  // namespace locclab
