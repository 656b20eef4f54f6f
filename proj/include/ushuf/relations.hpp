#pragma once

#include <string>
#include <vector>

#include "ushuf/shuffle.hpp"
#include "ushuf/specialize.hpp"

namespace ushuf {

struct VerificationInstance {
  std::string params;
  bool pass = false;
  std::string witness;  // nonzero normal form or mismatch note; empty on pass
};

struct VerificationReport {
  std::string identity;
  std::string grid;
  std::string note;  // recorded outcome, e.g. the validating kernel orientation
  std::vector<VerificationInstance> instances;
  bool all_pass = true;
  double wall_ms = 0.0;

  void add(std::string params, bool pass, std::string witness = std::string());
};

// Quadratic interchange identity for symmetrized two-variable generator
// kernels E(a,b) = Sym[z1^a z2^b zeta(z1/z2)]:
//   q1 [E]_{n+3,m} - (q1 q2 + q1 + 1) [E]_{n+2,m+1}
//     + (q1 q2 + q2 + 1) [E]_{n+1,m+2} - q2 [E]_{n,m+3}
//   = D12 ([E(n+1,m+2) - q1 E(m+2,n+1)] + [E(m+1,n+2) - q1 E(n+2,m+1)])
// with [E]_{a,b} = E(a,b) - E(b,a), in the universal surface ring
// ("universal") or under the "a2", "p2", or "diagonal" specialization.
// The default orientation zeta(z1/z2) is tried first and the mirrored
// zeta(z2/z1) on failure; the note records which one validates, and exactly
// one is expected to.  Throws ConventionFailure when neither does.
VerificationReport verify_quadratic(int n, int m, const std::string& spec_name);
// Sweep over (n, m) in [-range, range]^2; the note must be consistent.
VerificationReport verify_quadratic_grid(int range, const std::string& spec_name);

// Cubic Serre-type identity over the Chern-root ring Z[a^{+-1}, b^{+-1}]
// with q = ab: the symmetrization of
//   z1^n z2^n z3^n (z1/z2 - z2/z1 - z2/z3 + z3/z2)
//     prod_{i<j} (z_i - z_j)(z_i - q z_j) / ((z_i - a z_j)(z_i - b z_j))
// vanishes identically.
VerificationReport verify_serre(int n);

// The same identity with every numerator pair factor assembled through the
// diagonal-restriction image, (z_i - a z_j)(z_i - b z_j) - Dhat z_i z_j with
// Dhat = (1-a)(1-b), instead of the factored form.
VerificationReport verify_serre_restricted(int n);

// Curve generator products specialize to Hall-Littlewood-type polynomials:
// specialize(generator_product(lambda padded to k), "a1") must be the Laurent
// polynomial obtained by an independent dense-arithmetic oracle,
//   Sym[z^{reverse(lambda)} prod_{i<j} (z_i - q z_j)/(z_i - z_j)],
// computed as an antisymmetrization divided by the Vandermonde determinant,
// and its leading lexicographic coefficient must be
// q^{inv(lambda)} prod_v [mult_v(lambda)]_q!.
VerificationReport verify_hall_littlewood(const std::vector<int>& lambda, int k);

// pole_certificate over every tuple with |n_i| <= max_abs_n, 1 <= arity <=
// max_k, for the universal kernel of the flavor or a named specialization.
VerificationReport verify_pole_batch(int max_abs_n, int max_k, Flavor flavor);
VerificationReport verify_pole_batch(int max_abs_n, int max_k,
                                     const std::string& spec_name, int n = 0);

// leading_order equality for every weakly decreasing tuple with entries in
// [0, max_n] and 1 <= arity <= max_k (curve flavor).
VerificationReport verify_leading_batch(int max_n, int max_k);

// All weakly decreasing tuples of positive parts with total <= max_size and
// length <= max_len, including the empty tuple; ordered by total size, then
// lexicographically descending within a size.
std::vector<std::vector<int>> partitions_up_to(int max_size, int max_len);

}  // namespace ushuf
