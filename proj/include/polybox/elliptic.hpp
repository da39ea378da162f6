#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "polybox/bivar.hpp"
#include "polybox/interval.hpp"

namespace polybox {

/// E_{a,b}: Y^2 = X^3 + aX + b.
struct ECPair {
  Poly a;
  Poly b;
  /// Characteristic 2 or 3, where 4a^3 + 27b^2 is checked literally (b^2 resp. a^3).
  bool small_characteristic = false;
};

/// 4a^3 + 27b^2.
Poly discriminant(const Poly& a, const Poly& b);
/// Throws DomainError when 4a^3 + 27b^2 = 0.
ECPair make_ec_pair(const Poly& a, const Poly& b);
/// Y^2 - X^3 - aX - b.
BivarPoly weierstrass_curve(const ECPair& e);

/// a^3 d^2 = c^3 b^2 mod f.
bool invariant_congruent(const Poly& a, const Poly& b, const Poly& c, const Poly& d, const Poly& f);

/// Some t with a t^4 = c and b t^6 = d mod f. When a, b, c, d are units, t^2 is forced to be
/// da / (bc) and a square root is taken; otherwise residues are scanned.
std::optional<Poly> iso_witness(const Poly& a, const Poly& b, const Poly& c, const Poly& d, const Poly& f);
/// Scan over every nonzero residue t mod f.
std::optional<Poly> iso_witness_exhaustive(const Poly& a, const Poly& b, const Poly& c, const Poly& d,
                                           const Poly& f);

/// |{(a, b) in I^2 : a^3 = lambda b^2 mod f}|, by direct enumeration.
std::uint64_t count_N_lambda(const Interval& i, const Poly& lambda, const Poly& f);

struct LambdaCensus {
  std::map<Poly, std::uint64_t> by_lambda;  // lambda = a^3 b^-2 mod f over pairs with b a unit
  std::uint64_t both_divisible = 0;         // pairs with f | a and f | b; they count for every lambda

  /// N_lambda = by_lambda[lambda mod f] + both_divisible.
  std::uint64_t n_lambda(const Poly& lambda, const Poly& f) const;
};

LambdaCensus lambda_census(const Interval& i, const Poly& f, unsigned jobs = 1);

enum class CensusMethod {
  kQuadruple,  // loop over I^4
  kBucketed,   // group pairs by the projective class of (a^3 : b^2)
};

/// Number of ((a, b), (c, d)) in I^4 with a^3 d^2 = c^3 b^2 mod f.
std::uint64_t count_N(const Interval& i, const Poly& f, CensusMethod method = CensusMethod::kBucketed,
                      unsigned jobs = 1);

struct Scan19Row {
  Poly lambda;
  std::uint64_t count;
};

struct Scan19 {
  std::uint64_t size_i = 0;
  std::uint64_t norm_f = 0;
  std::vector<Scan19Row> rows;  // sorted by lambda
  std::uint64_t max_count = 0;
  double ratio_to_cuberoot = 0;  // max_count / |I|^{1/3}

  /// max_count / |I|^{1/3} <= c, decided as max_count^3 <= c^3 |I|.
  bool ratio_at_most(std::uint64_t c) const;
};

/// N_lambda for every lambda realized by a pair with b a unit mod f. Requires |I|^9 <= |f|
/// unless `force` is set.
Scan19 theorem19_scan(const Interval& i, const Poly& f, bool force = false, unsigned jobs = 1);

/// |{x : x^2 in I and x^3 in I}| for a base-0 box, by enumeration of deg x <= n/2.
std::uint64_t extremal_count(const Interval& i);

struct PigeonInstance {
  Poly f;                 // irreducible, degree m
  std::vector<Poly> xs;   // X_1..X_s
  std::vector<int> taus;  // tau_i in [0, m]; T_i = q^{tau_i}
};

/// {X_i t}_f < q^{tau_i} for every i and t != 0 mod f.
bool pigeonhole_verify(const PigeonInstance& inst, const Poly& t);

/// Solves the F_q-linear system killing the coefficients of degree >= tau_i of X_i t rem f.
/// The first free unknown is set to 1 and the others to 0. nullopt when only t = 0 solves it,
/// which is exactly when no valid multiplier exists.
std::optional<Poly> pigeonhole_solve(const PigeonInstance& inst);

/// Requires sum tau_i > (s - 1) m, which guarantees a solution; throws DomainError otherwise.
Poly pigeonhole_multiplier(const PigeonInstance& inst);

/// First valid t among nonzero residues in canonical order, or nullopt.
std::optional<Poly> pigeonhole_exhaustive(const PigeonInstance& inst);

struct TauPlan {
  int tau_t = 0;             // T = q^{tau_t}
  std::array<int, 5> taus{}; // exponents for X_1..X_5
};

/// T = q^{floor((m - 4(n+1)) / 5)} (at least 1) and T_1 = T^4 |I|^2, T_2 = T_4 = |f| / (T |I|),
/// T_3 = T_5 = |f| / T, clamped to [0, m]. Unclamped they sum to exactly 4m, so extra powers
/// of q go to exponents below m, in order, until the strict pigeonhole condition holds.
TauPlan default_tau_plan(int m, int n);

struct SmallModel {
  Poly lambda;
  Poly x0;
  Poly f;
  Poly t;
  std::array<Poly, 5> xs;   // 1, 3X0, 3X0^2, -lambda, -2 lambda X0
  std::array<Poly, 6> fis;  // f_i = X_i t rem f, f_6 = -t (lambda X0^2 - X0^3) rem f
  std::array<int, 5> taus{};
  int n = 0;                // box bound for X, Y
  std::uint64_t z_bound = 0;  // bound on |Z| in f Z = f_1 X^3 + ... + f_6; 0 when Z must vanish

  /// Each f_i = X_i t mod f, |f_i| < q^{tau_i} for i <= 5 and |f_6| < |f|.
  bool bounds_hold() const;
  /// (X + X0)^3 = lambda (X0 + Y)^2 mod f.
  bool original_holds(const Poly& x, const Poly& y) const;
  /// f_1 X^3 + f_2 X^2 + f_3 X + f_4 Y^2 + f_5 Y + f_6 = 0 mod f.
  bool model_holds(const Poly& x, const Poly& y) const;
};

SmallModel small_coeff_model(const Poly& lambda, const Poly& x0, const Poly& f, int n, const TauPlan& plan);

}  // namespace polybox
