#pragma once

// The hypercomplex modular group Gamma_p = <T_{e_1}, ..., T_{e_p}, J> acting on
// H^+(R^n), its congruence subgroups, and right cosets modulo translations.
//
// All group elements here are exact (BigInt entries) and carry generator
// words; membership in Gamma_p itself is read off the word.

#include "hmf/vahlen.hpp"

#include <string>
#include <vector>

namespace hmf {

enum class GroupVariant { Full, Principal, Upper0, Lower0, Theta };

const char* to_string(GroupVariant v);
GroupVariant parse_group_variant(const std::string& name);

struct GroupDescriptor {
  int n = 4;
  int p = 1;
  GroupVariant variant = GroupVariant::Full;
  int level = 1;  // N for principal / upper0 / lower0; 2 for theta by definition

  static GroupDescriptor full(int n, int p) { return make(n, p, GroupVariant::Full, 1); }
  static GroupDescriptor principal(int n, int p, int level) { return make(n, p, GroupVariant::Principal, level); }
  static GroupDescriptor upper0(int n, int p, int level) { return make(n, p, GroupVariant::Upper0, level); }
  static GroupDescriptor lower0(int n, int p, int level) { return make(n, p, GroupVariant::Lower0, level); }
  static GroupDescriptor theta(int n, int p) { return make(n, p, GroupVariant::Theta, 2); }
  static GroupDescriptor make(int n, int p, GroupVariant variant, int level);

  // e.g. "Gamma_1[3]", "Gamma_1^0[2]", "Gamma_1_0[2]", "Gamma_1_theta"
  std::string name() const;

  bool operator==(const GroupDescriptor&) const = default;
};

// Standard order: a in N * sum_{A subset {1..p}} Z e_A.
bool in_order(const MultivectorZ& a, int p, const BigInt& modulus);
bool in_order(const MultivectorQ& a, int p, const BigInt& modulus);
bool in_order(const MultivectorF& a, int p, const BigInt& modulus) = delete;

// True when the matrix's word uses only T(+-e_j), j <= p, and J.
bool is_gamma_p_word(const VahlenZ& m, int p);

bool is_member(const VahlenZ& m, const GroupDescriptor& g);

// T_b is in the group iff b = step * (k_1 e_1 + ... + k_p e_p), k in Z^p.
struct TranslationLattice {
  int n;
  int p;
  BigInt step;

  bool contains(const MultivectorZ& b) const;
};

TranslationLattice translation_lattice(const GroupDescriptor& g);

// Is m a translation T_b with b in the lattice?
bool is_lattice_translation(const VahlenZ& m, const TranslationLattice& lattice);

bool same_coset(const VahlenZ& m1, const VahlenZ& m2, const GroupDescriptor& g);

bool contains_neg_identity(const GroupDescriptor& g);

// Exact coefficients of (c, d) on the 2^p blades of the subalgebra spanned
// by e_1..e_p.  Left translation leaves the bottom row unchanged.
struct CosetKey {
  std::vector<BigInt> coeffs;

  auto operator<=>(const CosetKey&) const = default;
  bool operator==(const CosetKey&) const = default;

  bool has_zero_c() const;
  std::string str() const;
};

CosetKey coset_key(const VahlenZ& m, int p);
CosetKey negated(const CosetKey& key);

struct CosetRep {
  VahlenZ matrix;
  CosetKey key;
  int word_length = 0;
  double height = 0.0;  // |c e_n + d|
};

struct EnumerationOptions {
  // Cross-check every key decision against same_coset (quadratic cost).
  bool verify_keys = false;
};

// Breadth-first closure of words in T(+-e_1)..T(+-e_p), J of length <= L,
// filtered to the group and deduplicated by coset key.  The first word
// reaching a coset (BFS order) becomes its representative.  Sorted by
// (height, word length, key).  Complete only relative to L.
std::vector<CosetRep> enumerate_cosets(const GroupDescriptor& g, int max_word_length,
                                       const EnumerationOptions& options = {});

// Number of representatives with c = 0.
int count_c_zero(const std::vector<CosetRep>& reps);

// Reps closed under M <-> -M when -1 is in the group.  Missing partners are
// appended as M J J (word length + 2); pairs index into reps.
struct NegationPairing {
  std::vector<CosetRep> reps;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> unpaired;
};

NegationPairing pair_by_negation(std::vector<CosetRep> reps, const GroupDescriptor& g, bool complete);

// |c e_n + d| for a matrix with entries in Cl_n.
double coset_height(const VahlenZ& m);

}  // namespace hmf
