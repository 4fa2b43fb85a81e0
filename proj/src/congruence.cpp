#include "hmf/congruence.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace hmf {

const char* to_string(GroupVariant v) {
  switch (v) {
    case GroupVariant::Full: return "full";
    case GroupVariant::Principal: return "principal";
    case GroupVariant::Upper0: return "upper0";
    case GroupVariant::Lower0: return "lower0";
    case GroupVariant::Theta: return "theta";
  }
  return "?";
}

GroupVariant parse_group_variant(const std::string& name) {
  for (auto v : {GroupVariant::Full, GroupVariant::Principal, GroupVariant::Upper0, GroupVariant::Lower0,
                 GroupVariant::Theta}) {
    if (name == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown group variant '" + name + "'");
}

GroupDescriptor GroupDescriptor::make(int n, int p, GroupVariant variant, int level) {
  check_dim(n);
  if (p < 1 || p > n - 1) {
    throw std::invalid_argument("need 1 <= p <= n-1, got p=" + std::to_string(p) + ", n=" + std::to_string(n));
  }
  if (level < 1) throw std::invalid_argument("congruence level must be >= 1");
  if (variant == GroupVariant::Theta) level = 2;
  if (variant == GroupVariant::Full) level = 1;
  return GroupDescriptor{n, p, variant, level};
}

std::string GroupDescriptor::name() const {
  const std::string base = "Gamma_" + std::to_string(p);
  const std::string lv = "[" + std::to_string(level) + "]";
  switch (variant) {
    case GroupVariant::Full: return base;
    case GroupVariant::Principal: return base + lv;
    case GroupVariant::Upper0: return base + "^0" + lv;
    case GroupVariant::Lower0: return base + "_0" + lv;
    case GroupVariant::Theta: return base + "_theta";
  }
  return base;
}

namespace {

Blade subalgebra_limit(int p) { return Blade{1} << p; }

}  // namespace

bool in_order(const MultivectorZ& a, int p, const BigInt& modulus) {
  if (modulus <= 0) throw std::invalid_argument("order modulus must be positive");
  for (const auto& t : a.terms()) {
    if (t.blade >= subalgebra_limit(p)) return false;
    if (t.coeff % modulus != 0) return false;
  }
  return true;
}

bool in_order(const MultivectorQ& a, int p, const BigInt& modulus) {
  if (modulus <= 0) throw std::invalid_argument("order modulus must be positive");
  for (const auto& t : a.terms()) {
    if (t.blade >= subalgebra_limit(p)) return false;
    if (boost::multiprecision::denominator(t.coeff) != 1) return false;
    if (boost::multiprecision::numerator(t.coeff) % modulus != 0) return false;
  }
  return true;
}

bool is_gamma_p_word(const VahlenZ& m, int p) {
  if (!m.from_generators()) return false;
  for (const auto& tok : m.word()) {
    if (tok.kind == WordToken::Kind::Inversion) continue;
    if (tok.kind != WordToken::Kind::Translation) return false;
    MultivectorZ b(m.dim());
    try {
      b = parse_multivector<BigInt>(tok.arg, m.dim());
    } catch (const std::invalid_argument&) {
      return false;
    }
    if (!b.is_grade(1) && !b.is_zero()) return false;
    if (!in_order(b, p, BigInt(1))) return false;
  }
  return true;
}

namespace {

bool principal_conditions(const VahlenZ& m, int p, const BigInt& level) {
  const auto one = unit<BigInt>(m.dim());
  return in_order(m.a() - one, p, level) && in_order(m.b(), p, level) && in_order(m.c(), p, level) &&
         in_order(m.d() - one, p, level);
}

void require_gamma_p(const VahlenZ& m, const GroupDescriptor& g) {
  if (m.dim() != g.n) throw DimensionMismatch("matrix dimension differs from group dimension");
  if (!is_gamma_p_word(m, g.p)) {
    throw std::invalid_argument("membership test needs a generator word over T(e_j), j <= p, and J");
  }
}

}  // namespace

bool is_member(const VahlenZ& m, const GroupDescriptor& g) {
  require_gamma_p(m, g);
  const BigInt level(g.level);
  switch (g.variant) {
    case GroupVariant::Full: return true;
    case GroupVariant::Principal: return principal_conditions(m, g.p, level);
    case GroupVariant::Upper0: return in_order(m.b(), g.p, level);
    case GroupVariant::Lower0: return in_order(m.c(), g.p, level);
    case GroupVariant::Theta: {
      if (principal_conditions(m, g.p, BigInt(2))) return true;
      const auto shifted = mat_mul(m, mat_inv(make_inversion<BigInt>(g.n)));
      return principal_conditions(shifted, g.p, BigInt(2));
    }
  }
  return false;
}

bool TranslationLattice::contains(const MultivectorZ& b) const {
  if (!b.is_grade(1) && !b.is_zero()) return false;
  return in_order(b, p, step);
}

TranslationLattice translation_lattice(const GroupDescriptor& g) {
  switch (g.variant) {
    case GroupVariant::Full:
    case GroupVariant::Lower0: return {g.n, g.p, BigInt(1)};
    case GroupVariant::Principal:
    case GroupVariant::Upper0: return {g.n, g.p, BigInt(g.level)};
    case GroupVariant::Theta: return {g.n, g.p, BigInt(2)};
  }
  return {g.n, g.p, BigInt(1)};
}

bool is_lattice_translation(const VahlenZ& m, const TranslationLattice& lattice) {
  const auto one = unit<BigInt>(m.dim());
  return m.a() == one && m.d() == one && m.c().is_zero() && lattice.contains(m.b());
}

bool same_coset(const VahlenZ& m1, const VahlenZ& m2, const GroupDescriptor& g) {
  if (!is_member(m1, g) || !is_member(m2, g)) {
    throw std::invalid_argument("same_coset needs two members of " + g.name());
  }
  return is_lattice_translation(mat_mul(m1, mat_inv(m2)), translation_lattice(g));
}

bool contains_neg_identity(const GroupDescriptor& g) {
  const auto j = make_inversion<BigInt>(g.n);
  return is_member(mat_mul(j, j), g);
}

bool CosetKey::has_zero_c() const {
  const std::size_t half = coeffs.size() / 2;
  return std::all_of(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(half),
                     [](const BigInt& v) { return v.is_zero(); });
}

std::string CosetKey::str() const {
  std::ostringstream out;
  const std::size_t half = coeffs.size() / 2;
  out << "(";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i == half) out << "|";
    else if (i != 0) out << ",";
    out << coeffs[i];
  }
  out << ")";
  return out.str();
}

CosetKey coset_key(const VahlenZ& m, int p) {
  const Blade limit = subalgebra_limit(p);
  for (const auto* entry : {&m.c(), &m.d()}) {
    for (const auto& t : entry->terms()) {
      if (t.blade >= limit) throw std::invalid_argument("matrix entry outside the subalgebra of e_1..e_p");
    }
  }
  CosetKey key;
  key.coeffs.reserve(2 * limit);
  for (Blade b = 0; b < limit; ++b) key.coeffs.push_back(m.c().coeff(b));
  for (Blade b = 0; b < limit; ++b) key.coeffs.push_back(m.d().coeff(b));
  return key;
}

CosetKey negated(const CosetKey& key) {
  CosetKey out = key;
  for (auto& v : out.coeffs) v = -v;
  return out;
}

double coset_height(const VahlenZ& m) {
  const auto en = MultivectorF::basis_vector(m.dim(), m.dim());
  return norm(to_float(m.c()) * en + to_float(m.d()));
}

namespace {

struct EntryHash {
  std::size_t operator()(const std::vector<BigInt>& v) const {
    std::size_t seed = v.size();
    for (const auto& x : v) boost::hash_combine(seed, boost::multiprecision::hash_value(x));
    return seed;
  }
};

std::vector<BigInt> entry_signature(const VahlenZ& m, int p) {
  const Blade limit = subalgebra_limit(p);
  std::vector<BigInt> sig;
  sig.reserve(4 * limit);
  for (const auto* entry : {&m.a(), &m.b(), &m.c(), &m.d()}) {
    for (Blade b = 0; b < limit; ++b) sig.push_back(entry->coeff(b));
  }
  return sig;
}

std::vector<VahlenZ> gamma_p_generators(int n, int p) {
  std::vector<VahlenZ> gens;
  for (int j = 1; j <= p; ++j) {
    gens.push_back(make_translation(VectorN<BigInt>::basis(n, j)));
    gens.push_back(make_translation(VectorN<BigInt>::basis(n, j, BigInt(-1))));
  }
  gens.push_back(make_inversion<BigInt>(n));
  return gens;
}

}  // namespace

std::vector<CosetRep> enumerate_cosets(const GroupDescriptor& g, int max_word_length,
                                       const EnumerationOptions& options) {
  if (max_word_length < 0) throw std::invalid_argument("word length limit must be >= 0");
  const auto gens = gamma_p_generators(g.n, g.p);

  std::unordered_set<std::vector<BigInt>, EntryHash> visited;
  std::map<CosetKey, std::size_t> rep_index;
  std::vector<CosetRep> reps;
  std::vector<VahlenZ> members;  // every visited member, for key verification

  auto consider = [&](const VahlenZ& m, int depth) {
    if (!is_member(m, g)) return;
    if (options.verify_keys) members.push_back(m);
    auto key = coset_key(m, g.p);
    if (rep_index.contains(key)) return;
    rep_index.emplace(key, reps.size());
    reps.push_back(CosetRep{m, std::move(key), depth, coset_height(m)});
  };

  std::vector<VahlenZ> frontier{VahlenZ::identity(g.n)};
  visited.insert(entry_signature(frontier.front(), g.p));
  consider(frontier.front(), 0);
  for (int depth = 1; depth <= max_word_length; ++depth) {
    std::vector<VahlenZ> next;
    for (const auto& m : frontier) {
      for (const auto& gen : gens) {
        auto prod = mat_mul(m, gen);
        if (!visited.insert(entry_signature(prod, g.p)).second) continue;
        consider(prod, depth);
        next.push_back(std::move(prod));
      }
    }
    frontier = std::move(next);
  }

  if (options.verify_keys) {
    for (const auto& m : members) {
      const auto& rep = reps[rep_index.at(coset_key(m, g.p))];
      if (!same_coset(m, rep.matrix, g)) {
        throw InternalConsistency("equal coset keys but different cosets: " + rep.key.str());
      }
    }
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (std::size_t j = i + 1; j < reps.size(); ++j) {
        if (same_coset(reps[i].matrix, reps[j].matrix, g)) {
          throw InternalConsistency("distinct coset keys but the same coset: " + reps[i].key.str() + " " +
                                    reps[j].key.str());
        }
      }
    }
  }

  std::sort(reps.begin(), reps.end(), [](const CosetRep& x, const CosetRep& y) {
    if (x.height != y.height) return x.height < y.height;
    if (x.word_length != y.word_length) return x.word_length < y.word_length;
    return x.key < y.key;
  });
  return reps;
}

int count_c_zero(const std::vector<CosetRep>& reps) {
  return static_cast<int>(std::count_if(reps.begin(), reps.end(), [](const CosetRep& r) { return r.key.has_zero_c(); }));
}

NegationPairing pair_by_negation(std::vector<CosetRep> reps, const GroupDescriptor& g, bool complete) {
  NegationPairing out;
  out.reps = std::move(reps);
  std::map<CosetKey, std::size_t> index;
  for (std::size_t i = 0; i < out.reps.size(); ++i) index.emplace(out.reps[i].key, i);

  if (complete && contains_neg_identity(g)) {
    const std::size_t original = out.reps.size();
    for (std::size_t i = 0; i < original; ++i) {
      auto partner_key = negated(out.reps[i].key);
      if (index.contains(partner_key)) continue;
      const auto& rep = out.reps[i];
      CosetRep partner{negate(rep.matrix), partner_key, rep.word_length + 2, rep.height};
      index.emplace(std::move(partner_key), out.reps.size());
      out.reps.push_back(std::move(partner));
    }
  }

  std::vector<bool> used(out.reps.size(), false);
  for (std::size_t i = 0; i < out.reps.size(); ++i) {
    if (used[i]) continue;
    auto it = index.find(negated(out.reps[i].key));
    if (it != index.end() && it->second != i && !used[it->second]) {
      out.pairs.emplace_back(i, it->second);
      used[i] = used[it->second] = true;
    } else {
      out.unpaired.push_back(i);
      used[i] = true;
    }
  }
  return out;
}

}  // namespace hmf
