#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lf/extension.hpp"

namespace lf {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// A residue class of Eisenstein polynomials: every coefficient is known
// modulo p^depth, and the cell stands for multiplicity classes modulo p^M.
struct CatalogCell {
    SeriesPoly poly;  // digits below T^depth, zero beyond
    int depth = 0;
    BigInt multiplicity = 1;
};

struct EisensteinCatalog {
    FieldPtr field;
    int n = 1, M = 3;
    std::vector<CatalogCell> entries;
    BigInt total() const;
};

// Number of Eisenstein polynomials of degree n modulo p^M.
BigInt eisenstein_count(int q, int n, int M);

// Every residue class modulo p^M once.
EisensteinCatalog enumerate_eisenstein(const FieldPtr& F, int n, int M, std::uint64_t limit = 1u << 20);
// The same classes, grouped into cells that are refined only until the
// extension is determined (Krasner radius reached) or provably beyond M.
EisensteinCatalog krasner_cells(const FieldPtr& F, int n, int M, std::uint64_t limit = 1u << 20);

struct ClassReport {
    SeriesPoly representative;
    std::optional<LocalFieldExt> extension;  // resolved separable classes
    std::optional<int> w, delta, sigma;
    bool separable = true;
    bool precision_limited = false;
    BigInt member_count = 0;
    BigRational mass_term = 0;  // 1/w q^-sigma; 0 unless resolved
    BigRational member_fraction = 0;  // of all Eisenstein polynomials
};

// Classes sorted by delta; inseparable cells form one group, and cells whose
// extension is not determined below p^M form one limited group per delta.
std::vector<ClassReport> cluster_classes(const EisensteinCatalog& catalog);

struct MassSums {
    int q = 0, n = 1, M = 3, D_max = 0;
    std::vector<ClassReport> classes;
    BigRational sum_totally_ramified = 0;  // sum of (n/w) q^-sigma over subfields
    BigRational weighted = 0;              // sum of 1/w q^-sigma
    std::map<int, BigRational> partial;    // S(D) for D = 0..D_max
    std::map<int, BigRational> per_e_sums; // e -> sum over e(E/F) = e of 1/w q_E^-sigma
    BigRational grand_sum = 0, grand_target = 0;
    bool tame = true;
    std::vector<std::string> flags;
};

// D_max < 0 means M - 2.
MassSums mass_sums(const FieldPtr& F, int n, int M, int D_max = -1);

// Consistency checks: tame exactness, monotone partial sums, class fractions.
std::vector<std::string> check_mass(const MassSums& m);

}  // namespace lf
