#pragma once
// Splitting types over F_p, maximality at p, and exact p-adic densities by
// exhaustive residue enumeration, alongside the closed forms they must match.

#include "bqf/forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bqf {

enum class CubicSplit { S111, S12, S3, S1_21, S1_3 };
enum class QuarticSplit { S1111, S112, S13, S22, S4, S1_211, S1_22, S1_21_2, S2_2, S1_31, S1_4 };

inline constexpr CubicSplit kCubicSplits[] = {CubicSplit::S111, CubicSplit::S12, CubicSplit::S3, CubicSplit::S1_21,
                                              CubicSplit::S1_3};
inline constexpr QuarticSplit kQuarticSplits[] = {
    QuarticSplit::S1111, QuarticSplit::S112,  QuarticSplit::S13,     QuarticSplit::S22,
    QuarticSplit::S4,    QuarticSplit::S1_211, QuarticSplit::S1_22, QuarticSplit::S1_21_2,
    QuarticSplit::S2_2,  QuarticSplit::S1_31, QuarticSplit::S1_4};

std::string split_name(CubicSplit s);    // "(111)", "(1^21)", ...
std::string split_name(QuarticSplit s);  // "(1111)", "(2^2)", ...
std::optional<CubicSplit> parse_cubic_split(std::string_view s);
std::optional<QuarticSplit> parse_quartic_split(std::string_view s);

// throws std::invalid_argument when the form vanishes mod p
CubicSplit splitting_type_cubic(const CubicForm& g, long long p);
QuarticSplit splitting_type_quartic(const QuarticForm& f, long long p);
std::optional<CubicSplit> split_map_R(QuarticSplit t);

bool is_maximal_cubic(const CubicForm& g, long long p);
// maximal at every prime; only primes with p^2 | disc can fail
bool is_maximal_cubic_everywhere(const CubicForm& g);
bool is_strongly_maximal_quartic(const QuarticForm& f, long long p);
bool is_strongly_maximal_quartic_everywhere(const QuarticForm& f);
// monic cubic attached to an eligible pair (the reconstruction used for monogenized rings)
CubicForm monic_cubic_for(const InvariantPair& p);

enum class Family { MonicCubic, Quartic, GeneralCubic, TernaryPair };
std::string family_name(Family f);
std::optional<Family> parse_family(std::string_view s);

// Exhaustive census of all coefficient tuples mod p^2 (mod p for split-only data).
// split index follows kCubicSplits / kQuarticSplits; "maximal" means strongly
// maximal for quartics and pairs.
struct DensityCensus {
  Family family;
  long long p = 0;
  Rational maximal;                  // density of maximal elements
  std::vector<Rational> split;       // density of each splitting symbol
  std::vector<Rational> split_max;   // density of symbol and maximal
  Rational zero_mod_p;               // density of forms vanishing mod p
};
// throws std::length_error beyond the budget (monic p<=13, quartic p<=5,
// general cubic p<=7, ternary pairs p=2 only, splitting data unavailable)
DensityCensus density_census(Family fam, long long p);

// single predicate: optional splitting symbol index and/or maximality
Rational density(Family fam, long long p, std::optional<int> split_index, bool require_maximal);

struct FormulaRow {
  std::string label;
  Rational value;
};
struct RatioRow {
  std::string sigma;
  Rational left;
  std::vector<std::string> preimage;
  std::vector<Rational> right_terms;
  Rational right_sum;
  bool holds = false;
};
struct FormulaTable {
  long long p = 0;
  std::vector<FormulaRow> monic_split;      // symbol densities for monic cubics
  std::vector<FormulaRow> monic_split_max;  // symbol and maximal
  std::vector<FormulaRow> quartic_split_max;
  Rational monic_maximal, quartic_strongly_maximal, general_maximal, pair_strongly_maximal;
  std::vector<RatioRow> monic_ratios, general_ratios;
  bool all_hold() const;
};
FormulaTable density_formula_table(long long p);

}  // namespace bqf
