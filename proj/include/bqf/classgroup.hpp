#pragma once
// 2-torsion in class groups of monogenized cubic fields read off from the
// GL2(Z)-classes of quartic forms with the field's invariants.

#include "bqf/enumeration.hpp"
#include "bqf/local_arith.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bqf {

struct Cl2Counts {
  int cl2 = 0;         // # of the dual of Cl_2 (four-real-root classes when disc > 0)
  int cl2_plus = 0;    // # of the dual of the narrow Cl_2 (all classes)
  int reducible = 0;   // reducible classes in the fiber (always exactly one)
  bool power_of_two = false;  // both counts
};

// requires an eligible nondegenerate pair whose monic cubic is irreducible and
// maximal; std::invalid_argument otherwise
Cl2Counts cl2_counts(const InvariantPair& inv, const BoxConstants& box = {}, ClassCache* cache = nullptr);

enum class Signature { TotallyReal, Complex };
std::optional<Signature> parse_signature(std::string_view s);  // "real"/"totally-real", "complex"
const char* signature_name(Signature s);

struct LocalCondition {
  long long p = 2;
  CubicSplit sigma = CubicSplit::S111;
};
// "p:(symbol),p:(symbol)"; empty string -> none
std::vector<LocalCondition> parse_local_conditions(const std::string& s);

struct MccStats {
  Int X;
  Signature signature = Signature::TotallyReal;
  bool narrow = false;
  long long fields = 0;  // maximal monogenized rings counted
  long long sum_cl2 = 0, sum_cl2_plus = 0;
  long long skipped_reducible = 0, skipped_nonmaximal = 0, skipped_conditions = 0;
  long long power_of_two_violations = 0;
  long long reducible_count_violations = 0;  // fibers without exactly one reducible class
  std::map<int, long long> histogram;        // of the selected count
  double average() const {
    return fields ? static_cast<double>(narrow ? sum_cl2_plus : sum_cl2) / static_cast<double>(fields) : 0.0;
  }
  double target() const;  // 3/2, 2, 5/2
};

MccStats mcc_averages(const Int& X, Signature sig, bool narrow, const std::vector<LocalCondition>& conds = {},
                      int threads = 1, ClassCache* cache = nullptr, const BoxConstants& box = {});

// irreducible strongly maximal classes with H < X of one root type
long long strongly_maximal_class_count(const Int& X, RootType t, int threads = 1, ClassCache* cache = nullptr);

}  // namespace bqf
