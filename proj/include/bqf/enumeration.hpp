#pragma once
// Eligible invariant pairs, monic / n-leading cubic classes and complete
// per-(I,J) lists of GL2(Z)-classes of quartic forms, plus the counts built on them.

#include "bqf/forms.hpp"

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace bqf {

enum class DiscSign { Positive, Negative };

// all eligible (I,J) with H < X and the requested sign of 4I^3 - J^2, I then J ascending
std::vector<InvariantPair> eligible_pairs(const Int& X, DiscSign sign);
// same count without materialising the pairs (arithmetic progressions per I)
long long eligible_pair_count(const Int& X, DiscSign sign);
// eligible pairs with H < X and 4I^3 = J^2
long long eligible_degenerate_count(const Int& X);
// exhaustive residue census over (Z/9) x (Z/27): number of eligible cells
int eligible_residue_cells();

struct MonicClass {
  InvariantPair inv;
  CubicForm form;  // reduced: b in {-1,0,1}
  bool irreducible = true;
};
// one class per eligible pair with H < X and the given sign
std::vector<MonicClass> monic_cubic_classes(const Int& X, DiscSign sign);

// --- quartic classes per fiber ----------------------------------------------

// Search-region constants. Bounds on |a|, |8ac - 3b^2| (and |b| when a = 0)
// over reduced orbit members are computed per fiber by sampling the compact
// family of real forms with these invariants at `samples` angles and inflating
// by the trigonometric-polynomial error bound times `slack`; `scale` multiplies
// everything (used by the enlarged certification rerun).
struct BoxConstants {
  int samples = 720;
  double slack = 1.05;
  double scale = 1.0;
  std::string key() const;  // "samples=720 slack=1.05 scale=1"
};

struct QuarticClass {
  QuarticForm form;  // canonical representative
  RootType type = RootType::FourReal;
  bool reducible = false;
  int stabilizer = 2;  // |Stab in GL2(Z)|
};

struct FiberBounds {
  long double a = 0, hs = 0, b0 = 0;  // |a|, |8ac-3b^2| over a != 0 members; |b| over a = 0 members
};
// bounds for one root type; types that do not occur for (I,J) give nullopt
std::optional<FiberBounds> fiber_bounds(const InvariantPair& inv, RootType t, const BoxConstants& box);

// complete, sorted class list; throws std::invalid_argument for ineligible or
// degenerate pairs
std::vector<QuarticClass> classes_with_invariants(const InvariantPair& inv, const BoxConstants& box = {});
// deterministic 1% sample used for certification
bool certification_sampled(const InvariantPair& inv);

// per-fiber cache of class lists, one file per box-constant key
class ClassCache {
 public:
  explicit ClassCache(std::string dir, BoxConstants box = {});
  const std::string& path() const { return path_; }
  // loads the file if present; throws std::runtime_error on checksum/format mismatch
  void load();
  void save() const;  // write-then-rename
  const std::vector<QuarticForm>* find(const InvariantPair& inv) const;
  void put(const InvariantPair& inv, std::vector<QuarticForm> forms);
  std::size_t size() const { return records_.size(); }
  bool dirty() const { return dirty_; }

 private:
  std::string dir_, path_;
  BoxConstants box_;
  std::map<InvariantPair, std::vector<QuarticForm>> records_;
  bool dirty_ = false;
  std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
};

// canonical forms of one fiber (certified rerun on the sampled 1%), through the cache when given
std::vector<QuarticForm> fiber_forms(const InvariantPair& inv, const BoxConstants& box = {}, bool certify = true,
                                     ClassCache* cache = nullptr);

// serialisation helpers shared with the CLI (exposed for round-trip tests)
std::string cache_serialize(const BoxConstants& box, const std::map<InvariantPair, std::vector<QuarticForm>>& recs);
std::map<InvariantPair, std::vector<QuarticForm>> cache_parse(const std::string& text, const BoxConstants& box);

enum class ClassFilter { None, StronglyMaximal };

struct CountOptions {
  std::optional<RootType> root_type;  // nullopt = all
  ClassFilter filter = ClassFilter::None;
  std::function<bool(const QuarticForm&)> predicate;  // extra GL2(Z)-invariant condition
  bool weighted = false;                              // stabilizer 2r counts 1/r
  int threads = 1;
  ClassCache* cache = nullptr;
  BoxConstants box;
  bool certify = true;  // rerun sampled fibers with an enlarged box
};

struct FiberCount {
  InvariantPair inv;
  std::array<int, 4> by_type{};  // indexed by RootType
  int reducible = 0;
  int reducible_no_linear = 0;  // reducible classes without a rational linear factor
  int big_stabilizer = 0;       // irreducible classes with stabilizer > 2
};

struct ClassCount {
  std::array<long long, 4> by_type{};  // irreducible classes passing the filters
  std::array<Rational, 4> weighted_by_type{};
  long long total = 0;
  Rational weighted_total;
  long long reducible = 0;       // reducible classes (all fibers, before filters)
  long long reducible_no_linear = 0;
  long long irreducible = 0;     // before filters
  long long all_classes = 0;     // reducible + irreducible, before filters
  long long big_stabilizer = 0;  // irreducible classes with stabilizer > 2
  long long fibers = 0;
  std::vector<FiberCount> breakdown;
};

// irreducible classes with H < X matching the options
ClassCount count_quartic_classes(const Int& X, const CountOptions& opt = {});

// --- n-monogenized cubic rings -------------------------------------------------

struct NMonoCount {
  long long positive = 0;  // irreducible, disc > 0
  long long negative = 0;
  long long max_n = 0;
  std::vector<std::pair<long long, long long>> per_n;  // (positive, negative) for n = 1..max_n
};
// cubic forms n x^3 + b x^2 y + c x y^2 + d y^3, 1 <= n < X^delta, b in [0,3n),
// irreducible, with max(|P|^3, Q^2/4) < n^2 X
NMonoCount n_monogenized_cubic_count(const Int& X, double delta);

// --- congruence conditions ------------------------------------------------------

struct CoefficientCondition {
  int index = 0;  // coefficient position in the reduced representative (monic: 0..3)
  long long modulus = 1;
  long long residue = 0;
};
struct CongruenceResult {
  long long total = 0, passing = 0;
  double ratio() const { return total ? static_cast<double>(passing) / static_cast<double>(total) : 0.0; }
};
// monic cubic classes (both signs, irreducible) with H < X satisfying all coefficient
// conditions and the optional predicate
CongruenceResult congruence_count(const Int& X, const std::vector<CoefficientCondition>& conds,
                                  const std::function<bool(const CubicForm&)>& predicate = {});

// --- decay diagnostics -------------------------------------------------------------

struct DecayRow {
  Int X;
  double monic_reducible = 0;    // reducible monic cubic classes / all
  double quartic_reducible = 0;  // reducible classes with no rational linear factor / all
  double quartic_linear = 0;     // classes with a rational linear factor / all (one per fiber at least)
  double big_stabilizer = 0;     // irreducible classes with stabilizer > 2 / irreducible
  // raw counts behind the fractions
  long long monic_all = 0, monic_reducible_count = 0;
  long long quartic_all = 0, quartic_reducible_count = 0, quartic_linear_count = 0;
  long long irreducible = 0, big_stabilizer_count = 0;
};
std::vector<DecayRow> decay_diagnostics(const std::vector<Int>& ladder, int threads = 1, ClassCache* cache = nullptr);

}  // namespace bqf
