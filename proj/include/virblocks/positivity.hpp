#pragma once

// Positivity decisions for conformal block divisors: exhaustive F-curve
// scans, effectivity certificates for the negated coinvariant divisor
// (standard form first, exact LP as fallback), the finite verification of
// the interior-cone property per ring, and recursive nefness certificates
// that bottom out where F-nef implies nef (n <= 7).

#include "virblocks/coinvariant.hpp"
#include "virblocks/ratlp.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace virblocks {

enum class Effectivity {
    NotAttempted,
    AllStandardNegative, // standard form of D has every coefficient < 0 (<= 0 non-strict)
    LpInteriorFeasible,  // LP found x_I >= t > 0
    LpFeasible,          // feasible only with t = 0
    Infeasible,
    SkippedScale,        // LP beyond the F-curve enumeration scale
};

struct EffectivityResult {
    Effectivity status = Effectivity::NotAttempted;
    std::map<Mask, Rat> coefficients; // -D = sum coeff_I delta_{0,I} when found
    Rat lp_t = Rat(0);
    bool fingerprint_checked = false; // certificate re-verified against the full fingerprint
    std::string note;
};

struct PositivityReport {
    std::string class_id;
    int genus = 0;
    Int rank = 0;
    bool fnef = false;
    bool fample = false;
    bool zero_class = false;
    std::optional<FCurve> witness; // minimizing curve for -D
    Rat witness_value = Rat(0);    // (-D) . witness
    EffectivityResult effectivity;
};

// Exhaustive scan of -D_{g,n} against all F-curves of (g, n).
PositivityReport check_fnef(const VirasoroRing& ring, int genus, std::span<const int> labels,
                            int genus_cap = 2);

// Certifies -D effective/interior. Phase 1 standard form; Phase 2 exact LP
// over a spanning subset of fingerprint rows (n <= lp_n_cap).
EffectivityResult check_effectivity(const Divisor0& coinvariant, bool strict,
                                    int lp_n_cap = 9);

// Per-tuple outcome of the interior-cone verification.
struct GenvireffRecord {
    std::vector<int> labels;
    std::string method; // "zero" | "standard" | "lp"
    std::string status; // "certified" | "failed" | "uncertified"
    Rat lp_t = Rat(0);
};

struct GenvireffReport {
    int k = 0;
    int n_lo = 4, n_hi = 0;
    bool degree_law_verified = false; // exhaustive M04 degree sweep for this k
    long tuples = 0;
    long zero_tuples = 0;
    long standard_tuples = 0;
    long lp_tuples = 0;
    bool all_certified = false;
    std::vector<GenvireffRecord> exceptions; // non-"standard"/"zero" cases and failures
    std::vector<GenvireffRecord> records;    // filled when keep_records is set
};

// Verifies the interior-cone property for every nontrivial tuple with
// 4 <= n < 4k-4 (above that the per-subset bound covers all cases).
// analytic_skip prunes boundary subsets already covered by the bound
// "m >= k or 1/(2k-1-m) >= 1/(n-m) + 1/(n-2)".
GenvireffReport verify_genvireff(int k, std::optional<int> n_max = std::nullopt,
                                 int jobs = 1, bool analytic_skip = true,
                                 bool keep_records = false);

// Exhaustive degree-law sweep on M-bar_{0,4} (all quadruples) and
// M-bar_{1,1} (all labels) for one ring.
bool verify_degree_law_m04(const VirasoroRing& ring);
bool verify_degree_law_m11(const VirasoroRing& ring);

// Recursive nefness certificate for -D_{0,n}: interior nodes carry an
// effectivity certificate and recurse into the boundary channel divisors,
// leaves are n <= 7 F-nef scans. An absent certificate is a recorded
// failure, not a disproof.
struct NefCertificate {
    enum class Kind { ZeroClass, SmallN, Effective, Failed };
    struct Node {
        std::vector<int> labels;
        Kind kind = Kind::Failed;
        EffectivityResult eff;
        std::vector<size_t> children; // node indices
        std::string note;
    };
    std::vector<Node> nodes; // node 0 is the root
    bool complete = false;   // every path ends in ZeroClass or SmallN
};

NefCertificate nef_certificate(const VirasoroRing& ring, std::span<const int> labels);

// Spanning subset of F-curve pairing functionals used as LP equality rows;
// cached per n.
struct CurveRowBasis {
    int n = 0;
    std::vector<Mask> keys;                // canonical boundary keys, ascending
    std::vector<size_t> curve_indices;     // into enumerate_fcurves0(n)
    std::vector<std::vector<Rat>> rows;    // pairing of each delta_key with the curve
};
const CurveRowBasis& curve_row_basis(int n);

} // namespace virblocks
